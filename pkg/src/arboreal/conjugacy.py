"""Conjugacy of tree automorphisms.

The decision works on a finite graph: vertices pair up elements of the
two orbit-power closures together with a root conjugator candidate, and
a vertex survives only if every orbit of its first component can be
followed to a surviving vertex.  Conjugators are then read off a
subgraph that keeps one permutation per surviving pair; the recursion
for their sections never needs backtracking because pruning leaves
edges into every surviving successor.

Simultaneous conjugacy of tuples runs the same game with Schreier
generators of the joint stabilizer of each orbit, which is what makes
constraints between different coordinates visible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .classify import OrbitSignalizer, orbit_signalizer
from .elements import Element, Exceeded, Interner, multiply
from .oracle import MAX_LEAVES, TruncatedAut, _check_depth
from .perms import Perm, conjugators, inverse as perm_inverse, orbits
from .system import EMPTY, FRSystem, Word, format_system, invert_word, reduce_word

log = logging.getLogger("arboreal.conjugacy")


def _partial_power_section(sys: FRSystem, w: Word, start: int, steps: int) -> Word:
    """(w^steps)|_start as a word: the product of sections of w along the
    orbit of start, never a naive power."""
    out: list = []
    y = start
    p = sys.root_perm(w)
    for _ in range(steps):
        out.extend(sys.section(w, y))
        y = p[y]
    return reduce_word(tuple(out))


def _same_system(a: Element, b: Element) -> FRSystem:
    if a.system is not b.system:
        raise ValueError("conjugacy needs both elements in one system")
    return a.system


def _fresh_names(sys: FRSystem, bases: list) -> list:
    # fresh_name alone is not enough here: synthesis batches all names
    # before the first define, so reservations must be tracked locally
    taken = set(sys.symbols)
    out = []
    for base in bases:
        name = base if base not in taken else None
        i = 2
        while name is None:
            cand = "%s_%d" % (base, i)
            if cand not in taken:
                name = cand
            i += 1
        taken.add(name)
        out.append(name)
    return out


# -- the pair graph ------------------------------------------------------------


@dataclass(eq=False)
class ConjGraph:
    """Surviving triples (i, j, pi) over the two orbit-power closures.

    edges[v] maps each orbit representative letter of v's first
    component to the list of surviving successor triples; roots are the
    surviving triples whose pair is the input pair itself.
    """

    os_a: OrbitSignalizer
    os_b: OrbitSignalizer
    vertices: list
    edges: dict
    roots: list
    status: str  # "complete" | "exceeded"

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def pair_options(self, i: int, j: int) -> list:
        return [v[2] for v in self.vertices if v[0] == i and v[1] == j]

    def successor_pair(self, i: int, j: int, pi: Perm, x: int):
        """(m, i', j') for the orbit of letter x of vertex (i, j, pi)."""
        m, ti = self._succ_a[(i, x)]
        _, tj = self._succ_b[(j, pi[x])]
        return m, ti, tj


def _successor_map(os: OrbitSignalizer) -> dict:
    return {(e[0], e[3]): (e[1], e[2]) for e in os.edges}


def conj_graph(a: Element, b: Element, cap: int = 512, reachable_only: bool = False) -> ConjGraph:
    sys = _same_system(a, b)
    os_a = orbit_signalizer(a, cap, letters="all")
    os_b = orbit_signalizer(b, cap, letters="all")
    graph = ConjGraph(os_a, os_b, [], {}, [], "complete")
    if not (os_a.complete and os_b.complete):
        graph.status = "exceeded"
        return graph
    graph._succ_a = _successor_map(os_a)
    graph._succ_b = _successor_map(os_b)
    perm_a = [g.root_perm for g in os_a.elements]
    perm_b = [g.root_perm for g in os_b.elements]
    cpi: dict[tuple[int, int], tuple] = {}

    def options(i, j):
        if (i, j) not in cpi:
            cpi[(i, j)] = conjugators(perm_a[i], perm_b[j])
        return cpi[(i, j)]

    def vertex_edges(v):
        i, j, pi = v
        out = {}
        for orb in orbits(perm_a[i]):
            x = orb[0]
            _, ti = graph._succ_a[(i, x)]
            _, tj = graph._succ_b[(j, pi[x])]
            out[x] = [(ti, tj, tau) for tau in options(ti, tj)]
        return out

    if reachable_only:
        candidates: list = [(0, 0, pi) for pi in options(0, 0)]
        seen = set(candidates)
        pos = 0
        all_edges = {}
        while pos < len(candidates):
            v = candidates[pos]
            pos += 1
            all_edges[v] = vertex_edges(v)
            for succs in all_edges[v].values():
                for s in succs:
                    if s not in seen:
                        seen.add(s)
                        candidates.append(s)
    else:
        candidates = [
            (i, j, pi)
            for i in range(len(os_a.elements))
            for j in range(len(os_b.elements))
            for pi in options(i, j)
        ]
        all_edges = {v: vertex_edges(v) for v in candidates}

    alive = set(candidates)
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            for succs in all_edges[v].values():
                if not any(s in alive for s in succs):
                    alive.discard(v)
                    changed = True
                    break
    graph.vertices = sorted(alive)
    graph.edges = {
        v: {x: [s for s in succs if s in alive] for x, succs in all_edges[v].items()}
        for v in graph.vertices
    }
    graph.roots = [v for v in graph.vertices if v[0] == 0 and v[1] == 0]
    if not graph.roots and graph.vertices:
        log.info(
            "pruned graph is nonempty but no root pair survives for (%s, %s)", a, b
        )
    return graph


@dataclass(eq=False)
class ConjDecision:
    tag: str  # "conjugate" | "not_conjugate" | "unknown"
    graph: object = None
    roots: list = None
    reason: str | None = None

    @property
    def conjugate(self) -> bool:
        return self.tag == "conjugate"


def conjugate_in_aut(a: Element, b: Element, cap: int = 512) -> ConjDecision:
    graph = conj_graph(a, b, cap)
    if not graph.complete:
        return ConjDecision("unknown", graph, reason="orbit-power closure exceeded cap %d" % cap)
    if graph.roots:
        return ConjDecision("conjugate", graph, roots=graph.roots)
    return ConjDecision(
        "not_conjugate", graph, roots=[], reason="no root vertex survives pruning"
    )


# -- conjugator synthesis -------------------------------------------------------


@dataclass(eq=False)
class ConjugatorFR:
    """A conjugator presented by wreath recursions appended to the input
    system: one symbol per reachable pair of the chosen subgraph."""

    system: FRSystem
    root: str
    assignments: tuple  # ((i, j, pi, symbol name), ...)

    @property
    def element(self) -> Element:
        return Element.symbol(self.system, self.root)

    def text(self) -> str:
        return format_system(self.system, roots=[self.root])

    def __str__(self):
        return self.root


def _policy_fn(policy):
    if policy == "least":
        return lambda pair, opts: opts[0]
    if policy == "greatest":
        return lambda pair, opts: opts[-1]
    if callable(policy):
        return policy
    raise ValueError("policy must be 'least', 'greatest', or callable")


def _synthesize(graph: ConjGraph, choose) -> ConjugatorFR:
    sys = graph.os_a.interner.system
    perm_a = [g.root_perm for g in graph.os_a.elements]
    assign: dict = {}
    order: list = []

    def fix(pair):
        opts = graph.pair_options(*pair)
        pi = choose(pair, opts)
        if pi not in opts:
            raise ValueError("policy chose a pruned permutation %r for pair %r" % (pi, pair))
        assign[pair] = pi
        order.append(pair)

    fix((0, 0))
    pos = 0
    while pos < len(order):
        i, j = order[pos]
        pos += 1
        for orb in orbits(perm_a[i]):
            _, ti, tj = graph.successor_pair(i, j, assign[(i, j)], orb[0])
            if (ti, tj) not in assign:
                fix((ti, tj))
    allocated = _fresh_names(sys, ["h" if p == (0, 0) else "g" for p in order])
    names = dict(zip(order, allocated))
    for pair in order:
        i, j = pair
        pi = assign[pair]
        w_c = graph.os_a.elements[i].word
        w_d = graph.os_b.elements[j].word
        sections: list = [EMPTY] * sys.degree
        for orb in orbits(perm_a[i]):
            x = orb[0]
            _, ti, tj = graph.successor_pair(i, j, pi, x)
            succ = ((names[(ti, tj)], 1),)
            sections[x] = succ
            for p in range(1, len(orb)):
                lhs = invert_word(_partial_power_section(sys, w_c, x, p))
                rhs = _partial_power_section(sys, w_d, pi[x], p)
                sections[orb[p]] = reduce_word(lhs + succ + rhs)
        sys.define(names[pair], pi, sections)
    sys.validate()
    return ConjugatorFR(
        sys,
        names[(0, 0)],
        tuple((i, j, assign[(i, j)], names[(i, j)]) for i, j in order),
    )


def basic_conjugator(graph: ConjGraph, policy="least") -> ConjugatorFR:
    """Conjugator from the subgraph fixing one permutation per pair.

    The default policy takes the least surviving permutation of each
    pair in image-tuple order; 'greatest' takes the last; a callable
    receives (pair, options) and must return one of the options.
    """
    if not graph.roots:
        raise ValueError("graph has no surviving root vertex")
    return _synthesize(graph, _policy_fn(policy))


def all_basic_conjugators(graph: ConjGraph, limit: int = 64) -> list:
    """Every one-permutation-per-pair subgraph choice, in lexicographic
    order of the choices along pair discovery order."""
    if not graph.roots:
        return []
    perm_a = [g.root_perm for g in graph.os_a.elements]
    out: list = []

    def reachable_unassigned(assign):
        order = [(0, 0)]
        seen = {(0, 0)}
        pos = 0
        while pos < len(order):
            pair = order[pos]
            pos += 1
            if pair not in assign:
                return pair, None
            i, j = pair
            for orb in orbits(perm_a[i]):
                _, ti, tj = graph.successor_pair(i, j, assign[pair], orb[0])
                if (ti, tj) not in seen:
                    seen.add((ti, tj))
                    order.append((ti, tj))
        return None, order

    def rec(assign):
        if len(out) >= limit:
            return
        pair, _ = reachable_unassigned(assign)
        if pair is None:
            out.append(_synthesize(graph, lambda p, opts: assign[p]))
            return
        for pi in graph.pair_options(*pair):
            rec({**assign, pair: pi})

    rec({})
    return out


def expand_to_finite_state(h, budget: int = 10**5):
    """Minimal machine of a synthesized conjugator, when it is finite
    state within the budget."""
    from .elements import minimize

    elem = getattr(h, "element", h)
    return minimize(elem, budget)


# -- simultaneous conjugacy -----------------------------------------------------


def _joint_orbits(perms: list[Perm], degree: int):
    """Orbits of the group generated by perms, each with a transversal:
    (least letter, ordered orbit, {letter: index word}) where an index
    word is a tuple of (generator position, exponent)."""
    seen = [False] * degree
    out = []
    invs = [perm_inverse(p) for p in perms]
    for start in range(degree):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        words = {start: EMPTY}
        pos = 0
        while pos < len(orb):
            y = orb[pos]
            pos += 1
            for t, p in enumerate(perms):
                for img, exp in ((p[y], 1), (invs[t][y], -1)):
                    if not seen[img]:
                        seen[img] = True
                        words[img] = words[y] + ((t, exp),)
                        orb.append(img)
        out.append((start, orb, words))
    return out


def _eval_index_word(words: list[Word], iw) -> Word:
    out: Word = EMPTY
    for t, exp in iw:
        out = out + (words[t] if exp == 1 else invert_word(words[t]))
    return reduce_word(out)


def _schreier_pairs(sys, a_words, b_words, perms_a, orbit_info, pi):
    """Constraint pairs at the least letter of one joint orbit.

    For every orbit letter y and every generator index t, the Schreier
    word t_y * g_t * t_{(y)g_t}^-1 stabilizes the base letter; its
    evaluations on the two sides, sectioned at the base letter and its
    pi-image, must be conjugate by the section of the conjugator there.
    Tree edges reduce to the empty word and are skipped.
    """
    y0, orb, words = orbit_info
    pairs = []
    seen = set()
    for y in orb:
        for t in range(len(a_words)):
            iw = reduce_word(words[y] + ((t, 1),) + invert_word(words[perms_a[t][y]]))
            if not iw:
                continue
            wa = sys.section(_eval_index_word(a_words, iw), y0)
            wb = sys.section(_eval_index_word(b_words, iw), pi[y0])
            key = (sys.find(wa), sys.find(wb))
            if key not in seen:
                seen.add(key)
                pairs.append((wa, wb))
    return pairs


@dataclass(eq=False)
class SimConjGraph:
    """Reachable tuple vertices for simultaneous conjugacy: a vertex is
    (pair-key tuple, pi) and its edges follow joint orbits."""

    interner: Interner
    vertices: list
    edges: dict
    roots: list
    status: str
    root_tuple: tuple = ()

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def sim_conj_graph(as_: list, bs: list, cap: int = 1024) -> SimConjGraph:
    if len(as_) != len(bs) or not as_:
        raise ValueError("need equally many source and target elements")
    sys = as_[0].system
    for g in list(as_) + list(bs):
        if g.system is not sys:
            raise ValueError("conjugacy needs all elements in one system")
    intern = Interner(sys)
    graph = SimConjGraph(intern, [], {}, [], "complete")

    def tuple_key(pairs):
        keys = []
        seen = set()
        for wa, wb in pairs:
            ka = intern.key(Element(sys, wa))
            kb = intern.key(Element(sys, wb))
            if isinstance(ka, Exceeded) or isinstance(kb, Exceeded):
                return None
            if (ka, kb) not in seen:
                seen.add((ka, kb))
                keys.append((ka, kb))
        return tuple(keys)

    root_key = tuple_key([(a.word, b.word) for a, b in zip(as_, bs)])
    if root_key is None:
        graph.status = "exceeded"
        return graph
    graph.root_tuple = root_key

    def tuple_options(tk):
        opts = None
        for ka, kb in tk:
            cs = conjugators(intern.element(ka).root_perm, intern.element(kb).root_perm)
            opts = list(cs) if opts is None else [p for p in opts if p in cs]
            if not opts:
                return ()
        return tuple(opts)

    # discovery: vertex -> {orbit base letter: [successor vertices]};
    # payload per vertex edge built once, then pruned to fixpoint
    all_edges: dict = {}
    candidates = [(root_key, pi) for pi in tuple_options(root_key)]
    seen = set(candidates)
    pos = 0
    while pos < len(candidates):
        v = candidates[pos]
        pos += 1
        tk, pi = v
        a_words = [intern.element(ka).word for ka, _ in tk]
        b_words = [intern.element(kb).word for _, kb in tk]
        perms_a = [sys.root_perm(w) for w in a_words]
        edges = {}
        for orbit_info in _joint_orbits(perms_a, sys.degree):
            pairs = _schreier_pairs(sys, a_words, b_words, perms_a, orbit_info, pi)
            tk2 = tuple_key(pairs)
            if tk2 is None:
                graph.status = "exceeded"
                return graph
            succs = [(tk2, tau) for tau in tuple_options(tk2)]
            edges[orbit_info[0]] = succs
            for s in succs:
                if s not in seen:
                    if len(seen) >= cap:
                        graph.status = "exceeded"
                        return graph
                    seen.add(s)
                    candidates.append(s)
        all_edges[v] = edges
    alive = set(candidates)
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            for succs in all_edges[v].values():
                if not any(s in alive for s in succs):
                    alive.discard(v)
                    changed = True
                    break
    graph.vertices = sorted(alive, key=lambda v: (candidates.index(v),))
    graph.edges = {
        v: {x: [s for s in succs if s in alive] for x, succs in all_edges[v].items()}
        for v in graph.vertices
    }
    graph.roots = [v for v in graph.vertices if v[0] == root_key]
    return graph


def conjugate_in_aut_simultaneous(as_: list, bs: list, cap: int = 1024) -> ConjDecision:
    graph = sim_conj_graph(as_, bs, cap)
    if not graph.complete:
        return ConjDecision("unknown", graph, reason="tuple graph exceeded cap %d" % cap)
    if graph.roots:
        return ConjDecision("conjugate", graph, roots=graph.roots)
    return ConjDecision(
        "not_conjugate", graph, roots=[], reason="no root tuple vertex survives pruning"
    )


def sim_basic_conjugator(graph: SimConjGraph, policy="least") -> ConjugatorFR:
    """Conjugator synthesis over the tuple graph, one permutation per
    reachable tuple."""
    if not graph.roots:
        raise ValueError("graph has no surviving root vertex")
    choose = _policy_fn(policy)
    intern = graph.interner
    sys = intern.system
    alive_pi: dict = {}
    for tk, pi in graph.vertices:
        alive_pi.setdefault(tk, []).append(pi)
    assign: dict = {}
    order: list = []

    def fix(tk):
        assign[tk] = choose(tk, alive_pi[tk])
        order.append(tk)

    fix(graph.root_tuple)
    pos = 0
    plans = {}
    while pos < len(order):
        tk = order[pos]
        pos += 1
        pi = assign[tk]
        a_words = [intern.element(ka).word for ka, _ in tk]
        b_words = [intern.element(kb).word for _, kb in tk]
        perms_a = [sys.root_perm(w) for w in a_words]
        plan = []
        for orbit_info in _joint_orbits(perms_a, sys.degree):
            pairs = _schreier_pairs(sys, a_words, b_words, perms_a, orbit_info, pi)
            tk2 = tuple(
                (intern.key(Element(sys, wa)), intern.key(Element(sys, wb))) for wa, wb in pairs
            )
            tk2 = tuple(dict.fromkeys(tk2))
            if tk2 not in assign:
                fix(tk2)
            plan.append((orbit_info, tk2, a_words, b_words))
        plans[tk] = plan
    allocated = _fresh_names(sys, ["h" if tk == graph.root_tuple else "g" for tk in order])
    names = dict(zip(order, allocated))
    for tk in order:
        pi = assign[tk]
        sections: list = [EMPTY] * sys.degree
        for orbit_info, tk2, a_words, b_words in plans[tk]:
            y0, orb, words = orbit_info
            succ = ((names[tk2], 1),)
            sections[y0] = succ
            for y in orb:
                if y == y0:
                    continue
                ua = _eval_index_word(a_words, words[y])
                ub = _eval_index_word(b_words, words[y])
                lhs = invert_word(sys.section(ua, y0))
                rhs = sys.section(ub, pi[y0])
                sections[sys.root_perm(ua)[y0]] = reduce_word(lhs + succ + rhs)
        sys.define(names[tk], pi, sections)
    sys.validate()
    return ConjugatorFR(sys, names[graph.root_tuple], ())


# -- canonical truncated representatives ---------------------------------------


def canonical_representative(a: Element, depth: int, max_leaves: int = MAX_LEAVES) -> TruncatedAut:
    """Truncated action of the canonical conjugacy representative.

    Per orbit of the root action the recursion keeps only the orbit
    length and the representative of the orbit-power section; blocks
    are sorted by (length, representative) and laid out as left-oriented
    cycles carrying their section representative at the last slot, so
    conjugate inputs produce identical truncations.
    """
    sys = a.system
    d = sys.degree
    _check_depth(d, depth, max_leaves)

    def rec(w: Word, n: int):
        if n == 0:
            return ((0,),)
        blocks = []
        for orb in orbits(sys.root_perm(w)):
            sub = rec(_partial_power_section(sys, w, orb[0], len(orb)), n - 1)
            blocks.append((len(orb), sub))
        blocks.sort()
        maps = [(0,)]
        for k in range(1, n + 1):
            rest = d ** (k - 1)
            m = [0] * (d**k)
            base = 0
            for length, sub in blocks:
                for pz in range(length):
                    y = base + pz
                    img = base + (pz + 1) % length
                    submap = sub[k - 1] if pz == length - 1 else None
                    for r in range(rest):
                        m[y * rest + r] = img * rest + (submap[r] if submap else r)
                base += length
            maps.append(tuple(m))
        return tuple(maps)

    return TruncatedAut(d, depth, rec(a.word, depth))
