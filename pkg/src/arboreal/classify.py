"""Activity growth and the cycle-structure classification.

Everything here works on the minimized machine of an element: activity
counts come from a linear recurrence on state multiplicities, the
finitary / polynomial / exponential trichotomy from the strongly
connected components of the machine with its trivial state removed,
and the orbit-signalizer from a breadth-first closure under the
orbit-power-section rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elements import (
    Element,
    Exceeded,
    Interner,
    inverse,
    minimize,
    multiply,
    orbit,
    orbit_power_section,
)
from .graphs import strongly_connected_components


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


NOT_FINITARY = _Sentinel("NotFinitary")
NOT_CIRCUIT = _Sentinel("NotCircuit")


@dataclass(frozen=True)
class ActivityClass:
    """finitary(depth) / polynomial(degree) / exponential / unknown."""

    kind: str
    value: int | None = None
    witness: str | None = None

    def __str__(self):
        if self.kind == "finitary":
            return "Finitary(%d)" % self.value
        if self.kind == "polynomial":
            return "Polynomial(%d)" % self.value
        return self.kind.capitalize()

    @property
    def bounded(self) -> bool:
        return self.kind == "finitary" or (self.kind == "polynomial" and self.value == 0)


def activity(g: Element, k: int):
    """Counts of nontrivial sections per level, as a list theta_0..theta_k.

    Runs the multiplicity recurrence on the minimized machine instead of
    walking the d^k vertices of level k.
    """
    mach = minimize(g)
    if isinstance(mach, Exceeded):
        return mach
    v = [0] * mach.n_states
    v[0] = 1
    counts = []
    for _ in range(k + 1):
        counts.append(sum(c for i, c in enumerate(v) if i != mach.trivial))
        nxt = [0] * mach.n_states
        for i, c in enumerate(v):
            if c:
                for t in mach.transitions[i]:
                    nxt[t] += c
        v = nxt
    return counts


def _nontrivial_successors(mach):
    def succ(i):
        if i == mach.trivial:
            return ()
        return tuple(t for t in mach.transitions[i] if t != mach.trivial)

    return succ


def _finitary_depth_of(mach):
    comps = strongly_connected_components(mach.n_states, _nontrivial_successors(mach))
    depth = [0] * mach.n_states
    for comp in comps:
        if len(comp) > 1:
            return NOT_FINITARY
        i = comp[0]
        if i == mach.trivial:
            continue
        best = 0
        for t in mach.transitions[i]:
            if t == i:
                return NOT_FINITARY
            best = max(best, depth[t])
        depth[i] = 1 + best
    return depth[0]


def finitary_depth(g: Element):
    """Least level below which every section is trivial; NOT_FINITARY when
    the machine has a cycle through a nontrivial state."""
    mach = minimize(g)
    if isinstance(mach, Exceeded):
        return mach
    return _finitary_depth_of(mach)


def polynomial_degree(g: Element) -> ActivityClass:
    """Classification by the cycle structure of the trivial-state-deleted
    machine: exponential when some component branches, otherwise the
    degree is one less than the longest chain of cycles."""
    mach = minimize(g)
    if isinstance(mach, Exceeded):
        return ActivityClass("unknown", witness="minimize exceeded %d %s" % (mach.budget, mach.kind))
    succ = _nontrivial_successors(mach)
    comps = strongly_connected_components(mach.n_states, succ)
    comp_of = [0] * mach.n_states
    for ci, comp in enumerate(comps):
        for i in comp:
            comp_of[i] = ci
    is_cycle = [False] * len(comps)
    for ci, comp in enumerate(comps):
        members = set(comp)
        if mach.trivial in members:
            continue
        counts = [sum(1 for t in mach.transitions[i] if t in members) for i in comp]
        if any(c >= 2 for c in counts):
            state = comp[counts.index(max(counts))]
            return ActivityClass("exponential", witness="state %d branches inside its component" % state)
        is_cycle[ci] = all(c == 1 for c in counts)
    # components come out successors-first, so one pass computes the
    # longest cycle chain ending at each component
    chain = [0] * len(comps)
    for ci, comp in enumerate(comps):
        best = 0
        for i in comp:
            if i == mach.trivial:
                continue
            for t in mach.transitions[i]:
                if comp_of[t] != ci:
                    best = max(best, chain[comp_of[t]])
        chain[ci] = best + (1 if is_cycle[ci] else 0)
    top = max(chain)
    if top == 0:
        return ActivityClass("finitary", _finitary_depth_of(mach))
    return ActivityClass("polynomial", top - 1)


def is_bounded(g: Element) -> bool:
    return polynomial_degree(g).bounded


def circuit_word(g: Element):
    """Shortest nonempty letter word v with g|_v = g, lexicographically
    least among the shortest; NOT_CIRCUIT when no section returns."""
    mach = minimize(g)
    if isinstance(mach, Exceeded):
        return mach
    n = mach.n_states
    rev = [[] for _ in range(n)]
    for i in range(n):
        for t in mach.transitions[i]:
            if i not in rev[t]:
                rev[t].append(i)
    dist = [None] * n
    dist[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for t in frontier:
            for s in rev[t]:
                if dist[s] is None:
                    dist[s] = dist[t] + 1
                    nxt.append(s)
        frontier = nxt
    best = None
    for x in range(mach.degree):
        t = mach.transitions[0][x]
        if dist[t] is not None:
            length = 1 + dist[t]
            if best is None or length < best:
                best = length
    if best is None:
        return NOT_CIRCUIT
    word = []
    cur = 0
    remaining = best
    while remaining:
        for x in range(mach.degree):
            t = mach.transitions[cur][x]
            if dist[t] is not None and dist[t] <= remaining - 1:
                word.append(x)
                cur = t
                remaining -= 1
                break
    return tuple(word)


# -- orbit-signalizer ---------------------------------------------------------


@dataclass(eq=False)
class OrbitSignalizer:
    """Closure of an element under taking orbit-power sections.

    elements[0] is the input; edges hold (source index, orbit size m,
    target index, anchor letter).  status is "complete" or "exceeded".
    """

    elements: list
    edges: list
    status: str
    interner: Interner

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def index_of(self, h: Element):
        """Index of an element semantically present in the closure, else None."""
        k = self.interner.lookup(h)
        if isinstance(k, int) and k < len(self.elements):
            return k
        return None


def orbit_signalizer(g: Element, cap: int = 512, letters: str = "least") -> OrbitSignalizer:
    """BFS closure from g under b -> b^m|_x over orbits of the root action.

    letters="least" anchors each orbit at its least letter (enough for
    the order computation); letters="all" closes over every anchor,
    which the conjugacy graphs need since their targets sit at images
    of least letters under arbitrary root conjugators.
    """
    if letters not in ("least", "all"):
        raise ValueError("letters must be 'least' or 'all'")
    intern = Interner(g.system)
    k0 = intern.key(g)
    if isinstance(k0, Exceeded):
        return OrbitSignalizer([g], [], "exceeded", intern)
    edges = []
    status = "complete"
    pos = 0
    while pos < len(intern.elements):
        src = intern.element(pos)
        done = [False] * g.system.degree
        for x in range(g.system.degree):
            if done[x]:
                continue
            orb = orbit(src, x)
            for y in orb:
                done[y] = True
            anchors = orb if letters == "all" else orb[:1]
            for y in anchors:
                m, tgt = orbit_power_section(src, y)
                k = intern.key(tgt)
                if isinstance(k, Exceeded):
                    return OrbitSignalizer(list(intern.elements), edges, "exceeded", intern)
                edges.append((pos, m, k, y))
            if len(intern.elements) > cap:
                return OrbitSignalizer(list(intern.elements), edges, "exceeded", intern)
        pos += 1
    return OrbitSignalizer(list(intern.elements), edges, status, intern)


# -- nucleus ------------------------------------------------------------------


@dataclass(eq=False)
class NucleusReport:
    tag: str  # "contracting" | "unknown"
    elements: list | None = None
    reason: str | None = None

    @property
    def contracting(self) -> bool:
        return self.tag == "contracting"


def _section_closure(intern, nset, elem, size_cap):
    """Add the semantic state closure of elem to nset; False on cap/budget."""
    k = intern.key(elem)
    if isinstance(k, Exceeded):
        return False
    queue = [k]
    while queue:
        k = queue.pop()
        if k in nset:
            continue
        if len(nset) >= size_cap:
            return False
        nset.add(k)
        cur = intern.element(k)
        for x in range(cur.system.degree):
            kk = intern.key(cur.section(x))
            if isinstance(kk, Exceeded):
                return False
            if kk not in nset:
                queue.append(kk)
    return True


def _explore_product(intern, nset, u, v, node_cap):
    """Section graph of element(u)*element(v), pruned at nset.

    Returns ("ok", depth), ("recurrent", keys) for keys on cycles, or
    ("unknown", reason)."""
    k = intern.key(multiply(intern.element(u), intern.element(v)))
    if isinstance(k, Exceeded):
        return ("unknown", "equality budget exceeded")
    if k in nset:
        return ("ok", 0)
    nodes = [k]
    index = {k: 0}
    succs: list[list[int]] = []
    pos = 0
    while pos < len(nodes):
        cur = intern.element(nodes[pos])
        row = []
        for x in range(cur.system.degree):
            kk = intern.key(cur.section(x))
            if isinstance(kk, Exceeded):
                return ("unknown", "equality budget exceeded")
            if kk in nset:
                continue
            if kk not in index:
                if len(nodes) >= node_cap:
                    return ("unknown", "product exploration exceeded %d states" % node_cap)
                index[kk] = len(nodes)
                nodes.append(kk)
            row.append(index[kk])
        succs.append(row)
        pos += 1
    comps = strongly_connected_components(len(nodes), lambda i: succs[i])
    recurrent = []
    for comp in comps:
        if len(comp) > 1 or comp[0] in succs[comp[0]]:
            recurrent.extend(nodes[i] for i in comp)
    if recurrent:
        return ("recurrent", recurrent)
    depth = [0] * len(nodes)
    for comp in comps:  # successors first
        i = comp[0]
        depth[i] = 1 + max((depth[t] for t in succs[i]), default=0)
    return ("ok", depth[0])


def nucleus(g, size_cap: int = 512, depth_cap: int = 12) -> NucleusReport:
    """Semi-decision for contraction of the group generated by the states
    of g (or of each element of a generator list).

    Grows a candidate set: state closures of the generators and their
    inverses, then, for every pairwise product, whatever states recur
    without falling into the set (with their closures and inverses).
    Contracting is reported only when the set stabilizes and every
    product's section graph dies into the set within depth_cap.  Never
    claims non-contraction.
    """
    gens = [g] if isinstance(g, Element) else list(g)
    if not gens:
        raise ValueError("need at least one generator")
    sys = gens[0].system
    intern = Interner(sys)
    nset: set[int] = set()
    seeds = [Element.trivial(sys)]
    for gen in gens:
        seeds.append(gen)
        seeds.append(inverse(gen))
    for s in seeds:
        if not _section_closure(intern, nset, s, size_cap):
            return NucleusReport("unknown", reason="size cap %d exceeded" % size_cap)
    done: set[tuple[int, int]] = set()
    while True:
        todo = [(u, v) for u in sorted(nset) for v in sorted(nset) if (u, v) not in done]
        if not todo:
            break
        for u, v in todo:
            res = _explore_product(intern, nset, u, v, size_cap)
            if res[0] == "unknown":
                return NucleusReport("unknown", reason=res[1])
            if res[0] == "recurrent":
                # the recurrent states never fall into the current set, so
                # they belong to it; restart the pair sweep with them added
                for r in res[1]:
                    rel = intern.element(r)
                    if not _section_closure(intern, nset, rel, size_cap) or not _section_closure(
                        intern, nset, inverse(rel), size_cap
                    ):
                        return NucleusReport("unknown", reason="size cap %d exceeded" % size_cap)
                break
            if res[1] > depth_cap:
                return NucleusReport(
                    "unknown", reason="products not absorbed within depth %d" % depth_cap
                )
            done.add((u, v))
    return NucleusReport("contracting", elements=[intern.element(k) for k in sorted(nset)])
