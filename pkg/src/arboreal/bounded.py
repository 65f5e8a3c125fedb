"""Conjugacy restricted to finitary and bounded automorphisms.

Everything here runs over configurations: an orbit of the left input on
some level is summarized by its orbit-power pair together with the set
of section pairs that tie the conjugator states along the orbit to the
state at the least vertex.  For bounded inputs the set of reachable
configurations is finite, so the finitary decision is a fixpoint over
it, and the bounded decision combines finitary seeds with circuit rules
and an orbit-reduction closure.

The matrix procedure is the constructive cross-check: per choice of a
conjugating permutation for every configuration, a column-stochastic-
like integer matrix transports pair counts level to level and a 0/1 row
reads off how many conjugator states are active.  A conjugator bounded
along some eventually periodic choice keeps that reading bounded.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .classify import orbit_signalizer, polynomial_degree
from .conjugacy import _fresh_names, _partial_power_section, _successor_map
from .elements import EQUALITY_BUDGET, Element, Exceeded, Interner, equal, inverse, multiply
from .perms import Perm, compose, conjugators, is_identity, inverse as perm_inverse, orbits
from .system import EMPTY, FRSystem, Word, format_word, invert_word, reduce_word

log = logging.getLogger("arboreal.bounded")


class NotBounded(ValueError):
    pass


class _CapExceeded(Exception):
    def __init__(self, info):
        self.info = info


@dataclass(frozen=True)
class Configuration:
    """Main orbit-power pair plus the deduplicated dependency pairs,
    all as interner keys of one ConfigSpace."""

    main: tuple
    dp: tuple


@dataclass(frozen=True)
class _OrbitStep:
    """One orbit of a configuration under a chosen permutation: anchor
    letter, orbit size, induced configuration, and the multiset of
    dependency-pair moves (source pair, target pair), one per power."""

    letter: int
    size: int
    config: Configuration
    moves: tuple


class ConfigSpace:
    """Interner-backed store for configurations of one system.

    The trivial element is interned first so key 0 is always e; the
    dependency sets sort by key, which keeps (e,e) in front.
    """

    def __init__(self, system: FRSystem, budget: int = EQUALITY_BUDGET):
        self.system = system
        self.interner = Interner(system, budget)
        self.trivial = self.key(EMPTY)
        self._cpi: dict = {}
        self._succ: dict = {}

    def key(self, w: Word) -> int:
        k = self.interner.key(Element(self.system, w))
        if isinstance(k, Exceeded):
            raise _CapExceeded(k)
        return k

    def word(self, k: int) -> Word:
        return self.interner.elements[k].word

    def root_perm(self, k: int) -> Perm:
        return self.interner.elements[k].root_perm

    def cpi(self, ka: int, kb: int) -> tuple:
        if (ka, kb) not in self._cpi:
            self._cpi[(ka, kb)] = conjugators(self.root_perm(ka), self.root_perm(kb))
        return self._cpi[(ka, kb)]

    def config(self, main, dp) -> Configuration:
        return Configuration(tuple(main), tuple(sorted(set(dp))))

    def root_config(self, a: Element, b: Element) -> Configuration:
        return self.config((self.key(a.word), self.key(b.word)), [(self.trivial, self.trivial)])

    def pair_config(self, ka: int, kb: int) -> Configuration:
        return self.config((ka, kb), [(self.trivial, self.trivial)])

    def steps(self, cfg: Configuration, pi: Perm) -> tuple:
        """Per orbit of the main pair's left root action: the induced
        configuration one level down and the dependency-pair moves."""
        if (cfg, pi) in self._succ:
            return self._succ[(cfg, pi)]
        sys = self.system
        wa = self.word(cfg.main[0])
        wb = self.word(cfg.main[1])
        out = []
        for orb in orbits(sys.root_perm(wa)):
            x, m = orb[0], len(orb)
            main2 = (
                self.key(_partial_power_section(sys, wa, x, m)),
                self.key(_partial_power_section(sys, wb, pi[x], m)),
            )
            moves = []
            for kc, kd in cfg.dp:
                wc, wd = self.word(kc), self.word(kd)
                pow_a: Word = EMPTY
                pow_b: Word = EMPTY
                for _ in range(m):
                    c2 = sys.section(reduce_word(pow_a + wc), x)
                    d2 = sys.section(reduce_word(pow_b + wd), pi[x])
                    moves.append(((kc, kd), (self.key(c2), self.key(d2))))
                    pow_a = reduce_word(pow_a + wa)
                    pow_b = reduce_word(pow_b + wb)
            cfg2 = self.config(main2, [t for _, t in moves])
            out.append(_OrbitStep(x, m, cfg2, tuple(moves)))
        out = tuple(out)
        self._succ[(cfg, pi)] = out
        return out

    def describe(self, cfg: Configuration) -> str:
        pair = "(%s, %s)" % (format_word(self.word(cfg.main[0])), format_word(self.word(cfg.main[1])))
        dps = ", ".join(
            "(%s, %s)" % (format_word(self.word(kc)), format_word(self.word(kd)))
            for kc, kd in cfg.dp
        )
        return "{%s; DP={%s}}" % (pair, dps)


@dataclass(eq=False)
class ConfigClosure:
    """Closure from the root configuration: universe holds every branch
    explored, configs lists the surviving ones reachable through
    choices whose successors all survive."""

    space: ConfigSpace
    root: Configuration
    configs: list
    universe: dict
    viable: set
    status: str

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def viable_cpi(self, cfg: Configuration) -> tuple:
        out = []
        for pi in self.space.cpi(*cfg.main):
            steps = self.universe.get(cfg, {}).get(pi)
            if steps is not None and all(s.config in self.viable for s in steps):
                out.append(pi)
        return tuple(out)


def configurations(a: Element, b: Element, cap: int = 512) -> ConfigClosure:
    _require_bounded(a, b)
    if a.system is not b.system:
        raise ValueError("conjugacy needs both elements in one system")
    space = ConfigSpace(a.system)
    try:
        root = space.root_config(a, b)
        universe: dict = {}
        queue = [root]
        seen = {root}
        while queue:
            cfg = queue.pop(0)
            branches = {}
            for pi in space.cpi(*cfg.main):
                steps = space.steps(cfg, pi)
                branches[pi] = steps
                for s in steps:
                    if s.config not in seen:
                        if len(seen) >= cap:
                            raise _CapExceeded("config cap %d" % cap)
                        seen.add(s.config)
                        queue.append(s.config)
            universe[cfg] = branches
    except _CapExceeded as exc:
        return ConfigClosure(space, None, [], {}, set(), "exceeded: %s" % (exc.info,))
    # survival: a configuration needs a permutation all of whose induced
    # configurations survive; empty conjugator sets die and propagate up
    viable = set(universe)
    changed = True
    while changed:
        changed = False
        for cfg in list(viable):
            ok = any(
                all(s.config in viable for s in steps)
                for steps in universe[cfg].values()
            )
            if not ok:
                viable.discard(cfg)
                changed = True
    configs: list = []
    if root in viable:
        configs = [root]
        pos = 0
        listed = {root}
        while pos < len(configs):
            cfg = configs[pos]
            pos += 1
            for pi, steps in universe[cfg].items():
                if all(s.config in viable for s in steps):
                    for s in steps:
                        if s.config not in listed:
                            listed.add(s.config)
                            configs.append(s.config)
    return ConfigClosure(space, root, configs, universe, viable, "complete")


# -- finitary conjugators --------------------------------------------------------


class FinSat:
    """Least fixpoint of finitary satisfiability over configurations.

    Depth 0 holds when the main pair and every dependency pair are
    semantically equal (the trivial automorphism works); depth k+1 needs
    a permutation whose induced configurations all lie at depth <= k.
    Witnesses are synthesized bottom-up as fresh symbols.
    """

    def __init__(self, space: ConfigSpace, cap: int = 4096):
        self.space = space
        self.cap = cap
        self.univ: dict = {}
        self.depth: dict = {}
        self._pi: dict = {}
        self._witness: dict = {}
        self.status = "complete"

    def ensure(self, cfg: Configuration):
        if cfg in self.univ or self.status != "complete":
            return
        try:
            queue = [cfg]
            added = []
            while queue:
                c = queue.pop(0)
                if c in self.univ:
                    continue
                branches = {}
                for pi in self.space.cpi(*c.main):
                    steps = self.space.steps(c, pi)
                    branches[pi] = steps
                    for s in steps:
                        if s.config not in self.univ and len(self.univ) + len(queue) > self.cap:
                            raise _CapExceeded("finitary universe cap %d" % self.cap)
                        queue.append(s.config)
                self.univ[c] = branches
                added.append(c)
        except _CapExceeded as exc:
            self.status = "exceeded: %s" % (exc.info,)
            return
        if added:
            self._refix()

    def _refix(self):
        self.depth = {}
        self._pi = {}
        for cfg in self.univ:
            if cfg.main[0] == cfg.main[1] and all(kc == kd for kc, kd in cfg.dp):
                self.depth[cfg] = 0
        k = 0
        changed = True
        while changed:
            changed = False
            k += 1
            for cfg, branches in self.univ.items():
                if cfg in self.depth:
                    continue
                for pi in self.space.cpi(*cfg.main):
                    steps = branches[pi]
                    if all(s.config in self.depth and self.depth[s.config] < k for s in steps):
                        self.depth[cfg] = k
                        self._pi[cfg] = pi
                        changed = True
                        break

    def satisfiable(self, cfg: Configuration):
        self.ensure(cfg)
        return self.depth.get(cfg)

    def witness_word(self, cfg: Configuration) -> Word:
        """Word of a finitary automorphism satisfying cfg; requires
        satisfiable(cfg) is not None."""
        if cfg in self._witness:
            return self._witness[cfg]
        d = self.satisfiable(cfg)
        if d is None:
            raise ValueError("configuration is not finitary-satisfiable")
        if d == 0:
            self._witness[cfg] = EMPTY
            return EMPTY
        sys = self.space.system
        pi = self._pi[cfg]
        wa = self.space.word(cfg.main[0])
        wb = self.space.word(cfg.main[1])
        sections: list = [EMPTY] * sys.degree
        for step in self.univ[cfg][pi]:
            wit = self.witness_word(step.config)
            orb = next(o for o in orbits(sys.root_perm(wa)) if o[0] == step.letter)
            sections[step.letter] = wit
            for p in range(1, step.size):
                lhs = invert_word(_partial_power_section(sys, wa, step.letter, p))
                rhs = _partial_power_section(sys, wb, pi[step.letter], p)
                sections[orb[p]] = reduce_word(lhs + wit + rhs)
        name = _fresh_names(sys, ["f"])[0]
        sys.define(name, pi, sections)
        sys.validate()
        w: Word = ((name, 1),)
        self._witness[cfg] = w
        return w


@dataclass(eq=False)
class FinSatReport:
    closure: ConfigClosure
    sat: list  # (Configuration, depth) over the surviving closure
    root_depth: int | None
    witness: Element | None
    status: str


def finitary_satisfiable(closure: ConfigClosure) -> FinSatReport:
    """Satisfiable subset of a closure, with the depth at which each
    configuration enters the fixpoint and a root witness when the root
    is satisfiable."""
    if not closure.complete:
        return FinSatReport(closure, [], None, None, closure.status)
    fin = FinSat(closure.space)
    fin.univ = {cfg: dict(branches) for cfg, branches in closure.universe.items()}
    fin._refix()
    sat = [(cfg, fin.depth[cfg]) for cfg in closure.configs if cfg in fin.depth]
    root_depth = fin.depth.get(closure.root)
    witness = None
    if root_depth is not None:
        witness = Element(closure.space.system, fin.witness_word(closure.root))
    return FinSatReport(closure, sat, root_depth, witness, fin.status)


@dataclass(eq=False)
class RestrictedDecision:
    tag: str  # "conjugate" | "not_conjugate" | "unknown"
    conjugator: Element | None = None
    cls: str | None = None  # "finitary" | "bounded"
    certificate: str | None = None

    @property
    def conjugate(self) -> bool:
        return self.tag == "conjugate"

    def __str__(self):
        if self.tag == "conjugate":
            return "Conjugate(%s)" % self.cls
        if self.tag == "not_conjugate":
            return "NotConjugate"
        return "Unknown(%s)" % (self.certificate,)


def conjugate_in_pol_minus1(a: Element, b: Element, cap: int = 512,
                            budget: int = EQUALITY_BUDGET) -> RestrictedDecision:
    """Conjugacy by a finitary automorphism."""
    closure = configurations(a, b, cap)
    if not closure.complete:
        return RestrictedDecision("unknown", certificate=closure.status)
    report = finitary_satisfiable(closure)
    if report.status != "complete":
        return RestrictedDecision("unknown", certificate=report.status)
    if report.root_depth is None:
        n_sat = len(report.sat)
        return RestrictedDecision(
            "not_conjugate",
            certificate="root configuration unsatisfiable; %d of %d surviving configurations admit finitary conjugators"
            % (n_sat, len(closure.configs)),
        )
    h = report.witness
    check = equal(multiply(multiply(inverse(h), a), h), b, budget)
    if check is not True:
        log.error("finitary witness failed verification for (%s, %s)", a, b)
        return RestrictedDecision("unknown", certificate="witness verification failed")
    return RestrictedDecision(
        "conjugate", h, "finitary", certificate="finitary conjugator of depth %d" % report.root_depth
    )


# -- the bounded decision (cyclic structure) -------------------------------------


def _require_bounded(*gs: Element):
    for g in gs:
        cls = polynomial_degree(g)
        if not cls.bounded:
            raise NotBounded("input %s classifies as %s, not bounded" % (g, cls))


def conjugate_in_pol0_cyclic(a: Element, b: Element, cap: int = 512,
                             budget: int = EQUALITY_BUDGET) -> RestrictedDecision:
    """Conjugacy of bounded automorphisms by a bounded automorphism.

    Monotone fixpoint over orbit-power pairs with four rules:
      seed      -- the pair's own configuration has a finitary conjugator;
      moving    -- a conjugator lying on a circuit whose address moves
                   under the left input: then some orbit companion state
                   is finitary, and the circuit state is recovered from
                   it in closed form (candidate verified exactly);
      circuit   -- a conjugator whose circuit address is fixed letterwise:
                   a cycle over (pair, permutation) vertices through fixed
                   letters, every off-cycle orbit finitary-satisfiable
                   (off-cycle sections of a bounded automaton are always
                   finitary, so this rule is sound and exhaustive for
                   such conjugators up to cycles visiting distinct pairs);
      reduction -- some permutation sends every orbit of the pair to an
                   already-distinguished pair.
    The rule set follows the structure theory of bounded automata; its
    completeness is not proved here, so every positive answer carries an
    exactly verified conjugator, and negatives report the stable set.
    """
    _require_bounded(a, b)
    sys = a.system
    if b.system is not sys:
        raise ValueError("conjugacy needs both elements in one system")
    os_a = orbit_signalizer(a, cap, letters="all")
    os_b = orbit_signalizer(b, cap, letters="all")
    if not (os_a.complete and os_b.complete):
        return RestrictedDecision("unknown", certificate="orbit-power closure exceeded cap %d" % cap)
    space = ConfigSpace(sys)
    fin = FinSat(space, cap=max(4096, cap * 8))
    try:
        ka = [space.key(g.word) for g in os_a.elements]
        kb = [space.key(g.word) for g in os_b.elements]
    except _CapExceeded as exc:
        return RestrictedDecision("unknown", certificate="interner cap: %s" % (exc.info,))
    idx_a = {k: i for i, k in enumerate(ka)}
    idx_b = {k: j for j, k in enumerate(kb)}
    succ_a = _successor_map(os_a)
    succ_b = _successor_map(os_b)
    pairs = [(i, j) for i in range(len(ka)) for j in range(len(kb))]
    dist: dict = {}

    def pair_cpi(i, j):
        return space.cpi(ka[i], kb[j])

    # seed: finitary conjugator for the pair itself.  The input pair sits
    # first; once it is distinguished the remaining pairs are irrelevant,
    # since synthesis only follows rule references downward.
    for i, j in pairs:
        cfg = space.pair_config(ka[i], kb[j])
        if fin.satisfiable(cfg) is not None:
            dist[(i, j)] = ("finitary", cfg)
        if (0, 0) in dist:
            break
    if fin.status != "complete":
        return RestrictedDecision("unknown", certificate=fin.status)

    # moving circuit: the conjugator equals its own section at a letter u
    # moved by c; the state at (u)c^t is then finitary and determines it
    for i, j in pairs:
        if (0, 0) in dist:
            break
        if (i, j) in dist:
            continue
        c, d = os_a.elements[i], os_b.elements[j]
        found = None
        for pi in pair_cpi(i, j):
            for orb in orbits(c.root_perm):
                m = len(orb)
                if m < 2:
                    continue
                for pos in range(m):
                    u = orb[pos]
                    for t in range(1, m):
                        v = orb[(pos + t) % m]
                        cfg_v = space.pair_config(
                            space.key(_partial_power_section(sys, c.word, v, m)),
                            space.key(_partial_power_section(sys, d.word, pi[v], m)),
                        )
                        if fin.satisfiable(cfg_v) is None:
                            continue
                        g_word = fin.witness_word(cfg_v)
                        h_word = reduce_word(
                            _partial_power_section(sys, c.word, u, t)
                            + g_word
                            + invert_word(_partial_power_section(sys, d.word, pi[u], t))
                        )
                        h = Element(sys, h_word)
                        if equal(multiply(multiply(inverse(h), c), h), d, budget) is True:
                            found = ("moving", h_word)
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                break
        if found:
            dist[(i, j)] = found
    if fin.status != "complete":
        return RestrictedDecision("unknown", certificate=fin.status)

    # fixed circuit: cycles through letterwise-fixed successors whose
    # off-cycle orbits are all finitary-satisfiable
    def circuit_edges(i, j, pi):
        """Fixed letters x usable as a circuit step at (i, j, pi): every
        other orbit's induced configuration is finitary-satisfiable."""
        cfg = space.pair_config(ka[i], kb[j])
        steps = space.steps(cfg, pi)
        out = []
        for step in steps:
            if step.size != 1:
                continue
            if all(
                fin.satisfiable(other.config) is not None
                for other in steps
                if other.letter != step.letter
            ):
                i2 = idx_a.get(step.config.main[0])
                j2 = idx_b.get(step.config.main[1])
                if i2 is not None and j2 is not None:
                    out.append((step.letter, i2, j2, steps))
        return out

    edge_cache: dict = {}

    def edges_of(v):
        if v not in edge_cache:
            edge_cache[v] = circuit_edges(*v)
        return edge_cache[v]

    def find_cycle(start):
        # DFS for a simple cycle of (pair, perm) vertices with pairwise
        # distinct pairs returning to start
        path = [start]
        onpath_pairs = {start[:2]}
        used_letters: list = []

        def rec(v):
            for x, i2, j2, steps in edges_of(v):
                for tau in pair_cpi(i2, j2):
                    w = (i2, j2, tau)
                    if w == start:
                        used_letters.append(x)
                        return True
                    if (i2, j2) in onpath_pairs:
                        continue
                    path.append(w)
                    onpath_pairs.add((i2, j2))
                    used_letters.append(x)
                    if rec(w):
                        return True
                    path.pop()
                    onpath_pairs.discard((i2, j2))
                    used_letters.pop()
            return False

        if rec(start):
            return list(path), list(used_letters)
        return None

    for i, j in pairs:
        if (0, 0) in dist:
            break
        if (i, j) in dist:
            continue
        hit = None
        for pi in pair_cpi(i, j):
            hit = find_cycle((i, j, pi))
            if hit:
                break
        if hit:
            cycle, letters = hit
            for t, (vi, vj, vpi) in enumerate(cycle):
                if (vi, vj) not in dist:
                    rotated = cycle[t:] + cycle[:t]
                    rl = letters[t:] + letters[:t]
                    dist[(vi, vj)] = ("circuit", rotated, rl)
    if fin.status != "complete":
        return RestrictedDecision("unknown", certificate=fin.status)

    # reduction closure: all orbit successors already distinguished
    changed = (0, 0) not in dist
    while changed:
        changed = False
        for i, j in pairs:
            if (0, 0) in dist:
                changed = False
                break
            if (i, j) in dist:
                continue
            c = os_a.elements[i]
            for pi in pair_cpi(i, j):
                plan = []
                ok = True
                for orb in orbits(c.root_perm):
                    x = orb[0]
                    m, i2 = succ_a[(i, x)]
                    _, j2 = succ_b[(j, pi[x])]
                    if (i2, j2) not in dist:
                        ok = False
                        break
                    plan.append((orb, i2, j2))
                if ok:
                    dist[(i, j)] = ("reduction", pi, plan)
                    changed = True
                    break

    if (0, 0) not in dist:
        return RestrictedDecision(
            "not_conjugate",
            certificate="fixpoint distinguished %d of %d orbit-power pairs without reaching the input pair"
            % (len(dist), len(pairs)),
        )

    # synthesis of the witness, one rule at a time
    synth_memo: dict = {}

    def synth(pair) -> Word:
        if pair in synth_memo:
            return synth_memo[pair]
        rule = dist[pair]
        i, j = pair
        wc, wd = os_a.elements[i].word, os_b.elements[j].word
        if rule[0] == "finitary":
            w = fin.witness_word(rule[1])
        elif rule[0] == "moving":
            w = rule[1]
        elif rule[0] == "circuit":
            cycle, letters = rule[1], rule[2]
            names = _fresh_names(sys, ["h"] * len(cycle))
            for t, (vi, vj, vpi) in enumerate(cycle):
                synth_memo[(vi, vj)] = ((names[t], 1),)
            for t, (vi, vj, vpi) in enumerate(cycle):
                wvc = os_a.elements[vi].word
                wvd = os_b.elements[vj].word
                cfg = space.pair_config(ka[vi], kb[vj])
                sections: list = [EMPTY] * sys.degree
                for step in space.steps(cfg, vpi):
                    if step.letter == letters[t]:
                        sections[step.letter] = ((names[(t + 1) % len(cycle)], 1),)
                        continue
                    wit = fin.witness_word(step.config)
                    orb = next(o for o in orbits(sys.root_perm(wvc)) if o[0] == step.letter)
                    sections[step.letter] = wit
                    for p in range(1, step.size):
                        lhs = invert_word(_partial_power_section(sys, wvc, step.letter, p))
                        rhs = _partial_power_section(sys, wvd, vpi[step.letter], p)
                        sections[orb[p]] = reduce_word(lhs + wit + rhs)
                sys.define(names[t], vpi, sections)
            sys.validate()
            w = synth_memo[pair]
        else:  # reduction
            pi, plan = rule[1], rule[2]
            name = _fresh_names(sys, ["h"])[0]
            sections = [EMPTY] * sys.degree
            for orb, i2, j2 in plan:
                x = orb[0]
                wit = synth((i2, j2))
                sections[x] = wit
                for p in range(1, len(orb)):
                    lhs = invert_word(_partial_power_section(sys, wc, x, p))
                    rhs = _partial_power_section(sys, wd, pi[x], p)
                    sections[orb[p]] = reduce_word(lhs + wit + rhs)
            sys.define(name, pi, sections)
            sys.validate()
            w = ((name, 1),)
        synth_memo[pair] = w
        return w

    h = Element(sys, synth((0, 0)))
    check = equal(multiply(multiply(inverse(h), a), h), b, budget)
    if check is not True:
        log.error("bounded witness failed verification for (%s, %s): %r", a, b, check)
        return RestrictedDecision("unknown", certificate="witness verification failed")
    cls = "finitary" if dist[(0, 0)][0] == "finitary" else "bounded"
    note = "rule %s" % dist[(0, 0)][0]
    wcls = polynomial_degree(h)
    if not wcls.bounded:
        log.warning("bounded witness classified as %s", wcls)
        note += "; witness classification %s" % (wcls,)
    return RestrictedDecision("conjugate", h, cls, certificate=note)


def conjugate_in_pol_inf(a: Element, b: Element, cap: int = 512,
                         budget: int = EQUALITY_BUDGET) -> RestrictedDecision:
    """For bounded inputs, conjugacy by any polynomial-activity
    automorphism coincides with conjugacy by a bounded one."""
    return conjugate_in_pol0_cyclic(a, b, cap, budget)


# -- the active-state matrix system ----------------------------------------------


@dataclass(eq=False)
class ChoiceSystem:
    """Coordinates are (configuration, dependency pair) in discovery and
    key order.  A choice assigns one surviving permutation to every
    configuration; matrix(choice) transports pair counts one level down
    and theta(choice) flags the coordinates whose conjugator states are
    active at the root of their subtree."""

    closure: ConfigClosure
    coords: list  # (config index, (kc, kd))
    per_config: list  # tuple of permutations per configuration
    u0: tuple
    status: str

    @property
    def space(self) -> ConfigSpace:
        return self.closure.space

    @property
    def configs(self) -> list:
        return self.closure.configs

    @property
    def dim(self) -> int:
        return len(self.coords)

    def choices(self):
        return itertools.product(*self.per_config) if self.per_config else iter(())

    def coord_labels(self) -> list:
        sp = self.space
        return [
            "C%d:(%s, %s)" % (ci + 1, format_word(sp.word(kc)), format_word(sp.word(kd)))
            for ci, (kc, kd) in self.coords
        ]

    def matrix(self, choice) -> tuple:
        if not hasattr(self, "_mat"):
            self._mat = {}
        if choice in self._mat:
            return self._mat[choice]
        index = {coord: r for r, coord in enumerate(self.coords)}
        cfg_index = {cfg: ci for ci, cfg in enumerate(self.configs)}
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for ci, cfg in enumerate(self.configs):
            for step in self.space.steps(cfg, choice[ci]):
                ci2 = cfg_index[step.config]
                for src, tgt in step.moves:
                    rows[index[(ci2, tgt)]][index[(ci, src)]] += 1
        out = tuple(tuple(r) for r in rows)
        self._mat[choice] = out
        return out

    def theta(self, choice) -> tuple:
        sp = self.space
        out = []
        for ci, (kc, kd) in self.coords:
            p = compose(compose(perm_inverse(sp.root_perm(kc)), choice[ci]), sp.root_perm(kd))
            out.append(0 if is_identity(p) else 1)
        return tuple(out)


def choice_system(a: Element, b: Element, cap: int = 512) -> ChoiceSystem:
    _require_bounded(a, b)
    closure = configurations(a, b, cap)
    if not closure.complete:
        return ChoiceSystem(closure, [], [], (), closure.status)
    coords = [(ci, pair) for ci, cfg in enumerate(closure.configs) for pair in cfg.dp]
    per_config = [closure.viable_cpi(cfg) for cfg in closure.configs]
    ke = closure.space.trivial
    u0 = tuple(
        1 if (ci == 0 and pair == (ke, ke)) else 0 for ci, pair in coords
    )
    status = "complete" if closure.configs else "empty"
    return ChoiceSystem(closure, coords, per_config, u0, status)


@dataclass(frozen=True)
class SearchResult:
    tag: str  # "found" | "not_found"
    preperiod: tuple = ()
    cycle: tuple = ()
    reason: str | None = None

    @property
    def found(self) -> bool:
        return self.tag == "found"


def _saturating_step(u, mat, threshold):
    n = len(u)
    out = []
    for r in range(n):
        row = mat[r]
        total = 0
        for c in range(n):
            if row[c]:
                total += row[c] * u[c]
        out.append(total if total < threshold else threshold)
    return tuple(out)


def _primitive(q) -> bool:
    n = len(q)
    for d in range(1, n):
        if n % d == 0 and q == q[:d] * (n // d):
            return False
    return True


def bounded_choice_search(csys: ChoiceSystem, preperiod: int = 4, period: int = 6,
                          threshold: int = 2**16, max_passes: int = 256,
                          choice_cap: int = 4096, work_cap: int = 1 << 22) -> SearchResult:
    """Eventually periodic choice with bounded activity, within bounds.

    Vector entries saturate at the threshold.  A coordinate below the
    threshold always carries its exact value (any saturated input would
    saturate it too), so once the per-cycle state repeats, the verdict
    reads the attractor: the pattern counts as bounded iff no coordinate
    read by a theta row is saturated anywhere along the repeating loop.
    not_found is inconclusive on its own; the cyclic procedure decides.

    The choice space is exponential in the number of configurations, so
    the enumeration is metered: more than choice_cap surviving choices,
    or more than work_cap scalar operations, ends the search
    inconclusively with the cap named in the reason.
    """
    if csys.status != "complete" or csys.dim == 0:
        return SearchResult("not_found", reason="no usable choice system (%s)" % csys.status)
    choice_list = list(itertools.islice(csys.choices(), choice_cap + 1))
    if not choice_list:
        return SearchResult("not_found", reason="no surviving choices")
    if len(choice_list) > choice_cap:
        return SearchResult("not_found", reason="choice space exceeds %d patterns" % choice_cap)
    thetas = {ch: csys.theta(ch) for ch in choice_list}
    mats = {ch: csys.matrix(ch) for ch in choice_list}
    cost = csys.dim * csys.dim
    budget = [work_cap]

    def step(u, mat):
        budget[0] -= cost
        if budget[0] < 0:
            raise _CapExceeded(("search work", work_cap))
        return _saturating_step(u, mat, threshold)

    # distinct saturated states reachable within the preperiod bound,
    # thinned to minimal elements: the dynamics is monotone, so a choice
    # bounded from a larger state is bounded from a smaller one as well
    def search():
        prefix_of = {csys.u0: ()}
        frontier = [csys.u0]
        for _ in range(preperiod):
            nxt = []
            for u in frontier:
                for ch in choice_list:
                    v = step(u, mats[ch])
                    if v not in prefix_of:
                        prefix_of[v] = prefix_of[u] + (ch,)
                        nxt.append(v)
            frontier = nxt
        states = list(prefix_of)
        starts = [
            (s, prefix_of[s])
            for s in states
            if not any(t != s and all(tv <= sv for tv, sv in zip(t, s)) for t in states)
        ]

        def bounded_from(state, q) -> bool:
            seen = {state: 0}
            boundary = [state]
            u = state
            for _ in range(max_passes):
                for ch in q:
                    u = step(u, mats[ch])
                if u in seen:
                    loop = boundary[seen[u]:]
                    for s in loop:
                        v = s
                        for ch in q:
                            th = thetas[ch]
                            if any(th[k] and v[k] >= threshold for k in range(len(v))):
                                return False
                            v = step(v, mats[ch])
                    return True
                seen[u] = len(boundary)
                boundary.append(u)
            return False

        for length in range(1, period + 1):
            for q in itertools.product(choice_list, repeat=length):
                if not _primitive(q):
                    continue
                for state, prefix in starts:
                    if bounded_from(state, q):
                        return SearchResult("found", prefix, q)
        return SearchResult(
            "not_found",
            reason="no bounded pattern with preperiod <= %d, period <= %d" % (preperiod, period),
        )

    try:
        return search()
    except _CapExceeded:
        return SearchResult(
            "not_found",
            reason="work budget %d exhausted before the bounds were covered" % work_cap,
        )
