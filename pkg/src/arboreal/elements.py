"""Tree automorphisms presented as words over the symbols of a system.

An Element never enumerates the tree: its action, sections and powers
are evaluated lazily through the defining recursion of its system.
Equality is the word problem and is decided by synchronized bisimulation
with a budget; a successful decision is remembered, so repeated set
membership tests cost one dictionary lookup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .perms import Perm, identity, is_identity
from .system import EMPTY, FRSystem, Word, format_word, invert_word, parse_word, reduce_word

EQUALITY_BUDGET = 10**6
MINIMIZE_BUDGET = 10**5
# words longer than this are not explored: systems that are not finite
# state can double section lengths per level, so a count budget alone
# would exhaust memory long before it exhausts the count
MAX_WORD_LENGTH = 2**15


@dataclass(frozen=True)
class Exceeded:
    """A search budget ran out; a value, not an error."""

    kind: str
    budget: int

    def __bool__(self):
        raise TypeError("Exceeded is not a verdict; compare explicitly")


class Element:
    """A word over system symbols, acting on the rooted tree from the right."""

    __slots__ = ("system", "word")

    def __init__(self, system: FRSystem, word):
        self.system = system
        self.word = system.check_word(word)

    # -- construction ----------------------------------------------------

    @staticmethod
    def parse(system: FRSystem, text: str) -> "Element":
        return Element(system, parse_word(text))

    @staticmethod
    def trivial(system: FRSystem) -> "Element":
        return Element(system, EMPTY)

    @staticmethod
    def symbol(system: FRSystem, name: str) -> "Element":
        return Element(system, ((name, 1),))

    # -- basic protocol ---------------------------------------------------

    def __repr__(self):
        return "<Element %s>" % format_word(self.word)

    def __str__(self):
        return format_word(self.word)

    def __hash__(self):
        return hash((id(self.system), self.word))

    def __eq__(self, other):
        # structural identity only; semantic equality is equal()
        return isinstance(other, Element) and self.system is other.system and self.word == other.word

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __invert__(self) -> "Element":
        return inverse(self)

    def __pow__(self, n: int) -> "Element":
        return power(self, n)

    # -- evaluation --------------------------------------------------------

    @property
    def root_perm(self) -> Perm:
        return self.system.root_perm(self.word)

    def section(self, letter: int) -> "Element":
        return Element(self.system, self.system.section(self.word, letter))

    def section_at(self, vertex) -> "Element":
        w = self.word
        for x in vertex:
            w = self.system.section(w, x)
        return Element(self.system, w)

    def is_trivial_word(self) -> bool:
        return not self.word


def _same_system(g: Element, h: Element) -> FRSystem:
    if g.system is not h.system:
        raise ValueError("elements live in different systems; merge them first")
    return g.system


# -- group operations -----------------------------------------------------


def multiply(g: Element, h: Element) -> Element:
    sys = _same_system(g, h)
    return Element(sys, reduce_word(g.word + h.word))


def inverse(g: Element) -> Element:
    return Element(g.system, invert_word(g.word))


def power(g: Element, n: int) -> Element:
    base = g.word if n >= 0 else invert_word(g.word)
    out: Word = EMPTY
    for _ in range(abs(n)):
        out = reduce_word(out + base)
    return Element(g.system, out)


def act(g: Element, vertex) -> tuple[int, ...]:
    """Image of a vertex (sequence of letters) under the automorphism."""
    sys = g.system
    w = g.word
    out = []
    for x in vertex:
        if not 0 <= x < sys.degree:
            raise ValueError("letter %r outside alphabet of degree %d" % (x, sys.degree))
        out.append(sys.root_perm(w)[x])
        w = sys.section(w, x)
    return tuple(out)


def section(g: Element, vertex) -> Element:
    return g.section_at(vertex)


# -- orbits -----------------------------------------------------------------


def orbit(g: Element, letter: int) -> tuple[int, ...]:
    """Orbit of a letter under the root permutation, starting at the letter."""
    p = g.root_perm
    orb = [letter]
    y = p[letter]
    while y != letter:
        orb.append(y)
        y = p[y]
    return tuple(orb)


def orbit_power_section(g: Element, letter: int) -> tuple[int, Element]:
    """(m, g^m|_letter) for m the orbit length of the letter.

    Computed as the product of sections along the orbit, never by
    raising g to the m-th power first.
    """
    sys = g.system
    orb = orbit(g, letter)
    out: Word = EMPTY
    for y in orb:
        out = reduce_word(out + sys.section(g.word, y))
    return len(orb), Element(sys, out)


# -- the word problem --------------------------------------------------------


def is_trivial(g: Element, budget: int = EQUALITY_BUDGET):
    """True / False / Exceeded.  Bisimulation against the trivial element:
    a word is trivial iff its root permutation is the identity and all of
    its sections are trivial; visited words are assumed trivial, which is
    sound because the visited set is section-closed."""
    sys = g.system
    w = sys.find(g.word)
    if not w:
        return True
    if len(w) > MAX_WORD_LENGTH:
        return Exceeded("word length", MAX_WORD_LENGTH)
    queue = deque([w])
    seen = {w}
    while queue:
        u = queue.popleft()
        if not is_identity(sys.root_perm(u)):
            return False
        for x in range(sys.degree):
            s = sys.find(sys.section(u, x))
            if len(s) > MAX_WORD_LENGTH:
                return Exceeded("word length", MAX_WORD_LENGTH)
            if s and s not in seen:
                if len(seen) >= budget:
                    return Exceeded("visited words", budget)
                seen.add(s)
                queue.append(s)
    for u in seen:
        sys.union(u, EMPTY)
    return True


def equal(g: Element, h: Element, budget: int = EQUALITY_BUDGET):
    """Decide g == h as tree automorphisms.  True / False / Exceeded."""
    sys = _same_system(g, h)
    u, v = sys.find(g.word), sys.find(h.word)
    if u == v:
        return True
    key = (u, v) if u <= v else (v, u)
    cached = sys._eq.get(key)
    if cached is not None:
        return cached
    if sys.signature(u) != sys.signature(v):
        sys._eq[key] = False
        return False
    res = is_trivial(Element(sys, reduce_word(u + invert_word(v))), budget)
    if res is True:
        sys.union(u, v)
    if isinstance(res, bool):
        sys._eq[key] = res
    return res


class Interner:
    """Assigns stable integer keys to words by semantic equality.

    Keys are handed out in first-seen order.  Lookup first tries the
    union-find representative, then the depth-3 signature bucket, and
    only runs bisimulations against candidates sharing the signature.
    """

    def __init__(self, system: FRSystem, budget: int = EQUALITY_BUDGET):
        self.system = system
        self.budget = budget
        self.elements: list[Element] = []
        self._by_root: dict[Word, int] = {}
        self._buckets: dict[tuple, list[int]] = {}

    def __len__(self):
        return len(self.elements)

    def key(self, g: Element):
        """Key of g, or Exceeded when an equality run blows the budget."""
        sys = self.system
        root = sys.find(g.word)
        hit = self._by_root.get(root)
        if hit is not None:
            return hit
        if len(root) > MAX_WORD_LENGTH:
            return Exceeded("word length", MAX_WORD_LENGTH)
        sig = sys.signature(root)
        bucket = self._buckets.setdefault(sig, [])
        for k in bucket:
            res = equal(self.elements[k], Element(sys, root), self.budget)
            if res is True:
                self._by_root[sys.find(root)] = k
                return k
            if isinstance(res, Exceeded):
                return res
        k = len(self.elements)
        self.elements.append(Element(sys, root))
        bucket.append(k)
        self._by_root[root] = k
        return k

    def lookup(self, g: Element):
        """Key of g if semantically present, else None; never inserts."""
        sys = self.system
        root = sys.find(g.word)
        hit = self._by_root.get(root)
        if hit is not None:
            return hit
        if len(root) > MAX_WORD_LENGTH:
            return Exceeded("word length", MAX_WORD_LENGTH)
        for k in self._buckets.get(sys.signature(root), ()):
            res = equal(self.elements[k], Element(sys, root), self.budget)
            if res is True:
                self._by_root[sys.find(root)] = k
                return k
            if isinstance(res, Exceeded):
                return res
        return None

    def element(self, k: int) -> Element:
        return self.elements[k]


# -- finite-state machines ----------------------------------------------------


@dataclass(frozen=True)
class Machine:
    """Minimal complete automaton of a finite-state automorphism.

    State 0 is the initial state; states appear in breadth-first
    discovery order with letters ascending, so isomorphic machines
    produced by this module compare equal.
    """

    degree: int
    transitions: tuple[tuple[int, ...], ...]
    outputs: tuple[Perm, ...]
    trivial: int | None

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def isomorphic(self, other: "Machine") -> bool:
        return (
            self.degree == other.degree
            and self.transitions == other.transitions
            and self.outputs == other.outputs
        )

    def to_system(self, prefix: str = "s") -> tuple[FRSystem, Element]:
        """Rebuild a system with one symbol per nontrivial state; returns
        the system and the element of the initial state."""
        sys = FRSystem(self.degree)
        names = {}
        for i in range(self.n_states):
            if i != self.trivial:
                names[i] = "%s%d" % (prefix, i)
        for i, name in names.items():
            secs = []
            for x in range(self.degree):
                t = self.transitions[i][x]
                secs.append(EMPTY if t == self.trivial else ((names[t], 1),))
            sys.define(name, self.outputs[i], secs)
        if 0 in names:
            return sys, Element.symbol(sys, names[0])
        return sys, Element.trivial(sys)


def minimize(g: Element, budget: int = MINIMIZE_BUDGET):
    """Machine of g, with states folded by semantic equality, or Exceeded.

    Because states are merged by actual equality of automorphisms the
    resulting machine is minimal, and minimizing an element rebuilt from
    it yields an isomorphic machine.
    """
    sys = g.system
    interner = Interner(sys)
    start = interner.key(g)
    if isinstance(start, Exceeded):
        return start
    order = [start]
    index = {start: 0}
    transitions: list[list[int]] = []
    pos = 0
    while pos < len(order):
        cur = interner.element(order[pos])
        row = []
        for x in range(sys.degree):
            k = interner.key(cur.section(x))
            if isinstance(k, Exceeded):
                return k
            if k not in index:
                if len(order) >= budget:
                    return Exceeded("states", budget)
                index[k] = len(order)
                order.append(k)
            row.append(index[k])
        transitions.append(row)
        pos += 1
    outputs = tuple(interner.element(k).root_perm for k in order)
    trivial = None
    for i, k in enumerate(order):
        res = is_trivial(interner.element(k))
        if res is True:
            trivial = i
            break
    return Machine(
        degree=sys.degree,
        transitions=tuple(tuple(r) for r in transitions),
        outputs=outputs,
        trivial=trivial,
    )
