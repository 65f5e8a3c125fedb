"""Functionally recursive systems over a finite alphabet.

A system is a set of named symbols.  Each symbol has a root permutation
and one section word per letter; section words may reference any symbol
of the system, including the symbol itself and symbols defined later in
the file.  Group elements are words over the symbols (see elements.py).

Text format, one definition per line:

    alphabet 2
    a = (e, a) [1 0]        # adding machine
    b = (a, b)              # permutation omitted: identity

Words are `e` or `*`-joined factors `sym` / `sym^-1`.  The name `e` is
reserved for the trivial element.
"""

from __future__ import annotations

import re

from .perms import Perm, check_perm, format_perm, identity, inverse as perm_inverse, is_identity

# a word is a tuple of (symbol, exponent) with exponent +1 or -1
Word = tuple[tuple[str, int], ...]

EMPTY: Word = ()
TRIVIAL_NAME = "e"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class DslError(ValueError):
    """Parse or validation failure, with 1-based line/column position."""

    def __init__(self, msg: str, line: int, col: int):
        super().__init__("line %d, col %d: %s" % (line, col, msg))
        self.line = line
        self.col = col


def reduce_word(w) -> Word:
    """Free reduction: cancel adjacent sym * sym^-1 pairs."""
    out: list[tuple[str, int]] = []
    for f in w:
        if out and out[-1][0] == f[0] and out[-1][1] == -f[1]:
            out.pop()
        else:
            out.append(f)
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((s, -x) for s, x in reversed(w))


def format_word(w: Word) -> str:
    if not w:
        return TRIVIAL_NAME
    return "*".join(s if x == 1 else s + "^-1" for s, x in w)


class FRSystem:
    """Registry of symbol definitions plus evaluation caches.

    Append-only: new symbols may be defined at any time but existing
    definitions never change, so cached sections, root permutations and
    resolved equalities stay valid.  Reads are safe from multiple
    threads under the GIL; concurrent definition is not supported.
    """

    def __init__(self, degree: int):
        if degree < 2:
            raise ValueError("alphabet degree must be at least 2")
        self.degree = degree
        self._defs: dict[str, tuple[Perm, tuple[Word, ...]]] = {}
        self._order: list[str] = []
        # caches, keyed by reduced words
        self._root: dict[Word, Perm] = {}
        self._sect: dict[tuple[Word, int], Word] = {}
        self._sig: dict[Word, tuple] = {}
        self._parent: dict[Word, Word] = {}
        self._eq: dict[tuple[Word, Word], bool] = {}

    # -- definitions ---------------------------------------------------

    def define(self, name: str, perm, sections) -> None:
        if name == TRIVIAL_NAME:
            raise ValueError("'%s' is reserved for the trivial element" % TRIVIAL_NAME)
        if not _NAME_RE.fullmatch(name):
            raise ValueError("invalid symbol name %r" % name)
        if name in self._defs:
            raise ValueError("symbol %r already defined" % name)
        p = check_perm(perm, self.degree)
        secs = tuple(reduce_word(s) for s in sections)
        if len(secs) != self.degree:
            raise ValueError("expected %d sections for %r, got %d" % (self.degree, name, len(secs)))
        self._defs[name] = (p, secs)
        self._order.append(name)

    def validate(self) -> None:
        """Check every referenced symbol is defined."""
        for name in self._order:
            _, secs = self._defs[name]
            for w in secs:
                for s, _ in w:
                    if s not in self._defs:
                        raise ValueError("section of %r uses undefined symbol %r" % (name, s))

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self._order)

    def definition(self, name: str) -> tuple[Perm, tuple[Word, ...]]:
        return self._defs[name]

    def fresh_name(self, base: str) -> str:
        if base not in self._defs and base != TRIVIAL_NAME and _NAME_RE.fullmatch(base):
            return base
        i = 2
        while "%s_%d" % (base, i) in self._defs:
            i += 1
        return "%s_%d" % (base, i)

    # -- word-level evaluation ------------------------------------------

    def check_word(self, w) -> Word:
        w = reduce_word(w)
        for s, x in w:
            if s not in self._defs:
                raise ValueError("undefined symbol %r" % s)
            if x not in (1, -1):
                raise ValueError("bad exponent %r" % x)
        return w

    def root_perm(self, w: Word) -> Perm:
        cached = self._root.get(w)
        if cached is not None:
            return cached
        p = identity(self.degree)
        for s, x in w:
            sp = self._defs[s][0]
            p = tuple((sp[y] if x == 1 else perm_inverse(sp)[y]) for y in p)
        self._root[w] = p
        return p

    def section(self, w: Word, letter: int) -> Word:
        """Section of the word at a first-level letter.

        Uses (g*h)|_x = g|_x * h|_(x^g) and g^-1|_x = (g|_(x^(g^-1)))^-1.
        """
        key = (w, letter)
        cached = self._sect.get(key)
        if cached is not None:
            return cached
        out: list[tuple[str, int]] = []
        y = letter
        for s, x in w:
            p, secs = self._defs[s]
            if x == 1:
                out.extend(secs[y])
                y = p[y]
            else:
                z = perm_inverse(p)[y]
                out.extend(invert_word(secs[z]))
                y = z
        res = reduce_word(out)
        self._sect[key] = res
        return res

    def signature(self, w: Word, depth: int = 3) -> tuple:
        """Images of all words up to the given depth; a cheap invariant
        used to avoid bisimulation runs between obviously distinct words."""
        cached = self._sig.get(w)
        if cached is not None:
            return cached
        rows = []
        frontier = [(w, ())]
        for _ in range(depth):
            nxt = []
            row = []
            for u, prefix in frontier:
                p = self.root_perm(u)
                row.append(p)
                for x in range(self.degree):
                    nxt.append((self.section(u, x), prefix + (x,)))
            rows.append(tuple(row))
            frontier = nxt
        sig = tuple(rows)
        self._sig[w] = sig
        return sig

    # -- union-find over words proven equal ------------------------------

    def find(self, w: Word) -> Word:
        parent = self._parent
        root = w
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(w, w) != w:
            parent[w], w = root, parent[w]
        return root

    def union(self, u: Word, v: Word) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return
        # keep the shorter word as representative; ties break lexically
        if (len(rv), rv) < (len(ru), ru):
            ru, rv = rv, ru
        self._parent[rv] = ru


def merge_into(dst: FRSystem, src: FRSystem) -> dict[str, str]:
    """Copy the definitions of src into dst under fresh names.

    Returns the renaming map.  Words of src are translated with
    rename_word.  The two systems must share the alphabet degree.
    """
    if dst.degree != src.degree:
        raise ValueError("cannot merge systems with different alphabets")
    ren: dict[str, str] = {}
    for name in src.symbols:
        ren[name] = dst.fresh_name(name)
    for name in src.symbols:
        perm, secs = src.definition(name)
        dst.define(ren[name], perm, tuple(rename_word(w, ren) for w in secs))
    return ren


def rename_word(w: Word, ren: dict[str, str]) -> Word:
    return tuple((ren.get(s, s), x) for s, x in w)


# -- parsing ------------------------------------------------------------


def parse_word(text: str, line: int = 1, col: int = 1, degree_hint: int | None = None) -> Word:
    """Parse a section word: `e` or `*`-joined `sym` / `sym^-1` factors."""
    out: list[tuple[str, int]] = []
    pos = 0
    text = text.strip()
    if not text:
        raise DslError("empty word", line, col)
    for part in text.split("*"):
        p = part.strip()
        here = col + pos
        pos += len(part) + 1
        if not p:
            raise DslError("empty factor", line, here)
        exp = 1
        if p.endswith("^-1"):
            exp = -1
            p = p[:-3].strip()
        elif "^" in p:
            raise DslError("only the exponent ^-1 is supported", line, here)
        if p == TRIVIAL_NAME:
            if exp == -1:
                raise DslError("'e' takes no exponent", line, here)
            continue
        if not _NAME_RE.fullmatch(p):
            raise DslError("invalid symbol name %r" % p, line, here)
        out.append((p, exp))
    return reduce_word(tuple(out))


def _split_sections(body: str, line: int, col: int) -> list[tuple[str, int]]:
    """Split the inside of (...) on top-level commas, keeping column offsets."""
    parts = []
    start = 0
    for i, ch in enumerate(body):
        if ch == ",":
            parts.append((body[start:i], col + start))
            start = i + 1
    parts.append((body[start:], col + start))
    return parts


def parse_system(text: str) -> FRSystem:
    sys: FRSystem | None = None
    pending: list[tuple[str, str, Perm | None, list[Word], int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if sys is None:
            m = re.fullmatch(r"\s*alphabet\s+(\d+)\s*", line)
            if not m:
                raise DslError("expected 'alphabet <degree>' on the first line", lineno, 1)
            degree = int(m.group(1))
            if degree < 2:
                raise DslError("alphabet degree must be at least 2", lineno, line.find(m.group(1)) + 1)
            sys = FRSystem(degree)
            continue
        m = re.match(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*\(", line)
        if not m:
            raise DslError("expected '<name> = (w_0, ..., w_%d) [perm]'" % (sys.degree - 1), lineno, 1)
        name = m.group(1)
        if name == TRIVIAL_NAME:
            raise DslError("'e' is reserved and cannot be defined", lineno, line.find(name) + 1)
        open_at = m.end() - 1
        close_at = line.find(")", open_at)
        if close_at < 0:
            raise DslError("unclosed section list", lineno, open_at + 1)
        sections = []
        for part, pcol in _split_sections(line[open_at + 1 : close_at], lineno, open_at + 2):
            sections.append(parse_word(part, lineno, pcol))
        if len(sections) != sys.degree:
            raise DslError(
                "expected %d sections, got %d" % (sys.degree, len(sections)), lineno, open_at + 1
            )
        rest = line[close_at + 1 :].strip()
        if rest:
            pm = re.fullmatch(r"\[\s*((?:\d+\s*)+)\]", rest)
            if not pm:
                raise DslError("bad permutation literal %r" % rest, lineno, close_at + 2)
            images = [int(t) for t in pm.group(1).split()]
            if sorted(images) != list(range(sys.degree)):
                raise DslError("not a permutation of 0..%d: %r" % (sys.degree - 1, images), lineno, close_at + 2)
            perm = tuple(images)
        else:
            perm = identity(sys.degree)
        try:
            sys.define(name, perm, sections)
        except ValueError as exc:
            raise DslError(str(exc), lineno, 1) from None
    if sys is None:
        raise DslError("empty input", 1, 1)
    try:
        sys.validate()
    except ValueError as exc:
        raise DslError(str(exc), 1, 1) from None
    return sys


def format_system(sys: FRSystem, roots: list[str] | None = None) -> str:
    """Render definitions back to the text format.

    With roots given, only symbols reachable from them are printed, in
    definition order; this keeps output stable when a system has been
    extended by later constructions.
    """
    if roots is None:
        names = list(sys.symbols)
    else:
        keep = set()
        stack = list(roots)
        while stack:
            n = stack.pop()
            if n in keep:
                continue
            keep.add(n)
            for w in sys.definition(n)[1]:
                stack.extend(s for s, _ in w)
        names = [n for n in sys.symbols if n in keep]
    lines = ["alphabet %d" % sys.degree]
    for n in names:
        perm, secs = sys.definition(n)
        body = ", ".join(format_word(w) for w in secs)
        if is_identity(perm):
            lines.append("%s = (%s)" % (n, body))
        else:
            lines.append("%s = (%s) %s" % (n, body, format_perm(perm)))
    return "\n".join(lines) + "\n"
