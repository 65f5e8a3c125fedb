"""Permutations of {0, ..., d-1} stored as image tuples.

All group actions in this package are right actions, so permutations
compose left to right: x^(p*q) = (x^p)^q.
"""

from __future__ import annotations

import itertools

Perm = tuple[int, ...]

# degree above which brute-force enumeration of Sym(X) is refused
CONJUGATOR_DEGREE_CAP = 8


class DegreeTooLarge(ValueError):
    pass


def identity(d: int) -> Perm:
    return tuple(range(d))


def is_identity(p: Perm) -> bool:
    return all(p[x] == x for x in range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """Right-action product: first apply p, then q."""
    return tuple(q[p[x]] for x in range(len(p)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def check_perm(images, d: int) -> Perm:
    p = tuple(images)
    if len(p) != d or sorted(p) != list(range(d)):
        raise ValueError("not a permutation of 0..%d: %r" % (d - 1, images))
    return p


def orbits(p: Perm) -> list[tuple[int, ...]]:
    """Orbits of <p> on letters, each starting at its least element,
    listed in order of their least elements."""
    seen = [False] * len(p)
    out = []
    for x in range(len(p)):
        if seen[x]:
            continue
        orb = [x]
        seen[x] = True
        y = p[x]
        while y != x:
            seen[y] = True
            orb.append(y)
            y = p[y]
        out.append(tuple(orb))
    return out


def conjugators(p: Perm, q: Perm) -> tuple[Perm, ...]:
    """All r with r^-1 * p * r == q, in lexicographic image order.

    Brute force over Sym(d); refuses degrees above CONJUGATOR_DEGREE_CAP.
    """
    d = len(p)
    if d != len(q):
        raise ValueError("degree mismatch")
    if d > CONJUGATOR_DEGREE_CAP:
        raise DegreeTooLarge("degree %d exceeds enumeration cap %d" % (d, CONJUGATOR_DEGREE_CAP))
    found = []
    for r in itertools.permutations(range(d)):
        # x^(r^-1 p r) == q[x]  <=>  p r == r q pointwise
        if all(r[p[x]] == q[r[x]] for x in range(d)):
            found.append(r)
    return tuple(found)


def format_perm(p: Perm) -> str:
    return "[" + " ".join(str(x) for x in p) + "]"
