"""Shared systems for the suite.

Each constant is a DSL text; `one` wraps a single defined symbol as an
element.  Tests parse fresh copies so synthesized conjugators never
leak between cases.
"""

import pytest

from arboreal import Element
from arboreal.system import parse_system

# binary odometer: infinite order, bounded, one nontrivial state
ODOMETER = """\
alphabet 2
a = (e, a) [1 0]
"""

# the odometer next to its twisted sibling (inverse up to conjugation)
TWISTED = """\
alphabet 2
a = (e, a) [1 0]
b = (e, b^-1) [1 0]
"""

# two carry machines threading a root swap down opposite sides
CARRY = """\
alphabet 2
s = (e, e) [1 0]
p = (s, p)
q = (q, s)
"""

# one symbol per activity class
ZOO = """\
alphabet 2
s = (e, e) [1 0]
a = (e, a) [1 0]
m = (a, m)
l = (l, l) [1 0]
"""

# exponential activity; its orbit-power closure keeps growing
BRANCH = """\
alphabet 2
a = (e, a) [1 0]
b = (a, c) [1 0]
c = (a, b)
"""


def one(sys, name: str) -> Element:
    return Element(sys, ((name, 1),))


@pytest.fixture
def odometer():
    sys = parse_system(ODOMETER)
    return sys, one(sys, "a")


@pytest.fixture
def twisted():
    sys = parse_system(TWISTED)
    return sys, one(sys, "a"), one(sys, "b")


@pytest.fixture
def carry():
    sys = parse_system(CARRY)
    return sys, one(sys, "p"), one(sys, "q")


@pytest.fixture
def zoo():
    return parse_system(ZOO)


@pytest.fixture
def branch():
    sys = parse_system(BRANCH)
    return sys, one(sys, "b")
