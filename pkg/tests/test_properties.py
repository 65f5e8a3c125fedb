"""Property checks over seeded random bounded machines."""

from hypothesis import given, settings, strategies as st

from arboreal import (
    Element,
    act,
    equal,
    inverse,
    is_trivial,
    minimize,
    multiply,
    orbit,
    orbit_power_section,
    orbit_tree_code,
    power,
    random_bounded,
    section,
    truncated_order,
)
from arboreal.system import merge_into

seeds = st.integers(min_value=0, max_value=10 ** 6)
letters = st.integers(min_value=0, max_value=1)
vertices = st.lists(letters, min_size=1, max_size=6).map(tuple)


def elements_of(seed: int):
    sys = random_bounded(seed)
    names = list(sys.symbols)
    g = Element(sys, ((names[-1], 1),))
    h = Element(sys, ((names[0], 1), (names[-1], -1)))
    return sys, g, h


@settings(max_examples=40, deadline=None)
@given(seeds, vertices)
def test_action_is_a_right_action(seed, v):
    _, g, h = elements_of(seed)
    assert act(multiply(g, h), v) == act(h, act(g, v))
    assert act(Element(g.system, ()), v) == v


@settings(max_examples=40, deadline=None)
@given(seeds, vertices)
def test_inverse_reverses_the_action(seed, v):
    _, g, _ = elements_of(seed)
    assert act(inverse(g), act(g, v)) == v


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_products_cancel(seed):
    _, g, h = elements_of(seed)
    assert is_trivial(multiply(g, inverse(g)))
    assert equal(inverse(multiply(g, h)), multiply(inverse(h), inverse(g))) is True
    assert equal(inverse(inverse(g)), g) is True


@settings(max_examples=30, deadline=None)
@given(seeds, letters)
def test_sections_respect_products(seed, x):
    _, g, h = elements_of(seed)
    lhs = section(multiply(g, h), (x,))
    rhs = multiply(section(g, (x,)), section(h, act(g, (x,))))
    assert equal(lhs, rhs) is True


@settings(max_examples=30, deadline=None)
@given(seeds, letters)
def test_orbit_power_section_is_a_first_return(seed, x):
    _, g, _ = elements_of(seed)
    m, fr = orbit_power_section(g, x)
    assert m == len(orbit(g, x))
    assert equal(fr, section(power(g, m), (x,))) is True


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=-3, max_value=3))
def test_powers_match_repeated_products(seed, k):
    _, g, _ = elements_of(seed)
    acc = Element(g.system, ())
    step = g if k >= 0 else inverse(g)
    for _ in range(abs(k)):
        acc = multiply(acc, step)
    assert equal(power(g, k), acc) is True


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_minimization_is_idempotent(seed):
    _, g, h = elements_of(seed)
    for x in (g, h):
        m = minimize(x)
        _, root = m.to_system()
        assert minimize(root) == m


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_truncated_orders_divide_upward(seed):
    _, g, _ = elements_of(seed)
    previous = 1
    for n in range(1, 7):
        current = truncated_order(g, n)
        assert current % previous == 0
        previous = current


@settings(max_examples=25, deadline=None)
@given(seeds, seeds)
def test_orbit_codes_survive_conjugation(seed, other):
    sys, g, _ = elements_of(seed)
    ren = merge_into(sys, random_bounded(other))
    u = Element(sys, ((ren[next(iter(ren))], 1),))
    conj = multiply(multiply(inverse(u), g), u)
    assert orbit_tree_code(g, 5) == orbit_tree_code(conj, 5)
