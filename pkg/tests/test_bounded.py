"""Restricted conjugacy: configuration closures, finitary satisfiability,
the cyclic decider, and the counting matrix systems."""

import pytest

from arboreal import (
    NotBounded,
    bounded_choice_search,
    choice_system,
    configurations,
    conjugate_in_pol0_cyclic,
    conjugate_in_pol_inf,
    conjugate_in_pol_minus1,
    equal,
    finitary_satisfiable,
    inverse,
    minimize,
    multiply,
    power,
    verify_conjugator,
)
from arboreal.system import parse_system

from conftest import CARRY, ODOMETER, ZOO, one

SWAP = (1, 0)
STAY = (0, 1)


@pytest.fixture
def odo_pair(odometer):
    _, a = odometer
    return a, inverse(a)


def test_trivial_pair_closure(zoo):
    e = multiply(one(zoo, "s"), inverse(one(zoo, "s")))
    closure = configurations(e, e)
    assert closure.complete
    assert len(closure.configs) == 1
    rep = finitary_satisfiable(closure)
    assert rep.root_depth == 0
    csys = choice_system(e, e)
    assert csys.dim == 1
    assert csys.matrix((STAY,)) == ((2,),)
    assert csys.theta((STAY,)) == (0,)
    assert csys.theta((SWAP,)) == (1,)
    assert bounded_choice_search(csys).found


def test_odometer_pair_closure(odo_pair):
    a, ai = odo_pair
    closure = configurations(a, ai)
    assert closure.complete
    assert len(closure.configs) == 2
    rep = finitary_satisfiable(closure)
    assert rep.root_depth is None  # no finitary conjugator at the root


def test_odometer_pair_matrices(odo_pair):
    csys = choice_system(*odo_pair)
    assert csys.dim == 3
    golden = {
        (STAY, STAY): ((0, 0, 0), (1, 1, 0), (1, 1, 2)),
        (STAY, SWAP): ((0, 0, 0), (1, 2, 1), (1, 0, 1)),
        (SWAP, STAY): ((2, 0, 0), (0, 1, 0), (0, 1, 2)),
        (SWAP, SWAP): ((2, 0, 0), (0, 2, 1), (0, 0, 1)),
    }
    theta = {
        (STAY, STAY): (0, 0, 1),
        (STAY, SWAP): (0, 1, 0),
        (SWAP, STAY): (1, 0, 1),
        (SWAP, SWAP): (1, 1, 0),
    }
    assert set(csys.choices()) == set(golden)
    for choice, mat in golden.items():
        assert csys.matrix(choice) == mat
        assert csys.theta(choice) == theta[choice]


def test_odometer_pair_has_no_bounded_trajectory(odo_pair):
    result = bounded_choice_search(choice_system(*odo_pair))
    assert not result.found
    assert result.tag == "not_found"
    # the bounds were fully enumerated, not cut short by the work meter
    assert result.reason.startswith("no bounded pattern")


def test_odometer_pair_not_conjugate_in_any_restriction(odo_pair):
    a, ai = odo_pair
    for decide in (conjugate_in_pol_minus1, conjugate_in_pol0_cyclic, conjugate_in_pol_inf):
        assert decide(a, ai).tag == "not_conjugate"


def test_carry_pair_closure_forces_the_swap(carry):
    _, p, q = carry
    closure = configurations(p, q)
    assert len(closure.configs) == 3
    assert closure.viable_cpi(closure.root) == (SWAP,)


def test_carry_pair_shares_one_matrix(carry):
    _, p, q = carry
    csys = choice_system(p, q)
    assert csys.dim == 3
    shared = ((1, 0, 0), (1, 0, 0), (0, 2, 2))
    thetas = set()
    for choice in csys.choices():
        assert csys.matrix(choice) == shared
        thetas.add(csys.theta(choice))
    assert thetas == {(1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)}


def test_carry_pair_counts_follow_the_doubling_law(carry):
    _, p, q = carry
    csys = choice_system(p, q)
    for choice in csys.choices():
        u = list(csys.u0)
        for n in range(1, 11):
            mat = csys.matrix(choice)
            u = [sum(mat[r][c] * u[c] for c in range(csys.dim)) for r in range(csys.dim)]
            assert tuple(u) == (1, 1, 2 ** n - 2)


def test_carry_pair_search_finds_the_quiet_choice(carry):
    _, p, q = carry
    result = bounded_choice_search(choice_system(p, q))
    assert result.found
    assert result.preperiod == ()
    assert result.cycle == ((SWAP, STAY, STAY),)


def test_search_survives_saturation(carry):
    _, p, q = carry
    result = bounded_choice_search(choice_system(p, q), threshold=8)
    assert result.found  # the read coordinates stay small; growth is elsewhere


def test_search_caps_degrade_gracefully(carry):
    _, p, q = carry
    csys = choice_system(p, q)
    r = bounded_choice_search(csys, work_cap=1)
    assert r.tag == "not_found" and "work budget" in r.reason
    r = bounded_choice_search(csys, choice_cap=1)
    assert r.tag == "not_found" and "choice space" in r.reason


def test_carry_pair_conjugate_by_the_odometer(carry):
    _, p, q = carry
    assert conjugate_in_pol_minus1(p, q).tag == "not_conjugate"
    dec = conjugate_in_pol0_cyclic(p, q)
    assert dec.tag == "conjugate"
    assert dec.cls == "bounded"
    h = dec.conjugator
    assert verify_conjugator(h, p, q, 10)
    assert equal(multiply(multiply(inverse(h), p), h), q) is True
    odometer = one(parse_system(ODOMETER), "a")
    m = minimize(h)
    assert m.n_states == 2
    assert m == minimize(odometer) or m == minimize(inverse(odometer))


def test_finitary_pair_gets_a_finitary_witness():
    sys = parse_system("alphabet 2\ns = (e, e) [1 0]\nx = (s, e)\ny = (e, s)\n")
    x, y = one(sys, "x"), one(sys, "y")
    dec = conjugate_in_pol_minus1(x, y)
    assert dec.tag == "conjugate" and dec.cls == "finitary"
    assert verify_conjugator(dec.conjugator, x, y, 10)
    dec0 = conjugate_in_pol0_cyclic(x, y)
    assert dec0.tag == "conjugate" and dec0.cls == "finitary"


def test_self_conjugacy_through_every_restriction(carry):
    _, p, q = carry
    for g in (p, q, multiply(p, q)):
        for decide in (conjugate_in_pol_minus1, conjugate_in_pol0_cyclic, conjugate_in_pol_inf):
            dec = decide(g, g)
            assert dec.conjugate
            assert verify_conjugator(dec.conjugator, g, g, 10)


def test_unbounded_inputs_are_rejected(zoo):
    m, l = one(zoo, "m"), one(zoo, "l")
    for g in (m, l):
        with pytest.raises(NotBounded):
            conjugate_in_pol0_cyclic(g, g)
        with pytest.raises(NotBounded):
            configurations(g, g)


def test_matrix_columns_sum_to_the_degree(carry, odo_pair):
    _, p, q = carry
    for pair in ((p, q), odo_pair, (p, p)):
        csys = choice_system(*pair)
        for choice in csys.choices():
            mat = csys.matrix(choice)
            for c in range(csys.dim):
                assert sum(mat[r][c] for r in range(csys.dim)) == 2


def test_decider_and_search_tell_one_story(carry, odo_pair):
    _, p, q = carry
    e = multiply(p, inverse(p))
    for pair in ((p, q), odo_pair, (e, e), (p, p)):
        dec = conjugate_in_pol0_cyclic(*pair)
        found = bounded_choice_search(choice_system(*pair)).found
        assert dec.conjugate == found


def test_coordinate_labels_cover_the_closure(carry):
    _, p, q = carry
    csys = choice_system(p, q)
    labels = csys.coord_labels()
    assert len(labels) == csys.dim
    assert len(set(labels)) == csys.dim
