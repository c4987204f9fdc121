import pytest

from flopcat.complexes import ext_table, isomorphic, shift
from flopcat.errors import NotInSubcategoryError, PreconditionError
from flopcat.reports import PASS
from flopcat.sod_twist import (
    cotwist_table,
    dual_twist,
    flop,
    flop_flop_check,
    is_exceptional,
    is_spherical_pattern,
    left_orthogonal_member,
    projection_agreement_check,
    round_trip_check,
    twist,
)


def test_exceptional(node):
    assert is_exceptional(node.E_x).holds
    assert is_exceptional(node.E_y).holds
    assert is_exceptional(node.F_x).holds is False


def test_exceptional_needs_torsion(node):
    with pytest.raises(PreconditionError):
        is_exceptional(node.P_X)


def test_spherical_pattern(node):
    assert is_spherical_pattern(node.F_x, 3).holds
    assert is_spherical_pattern(node.F_y, 3).holds
    assert is_spherical_pattern(node.E_x, 3).holds is False


@pytest.mark.parametrize(
    "m,e,expected",
    [("P_X", "E_y", True), ("P_x", "E_y", True), ("E_y", "E_y", False), ("P_y", "E_y", False), ("F_x", "E_y", True), ("F_y", "E_x", True)],
)
def test_left_orthogonal(node, m, e, expected):
    named = node.named()
    assert left_orthogonal_member(named[m], named[e]).holds is expected


def test_cotwist_table(node):
    grid = cotwist_table(node)
    assert grid[0][1].totals() == {2: 1} == grid[1][0].totals()
    assert grid[0][0].is_zero() and grid[1][1].is_zero()


def test_twists_fix_P_X(node):
    assert isomorphic(twist(node.P_X, node), node.P_X).holds
    assert isomorphic(dual_twist(node.P_X, node), node.P_X).holds


def test_twist_of_E_x(node):
    # evaluation E_x + E_y[-2] -> E_x has cone E_y[-1]
    T = twist(node.E_x, node)
    assert isomorphic(T, shift(node.E_y, -1), max_shift=2).holds


@pytest.mark.parametrize("name", ["P_X", "P_x", "P_y", "E_x"])
def test_round_trips(node, name):
    reps = round_trip_check(node.named()[name], node)
    assert [r.status for r in reps] == [PASS, PASS]


@pytest.mark.parametrize("name", ["P_X", "P_x", "F_x"])
def test_flop_lands_in_other_orthogonal(node, name):
    image = flop(node.named()[name], "x-to-y", node)
    assert left_orthogonal_member(image, node.E_x).holds


def test_flop_examples(node):
    assert isomorphic(flop(node.P_X, "x-to-y", node), node.P_X).holds
    phi = flop(node.F_x, "x-to-y", node)
    assert isomorphic(phi, shift(node.F_y, 1), max_shift=2).holds
    twice = flop(phi, "y-to-x", node)
    assert isomorphic(twice, shift(node.F_x, 2), max_shift=3).holds


def test_flop_preconditions(node):
    with pytest.raises(NotInSubcategoryError):
        flop(node.E_y, "x-to-y", node)
    with pytest.raises(PreconditionError):
        flop(node.P_X, "sideways", node)


@pytest.mark.parametrize("name", ["P_X", "P_x", "F_x"])
def test_flop_flop_and_projection(node, name):
    G = node.named()[name]
    ff = flop_flop_check(G, node)
    pa = projection_agreement_check(G, node)
    assert ff.status == PASS and "quasi-isomorphism" in ff.detail
    assert pa.status == PASS


def test_projection_precondition(node):
    with pytest.raises(NotInSubcategoryError):
        projection_agreement_check(node.E_y, node)
    with pytest.raises(NotInSubcategoryError):
        flop_flop_check(node.P_y, node)


def test_adjoint_dimension_identity(node):
    # dim Ext^k(E_x, M) = dim Ext^k(E_y, S(M)[-1]) for M in {E_x, E_y}
    for M, SM1 in ((node.E_x, node.E_y), (node.E_y, node.E_x)):
        assert ext_table(node.E_x, M).totals() == ext_table(node.E_y, SM1).totals()


def test_F_objects(node):
    assert ext_table(node.F_x, node.F_x).totals() == {0: 1, 3: 1}
    assert ext_table(node.F_y, node.F_y).totals() == {0: 1, 3: 1}
    assert ext_table(node.F_x, node.E_y).is_zero()
