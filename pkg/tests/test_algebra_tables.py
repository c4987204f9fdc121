import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from flopcat.algebra_tables import (
    Arrow,
    CurveData,
    QuiverPresentation,
    build_general_nodal_algebra,
    build_kronecker_algebra,
    build_node_algebra,
    minimal_projective_resolution,
    poly_mul,
)
from flopcat.complexes import vertex_cohomology
from flopcat.errors import CertificationError, InvalidCurveError, PreconditionError
from flopcat.exact_linalg import QQ

NODE = build_node_algebra(8)

# M_X = C[x,y]/(xy), M_x = C[x,y]/(y), M_y = C[x,y]/(x); a map M_v -> M_w is
# the image m of 1, subject to ann(M_v) * m = 0 in M_w. All ideals are monomial.
_J = {"X": [(1, 1)], "x": [(0, 1)], "y": [(1, 0)]}
_ANN = {"X": [], "x": [(0, 1)], "y": [(1, 0)]}


def _in_ideal(mono, gens):
    return any(mono[0] >= a and mono[1] >= b for a, b in gens)


def oracle_node_dim(v, w, e):
    count = 0
    for a in range(e + 1):
        m = (a, e - a)
        if _in_ideal(m, _J[w]):
            continue
        if all(_in_ideal((m[0] + g[0], m[1] + g[1]), _J[w]) for g in _ANN[v]):
            count += 1
    return count


@pytest.mark.parametrize("v,w", list(itertools.product("Xxy", repeat=2)))
def test_node_dims_match_monomial_oracle(v, w):
    dims = NODE.graded_dims(v, w)
    for e in range(NODE.cutoff + 1):
        assert dims.get(e, 0) == oracle_node_dim(v, w, e), (v, w, e)


def test_node_examples():
    assert NODE.dim("X", "X", 0) == 1
    assert all(NODE.dim("X", "X", e) == 2 for e in range(1, NODE.cutoff + 1))
    assert NODE.dim("x", "y") == 0 and NODE.dim("y", "x") == 0


def test_node_structure():
    assert NODE.check_relations()
    assert NODE.check_identities()
    assert NODE.check_associativity()


def test_node_relations_vanish_as_elements():
    for path in (("q_x", "i_y"), ("q_y", "i_x")):
        _, _, elem = NODE.path_element(path)
        assert elem == {}


def test_node_loops_are_multiplication():
    # paths compose right to left: q_x then i_x is x acting on P_X
    src, tgt, elem = NODE.path_element(("i_x", "q_x"))
    assert (src, tgt) == ("X", "X")
    assert NODE.elem_degrees("X", "X", elem) == {1}


def test_node_requires_cutoff():
    with pytest.raises(PreconditionError):
        build_node_algebra(1)


@pytest.mark.parametrize("D", [4, 6, 8])
def test_truncation_stability(D):
    a, b = build_node_algebra(D), build_node_algebra(D + 2)
    for v, w in itertools.product("Xxy", repeat=2):
        lo = {e: n for e, n in a.graded_dims(v, w).items() if e <= D - 2}
        hi = {e: n for e, n in b.graded_dims(v, w).items() if e <= D - 2}
        assert lo == hi


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_kronecker_dims(d):
    t = build_kronecker_algebra(d, abs(d) + 3)
    assert t.dim("0", "1") == 2
    assert t.dim("1", "0") == 0
    assert t.dim("0", "0") == 1 == t.dim("1", "1")
    assert t.finite
    assert sorted(t.degree("0", "1", i) for i in t.indices("0", "1")) == sorted([d, 1])


def test_kronecker_cutoff_precondition():
    with pytest.raises(PreconditionError):
        build_kronecker_algebra(3, 3)


def test_kronecker_simple_resolution():
    t = build_kronecker_algebra(0, 4)
    R = minimal_projective_resolution("1", 3, t)
    assert sorted(R.term(-1)) == [("0", 0), ("0", 1)]
    assert R.term(0) == (("1", 0),)
    assert set(R.positions()) == {-1, 0}
    labels = sorted(t.label("0", "1", i) for e in R.d(-1).values() for i in e)
    assert labels == ["theta", "w"]


def test_nodal_examples():
    t = build_general_nodal_algebra(CurveData(1, -1, 8))
    end = t.graded_dims("X", "X")
    assert tuple(end.get(k, 0) for k in range(5)) == (1, 0, 1, 1, 1)
    cond = t.graded_dims("Xt", "X")
    assert tuple(cond.get(k, 0) for k in range(5)) == (0, 0, 1, 1, 1)
    assert all(t.graded_dims("X", "Xt").get(k, 0) == 1 for k in range(t.cutoff + 1))
    assert all(t.graded_dims("Xt", "Xt").get(k, 0) == 1 for k in range(t.cutoff + 1))


def test_nodal_conductor_is_g_times_normalization():
    c = CurveData(2, 3, 8)
    assert c.g == poly_mul(c.s1, c.s2)
    t = build_general_nodal_algebra(c)
    for i in t.indices("Xt", "X"):
        p = t.basis_poly("Xt", "X", i)
        # every conductor element is divisible by g: it vanishes at both preimages
        assert sum(QQ(a) * QQ(2) ** k for k, a in enumerate(p)) == 0
        assert sum(QQ(a) * QQ(3) ** k for k, a in enumerate(p)) == 0


def test_nodal_associativity():
    t = build_general_nodal_algebra(CurveData(1, -1, 6))
    assert t.check_identities()
    assert t.check_associativity()


def test_invalid_curve():
    with pytest.raises(InvalidCurveError):
        CurveData(1, 1)
    with pytest.raises(PreconditionError):
        CurveData(0, 0)


def test_presentation_validation():
    with pytest.raises(PreconditionError):
        QuiverPresentation(name="bad", vertices=("a",), arrows=(Arrow("f", "a", "b"),))


def test_node_resolutions():
    Rx = minimal_projective_resolution("x", 4, NODE)
    assert Rx.terms == {-2: (("y", 1),), -1: (("X", 0),), 0: (("x", 0),)}
    RX = minimal_projective_resolution("X", 4, NODE)
    assert RX.terms == {-1: (("x", 1), ("y", 1)), 0: (("X", 0),)}
    Ry = minimal_projective_resolution("y", 4, NODE)
    assert max(Ry.positions()) - min(Ry.positions()) == 2


@pytest.mark.parametrize("simple", ["X", "x", "y"])
def test_resolution_exact_away_from_zero(simple):
    R = minimal_projective_resolution(simple, 4, NODE)
    for v in "Xxy":
        for j in range(0, NODE.cutoff - 2):
            h = vertex_cohomology(R, v, j)
            want = {0: 1} if (v == simple and j == 0) else {}
            assert h == want, (v, j, h)


def test_resolution_preconditions():
    with pytest.raises(PreconditionError):
        minimal_projective_resolution("z", 2, NODE)
    with pytest.raises(PreconditionError):
        minimal_projective_resolution("x", 0, NODE)


def _elements(table, v, w, coeffs):
    idx = table.indices(v, w)
    return {i: QQ(c) for i, c in zip(idx, coeffs) if c}


@settings(max_examples=40, deadline=None)
@given(
    st.tuples(*[st.sampled_from("Xxy")] * 4),
    st.lists(st.integers(-2, 2), min_size=10, max_size=10),
    st.lists(st.integers(-2, 2), min_size=10, max_size=10),
    st.lists(st.integers(-2, 2), min_size=10, max_size=10),
)
def test_associativity_on_random_elements(verts, cf, cg, ch):
    a, b, c, d = verts
    t = build_node_algebra(8)
    f, g, h = _elements(t, a, b, cf), _elements(t, b, c, cg), _elements(t, c, d, ch)
    try:
        left = t.compose(t.compose(h, g, b, c, d), f, a, b, d)
        right = t.compose(h, t.compose(g, f, a, b, c), a, c, d)
    except CertificationError:
        assume(False)
    assert left == right
