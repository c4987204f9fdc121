import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flopcat.complexes import (
    ChainMap,
    ProjComplex,
    cone,
    direct_sum,
    ext_table,
    hom_complex,
    identity_map,
    internal_window,
    is_minimal,
    is_nullhomotopic,
    isomorphic,
    minimize,
    quasi_iso_certify,
    realize_ext_class,
    regrade,
    shift,
    vertex_cohomology,
)
from flopcat.errors import CertificationError, NoClassError, PreconditionError
from flopcat.sod_twist import standard_objects


@pytest.fixture(scope="module")
def o():
    return standard_objects(12)


def _same(C, D):
    return C.terms == D.terms and C.diff == D.diff


def _euler(et):
    out = {}
    for (k, j), n in et.nonzero().items():
        out[j] = out.get(j, 0) + (-1) ** k * n
    return {j: v for j, v in out.items() if v}


def test_shift_identities(o):
    assert _same(shift(o.E_x, 0), o.E_x)
    assert _same(shift(shift(o.F_x, 1), -1), o.F_x)


def test_shift_moves_ext(o):
    # Hom(E_x[-1], E_y[k]) = Hom(E_x, E_y[k + 1]), so the degree-2 class lands at k = 1
    et = ext_table(shift(o.E_x, -1), o.E_y)
    assert et.certified and et.totals() == {1: 1}
    assert ext_table(o.E_x, shift(o.E_y, 1)).totals() == {1: 1}


def test_dd_zero_enforced(o):
    t = o.table
    with pytest.raises(PreconditionError):
        ProjComplex(
            t,
            {-1: (("X", 0),), 0: (("X", 0),), 1: (("X", 0),)},
            {-1: {(0, 0): t.identity("X")}, 0: {(0, 0): t.identity("X")}},
        )


def test_inhomogeneous_entry_rejected(o):
    t = o.table
    with pytest.raises(PreconditionError):
        ProjComplex(t, {-1: (("y", 0),), 0: (("X", 0),)}, {-1: {(0, 0): t.arrows["i_y"]}})


def test_chain_map_must_commute(o):
    t = o.table
    with pytest.raises(PreconditionError):
        ChainMap(o.E_x, o.E_x, {0: {(0, 0): t.identity("x")}})


def test_cone_of_identity_is_contractible(o):
    for C in (o.E_x, o.F_x, o.P_X):
        Z = cone(identity_map(C))
        assert is_nullhomotopic(identity_map(Z))[0] is True
        assert minimize(Z).is_zero()


def test_cone_of_zero_is_sum(o):
    f = ChainMap(o.E_x, o.E_y, {})
    Z = cone(f)
    S, _ = direct_sum(shift(o.E_x, 1), o.E_y)
    assert Z.terms == S.terms
    assert isomorphic(Z, S).holds


def test_cone_of_augmentation_is_acyclic(o):
    # the augmentation E_x -> S_x has acyclic cone iff E_x has homology S_x only
    for v in "Xxy":
        for j in range(-2, o.table.cutoff - 2):
            want = {0: 1} if (v, j) == ("x", 0) else {}
            assert vertex_cohomology(o.E_x, v, j) == want


def test_composite_of_resolution_is_zero(o):
    t = o.table
    comp = t.compose(t.arrows["q_x"], t.arrows["i_y"], "y", "X", "x")
    assert comp == {}


def test_hom_complex_between_projectives(o):
    slices = hom_complex(o.P_X, o.P_x)
    for j, sl in slices.items():
        assert sl.degrees() in ([0], [])
        assert sl.dim(0) == o.table.dim("X", "x", j)


def test_hom_complex_window_error(o):
    with pytest.raises(CertificationError):
        hom_complex(o.P_X, o.P_X, window=(0, o.table.cutoff + 5))


def test_hom_complex_finite_for_torsion(o):
    slices = hom_complex(o.E_x, o.E_x)
    total = sum(sl.cohomology_dim(k) for sl in slices.values() for k in sl.degrees())
    assert total == 1


def test_ext_examples(o):
    assert ext_table(o.E_x, o.E_x).nonzero() == {(0, 0): 1}
    assert ext_table(o.E_x, o.E_y).totals() == {2: 1}
    pp = ext_table(o.P_X, o.P_X)
    assert not pp.certified
    assert {j: pp.get(0, j) for j in range(5)} == {0: 1, 1: 2, 2: 2, 3: 2, 4: 2}


def test_ext_over_different_tables(o):
    other = standard_objects(14)
    with pytest.raises(PreconditionError):
        ext_table(o.E_x, other.E_x)


def test_realize_identity_and_arrow(o):
    f = realize_ext_class(o.E_x, o.E_x, 0)
    assert is_nullhomotopic(f)[0] is False
    assert quasi_iso_certify(f).holds
    g = realize_ext_class(o.P_X, o.P_x, 0, 0)
    (elem,) = g.comps[0].values()
    assert elem == o.table.arrows["q_x"]


def test_realize_missing_class(o):
    with pytest.raises(NoClassError):
        realize_ext_class(o.E_x, o.E_y, 0)


def test_realized_cone_is_F(o):
    f = realize_ext_class(o.E_x, o.E_y, 2)
    Z = minimize(cone(f))
    # F_x = cone(f[-1]) = cone(f)[-1] up to internal regrading
    target = shift(o.F_x, 1)
    found = any(isomorphic(regrade(Z, j), target).holds for j in range(-3, 4))
    assert found


def test_nullhomotopy_examples(o):
    zero = ChainMap(o.E_x, o.E_x, {})
    assert is_nullhomotopic(zero) == (True, {})
    assert is_nullhomotopic(identity_map(o.F_x))[0] is False


def test_quasi_iso_examples(o):
    assert quasi_iso_certify(identity_map(o.F_x)).holds is True
    zero = quasi_iso_certify(ChainMap(o.E_x, o.E_x, {}))
    assert zero.holds is False and "H^" in zero.certificate


def test_minimize_is_minimal(o):
    for C in (o.F_x, o.F_y, cone(identity_map(o.E_x))):
        M = minimize(C)
        assert is_minimal(M)
        assert isomorphic(M, C).holds or M.is_zero()


def test_internal_window_shape(o):
    lo, hi = internal_window(o.E_x, o.E_y)
    assert lo < 0 < hi <= o.table.cutoff


NAMES = ["P_X", "P_x", "P_y", "E_x", "E_y", "F_x", "F_y"]
TORSION = ["E_x", "E_y", "F_x", "F_y"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(NAMES), st.sampled_from(TORSION), st.integers(-3, 3))
def test_shift_ext_compatibility(m, n, s):
    o = standard_objects(12)
    M, N = o.named()[m], o.named()[n]
    base, moved = ext_table(M, N), ext_table(shift(M, s), N)
    assert base.certified == moved.certified
    assert moved.nonzero() == {(k + s, j): v for (k, j), v in base.nonzero().items()}


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["E_x", "E_y", "F_x"]), st.sampled_from(TORSION), st.sampled_from(TORSION), st.integers(-1, 3))
def test_cone_euler_characteristic(a, b, n, k):
    # for f: A -> B, the triangle A -> B -> cone -> A[1] gives chi(cone, N) = chi(A[1], N) + chi(B, N)
    o = standard_objects(12)
    A, B, N = o.named()[a], o.named()[b], o.named()[n]
    et = ext_table(A, B)
    keys = [key for key in et.nonzero() if key[0] == k]
    if not keys:
        f = ChainMap(A, B, {})
    else:
        _, j = keys[0]
        f = realize_ext_class(A, B, k, j)
    C = cone(f)
    lhs = _euler(ext_table(C, N))
    parts = [_euler(ext_table(shift(f.source, 1), N)), _euler(ext_table(f.target, N))]
    rhs = {}
    for p in parts:
        for j, v in p.items():
            rhs[j] = rhs.get(j, 0) + v
    assert lhs == {j: v for j, v in rhs.items() if v}


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(TORSION), st.sampled_from(TORSION))
def test_window_monotonicity(a, b):
    lo, hi = standard_objects(12), standard_objects(14)
    small, big = ext_table(lo.named()[a], lo.named()[b]), ext_table(hi.named()[a], hi.named()[b])
    assert small.certified and big.certified
    assert small.nonzero() == big.nonzero()
