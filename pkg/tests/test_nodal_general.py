import pytest

from flopcat.algebra_tables import CurveData, poly_divmod
from flopcat.complexes import compose_matrices, ext_table
from flopcat.errors import CertificationError, InvalidCurveError
from flopcat.nodal_general import homology_support, nodal_objects, split_node_crosscheck, verify_general_node
from flopcat.reports import PASS
from flopcat.sod_twist import is_exceptional

POINTS = [(1, -1), (2, 3), (0, 1)]


@pytest.fixture(scope="module", params=POINTS, ids=lambda q: f"q={q[0]},{q[1]}")
def objs(request):
    c = CurveData(*request.param, 14)
    return c, nodal_objects(c)


def test_composites_vanish(objs):
    _, o = objs
    for name in ("E_1", "E_2"):
        E = o[name]
        assert compose_matrices(o["table"], E.d(-1), E.d(-2), E.term(-2), E.term(-1), E.term(0)) == {}


def test_homology_support(objs):
    c, o = objs
    assert homology_support(o["E_1"], c) == [c.q1]
    assert homology_support(o["E_2"], c) == [c.q2]
    assert ext_table(o["P_X"], o["E_1"]).is_zero()
    assert ext_table(o["P_Xt"], o["E_1"]).totals() == {0: 1}


def test_exceptional_and_cotwist(objs):
    _, o = objs
    assert is_exceptional(o["E_1"]).holds
    assert is_exceptional(o["E_2"]).holds
    assert ext_table(o["E_1"], o["E_2"]).totals() == {2: 1}
    assert ext_table(o["F_1"], o["F_1"]).totals() == {0: 1, 3: 1}


def test_conductor_identity(objs):
    c, o = objs
    t = o["table"]
    checked = 0
    for i in t.indices("Xt", "X"):
        for j in t.indices("X", "Xt"):
            try:
                prod = t.compose({i: 1}, {j: 1}, "X", "Xt", "X")
            except CertificationError:
                continue
            p = t.poly("X", "X", prod)
            _, rem = poly_divmod(p, c.g)
            assert not any(rem)
            checked += 1
    assert checked > 10


def test_verify_point_invariance():
    reports = [verify_general_node(CurveData(*q, 14)) for q in POINTS]
    assert all(r.status == PASS for r in reports)
    statuses = [[(ch.name.split("[")[0], ch.status) for ch in r.children] for r in reports]
    assert statuses[0] == statuses[1] == statuses[2]


def test_rejects_equal_points():
    with pytest.raises(InvalidCurveError):
        verify_general_node(CurveData(1, 1, 14))


def test_split_crosscheck():
    rep = split_node_crosscheck(14)
    assert rep.status == PASS
    names = [c.name for c in rep.children]
    assert "split.pushforward(P_X)" in names


def test_filtered_truncation_stability():
    a = nodal_objects(CurveData(1, -1, 14))
    b = nodal_objects(CurveData(1, -1, 16))
    for x in ("E_1", "E_2", "F_1"):
        for y in ("E_1", "E_2", "F_1"):
            lo, hi = ext_table(a[x], a[y]), ext_table(b[x], b[y])
            assert lo.certified and hi.certified
            assert lo.totals() == hi.totals()
