"""A one-node affine curve ``O_X = C + g C[t]`` and its two-vertex Auslander order.

``E_1`` and ``E_2`` are the simples at ``P_Xt`` supported at the two preimages
``q1`` and ``q2`` of the node, resolved by

    P_Xt --(-g, s2)--> P_X + P_Xt --(1, s1)--> P_Xt

(and the same with ``s1``, ``s2`` swapped), where ``s_i = t - q_i``.
"""

from __future__ import annotations

from .algebra_tables import CurveData, build_general_nodal_algebra, monomial
from .complexes import (
    HomSlice,
    ProjComplex,
    central_quotient,
    compose_matrices,
    cone,
    ext_class,
    ext_table,
    minimize,
    reduce_complex,
    shift_map,
)
from .exact_linalg import solve
from .reports import FAIL, PASS, UNDETERMINED, CheckReport, bundle, status_of
from .serre_crepancy import (
    DualityData,
    crepancy_classify,
    madic_hilbert_function,
    pushforward,
    serre_dual_check,
    shifted,
)

_OBJECTS = {}


def _poly_elem(table, v, w, p):
    return table.expand(v, w, p)


def build_E_resolutions(curve, table=None):
    table = table or build_general_nodal_algebra(curve)
    g = curve.g
    neg_g = tuple(-c for c in g)
    out = []
    for name, sa, sb in (("E_1", curve.s1, curve.s2), ("E_2", curve.s2, curve.s1)):
        out.append(
            ProjComplex(
                table,
                {-2: (("Xt", 0),), -1: (("X", 0), ("Xt", 0)), 0: (("Xt", 0),)},
                {
                    -2: {(0, 0): _poly_elem(table, "Xt", "X", neg_g), (1, 0): _poly_elem(table, "Xt", "Xt", sb)},
                    -1: {(0, 0): _poly_elem(table, "X", "Xt", monomial(0)), (0, 1): _poly_elem(table, "Xt", "Xt", sa)},
                },
                name=name,
            )
        )
    return tuple(out)


def nodal_objects(curve):
    key = (curve.q1, curve.q2, curve.cutoff)
    if key not in _OBJECTS:
        table = build_general_nodal_algebra(curve)
        E1, E2 = build_E_resolutions(curve, table)
        objs = {
            "table": table,
            "P_X": ProjComplex(table, {0: (("X", 0),)}, name="P_X"),
            "P_Xt": ProjComplex(table, {0: (("Xt", 0),)}, name="P_Xt"),
            "E_1": E1,
            "E_2": E2,
        }
        for A, B, name in ((E1, E2, "F_1"), (E2, E1, "F_2")):
            f = shift_map(ext_class(A, B, 2).as_map_from(), 1)  # A[-1] -> B[1]
            F = minimize(cone(f))
            F.name = name
            objs[name] = F
        _OBJECTS[key] = objs
    return _OBJECTS[key]


def homology_support(E, curve, vertex="Xt"):
    """The preimage ``q`` with ``(t - q)`` killing the degree-0 homology of ``E`` at ``vertex``."""
    table = E.table
    q = central_quotient(table, 3)
    P = ProjComplex(q, {0: ((vertex, 0),)})
    Eq = reduce_complex(E, q)
    sl = HomSlice(P, Eq, 0)
    hits = []
    for point in (curve.q1, curve.q2):
        lin = (-_q(point), _q(1))
        comps = {}
        for b, (vb, _) in enumerate(Eq.term(0)):
            if vb == vertex:
                img = q.reduce(vertex, vb, table.expand(vertex, vb, lin))
                if img:
                    comps[(b, 0)] = img
        vec = sl.components_to_vector(0, {0: comps})
        d_in = sl.delta(-1)
        if solve(d_in, vec) is not None:
            hits.append(point)
    return hits


def _q(x):
    from .algebra_tables import _as_q

    return _as_q(x)


def _ext_report(name, et, want, window):
    got = et.totals()
    if not et.certified:
        return CheckReport(name, UNDETERMINED, window=window, tables=[et], detail=et.note)
    return CheckReport(
        name,
        PASS if got == want else FAIL,
        window=window,
        tables=[et],
        witness=None if got == want else {"totals": got, "expected": want},
    )


def verify_general_node(curve, hwindow=6):
    o = nodal_objects(curve)
    E1, E2, F1 = o["E_1"], o["E_2"], o["F_1"]
    window = {"internal": curve.cutoff, "homological": hwindow}
    reps = []

    for E in (E1, E2):
        dd0 = compose_matrices(o["table"], E.d(-1), E.d(-2), E.term(-2), E.term(-1), E.term(0))
        reps.append(CheckReport(f"nodal.composite_vanishes[{E.name}]", PASS if not dd0 else FAIL, window=window, witness=dd0 or None))
    for E, v, pt in ((E1, "Xt", curve.q1), (E2, "Xt", curve.q2)):
        ext_x = ext_table(o["P_X"], E)
        ext_t = ext_table(o["P_Xt"], E)
        supp = homology_support(E, curve, v)
        ok = ext_x.is_zero() and ext_t.totals() == {0: 1} and supp == [pt]
        reps.append(
            CheckReport(
                f"nodal.homology[{E.name}]",
                PASS if ok else FAIL,
                window=window,
                tables=[ext_x, ext_t],
                witness=None if ok else {"at_X": ext_x.totals(), "at_Xt": ext_t.totals(), "support": [str(s) for s in supp]},
                detail=f"one-dimensional at position 0, supported at t = {pt}",
            )
        )
    for E in (E1, E2):
        reps.append(_ext_report(f"nodal.exceptional[{E.name}]", ext_table(E, E), {0: 1}, window))
    reps.append(_ext_report("nodal.Ext(E_1,E_2)", ext_table(E1, E2), {2: 1}, window))
    reps.append(_ext_report("nodal.Ext(E_2,E_1)", ext_table(E2, E1), {2: 1}, window))
    dd = DualityData.node()
    reps.append(serre_dual_check(E1, shifted(E2, 1), dd, [E1, E2], hwindow))
    reps.append(serre_dual_check(E2, shifted(E1, 1), dd, [E1, E2], hwindow))
    reps.append(_ext_report("nodal.spherical[F_1]", ext_table(F1, F1), {0: 1, 3: 1}, window))
    perp = ext_table(F1, E2)
    reps.append(
        CheckReport(
            "nodal.F_1_orthogonal_to_E_2",
            status_of(perp.is_zero()) if perp.certified else UNDETERMINED,
            window=window,
            tables=[perp],
        )
    )
    verdict = crepancy_classify("general-nodal", curve=curve, hwindow=hwindow)
    ok = verdict.fair and verdict.index == 2
    reps.append(
        CheckReport(
            "nodal.crepancy",
            PASS if ok else (UNDETERMINED if verdict.fair is None else FAIL),
            window=window,
            tables=[verdict],
            witness=None if ok else verdict.as_json(),
            detail=f"fair of index {verdict.index}",
        )
    )
    return bundle(f"general_node(q1={curve.q1}, q2={curve.q2})", reps, window)


def split_node_crosscheck(cutoff=14, curve=None):
    """The two-vertex curve presentation against the three-vertex node algebra."""
    from .sod_twist import standard_objects

    curve = curve or CurveData(1, -1, cutoff)
    node = standard_objects(cutoff)
    o = nodal_objects(curve)
    window = {"internal": cutoff}
    reps = []
    pairs = (
        (("E_1", "E_1"), (node.E_x, node.E_x)),
        (("E_1", "E_2"), (node.E_x, node.E_y)),
        (("E_2", "E_1"), (node.E_y, node.E_x)),
        (("E_2", "E_2"), (node.E_y, node.E_y)),
    )
    for (a, b), (A, B) in pairs:
        lhs, rhs = ext_table(o[a], o[b]), ext_table(A, B)
        if not (lhs.certified and rhs.certified):
            reps.append(CheckReport(f"split.Ext({a},{b})", UNDETERMINED, window=window, tables=[lhs, rhs]))
            continue
        same = lhs.totals() == rhs.totals()
        reps.append(
            CheckReport(
                f"split.Ext({a},{b})",
                PASS if same else FAIL,
                window=window,
                tables=[lhs, rhs],
                witness=None if same else _first_difference(lhs.totals(), rhs.totals()),
            )
        )
    hf = madic_hilbert_function(o["table"], "X", "X")
    graded = pushforward(node.P_X).nonzero()
    shared = range(min(len(hf), cutoff))
    node_dims = {n: graded.get((0, n), 0) for n in shared}
    curve_dims = {n: hf.get(n, 0) for n in shared}
    same = node_dims == curve_dims
    reps.append(
        CheckReport(
            "split.pushforward(P_X)",
            PASS if same else FAIL,
            window=window,
            witness=None if same else _first_difference(curve_dims, node_dims),
            detail=f"m-adic dims {list(curve_dims.values())}",
        )
    )
    return bundle("split_node_crosscheck", reps, window)


def _first_difference(a, b):
    for k in sorted(set(a) | set(b)):
        if a.get(k, 0) != b.get(k, 0):
            return {"degree": k, "curve": a.get(k, 0), "node": b.get(k, 0)}
    return None
