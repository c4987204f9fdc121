"""Pushforward to the base, duality checks for the relative Serre functor, crepancy.

``N = S(M)`` is certified at the level of dimensions:
``dim Ext^k(P, N) = dim Ext^{sigma - k}(M, P)`` for every ``P`` in a test set,
where ``sigma`` is the shift relating the dual over the base to the dual over C
on torsion modules (1 for a curve, 0 for a fat point).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra_tables import NodalCurveTable, build_kronecker_algebra, monomial, poly_mul, poly_pow
from .exact_linalg import QQ
from .complexes import ChainMap, ProjComplex, cone, ext_table, minimize, shift, vertex_cohomology
from .errors import PreconditionError
from .exact_linalg import rank, sparse
from .reports import FAIL, PASS, UNDETERMINED, CheckReport, bundle, status_of

SEARCH_RANGE = range(-6, 7)


@dataclass(frozen=True)
class DualityData:
    sigma: int
    preset: str = "node"

    def __post_init__(self):
        if self.sigma not in (0, 1):
            raise PreconditionError("only sigma in {0, 1} is implemented")

    @classmethod
    def node(cls):
        return cls(1, "node")

    @classmethod
    def fat_point(cls):
        return cls(0, "fat-point")


# ---------------------------------------------------------------------------
# pushforward


@dataclass
class GradedDims:
    """Dimensions per (cohomological degree, internal degree) with a window."""

    entries: dict
    window: tuple
    certified: bool
    grading: str = "internal"

    def nonzero(self):
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def is_zero(self):
        return not self.nonzero()

    def as_json(self):
        return {
            "grading": self.grading,
            "certified": self.certified,
            "window": list(self.window),
            "entries": [[k, j, v] for (k, j), v in sorted(self.entries.items()) if v],
        }


def pushforward(M, vertex="X"):
    """Cohomology of the vertex-``X`` part of ``M``, i.e. of ``M(X)`` as a complex.

    Over the node this is graded by internal degree; over a general nodal
    curve a single projective is measured by its m-adic Hilbert function and
    torsion complexes through their Ext from ``P_X``.
    """
    table = M.table
    if isinstance(table, NodalCurveTable):
        return _nodal_pushforward(M, vertex)
    if not table.graded or table.finite:
        raise PreconditionError("pushforward is defined for the node and general nodal tables")
    twists = [s for p in M.positions() for _, s in M.term(p)]
    if not twists:
        return GradedDims({}, (0, -1), True)
    jmin = min(twists) + table.min_degree
    jmax = min(twists) + table.cutoff
    entries = {}
    for j in range(jmin, jmax + 1):
        for p, h in vertex_cohomology(M, vertex, j).items():
            entries[(p, j)] = h
    certified = not any(j >= jmax - 1 for _, j in entries)
    return GradedDims(entries, (jmin, jmax), certified)


def _nodal_pushforward(M, vertex):
    table = M.table
    if len(M.positions()) == 1 and len(M.term(M.positions()[0])) == 1 and not M.diff:
        (p,) = M.positions()
        ((v, _),) = M.term(p)
        hf = madic_hilbert_function(table, vertex, v)
        return GradedDims({(p, n): h for n, h in hf.items()}, (0, max(hf)), False, grading="m-adic")
    P = ProjComplex(table, {0: ((vertex, 0),)}, name=f"P_{vertex}")
    et = ext_table(P, M)
    return GradedDims(dict(et.entries), (0, 0), et.certified, grading="total")


def madic_hilbert_function(table, source, target):
    """``dim m^n H / m^{n+1} H`` for ``H = Hom(P_source, P_target)`` as an O_X-module.

    The maximal ideal of the node is the conductor ``g C[t]`` and its powers
    are ``g^n C[t]``; dimensions are computed from spans truncated at the cutoff.
    """
    D = table.cutoff
    g = table.curve.g

    def span_rank(n):
        # m^n = g^n C[t] for n >= 1, spanned by g^n t^k
        gens = [(QQ(1),)] if n == 0 else [poly_mul(poly_pow(g, n), monomial(k)) for k in range(D - 2 * n + 1)]
        vecs = []
        for i in table.indices(source, target):
            for a in gens:
                p = poly_mul(a, table.basis_poly(source, target, i))
                if len(p) - 1 <= D:
                    vecs.append(table.expand(source, target, p))
        if not vecs:
            return 0
        return rank(sparse({(r, c): v for c, vec in enumerate(vecs) for r, v in vec.items()}, table.dim(source, target), len(vecs)))

    top = (D - 2) // 2
    ranks = [span_rank(n) for n in range(top + 2)]
    return {n: ranks[n] - ranks[n + 1] for n in range(top)}


def kernel_membership(M):
    pf = pushforward(M)
    if not pf.is_zero():
        return _cert(False, pf)
    return _cert(True if pf.certified else None, pf)


def _cert(holds, data):
    from .complexes import Certified

    return Certified(holds, "pushforward", data)


# ---------------------------------------------------------------------------
# Serre duality checks


def _window(M, hwindow):
    return {"internal": M.table.cutoff, "homological": hwindow}


def serre_dual_check(M, N, dd, testset, hwindow=6, name=None):
    """Certify the dimension content of ``N = S(M)`` against ``testset``."""
    name = name or f"serre[{M.name} -> {N.name}]"
    window = _window(M, hwindow)
    tables = []
    refined = {}
    outside = False
    for P in testset:
        lhs, rhs = ext_table(P, N), ext_table(M, P)
        tables += [lhs, rhs]
        if not (lhs.certified and rhs.certified):
            bad = lhs if not lhs.certified else rhs
            return CheckReport(name, UNDETERMINED, window=window, tables=tables, detail=f"uncertified: {bad.note}")
        L, R = lhs.totals(), rhs.totals()
        for k in range(-hwindow, hwindow + 1):
            if L.get(k, 0) != R.get(dd.sigma - k, 0):
                witness = {"P": P.name, "k": k, "lhs": L.get(k, 0), "rhs": R.get(dd.sigma - k, 0)}
                return CheckReport(name, FAIL, window=window, tables=tables, witness=witness)
        if any(abs(k) > hwindow for k in L) or any(abs(dd.sigma - k) > hwindow for k in R):
            outside = True
        if not lhs.total_grading:
            refined[P.name] = _internal_twist(lhs, rhs, dd.sigma)
    if outside:
        return CheckReport(name, UNDETERMINED, window=window, tables=tables, detail="nonzero Ext outside the homological window")
    detail = "internal-degree twist (informational): " + ", ".join(f"{p}: {t}" for p, t in refined.items())
    return CheckReport(name, PASS, window=window, tables=tables, detail=detail)


def _internal_twist(lhs, rhs, sigma):
    """Shifts ``tau`` with ``dim Ext^{k,j}(P, N) = dim Ext^{sigma-k, tau-j}(M, P)`` for all entries."""
    L, R = lhs.nonzero(), rhs.nonzero()
    if not L and not R:
        return "any"
    js = [j for _, j in L] + [j for _, j in R]
    span = range(min(js) * 2 - 2, max(js) * 2 + 3)
    hits = [tau for tau in span if {(sigma - k, tau - j): v for (k, j), v in L.items()} == R]
    return hits[0] if len(hits) == 1 else (hits or None)


def serre_square_check(M, via, N, dd, testset, hwindow=6):
    first = serre_dual_check(M, via, dd, testset, hwindow)
    second = serre_dual_check(via, N, dd, testset, hwindow)
    return bundle(f"serre_square[{M.name} -> {via.name} -> {N.name}]", [first, second], _window(M, hwindow))


# ---------------------------------------------------------------------------
# crepancy


@dataclass
class CrepancyVerdict:
    preset: str
    weak: bool | None
    fair: bool | None
    index: int | None
    strong: bool | None
    evidence: list = field(default_factory=list)

    def __post_init__(self):
        if self.strong:
            assert self.fair and self.index == 0, "strong crepancy must imply fair crepancy of index 0"
        if self.fair:
            assert self.weak, "fair crepancy must imply weak crepancy"

    def as_json(self):
        return {"preset": self.preset, "weak": self.weak, "fair": self.fair, "index": self.index, "strong": self.strong}


@dataclass
class CrepancySetup:
    name: str
    generators: list
    candidates: list
    testset: list
    duality: DualityData
    table: object
    vertices: tuple


def shifted(C, n):
    S = shift(C, n)
    S.name = f"{C.name}[{n}]" if n else C.name
    return S


def setup_for(preset, cutoff=12, d=0, curve=None):
    """Generators, candidate Serre images and test objects for a named resolution."""
    if preset == "big-node":
        from .sod_twist import standard_objects

        o = standard_objects(cutoff)
        return CrepancySetup(preset, [o.E_x, o.E_y], [o.E_x, o.E_y], [o.E_x, o.E_y, o.F_x, o.F_y], DualityData.node(), o.table, ("X", "x", "y"))
    if preset == "small-node":
        from .sod_twist import standard_objects

        o = standard_objects(cutoff)
        return CrepancySetup(preset, [o.F_x], [o.F_x], [o.F_x, o.P_X, o.P_x], DualityData.node(), o.table, ("X", "x"))
    if preset == "kronecker":
        k = kronecker_objects(d, cutoff)
        return CrepancySetup(f"kronecker(d={d})", [k["K"]], [k["K"]], [k["P_0"], k["P_1"], k["G"], k["K"]], DualityData.fat_point(), k["table"], ("0", "1"))
    if preset == "general-nodal":
        from .nodal_general import nodal_objects

        n = nodal_objects(curve)
        return CrepancySetup(preset, [n["F_1"]], [n["F_1"]], [n["F_1"], n["P_X"]], DualityData.node(), n["table"], ("X", "Xt"))
    raise PreconditionError(f"unknown preset {preset!r}")


def projective_symmetry(table, vertices, top=None):
    """Witnesses where ``dim Hom(P_v, P_w)_j != dim Hom(P_w, P_v)_j``."""
    top = table.cutoff - 2 if top is None else top
    out = []
    for v, w in itertools.combinations(vertices, 2):
        a = {j: n for j, n in table.graded_dims(v, w).items() if j <= top}
        b = {j: n for j, n in table.graded_dims(w, v).items() if j <= top}
        if a != b:
            j = min(x for x in set(a) | set(b) if a.get(x, 0) != b.get(x, 0))
            out.append({"pair": [v, w], "degree": j, "dims": [a.get(j, 0), b.get(j, 0)]})
    return out


def crepancy_classify(preset, cutoff=12, d=0, curve=None, hwindow=6, setup=None):
    s = setup or setup_for(preset, cutoff=cutoff, d=d, curve=curve)
    window = {"internal": s.table.cutoff, "homological": hwindow}
    evidence = []

    # weak: each generator has a Serre image among shifts of the candidates
    weak = True
    for K in s.generators:
        found = None
        undetermined = False
        for C in s.candidates:
            for n in SEARCH_RANGE:
                rep = serre_dual_check(K, shifted(C, n), s.duality, s.testset, hwindow)
                if rep.status == PASS:
                    found = rep
                    break
                undetermined |= rep.status == UNDETERMINED
            if found:
                break
        if found:
            evidence.append(found)
        else:
            weak = None if undetermined else False
            evidence.append(CheckReport(f"weak[{K.name}]", status_of(weak), window=window, witness="no Serre image among candidates"))
        if weak is not True:
            break

    # fair: one shift n working for every generator
    fair, index = False, None
    undetermined = False
    for n in SEARCH_RANGE:
        reps = [serre_dual_check(K, shifted(K, n), s.duality, s.testset, hwindow) for K in s.generators]
        if all(r.status == PASS for r in reps):
            fair, index = True, n
            evidence.extend(reps)
            break
        undetermined |= any(r.status == UNDETERMINED for r in reps)
    if not fair:
        fair = None if undetermined else False
        evidence.append(CheckReport(f"fair[{s.name}]", status_of(fair), window=window, witness=f"no single shift in [{SEARCH_RANGE[0]}, {SEARCH_RANGE[-1]}]"))

    sym = projective_symmetry(s.table, s.vertices)
    strong = bool(fair) and index == 0 and not sym
    evidence.append(
        CheckReport(
            f"strong[{s.name}]",
            PASS if strong else FAIL,
            window=window,
            witness=None if strong else (sym or f"index {index}"),
        )
    )
    if fair and not weak:
        weak = True
    return CrepancyVerdict(s.name, weak, fair, index, strong, evidence)


# ---------------------------------------------------------------------------
# graded Kronecker quiver


_KRON = {}


def kronecker_objects(d, cutoff=12):
    key = (d, cutoff)
    if key not in _KRON:
        t = build_kronecker_algebra(d, max(cutoff, abs(d) + 1))
        P0 = ProjComplex(t, {0: (("0", 0),)}, name="P_0")
        P1 = ProjComplex(t, {0: (("1", 0),)}, name="P_1")

        def arrow_cone(arrow, twist, name):
            src = ProjComplex(t, {0: (("0", twist),)})
            f = ChainMap(src, P1, {0: {(0, 0): t.arrows[arrow]}})
            C = minimize(cone(f))
            C.name = name
            return C

        _KRON[key] = {
            "table": t,
            "P_0": P0,
            "P_1": P1,
            "G": arrow_cone("theta", 1, "G"),
            "K": arrow_cone("w", d, "K"),
        }
    return _KRON[key]


def kronecker_suite(d, cutoff=12, hwindow=6):
    """Self-Ext patterns of ``G`` and ``K``, the Serre check on ``G``, and the strong-crepancy witness."""
    k = kronecker_objects(d, cutoff)
    t, G, K = k["table"], k["G"], k["K"]
    window = {"internal": t.cutoff, "homological": hwindow}
    reps = []

    eg = ext_table(G, G)
    want_g = {0: 2} if d == 0 else {0: 1, d: 1}
    reps.append(
        CheckReport(
            "kronecker.RHom(G,G)",
            PASS if eg.totals() == want_g else FAIL,
            window=window,
            tables=[eg],
            witness=None if eg.totals() == want_g else {"totals": eg.totals(), "expected": want_g},
            detail="two-dimensional, concentrated in degree 0 when d = 0",
        )
    )
    sg = serre_dual_check(G, G, DualityData.fat_point(), [k["P_0"], k["P_1"], G, K], hwindow, name="kronecker.S(G)=G")
    sg.expected = PASS if d == 0 else FAIL
    reps.append(sg)

    ek = ext_table(K, K)
    want_k = {0: 2} if d == 2 else {0: 1, 2 - d: 1}
    reps.append(
        CheckReport(
            "kronecker.RHom(K,K)",
            PASS if ek.totals() == want_k else FAIL,
            window=window,
            tables=[ek],
            witness=None if ek.totals() == want_k else {"totals": ek.totals(), "expected": want_k},
        )
    )
    h10, h01 = t.dim("1", "0"), t.dim("0", "1")
    ok = h10 == 0 and h01 == 2
    reps.append(
        CheckReport(
            "kronecker.strong_witness",
            PASS if ok else FAIL,
            window=window,
            witness=None if ok else {"Hom(P_1,P_0)": h10, "Hom(P_0,P_1)": h01},
            detail=f"dim Hom(P_1,P_0) = {h10}, dim Hom(P_0,P_1) = {h01}",
        )
    )
    return bundle(f"kronecker_suite(d={d})", reps, window)
