"""Truncated Hom tables for path algebras with relations.

A :class:`HomTable` stores, for each ordered pair of vertices ``(v, w)``, a
basis of ``Hom(P_v, P_w)`` (one degree label per basis element) together with
composition structure constants. Composition is written ``f o g`` with
``g: P_u -> P_v`` and ``f: P_v -> P_w``; the identification used throughout is

    Hom(P_v, P_w) = paths from v to w,

so the arrow ``q_x: X -> x`` of the node quiver is the map ``P_X -> P_x``
appearing in the resolution ``P_y -> P_X -> P_x -> S_x``. A module ``N`` is
evaluated at a vertex as ``N(v) = Hom(P_v, N)``.

Elements are sparse dicts ``{basis index: QQ}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificationError, InvalidCurveError, PreconditionError
from .exact_linalg import QQ, sparse

# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    internal_degree: int = 0
    homological_degree: int = 0

    @property
    def degree(self):
        return self.internal_degree + self.homological_degree


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices, graded arrows, and relations.

    A relation is a tuple of ``(coefficient, path)`` where ``path`` lists arrow
    names in composition order, so ``("q_x", "i_y")`` means ``q_x o i_y``.
    """

    name: str
    vertices: tuple
    arrows: tuple
    relations: tuple = ()

    def __post_init__(self):
        names = {a.name for a in self.arrows}
        if len(names) != len(self.arrows):
            raise PreconditionError("duplicate arrow names")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise PreconditionError(f"arrow {a.name} has an unknown endpoint")
        for rel in self.relations:
            ends = set()
            degrees = set()
            for _, path in rel:
                src, tgt, deg = self.path_type(path)
                ends.add((src, tgt))
                degrees.add(deg)
            if len(ends) > 1:
                raise PreconditionError(f"relation {rel} mixes sources/targets")
            if len(degrees) > 1:
                raise PreconditionError(f"relation {rel} is not homogeneous")

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def path_type(self, path):
        """(source, target, (internal, homological)) of a composable path."""
        arrows = [self.arrow(n) for n in path]
        # composition order: the rightmost arrow is applied first
        for left, right in zip(arrows, arrows[1:]):
            if right.target != left.source:
                raise PreconditionError(f"path {path} is not composable")
        internal = sum(a.internal_degree for a in arrows)
        homological = sum(a.homological_degree for a in arrows)
        return arrows[-1].source, arrows[0].target, (internal, homological)


# ---------------------------------------------------------------------------
# element arithmetic


def add_into(acc, elem, scale=1):
    for i, c in elem.items():
        v = acc.get(i, 0) + c * scale
        if v:
            acc[i] = v
        else:
            acc.pop(i, None)
    return acc


def scale_elem(elem, c):
    if not c:
        return {}
    return {i: v * c for i, v in elem.items()}


class HomTable:
    """Graded (or filtered) Hom spaces between indecomposable projectives.

    ``graded=True``: basis degrees form a grading and composition is
    homogeneous; products whose degree exceeds ``cutoff`` are unknown.
    ``graded=False``: the degrees are filtration labels (or all zero for a
    finite-dimensional ungraded algebra).
    ``finite=True`` means every Hom space is stored completely.
    ``total_grading=True`` means the internal degree is part of the
    cohomological degree (used by the graded Kronecker quiver).
    """

    def __init__(
        self,
        name,
        vertices,
        cutoff,
        basis,
        products,
        *,
        graded=True,
        finite=False,
        total_grading=False,
        presentation=None,
        arrows=None,
    ):
        self.name = name
        self.vertices = tuple(vertices)
        self.cutoff = cutoff
        self.graded = graded
        self.finite = finite
        self.total_grading = total_grading
        self.presentation = presentation
        self._basis = {}
        self._degrees = {}
        self._by_degree = {}
        for v in self.vertices:
            for w in self.vertices:
                items = list(basis.get((v, w), ()))
                self._basis[(v, w)] = [lab for _, lab in items]
                self._degrees[(v, w)] = [d for d, _ in items]
                groups = {}
                for i, (d, _) in enumerate(items):
                    groups.setdefault(d, []).append(i)
                self._by_degree[(v, w)] = groups
        self._products = products
        self._identity = {}
        for v in self.vertices:
            try:
                self._identity[v] = self._basis[(v, v)].index("1")
            except ValueError:
                raise PreconditionError(f"no identity basis element at vertex {v}") from None
        self.arrows = dict(arrows or {})
        all_degrees = [d for ds in self._degrees.values() for d in ds]
        self.min_degree = min(all_degrees) if all_degrees else 0
        self.max_degree = max(all_degrees) if all_degrees else 0

    def __repr__(self):
        return f"HomTable({self.name!r}, cutoff={self.cutoff})"

    # -- bases ---------------------------------------------------------------

    def dim(self, v, w, degree=None):
        if degree is None:
            return len(self._basis[(v, w)])
        return len(self._by_degree[(v, w)].get(degree, ()))

    def indices(self, v, w, degree=None):
        if degree is None:
            return range(len(self._basis[(v, w)]))
        return self._by_degree[(v, w)].get(degree, ())

    def degree(self, v, w, i):
        return self._degrees[(v, w)][i]

    def label(self, v, w, i):
        return self._basis[(v, w)][i]

    def graded_dims(self, v, w):
        return {d: len(ix) for d, ix in sorted(self._by_degree[(v, w)].items())}

    def element(self, v, w, label, coeff=1):
        return {self._basis[(v, w)].index(label): QQ(coeff)}

    def identity(self, v):
        return {self._identity[v]: QQ(1)}

    def identity_index(self, v):
        return self._identity[v]

    def elem_degrees(self, v, w, elem):
        return {self._degrees[(v, w)][i] for i in elem}

    # -- composition ---------------------------------------------------------

    def basis_product(self, u, v, w, i, j):
        """``b_j o b_i`` for ``b_i`` in ``(u, v)`` and ``b_j`` in ``(v, w)``."""
        try:
            return self._products[(u, v, w)][(i, j)]
        except KeyError:
            pass
        di = self._degrees[(u, v)][i]
        dj = self._degrees[(v, w)][j]
        raise CertificationError(
            f"{self.name}: product of degrees {di}+{dj} exceeds cutoff {self.cutoff}",
            required_cutoff=di + dj,
        )

    def compose(self, f, g, u, v, w):
        """``f o g`` with ``g`` in ``Hom(P_u, P_v)`` and ``f`` in ``Hom(P_v, P_w)``."""
        out = {}
        for i, a in g.items():
            for j, b in f.items():
                add_into(out, self.basis_product(u, v, w, i, j), a * b)
        return out

    def path_element(self, path):
        if self.presentation is None:
            raise PreconditionError("table has no presentation")
        src, tgt, _ = self.presentation.path_type(path)
        names = list(path)
        first = names[-1]
        a = self.presentation.arrow(first)
        elem = dict(self.arrows[first])
        cur = a.target
        for n in reversed(names[:-1]):
            b = self.presentation.arrow(n)
            elem = self.compose(self.arrows[n], elem, src, cur, b.target)
            cur = b.target
        return src, tgt, elem

    # -- structural checks ---------------------------------------------------

    def check_relations(self):
        if self.presentation is None:
            return True
        for rel in self.presentation.relations:
            total = {}
            for coeff, path in rel:
                _, _, elem = self.path_element(path)
                add_into(total, elem, QQ(coeff))
            if total:
                return False
        return True

    def check_identities(self):
        V = self.vertices
        for v, w in itertools.product(V, V):
            iv, iw = self._identity[v], self._identity[w]
            for i in self.indices(v, w):
                if self.basis_product(v, v, w, iv, i) != {i: 1}:
                    return False
                if self.basis_product(v, w, w, i, iw) != {i: 1}:
                    return False
        return True

    def check_associativity(self):
        """``(h o g) o f == h o (g o f)`` on every stored triple of basis elements."""
        V = self.vertices
        for a, b, c, d in itertools.product(V, repeat=4):
            for i in self.indices(a, b):
                for j in self.indices(b, c):
                    try:
                        gf = self.basis_product(a, b, c, i, j)
                    except CertificationError:
                        continue
                    for k in self.indices(c, d):
                        try:
                            hg = self.basis_product(b, c, d, j, k)
                            left = self.compose({k: QQ(1)}, gf, a, c, d)
                            right = self.compose(hg, {i: QQ(1)}, a, b, d)
                        except CertificationError:
                            continue
                        if left != right:
                            return False
        return True


def _as_q(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


# ---------------------------------------------------------------------------
# the node xy = 0


NODE_PRESENTATION = QuiverPresentation(
    name="node",
    vertices=("X", "x", "y"),
    arrows=(
        Arrow("i_x", "x", "X", internal_degree=1),
        Arrow("q_x", "X", "x", internal_degree=0),
        Arrow("i_y", "y", "X", internal_degree=1),
        Arrow("q_y", "X", "y", internal_degree=0),
    ),
    relations=(((1, ("q_x", "i_y")),), ((1, ("q_y", "i_x")),)),
)

# Each basis element of Hom(P_v, P_w) is "1 |-> monomial" between the cyclic
# O_X-modules O_X, C[x] = O_X/(y), C[y] = O_X/(x); a monomial is (a, b) = x^a y^b.


def _node_monomials(v, w, e):
    if (v, w) in (("x", "y"), ("y", "x")):
        return []
    if v == "X" and w == "X":
        return [(0, 0)] if e == 0 else [(e, 0), (0, e)]
    if "x" in (v, w):
        return [] if (w == "X" and e == 0) else [(e, 0)]
    return [] if (w == "X" and e == 0) else [(0, e)]


def _node_reduce(mono, w):
    a, b = mono
    if a and b:
        return None
    if w == "x" and b:
        return None
    if w == "y" and a:
        return None
    return mono


def _mono_label(m):
    a, b = m
    if a == b == 0:
        return "1"
    if a:
        return "x" if a == 1 else f"x^{a}"
    return "y" if b == 1 else f"y^{b}"


def build_node_algebra(cutoff):
    """Auslander order of the node {xy = 0} truncated at internal degree ``cutoff``.

    Vertices ``X``, ``x``, ``y`` stand for O_X, C[x], C[y]; ``i_x, i_y`` have
    internal degree 1 and ``q_x, q_y`` degree 0.
    """
    if cutoff < 2:
        raise PreconditionError("node algebra needs cutoff >= 2")
    V = NODE_PRESENTATION.vertices
    basis = {}
    monos = {}
    for v, w in itertools.product(V, V):
        items = []
        for e in range(cutoff + 1):
            for m in _node_monomials(v, w, e):
                items.append((e, _mono_label(m)))
                monos.setdefault((v, w), []).append(m)
        basis[(v, w)] = items
    index = {pair: {m: i for i, m in enumerate(ms)} for pair, ms in monos.items()}
    products = {}
    for u, v, w in itertools.product(V, V, V):
        table = {}
        for i, mg in enumerate(monos.get((u, v), ())):
            for j, mf in enumerate(monos.get((v, w), ())):
                if mg[0] + mg[1] + mf[0] + mf[1] > cutoff:
                    continue
                prod = _node_reduce((mg[0] + mf[0], mg[1] + mf[1]), w)
                if prod is None:
                    table[(i, j)] = {}
                else:
                    # u = X forces the product into the right cyclic module
                    k = index[(u, w)].get(prod)
                    table[(i, j)] = {} if k is None else {k: QQ(1)}
        products[(u, v, w)] = table
    arrows = {
        "i_x": {basis[("x", "X")].index((1, "x")): QQ(1)},
        "q_x": {basis[("X", "x")].index((0, "1")): QQ(1)},
        "i_y": {basis[("y", "X")].index((1, "y")): QQ(1)},
        "q_y": {basis[("X", "y")].index((0, "1")): QQ(1)},
    }
    return HomTable(
        "node",
        V,
        cutoff,
        basis,
        products,
        graded=True,
        finite=False,
        presentation=NODE_PRESENTATION,
        arrows=arrows,
    )


# ---------------------------------------------------------------------------
# graded Kronecker quiver


def kronecker_presentation(d):
    return QuiverPresentation(
        name=f"kronecker(d={d})",
        vertices=("0", "1"),
        arrows=(
            Arrow("w", "0", "1", internal_degree=d),
            Arrow("theta", "0", "1", homological_degree=1),
        ),
    )


def build_kronecker_algebra(d, cutoff):
    """Graded Kronecker quiver with ``|w| = d`` and ``|theta| = 1``.

    One total cohomological grading is used: table degrees are total degrees.
    The algebra is finite-dimensional, so the table is complete.
    """
    if cutoff < abs(d) + 1:
        raise PreconditionError(f"cutoff must be at least |d| + 1 = {abs(d) + 1}")
    pres = kronecker_presentation(d)
    arrows = sorted(pres.arrows, key=lambda a: (a.degree, a.name))
    basis = {
        ("0", "0"): [(0, "1")],
        ("1", "1"): [(0, "1")],
        ("0", "1"): [(a.degree, a.name) for a in arrows],
        ("1", "0"): [],
    }
    products = {}
    V = ("0", "1")
    for u, v, w in itertools.product(V, V, V):
        table = {}
        for i in range(len(basis.get((u, v), ()))):
            for j in range(len(basis.get((v, w), ()))):
                if u == v:
                    table[(i, j)] = {j: QQ(1)}
                elif v == w:
                    table[(i, j)] = {i: QQ(1)}
                else:
                    table[(i, j)] = {}
        products[(u, v, w)] = table
    arrow_elems = {a.name: {basis[("0", "1")].index((a.degree, a.name)): QQ(1)} for a in pres.arrows}
    return HomTable(
        f"kronecker(d={d})",
        V,
        cutoff,
        basis,
        products,
        graded=True,
        finite=True,
        total_grading=True,
        presentation=pres,
        arrows=arrow_elems,
    )


# ---------------------------------------------------------------------------
# one-node affine curve with normalization A^1


def _poly_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [QQ(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def poly_add(p, q, scale=1):
    n = max(len(p), len(q))
    out = [QQ(0)] * n
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b * scale
    return _poly_trim(out)


def poly_eval(p, x):
    acc = QQ(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(p, q):
    p = list(p)
    quo = [QQ(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for i in range(len(p) - len(q), -1, -1):
        c = p[i + len(q) - 1] / lead
        quo[i] = c
        if c:
            for j, b in enumerate(q):
                p[i + j] -= c * b
    return _poly_trim(quo), _poly_trim(p)


def poly_pow(p, n):
    out = (QQ(1),)
    for _ in range(n):
        out = poly_mul(out, p)
    return out


def monomial(k, c=1):
    return tuple([QQ(0)] * k + [QQ(c)])


@dataclass(frozen=True)
class CurveData:
    """Affine curve ``O_X = C + g C[t]`` with a node glued from ``t = q1`` and ``t = q2``."""

    q1: Fraction
    q2: Fraction
    cutoff: int = 14

    def __post_init__(self):
        object.__setattr__(self, "q1", Fraction(self.q1))
        object.__setattr__(self, "q2", Fraction(self.q2))
        if self.q1 == self.q2:
            raise InvalidCurveError(f"node preimages must be distinct, got q1 = q2 = {self.q1}")
        if self.cutoff < 4:
            raise PreconditionError("curve cutoff must be at least 4")

    @property
    def s1(self):
        return (_as_q(-self.q1), QQ(1))

    @property
    def s2(self):
        return (_as_q(-self.q2), QQ(1))

    @property
    def g(self):
        return poly_mul(self.s1, self.s2)


class NodalCurveTable(HomTable):
    """Hom table of ``End_X(O_X + O_Xt)`` with elements realised as polynomials.

    Vertices ``X`` and ``Xt``:  End(P_X) = C + gC[t], Hom(P_X, P_Xt) = C[t],
    Hom(P_Xt, P_X) = gC[t], End(P_Xt) = C[t]. Degrees are t-degrees, which
    filter rather than grade the algebra.
    """

    KINDS = {("X", "X"): "O", ("X", "Xt"): "C", ("Xt", "X"): "I", ("Xt", "Xt"): "C"}

    def __init__(self, curve):
        self.curve = curve
        D = curve.cutoff
        g = curve.g
        self._polys = {}
        basis = {}
        for pair, kind in self.KINDS.items():
            if kind == "C":
                polys = [monomial(k) for k in range(D + 1)]
                labels = [(k, "1" if k == 0 else f"t^{k}") for k in range(D + 1)]
            elif kind == "I":
                polys = [poly_mul(g, monomial(k)) for k in range(D - 1)]
                labels = [(k + 2, f"g*t^{k}") for k in range(D - 1)]
            else:
                polys = [monomial(0)] + [poly_mul(g, monomial(k)) for k in range(D - 1)]
                labels = [(0, "1")] + [(k + 2, f"g*t^{k}") for k in range(D - 1)]
            self._polys[pair] = polys
            basis[pair] = labels
        V = ("X", "Xt")
        self._degree_lists = {pair: [d for d, _ in labels] for pair, labels in basis.items()}
        products = {}
        for u, v, w in itertools.product(V, V, V):
            table = {}
            for i, pg in enumerate(self._polys[(u, v)]):
                for j, pf in enumerate(self._polys[(v, w)]):
                    if len(pg) + len(pf) - 2 > D:
                        continue
                    table[(i, j)] = self.expand(u, w, poly_mul(pg, pf))
            products[(u, v, w)] = table
        super().__init__(
            f"nodal(q1={curve.q1}, q2={curve.q2})",
            V,
            D,
            basis,
            products,
            graded=False,
            finite=False,
        )

    def poly(self, v, w, elem):
        out = ()
        for i, c in elem.items():
            out = poly_add(out, self._polys[(v, w)][i], c)
        return out

    def basis_poly(self, v, w, i):
        return self._polys[(v, w)][i]

    def expand(self, v, w, p):
        """Coordinates of the polynomial ``p`` in the basis of ``Hom(P_v, P_w)``."""
        D = self.curve.cutoff
        kind = self.KINDS[(v, w)]
        p = _poly_trim(p)
        if len(p) - 1 > D:
            raise CertificationError(f"polynomial of degree {len(p) - 1} exceeds cutoff {D}", len(p) - 1)
        g = self.curve.g
        if kind == "C":
            return {k: c for k, c in enumerate(p) if c}
        if kind == "I":
            quo, rem = poly_divmod(p, g) if p else ((), ())
            if rem:
                raise PreconditionError("polynomial is not in the conductor gC[t]")
            return {k: c for k, c in enumerate(quo) if c}
        q1, q2 = _as_q(self.curve.q1), _as_q(self.curve.q2)
        c0 = poly_eval(p, q1)
        if poly_eval(p, q2) != c0:
            raise PreconditionError("polynomial takes different values at the two branches")
        rest = poly_add(p, (c0,), -1)
        quo, rem = poly_divmod(rest, g) if rest else ((), ())
        assert not rem
        out = {0: c0} if c0 else {}
        for k, c in enumerate(quo):
            if c:
                out[k + 1] = c
        return out

    def element_from_poly(self, v, w, p):
        return self.expand(v, w, p)


def build_general_nodal_algebra(curve):
    return NodalCurveTable(curve)


class CentralQuotientTable(HomTable):
    """The finite-dimensional algebra A / g^m A for a nodal curve table.

    ``g`` is central, so Hom_A(M, N) / g^m = Hom_{A/g^m}(M/g^m, N/g^m) for
    bounded complexes of projectives ``M``. All basis elements sit in degree 0;
    the original t-degree is kept in the label.
    """

    def __init__(self, parent, m):
        if m < 1:
            raise PreconditionError("quotient power must be positive")
        self.parent = parent
        self.power = m
        D = parent.cutoff
        gm = poly_pow(parent.curve.g, m)
        self._nf = {}
        self._complement = {}
        basis = {}
        V = parent.vertices
        for v, w in itertools.product(V, V):
            n = parent.dim(v, w)
            degs = [parent.degree(v, w, i) for i in range(n)]
            order = sorted(range(n), key=lambda i: (-degs[i], -i))
            pos = {i: c for c, i in enumerate(order)}
            rows = {}
            for r, i in enumerate(ix for ix in range(n) if degs[ix] + 2 * m <= D):
                vec = parent.expand(v, w, poly_mul(gm, parent.basis_poly(v, w, i)))
                rows[r] = {pos[k]: c for k, c in vec.items()}
            mat = sparse(rows, len(rows), n)
            red, pivots = mat.rref() if rows else (mat, ())
            red_rows = red.to_sdm()
            reducers = []
            for r, pc in enumerate(pivots):
                row = {order[c]: val for c, val in red_rows.get(r, {}).items()}
                reducers.append((order[pc], row))
            pivot_set = {p for p, _ in reducers}
            comp = [i for i in range(n) if i not in pivot_set]
            if len(comp) != 2 * m:
                raise CertificationError(
                    f"cutoff {D} too small for the quotient by g^{m} on ({v}, {w})",
                    required_cutoff=4 * m + 2,
                )
            self._nf[(v, w)] = reducers
            self._complement[(v, w)] = comp
            basis[(v, w)] = [(0, f"[{parent.label(v, w, i)}]") for i in comp]
            if v == w:
                basis[(v, w)] = [(0, "1") if parent.label(v, w, i) == "1" else lab for i, lab in zip(comp, basis[(v, w)])]
        self._qindex = {pair: {i: r for r, i in enumerate(c)} for pair, c in self._complement.items()}
        products = {}
        for u, v, w in itertools.product(V, V, V):
            table = {}
            for r1, i in enumerate(self._complement[(u, v)]):
                for r2, j in enumerate(self._complement[(v, w)]):
                    prod = parent.basis_product(u, v, w, i, j)
                    table[(r1, r2)] = self.reduce(u, w, prod)
            products[(u, v, w)] = table
        super().__init__(
            f"{parent.name}/g^{m}",
            V,
            0,
            basis,
            products,
            graded=False,
            finite=True,
        )

    def reduce(self, v, w, elem):
        """Image in the quotient of a parent element of ``Hom(P_v, P_w)``."""
        vec = dict(elem)
        for p, row in self._nf[(v, w)]:
            c = vec.get(p)
            if c:
                add_into(vec, row, -c)
        out = {}
        qi = self._qindex[(v, w)]
        for i, c in vec.items():
            if c:
                out[qi[i]] = c
        return out

    def lift(self, v, w, elem):
        comp = self._complement[(v, w)]
        return {comp[r]: c for r, c in elem.items() if c}


# ---------------------------------------------------------------------------
# minimal projective resolutions


def _coords(table, vertex, degree, free):
    return [(t, i) for t, (vt, st) in enumerate(free) for i in table.indices(vertex, vt, degree - st)]


def _apply(table, vec, b, vertex, u, free):
    """Precompose the vector ``vec`` of ``Hom(P_u, sum free)`` with ``b: P_vertex -> P_u``."""
    out = {}
    for t, elem in vec.items():
        prod = table.compose(elem, b, vertex, u, free[t][0])
        if prod:
            out[t] = prod
    return out


def _to_col(vec, pos):
    return {pos[(t, i)]: c for t, e in vec.items() for i, c in e.items() if c}


def _cols_matrix(cols, nrows):
    return sparse({(r, j): c for j, col in enumerate(cols) for r, c in col.items()}, nrows, len(cols))


def _minimal_generators(table, free, sub, degrees):
    """Homogeneous generators of a graded submodule of ``sum free`` modulo its radical.

    ``sub[(vertex, degree)]`` spans the submodule evaluated at ``vertex`` in
    ``degree``; a vector is ``{term: element}``. The radical at ``(v, e)`` is
    spanned by precomposites with non-identity basis maps into other points.
    """
    from .exact_linalg import rank

    gens = []
    for degree in degrees:
        for vertex in table.vertices:
            vecs = sub.get((vertex, degree))
            if not vecs:
                continue
            coords = _coords(table, vertex, degree, free)
            pos = {c: n for n, c in enumerate(coords)}
            radical = []
            for (u, e2), uvecs in sub.items():
                if e2 > degree:
                    continue
                for i in table.indices(vertex, u, degree - e2):
                    if u == vertex and i == table.identity_index(vertex):
                        continue
                    b = {i: QQ(1)}
                    for uv in uvecs:
                        img = _apply(table, uv, b, vertex, u, free)
                        if img:
                            radical.append(_to_col(img, pos))
            r0 = rank(_cols_matrix(radical, len(coords)))
            chosen = []
            for v in vecs:
                trial = radical + [_to_col(w, pos) for w in chosen] + [_to_col(v, pos)]
                if rank(_cols_matrix(trial, len(coords))) > r0 + len(chosen):
                    chosen.append(v)
            gens.extend((vertex, degree, v) for v in chosen)
    return gens


def _kernel_vectors(table, free, gens, vertex, degree):
    """Kernel of ``Hom(P_vertex, sum P_gen<s>)_degree -> Hom(P_vertex, sum free)_degree``."""
    from .exact_linalg import columns, rank_kernel

    src = _coords(table, vertex, degree, [(vg, sg) for vg, sg, _ in gens])
    tgt = _coords(table, vertex, degree, free)
    if not src:
        return []
    tpos = {c: n for n, c in enumerate(tgt)}
    entries = {}
    for col, (k, i) in enumerate(src):
        vg, _, gvec = gens[k]
        img = _apply(table, gvec, {i: QQ(1)}, vertex, vg, free)
        for r, c in _to_col(img, tpos).items():
            entries[(r, col)] = entries.get((r, col), 0) + c
    _, ker = rank_kernel(sparse(entries, len(tgt), len(src)))
    out = []
    for colvec in columns(ker):
        vec = {}
        for n, c in enumerate(colvec):
            if c:
                k, i = src[n]
                vec.setdefault(k, {})[i] = c
        out.append(vec)
    return out


def minimal_projective_resolution(simple, max_len, table):
    """Minimal graded projective resolution of the simple module at ``simple``.

    Returns a ``ProjComplex`` with the projective cover in position 0 and
    syzygies in negative positions. For a truncated table, a syzygy generator
    in the top two degrees of the window means minimality is not certified.
    """
    from .complexes import ProjComplex

    if not table.graded:
        raise PreconditionError("minimal resolutions need a graded table")
    if max_len < 1:
        raise PreconditionError("max_len must be at least 1")
    if simple not in table.vertices:
        raise PreconditionError(f"unknown vertex {simple}")
    if table.finite:
        span = (max_len + 2) * max(abs(table.min_degree), abs(table.max_degree), 1)
        degrees = range(-span, span + 1)
    else:
        degrees = range(min(table.min_degree, 0), table.cutoff + 1)
    top = degrees[-1]

    terms = {0: ((simple, 0),)}
    diff = {}
    free = [(simple, 0)]
    sub = {}
    ident = table.identity_index(simple)
    for vertex in table.vertices:
        for degree in degrees:
            vecs = [
                {0: {i: QQ(1)}}
                for i in table.indices(vertex, simple, degree)
                if not (vertex == simple and i == ident)
            ]
            if vecs:
                sub[(vertex, degree)] = vecs

    position = 0
    for step in range(max_len + 1):
        gens = _minimal_generators(table, free, sub, degrees)
        if not gens:
            return ProjComplex(table, terms, diff, name=f"res(S_{simple})")
        if not table.finite and any(sg >= top - 1 for _, sg, _ in gens):
            raise CertificationError(
                f"syzygy generators reach the top of the window (cutoff {table.cutoff})",
                required_cutoff=table.cutoff + 2,
            )
        if step == max_len:
            raise CertificationError(f"resolution of S_{simple} is longer than {max_len}")
        position -= 1
        terms[position] = tuple((vg, sg) for vg, sg, _ in gens)
        diff[position] = {(t, col): elem for col, (_, _, vec) in enumerate(gens) for t, elem in vec.items()}
        sub = {}
        for vertex in table.vertices:
            for degree in degrees:
                vecs = _kernel_vectors(table, free, gens, vertex, degree)
                if vecs:
                    sub[(vertex, degree)] = vecs
        free = list(terms[position])
    raise AssertionError("unreachable")
