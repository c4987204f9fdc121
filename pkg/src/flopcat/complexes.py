"""Bounded complexes of graded projectives and their Hom complexes.

A term of a complex is ``(vertex, twist)``, meaning ``P_vertex<twist>`` with
generator in degree ``twist``. A differential or chain-map entry from term
``a = (u, s)`` to term ``b = (v, t)`` is an element of ``Hom(P_u, P_v)`` of
degree ``s - t``.

Sign conventions: ``C[n]^p = C^{p+n}`` with differential ``(-1)^n d``;
``Cone(f: A -> B)^p = A^{p+1} + B^p`` with ``d = [[-d_A, 0], [f, d_B]]``;
on ``Hom^k(M, N)`` the differential is ``d_N o phi - (-1)^k phi o d_M``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra_tables import CentralQuotientTable, NodalCurveTable, add_into, scale_elem
from .errors import CertificationError, NoClassError, PreconditionError
from .exact_linalg import QQ, columns, rank, solve, sparse, subquotient_dim


def _clean(entries):
    return {k: dict(v) for k, v in entries.items() if v}


def compose_matrices(table, X, Y, src, mid, tgt):
    """Entrywise ``X o Y`` for ``Y: src -> mid`` and ``X: mid -> tgt`` (term tuples)."""
    by_col = {}
    for (c, b), elem in X.items():
        by_col.setdefault(b, []).append((c, elem))
    out = {}
    for (b, a), y in Y.items():
        for c, x in by_col.get(b, ()):
            prod = table.compose(x, y, src[a][0], mid[b][0], tgt[c][0])
            if prod:
                acc = out.setdefault((c, a), {})
                add_into(acc, prod)
    return _clean(out)


def add_matrices(*mats, scales=None):
    out = {}
    scales = scales or [1] * len(mats)
    for m, s in zip(mats, scales):
        for key, elem in m.items():
            add_into(out.setdefault(key, {}), elem, s)
    return _clean(out)


class ProjComplex:
    """A bounded complex of (twisted) indecomposable projectives."""

    def __init__(self, table, terms, diff=None, name=None, check=True):
        self.table = table
        self.terms = {p: tuple(ts) for p, ts in terms.items() if ts}
        self.diff = {}
        for p, entries in (diff or {}).items():
            ent = _clean(entries)
            if ent:
                self.diff[p] = ent
        self.name = name
        if check:
            self.validate()

    def __repr__(self):
        inner = ", ".join(
            f"{p}: " + "+".join(f"P_{v}<{s}>" if s else f"P_{v}" for v, s in self.terms[p]) for p in self.positions()
        )
        return f"ProjComplex({self.name or ''} {{{inner}}})"

    # -- structure -----------------------------------------------------------

    def positions(self):
        return sorted(self.terms)

    def term(self, p):
        return self.terms.get(p, ())

    def d(self, p):
        return self.diff.get(p, {})

    def size(self):
        return sum(len(t) for t in self.terms.values())

    def is_zero(self):
        return not self.terms

    def entry_degree(self, a_term, b_term):
        return a_term[1] - b_term[1]

    def validate(self):
        table = self.table
        for p, entries in self.diff.items():
            src, tgt = self.term(p), self.term(p + 1)
            for (b, a), elem in entries.items():
                if not (0 <= a < len(src) and 0 <= b < len(tgt)):
                    raise PreconditionError(f"differential entry {(b, a)} at position {p} is out of range")
                _check_entry(table, src[a], tgt[b], elem, f"d^{p}")
        for p in self.diff:
            if p + 1 in self.diff:
                dd = compose_matrices(table, self.diff[p + 1], self.diff[p], self.term(p), self.term(p + 1), self.term(p + 2))
                if dd:
                    raise PreconditionError(f"d o d != 0 at position {p}")

    def cohomological_range(self):
        ps = self.positions()
        return (ps[0], ps[-1]) if ps else (0, -1)


def _check_entry(table, a_term, b_term, elem, what):
    (u, s), (v, t) = a_term, b_term
    n = table.dim(u, v)
    for i in elem:
        if not 0 <= i < n:
            raise PreconditionError(f"{what}: basis index {i} out of range for Hom(P_{u}, P_{v})")
    if table.graded:
        degs = table.elem_degrees(u, v, elem)
        if degs and degs != {s - t}:
            raise PreconditionError(f"{what}: entry P_{u}<{s}> -> P_{v}<{t}> has degrees {sorted(degs)}, need {s - t}")
    elif s or t:
        raise PreconditionError(f"{what}: twists are not allowed over a non-graded table")


@dataclass
class ChainMap:
    """A degree-zero chain map; ``comps[p][(b, a)]`` maps ``source^p[a]`` to ``target^p[b]``."""

    source: ProjComplex
    target: ProjComplex
    comps: dict = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        self.comps = {p: _clean(c) for p, c in self.comps.items() if _clean(c)}
        if self.source.table is not self.target.table:
            raise PreconditionError("chain map between complexes over different tables")
        if self.check:
            self.validate()

    @property
    def table(self):
        return self.source.table

    def at(self, p):
        return self.comps.get(p, {})

    def validate(self):
        S, T, table = self.source, self.target, self.table
        for p, entries in self.comps.items():
            for (b, a), elem in entries.items():
                if not (0 <= a < len(S.term(p)) and 0 <= b < len(T.term(p))):
                    raise PreconditionError(f"chain map entry {(b, a)} at {p} out of range")
                _check_entry(table, S.term(p)[a], T.term(p)[b], elem, f"f^{p}")
        ps = set(S.terms) | set(T.terms)
        for p in ps:
            left = compose_matrices(table, self.at(p + 1), S.d(p), S.term(p), S.term(p + 1), T.term(p + 1))
            right = compose_matrices(table, T.d(p), self.at(p), S.term(p), T.term(p), T.term(p + 1))
            if add_matrices(left, right, scales=[1, -1]):
                raise PreconditionError(f"not a chain map at position {p}")

    def is_zero(self):
        return not self.comps


def identity_map(C):
    comps = {p: {(a, a): C.table.identity(v) for a, (v, _) in enumerate(ts)} for p, ts in C.terms.items()}
    return ChainMap(C, C, comps, check=False)


def shift(C, n):
    sign = -1 if n % 2 else 1
    terms = {p - n: ts for p, ts in C.terms.items()}
    diff = {p - n: {k: scale_elem(e, sign) for k, e in ent.items()} for p, ent in C.diff.items()}
    return ProjComplex(C.table, terms, diff, name=f"{C.name}[{n}]" if C.name else None, check=False)


def shift_map(f, n):
    """``f[n]``; components are unchanged because both differentials pick up the same sign."""
    return ChainMap(shift(f.source, n), shift(f.target, n), {p - n: c for p, c in f.comps.items()}, check=False)


def regrade(C, t):
    """Internal twist: every generator degree is raised by ``t``."""
    if t and not C.table.graded:
        raise PreconditionError("internal regrading needs a graded table")
    terms = {p: tuple((v, s + t) for v, s in ts) for p, ts in C.terms.items()}
    return ProjComplex(C.table, terms, C.diff, name=C.name, check=False)


def regrade_map(f, t):
    return ChainMap(regrade(f.source, t), regrade(f.target, t), f.comps, check=False)


def direct_sum(*Cs):
    """Direct sum and, for each summand, the index offset at every position."""
    if not Cs:
        raise PreconditionError("direct sum of nothing")
    table = Cs[0].table
    positions = sorted(set().union(*(C.terms for C in Cs)))
    terms, diff = {}, {}
    offsets = [dict() for _ in Cs]
    for p in positions:
        acc = []
        for n, C in enumerate(Cs):
            offsets[n][p] = len(acc)
            acc.extend(C.term(p))
        terms[p] = tuple(acc)
    for p in positions:
        ent = {}
        for n, C in enumerate(Cs):
            oa, ob = offsets[n][p], offsets[n].get(p + 1, 0)
            for (b, a), e in C.d(p).items():
                ent[(b + ob, a + oa)] = e
        diff[p] = ent
    return ProjComplex(table, terms, diff, check=False), offsets


def cone(f):
    """Mapping cone with ``Cone^p = A^{p+1} + B^p`` (the ``A`` part listed first)."""
    A, B, table = f.source, f.target, f.table
    positions = sorted({p - 1 for p in A.terms} | set(B.terms))
    terms, diff = {}, {}
    for p in positions:
        terms[p] = A.term(p + 1) + B.term(p)
    for p in positions:
        na, na_next = len(A.term(p + 1)), len(A.term(p + 2))
        ent = {}
        for (b, a), e in A.d(p + 1).items():
            ent[(b, a)] = scale_elem(e, -1)
        for (b, a), e in f.at(p + 1).items():
            ent[(b + na_next, a)] = e
        for (b, a), e in B.d(p).items():
            ent[(b + na_next, a + na)] = e
        diff[p] = ent
    return ProjComplex(table, terms, diff, name=None, check=False)


def cone_inclusion(f):
    """The canonical map ``B -> Cone(f)``."""
    Z = cone(f)
    comps = {}
    for p, ts in f.target.terms.items():
        na = len(f.source.term(p + 1))
        comps[p] = {(a + na, a): f.table.identity(v) for a, (v, _) in enumerate(ts)}
    return Z, ChainMap(f.target, Z, comps, check=False)


# ---------------------------------------------------------------------------
# minimization


def _find_cancellation(C):
    table = C.table
    for p in C.positions():
        src, tgt = C.term(p), C.term(p + 1)
        for (b, a), elem in C.d(p).items():
            if src[a] != tgt[b] or len(elem) != 1:
                continue
            (i, c), = elem.items()
            if i == table.identity_index(src[a][0]):
                return p, a, b, c
    return None


def _cancel(C, p, a, b, c):
    """Gaussian elimination of the isomorphism ``d^p_{ba} = c * id``."""
    table = C.table
    cinv = QQ(1) / c
    terms = dict(C.terms)
    keep_p = [x for x in range(len(C.term(p))) if x != a]
    keep_q = [x for x in range(len(C.term(p + 1))) if x != b]
    terms[p] = tuple(C.term(p)[x] for x in keep_p)
    terms[p + 1] = tuple(C.term(p + 1)[x] for x in keep_q)
    rp = {old: new for new, old in enumerate(keep_p)}
    rq = {old: new for new, old in enumerate(keep_q)}
    diff = {}
    for r, ent in C.diff.items():
        new = {}
        for (y, x), e in ent.items():
            if r == p - 1:
                if y == a:
                    continue
                new[(rp[y], x)] = e
            elif r == p:
                if x == a or y == b:
                    continue
                new[(rq[y], rp[x])] = e
            elif r == p + 1:
                if x == b:
                    continue
                new[(y, rq[x])] = e
            else:
                new[(y, x)] = e
        diff[r] = new
    # d'_{y x} = d_{y x} - d_{y a} c^{-1} d_{b x} on the surviving part of d^p
    d = C.d(p)
    col_a = {y: e for (y, x), e in d.items() if x == a and y != b}
    row_b = {x: e for (y, x), e in d.items() if y == b and x != a}
    src, tgt = C.term(p), C.term(p + 1)
    for y, e_ya in col_a.items():
        for x, e_bx in row_b.items():
            prod = table.compose(e_ya, e_bx, src[x][0], src[a][0], tgt[y][0])
            if prod:
                acc = diff[p].setdefault((rq[y], rp[x]), {})
                add_into(acc, prod, -cinv)
    return ProjComplex(table, terms, diff, name=C.name, check=False)


def minimize(C):
    """Cancel every isomorphism component of the differential."""
    while True:
        hit = _find_cancellation(C)
        if hit is None:
            return ProjComplex(C.table, C.terms, C.diff, name=C.name, check=False)
        C = _cancel(C, *hit)


def is_minimal(C):
    return _find_cancellation(C) is None


# ---------------------------------------------------------------------------
# Hom complexes


class HomSlice:
    """``Hom^*(M, N)`` in one internal degree ``j``, as explicit matrices."""

    def __init__(self, M, N, j):
        table = M.table
        self.M, self.N, self.j = M, N, j
        self.basis = {}
        self.index = {}
        ks = sorted({q - p for p in M.terms for q in N.terms})
        for k in ks:
            items = []
            for p in M.positions():
                q = p + k
                if q not in N.terms:
                    continue
                for a, (va, sa) in enumerate(M.term(p)):
                    for b, (vb, tb) in enumerate(N.term(q)):
                        if table.graded:
                            idx = table.indices(va, vb, sa + j - tb)
                        else:
                            idx = table.indices(va, vb) if j == 0 else ()
                        for i in idx:
                            items.append((p, b, a, i))
            self.basis[k] = items
            self.index[k] = {it: n for n, it in enumerate(items)}
        self._diff = {}

    def dim(self, k):
        return len(self.basis.get(k, ()))

    def degrees(self):
        return sorted(self.basis)

    def delta(self, k):
        """Matrix of ``Hom^k -> Hom^{k+1}``."""
        if k in self._diff:
            return self._diff[k]
        M, N, table = self.M, self.N, self.M.table
        src, tgt = self.basis.get(k, ()), self.index.get(k + 1, {})
        n_cols = {}
        for q, ent in N.diff.items():
            for (b2, b), e in ent.items():
                n_cols.setdefault((q, b), []).append((b2, e))
        m_rows = {}
        for p, ent in M.diff.items():
            for (a, a0), e in ent.items():
                m_rows.setdefault((p + 1, a), []).append((a0, e))
        sign = -1 if k % 2 == 0 else 1
        entries = {}
        for col, (p, b, a, i) in enumerate(src):
            q = p + k
            va, vb = M.term(p)[a][0], N.term(q)[b][0]
            for b2, e in n_cols.get((q, b), ()):
                vb2 = N.term(q + 1)[b2][0]
                prod = table.compose(e, {i: QQ(1)}, va, vb, vb2)
                for idx, c in prod.items():
                    row = tgt[(p, b2, a, idx)]
                    entries[(row, col)] = entries.get((row, col), 0) + c
            for a0, e in m_rows.get((p, a), ()):
                va0 = M.term(p - 1)[a0][0]
                prod = table.compose({i: QQ(1)}, e, va0, va, vb)
                for idx, c in prod.items():
                    row = tgt[(p - 1, b, a0, idx)]
                    entries[(row, col)] = entries.get((row, col), 0) + sign * c
        mat = sparse(entries, len(tgt), len(src))
        self._diff[k] = mat
        return mat

    def cohomology_dim(self, k):
        if not self.dim(k):
            return 0
        return subquotient_dim(self.delta(k - 1), self.delta(k))[0]

    def cohomology_basis(self, k):
        if not self.dim(k):
            return []
        return columns(subquotient_dim(self.delta(k - 1), self.delta(k))[1])

    def vector_to_components(self, k, vec):
        comps = {}
        for n, c in enumerate(vec):
            if c:
                p, b, a, i = self.basis[k][n]
                comps.setdefault(p, {}).setdefault((b, a), {})[i] = c
        return comps

    def components_to_vector(self, k, comps):
        vec = [QQ(0)] * self.dim(k)
        for p, ent in comps.items():
            for (b, a), elem in ent.items():
                for i, c in elem.items():
                    key = (p, b, a, i)
                    if key not in self.index[k]:
                        raise PreconditionError("components do not lie in this Hom slice")
                    vec[self.index[k][key]] += c
        return vec


def internal_window(M, N):
    """Computable internal degrees ``(jmin, jmax)`` of ``Hom(M, N)``."""
    table = M.table
    if not table.graded:
        return 0, 0
    diffs = [sa - tb for p in M.terms for _, sa in M.term(p) for q in N.terms for _, tb in N.term(q)]
    if not diffs:
        return 0, -1
    jmin = table.min_degree - max(diffs)
    if table.finite:
        return jmin, table.max_degree - min(diffs)
    return jmin, table.cutoff - max(diffs)


def hom_complex(M, N, window=None):
    """Slices ``{j: HomSlice}`` of ``Hom^*(M, N)`` over an internal-degree window."""
    jmin, jmax = internal_window(M, N)
    if window is None:
        window = (jmin, jmax)
    lo, hi = window
    if hi > jmax and not M.table.finite:
        raise CertificationError(
            f"internal degree {hi} exceeds what cutoff {M.table.cutoff} can compute (max {jmax})",
            required_cutoff=M.table.cutoff + hi - jmax,
        )
    return {j: HomSlice(M, N, j) for j in range(max(lo, jmin), min(hi, jmax) + 1)}


def evaluate_at(M, vertex, j):
    """The complex of vector spaces ``Hom(P_vertex, M)`` in internal degree ``j``.

    Returns per-position bases ``[(term, basis index)]`` and differential
    matrices, built directly from the terms of ``M`` without a Hom complex.
    """
    table = M.table
    bases = {}
    for p in M.positions():
        bases[p] = [(a, i) for a, (va, sa) in enumerate(M.term(p)) for i in table.indices(vertex, va, j - sa if table.graded else None)]
    mats = {}
    for p in M.positions():
        src, tgt = bases[p], bases.get(p + 1, [])
        pos = {it: n for n, it in enumerate(tgt)}
        by_src = {}
        for (b, a), e in M.d(p).items():
            by_src.setdefault(a, []).append((b, e))
        entries = {}
        for col, (a, i) in enumerate(src):
            va = M.term(p)[a][0]
            for b, e in by_src.get(a, ()):
                vb = M.term(p + 1)[b][0]
                for idx, c in table.compose(e, {i: QQ(1)}, vertex, va, vb).items():
                    key = (pos[(b, idx)], col)
                    entries[key] = entries.get(key, 0) + c
        mats[p] = sparse(entries, len(tgt), len(src))
    return bases, mats


def vertex_cohomology(M, vertex, j):
    """``{p: dim H^p(Hom(P_vertex, M)_j)}`` (nonzero entries only)."""
    bases, mats = evaluate_at(M, vertex, j)
    out = {}
    for p in M.positions():
        n = len(bases[p])
        if not n:
            continue
        d_in = mats.get(p - 1)
        if d_in is None:
            d_in = sparse({}, n, 0)
        h, _ = subquotient_dim(d_in, mats[p])
        if h:
            out[p] = h
    return out


@dataclass
class ExtTable:
    """Dimensions ``dim Ext^{k, j}`` on a finite window.

    ``certified`` means the window provably contains every nonzero entry.
    For a table with ``total_grading`` the cohomological degree is ``k + j``.
    """

    source: str
    target: str
    entries: dict
    window: tuple
    certified: bool
    total_grading: bool = False
    note: str = ""
    witness_slices: dict = field(default_factory=dict, repr=False)

    def get(self, k, j=0):
        return self.entries.get((k, j), 0)

    def nonzero(self):
        return {key: v for key, v in sorted(self.entries.items()) if v}

    def totals(self):
        """Dimensions per cohomological degree, summed over internal degrees."""
        out = {}
        for (k, j), v in self.entries.items():
            if v:
                key = k + j if self.total_grading else k
                out[key] = out.get(key, 0) + v
        return dict(sorted(out.items()))

    def total_dim(self):
        return sum(self.entries.values())

    def is_zero(self):
        return not any(self.entries.values())

    def as_json(self):
        return {
            "from": self.source,
            "to": self.target,
            "certified": self.certified,
            "window": list(self.window),
            "entries": [[k, j, v] for (k, j), v in sorted(self.entries.items()) if v],
            "totals": {str(k): v for k, v in self.totals().items()},
        }


def _name(C, fallback):
    return C.name or fallback


def ext_table(M, N, internal=None, graded=True):
    """``Ext^{k, j}(M, N)`` over the slices that the table can compute exactly.

    Over a truncated graded table the result is certified when the two
    highest computable slices vanish. Over a nodal curve table the quotient
    doubling method is used (see :func:`nodal_ext_table`).
    """
    table = M.table
    if table is not N.table:
        raise PreconditionError("Ext between complexes over different tables")
    if isinstance(table, NodalCurveTable):
        return nodal_ext_table(M, N)
    jmin, jmax = internal_window(M, N)
    if internal is not None:
        lo, hi = internal
        jmin, jmax = max(jmin, lo), min(jmax, hi)
    entries, slices = {}, {}
    for j in range(jmin, jmax + 1):
        sl = HomSlice(M, N, j)
        slices[j] = sl
        for k in sl.degrees():
            h = sl.cohomology_dim(k)
            if h:
                entries[(k, j)] = h
    if table.finite or not table.graded:
        certified = internal is None or (jmin, jmax) == internal_window(M, N)
        note = "finite table"
    else:
        top = {key for key in entries if key[1] >= jmax - 1}
        certified = jmax - jmin >= 1 and not top
        note = "top two slices vanish" if certified else "nonzero classes reach the top of the window"
    return ExtTable(
        _name(M, "M"),
        _name(N, "N"),
        entries,
        (jmin, jmax),
        certified,
        total_grading=table.total_grading,
        note=note,
        witness_slices=slices,
    )


@dataclass
class ExtClass:
    """A cocycle of ``Hom^k_j(M, N)``; ``comps[p][(b, a)]`` maps ``M^p[a]`` to ``N^{p+k}[b]``."""

    M: ProjComplex
    N: ProjComplex
    k: int
    j: int
    comps: dict

    def as_map_to(self):
        """The same components as a chain map ``M -> regrade(N, -j)[k]``."""
        return ChainMap(self.M, shift(regrade(self.N, -self.j), self.k), self.comps)

    def as_map_from(self):
        """The same components as a chain map ``regrade(M, j)[-k] -> N``."""
        source = shift(regrade(self.M, self.j), -self.k)
        return ChainMap(source, self.N, {p + self.k: c for p, c in self.comps.items()})


def ext_classes(M, N, k, j=0):
    """Cocycles representing a basis of ``Ext^{k, j}(M, N)``."""
    table = M.table
    if isinstance(table, NodalCurveTable):
        return nodal_ext_classes(M, N, k)
    jmin, jmax = internal_window(M, N)
    if not jmin <= j <= jmax:
        raise CertificationError(f"internal degree {j} is outside the computable window [{jmin}, {jmax}]")
    sl = HomSlice(M, N, j)
    return [ExtClass(M, N, k, j, sl.vector_to_components(k, v)) for v in sl.cohomology_basis(k)]


def ext_class(M, N, k, j=0, coeff=None):
    """A single class; ``coeff`` chooses a combination of the basis (first class by default)."""
    classes = ext_classes(M, N, k, j)
    if not classes:
        raise NoClassError(f"Ext^{k},{j} vanishes")
    if coeff is None:
        return classes[0]
    comps = {}
    for cl, c in zip(classes, coeff):
        for p, ent in cl.comps.items():
            for key, e in ent.items():
                add_into(comps.setdefault(p, {}).setdefault(key, {}), e, c)
    return ExtClass(M, N, k, j, {p: _clean(e) for p, e in comps.items()})


def realize_ext_class(M, N, k, j=None):
    """A chain map ``M -> regrade(N, -j)[k]`` representing a nonzero class of ``Ext^{k, j}``.

    With ``j`` omitted, the lowest internal degree carrying classes is used.
    """
    if j is None:
        et = ext_table(M, N)
        js = sorted(jj for (kk, jj) in et.nonzero() if kk == k)
        if not js:
            raise NoClassError(f"Ext^{k}({M.name}, {N.name}) vanishes in the window")
        j = js[0]
    return ext_class(M, N, k, j).as_map_to()


def hom_cocycle(f):
    """A degree-zero chain map viewed as a cocycle of ``Hom^0_0``."""
    return {p: dict(c) for p, c in f.comps.items()}


def is_nullhomotopic(f):
    """``(True, h)`` with ``f = d h + h d``, ``(False, None)``, or ``(None, None)`` if undecidable."""
    S, T = f.source, f.target
    if isinstance(S.table, NodalCurveTable):
        raise PreconditionError("null-homotopies over a nodal curve table are not computed directly")
    if S.terms and T.terms:
        jmin, jmax = internal_window(S, T)
        if not jmin <= 0 <= jmax:
            return None, None
    sl = HomSlice(S, T, 0)
    vec = sl.components_to_vector(0, hom_cocycle(f))
    if not any(vec):
        return True, {}
    if not sl.dim(-1):
        return False, None
    h = solve(sl.delta(-1), vec)
    if h is None:
        return False, None
    return True, sl.vector_to_components(-1, h)


@dataclass
class Certified:
    """A yes/no answer together with the data that proves it."""

    holds: bool | None
    kind: str
    certificate: object = None
    detail: str = ""

    def as_json(self):
        cert = self.certificate
        if hasattr(cert, "as_json"):
            cert = cert.as_json()
        elif not isinstance(cert, (str, int, float, list, dict, type(None))):
            cert = repr(cert)
        return {"holds": self.holds, "kind": self.kind, "detail": self.detail, "certificate": cert}


def quasi_iso_certify(f, probes=None):
    """Certify that ``f`` is (or is not) a quasi-isomorphism.

    Positive certificate: a contracting homotopy of ``Cone(f)``. Negative:
    the identity of the cone is not null-homotopic in the complete slice of
    degree-zero maps, plus a probe ``P_v`` detecting cone cohomology if found.
    """
    Z = minimize(cone(f))
    if Z.is_zero():
        return Certified(True, "contractible cone", "cone minimizes to zero")
    ok, h = is_nullhomotopic(identity_map(Z))
    if ok:
        return Certified(True, "contracting homotopy", f"homotopy with {sum(len(e) for e in h.values())} components")
    if ok is None:
        return Certified(None, "undetermined", "degree-zero maps of the cone exceed the cutoff")
    detail = "identity of the minimized cone is not null-homotopic"
    for v in probes or Z.table.vertices:
        P = ProjComplex(Z.table, {0: ((v, 0),)}, name=f"P_{v}")
        nz = ext_table(P, Z).nonzero()
        if nz:
            (k, j), dim = next(iter(nz.items()))
            detail += f"; H^{k} of Hom(P_{v}, cone) in degree {j} has dim {dim}"
            break
    return Certified(False, "cone not contractible", detail)


def find_quasi_iso(X, Y, max_shift=3, seed=0):
    """Search for a quasi-isomorphism ``regrade(X, j) -> Y`` with ``|j| <= max_shift``.

    Tries a seeded generic combination of the degree-zero class representatives.
    Returns ``(Certified, j)``.
    """
    rng = random.Random(seed)
    order = [0] + [s for n in range(1, max_shift + 1) for s in (n, -n)]
    for j in order:
        if j and not X.table.graded:
            continue
        Xj = regrade(X, j)
        try:
            classes = ext_classes(Xj, Y, 0, 0)
        except CertificationError:
            continue
        if not classes:
            continue
        coeff = [QQ(rng.randint(1, 97)) for _ in classes]
        cl = ext_class(Xj, Y, 0, 0, coeff)
        f = ChainMap(Xj, Y, cl.comps)
        cert = quasi_iso_certify(f)
        if cert.holds:
            return cert, j
    return Certified(False, "no quasi-isomorphism found", f"generic search over |j| <= {max_shift}"), None


def isomorphic(X, Y, max_shift=0, seed=0):
    """Decide ``X ~ Y`` (up to internal regrading within ``max_shift``)."""
    if X.is_zero() and Y.is_zero():
        return Certified(True, "both zero")
    cert, j = find_quasi_iso(X, Y, max_shift=max_shift, seed=seed)
    if cert.holds:
        cert.detail += f" (internal shift {j})"
    return cert


# ---------------------------------------------------------------------------
# nodal curve tables: Ext by reduction modulo powers of the central element


def reduce_complex(C, qtable):
    terms = C.terms
    diff = {}
    for p, ent in C.diff.items():
        src, tgt = C.term(p), C.term(p + 1)
        diff[p] = {(b, a): qtable.reduce(src[a][0], tgt[b][0], e) for (b, a), e in ent.items()}
    return ProjComplex(qtable, terms, diff, name=C.name, check=False)


def _quotient_cohomology(M, N, qtable):
    Mq, Nq = reduce_complex(M, qtable), reduce_complex(N, qtable)
    sl = HomSlice(Mq, Nq, 0)
    return {k: sl.cohomology_dim(k) for k in sl.degrees()}, sl


def _recover(A, kmin, kmax):
    """Solve ``A^k = e_k + e_{k+1}`` from the top, with ``e = 0`` above ``kmax``."""
    e = {}
    nxt = 0
    for k in range(kmax, kmin - 1, -1):
        e[k] = A.get(k, 0) - nxt
        nxt = e[k]
    consistent = all(v >= 0 for v in e.values()) and e.get(kmin, 0) == A.get(kmin - 1, 0)
    return {k: v for k, v in e.items() if v}, consistent


_QUOTIENTS = {}


def central_quotient(table, m):
    key = (id(table), m)
    if key not in _QUOTIENTS:
        _QUOTIENTS[key] = (table, CentralQuotientTable(table, m))
    return _QUOTIENTS[key][1]


def nodal_ext_table(M, N, powers=(2, 3)):
    """Ext over a nodal curve table for complexes whose Ext is supported at the node.

    Reduction modulo ``g^m`` turns ``Hom(M, N)`` into ``Hom(M, N)/g^m`` with
    cohomology ``e_k + e_{k+1}`` once ``g^m`` kills the node-supported Ext.
    Two powers that recover the same dimensions certify the answer.
    """
    table = M.table
    ks = sorted({q - p for p in M.terms for q in N.terms})
    if not ks:
        return ExtTable(_name(M, "M"), _name(N, "N"), {}, (0, 0), True, note="empty")
    kmin, kmax = ks[0], ks[-1]
    results = []
    for m in powers:
        try:
            q = central_quotient(table, m)
        except CertificationError as exc:
            return ExtTable(_name(M, "M"), _name(N, "N"), {}, (0, 0), False, note=str(exc))
        A, _ = _quotient_cohomology(M, N, q)
        e, ok = _recover(A, kmin, kmax)
        results.append((m, e, ok))
    agree = all(ok for _, _, ok in results) and all(e == results[0][1] for _, e, _ in results)
    e = results[-1][1]
    note = f"quotients by g^{powers} agree" if agree else f"quotients disagree: {[(m, e) for m, e, _ in results]}"
    return ExtTable(_name(M, "M"), _name(N, "N"), {(k, 0): v for k, v in e.items()}, (0, 0), agree, note=note)


def nodal_ext_classes(M, N, k, power=3):
    """Cocycles over the curve whose classes form a basis of ``Ext^k(M, N)``.

    Once ``g^m`` kills the node-supported Ext, ``Ext^k -> H^k(Hom(M, N)/g^m)``
    is injective, so independence is tested in the quotient.
    """
    et = nodal_ext_table(M, N)
    if not et.certified:
        raise CertificationError(f"Ext({M.name}, {N.name}) is not certified: {et.note}")
    want = et.get(k)
    q = central_quotient(M.table, power)
    sl_q = HomSlice(reduce_complex(M, q), reduce_complex(N, q), 0)
    n = sl_q.dim(k)
    cols = columns(sl_q.delta(k - 1)) if sl_q.dim(k - 1) else []
    r = rank(_cols(cols, n))
    out = []
    for comps in _full_hom_cocycles(M, N, k):
        if len(out) == want:
            break
        red = {}
        for p, ent in comps.items():
            for (b, a), elem in ent.items():
                img = q.reduce(M.term(p)[a][0], N.term(p + k)[b][0], elem)
                if img:
                    red.setdefault(p, {})[(b, a)] = img
        trial = cols + [sl_q.components_to_vector(k, red)]
        r2 = rank(_cols(trial, n))
        if r2 > r:
            cols, r = trial, r2
            out.append(ExtClass(M, N, k, 0, comps))
    if len(out) != want:
        raise CertificationError(f"found {len(out)} of {want} classes in Ext^{k}; raise the cutoff")
    return out


def _cols(cols, n):
    return sparse({(r, c): v for c, col in enumerate(cols) for r, v in enumerate(col) if v}, n, len(cols))


def _full_hom_cocycles(M, N, k):
    """Cocycles of ``Hom^k(M, N)`` by increasing t-degree bound, low degrees first."""
    table = M.table
    dmax = 0
    for C in (M, N):
        for p, ent in C.diff.items():
            for (b, a), e in ent.items():
                src, tgt = C.term(p)[a][0], C.term(p + 1)[b][0]
                for i in e:
                    dmax = max(dmax, table.degree(src, tgt, i))
    for bound in range(table.cutoff - dmax + 1):
        sl = _BoundedSlice(M, N, bound)
        for v in sl.cocycle_basis(k):
            yield sl.vector_to_components(k, v)


class _BoundedSlice(HomSlice):
    """Hom components of filtration degree at most ``bound`` (nodal tables only)."""

    def __init__(self, M, N, bound):
        table = M.table
        self.M, self.N, self.j = M, N, 0
        self.basis, self.index, self._diff = {}, {}, {}
        self.bound = bound
        ks = sorted({q - p for p in M.terms for q in N.terms} | {q - p + 1 for p in M.terms for q in N.terms})
        for k in ks:
            items = []
            for p in M.positions():
                q = p + k
                for a, (va, _) in enumerate(M.term(p)):
                    for b, (vb, _) in enumerate(N.term(q)):
                        for i in table.indices(va, vb):
                            if table.degree(va, vb, i) <= bound:
                                items.append((p, b, a, i))
            self.basis[k] = items
            self.index[k] = {it: n for n, it in enumerate(items)}

    def delta(self, k):
        if k in self._diff:
            return self._diff[k]
        M, N, table = self.M, self.N, self.M.table
        src = self.basis.get(k, ())
        full = {}
        for p in M.positions():
            q = p + k + 1
            for a, (va, _) in enumerate(M.term(p)):
                for b, (vb, _) in enumerate(N.term(q)):
                    for i in table.indices(va, vb):
                        full[(p, b, a, i)] = len(full)
        n_cols, m_rows = {}, {}
        for q, ent in N.diff.items():
            for (b2, b), e in ent.items():
                n_cols.setdefault((q, b), []).append((b2, e))
        for p, ent in M.diff.items():
            for (a, a0), e in ent.items():
                m_rows.setdefault((p + 1, a), []).append((a0, e))
        sign = -1 if k % 2 == 0 else 1
        entries = {}
        for col, (p, b, a, i) in enumerate(src):
            q = p + k
            va, vb = M.term(p)[a][0], N.term(q)[b][0]
            for b2, e in n_cols.get((q, b), ()):
                prod = table.compose(e, {i: QQ(1)}, va, vb, N.term(q + 1)[b2][0])
                for idx, c in prod.items():
                    r = full[(p, b2, a, idx)]
                    entries[(r, col)] = entries.get((r, col), 0) + c
            for a0, e in m_rows.get((p, a), ()):
                prod = table.compose({i: QQ(1)}, e, M.term(p - 1)[a0][0], va, vb)
                for idx, c in prod.items():
                    r = full[(p - 1, b, a0, idx)]
                    entries[(r, col)] = entries.get((r, col), 0) + sign * c
        mat = sparse(entries, len(full), len(src))
        self._diff[k] = mat
        return mat

    def cocycle_basis(self, k):
        from .exact_linalg import rank_kernel

        _, ker = rank_kernel(self.delta(k))
        return columns(ker)
