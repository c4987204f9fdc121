"""Exact linear algebra over the rationals.

Everything here is a thin layer over sympy's sparse ``DomainMatrix`` over
``QQ`` (gmpy2 ``mpq`` scalars when gmpy2 is available). Matrices act on
column vectors: an ``r x c`` matrix maps ``QQ^c -> QQ^r``.
"""

from __future__ import annotations

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

from .errors import PreconditionError

__all__ = [
    "QQ",
    "Matrix",
    "sparse",
    "matrix",
    "zeros",
    "identity",
    "column",
    "rank",
    "rank_kernel",
    "solve",
    "subquotient_dim",
    "columns",
]

Matrix = DomainMatrix


def sparse(entries, nrows, ncols):
    """Build a matrix from ``{(row, col): value}`` or ``{row: {col: value}}``."""
    rows = {}
    if entries and isinstance(next(iter(entries.values())), dict):
        items = ((i, j, v) for i, r in entries.items() for j, v in r.items())
    else:
        items = ((i, j, v) for (i, j), v in entries.items())
    for i, j, v in items:
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
        v = QQ(v)
        if v:
            rows.setdefault(i, {})[j] = v
    return DomainMatrix.from_rep(SDM(rows, (nrows, ncols), QQ))


def matrix(rows):
    """Dense constructor from a list of rows."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    return sparse({(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)}, nrows, ncols)


def zeros(nrows, ncols):
    return DomainMatrix.from_rep(SDM({}, (nrows, ncols), QQ))


def identity(n):
    return sparse({(i, i): 1 for i in range(n)}, n, n)


def column(values):
    return sparse({(i, 0): v for i, v in enumerate(values)}, len(values), 1)


def columns(m):
    """Columns of ``m`` as lists of ``QQ``."""
    nrows, ncols = m.shape
    dense = m.to_ddm()
    return [[dense[i][j] for i in range(nrows)] for j in range(ncols)]


def rank(m):
    if 0 in m.shape:
        return 0
    return m.rank()


def rank_kernel(m):
    """Return ``(rank, K)`` where the columns of ``K`` are a basis of ker(m)."""
    nrows, ncols = m.shape
    if ncols == 0:
        return 0, zeros(0, 0)
    if nrows == 0:
        return 0, identity(ncols)
    r = m.rank()
    if r == ncols:
        return r, zeros(ncols, 0)
    kernel = m.nullspace().transpose()
    return r, kernel


def solve(m, b):
    """Some ``x`` with ``m x = b`` as a list of ``QQ``, or ``None``."""
    nrows, ncols = m.shape
    if isinstance(b, DomainMatrix):
        if b.shape != (nrows, 1):
            raise PreconditionError(f"right-hand side has shape {b.shape}, expected ({nrows}, 1)")
        b_col = b
    else:
        b = list(b)
        if len(b) != nrows:
            raise PreconditionError(f"right-hand side has length {len(b)}, expected {nrows}")
        b_col = column(b)
    if nrows == 0:
        return [QQ(0)] * ncols
    aug = m.hstack(b_col)
    red, pivots = aug.rref()
    if ncols in pivots:
        return None
    x = [QQ(0)] * ncols
    rows = red.to_sdm()
    for i, p in enumerate(pivots):
        x[p] = rows.get(i, {}).get(ncols, QQ(0))
    return x


def subquotient_dim(d_in, d_out):
    """Homology of ``V --d_in--> W --d_out--> U`` at ``W``.

    Returns ``(dim, B)`` where the columns of ``B`` lift a basis of
    ker(d_out) / im(d_in).
    """
    n = d_in.shape[0]
    if d_out.shape[1] != n:
        raise PreconditionError(f"d_out has {d_out.shape[1]} columns but d_in has {n} rows")
    if 0 not in d_in.shape and 0 not in d_out.shape:
        if not (d_out * d_in).is_zero_matrix:
            raise PreconditionError("d_out * d_in != 0")
    _, kernel = rank_kernel(d_out)
    z = kernel.shape[1]
    if z == 0:
        return 0, zeros(n, 0)
    p = d_in.shape[1]
    if p == 0:
        return z, kernel
    combined = d_in.hstack(kernel)
    _, pivots = combined.rref()
    chosen = [c - p for c in pivots if c >= p]
    kcols = columns(kernel)
    basis = sparse(
        {(i, new): v for new, c in enumerate(chosen) for i, v in enumerate(kcols[c]) if v},
        n,
        len(chosen),
    )
    return len(chosen), basis
