"""Exact linear algebra over the integer Laurent ring.

All computations are fraction-free: elimination cross-multiplies rows and
divides out the previous pivot (Bareiss), so every intermediate entry is a
Laurent polynomial with integer coefficients and every division is checked
exact.  Ranks and kernels are therefore those over the fraction field, but
the returned kernel vectors have cleared denominators, integer content 1,
and a leading entry whose highest term is +q^0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .qarith import LaurentInt, ZERO, ONE, monomial

__all__ = ["LaurentMatrix", "kernel_basis", "rank", "in_span", "invert_unitriangular"]


@dataclass(frozen=True)
class LaurentMatrix:
    """A dense matrix of Laurent entries (rows of equal length)."""

    rows: tuple[tuple[LaurentInt, ...], ...]

    @staticmethod
    def of(entries) -> "LaurentMatrix":
        rows = tuple(
            tuple(e if isinstance(e, LaurentInt) else monomial(0, e) for e in row)
            for row in entries
        )
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        return LaurentMatrix(rows)

    @staticmethod
    def identity(m: int) -> "LaurentMatrix":
        return LaurentMatrix.of(
            [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> LaurentInt:
        return self.rows[i][j]

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(tuple(zip(*self.rows))) if self.rows else self

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = other.transpose().rows
        return LaurentMatrix(
            tuple(
                tuple(
                    sum((a * b for a, b in zip(row, col)), ZERO)
                    for col in cols
                )
                for row in self.rows
            )
        )

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.nrows}x{self.ncols})"


def _eliminate(M: LaurentMatrix):
    """Fraction-free row echelon pass.

    Returns (rows, pivot column list); rows is the reduced working matrix
    with one pivot row per entry of the column list, followed by zero rows.
    """
    rows = [list(r) for r in M.rows]
    nrows = len(rows)
    ncols = M.ncols
    pivots: list[int] = []
    prev_pivot = ONE
    r = 0
    for c in range(ncols):
        # fewest-terms nonzero pivot in column c at rows >= r
        best = None
        for i in range(r, nrows):
            e = rows[i][c]
            if not e.is_zero():
                if best is None or e.term_count() < rows[best][c].term_count():
                    best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            new_row = [
                (piv * rows[i][j] - rows[i][c] * rows[r][j]).divexact(prev_pivot)
                for j in range(ncols)
            ]
            rows[i] = new_row
        pivots.append(c)
        prev_pivot = piv
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(M: LaurentMatrix) -> int:
    """Rank over the fraction field."""
    return len(_eliminate(M)[1])


def _normalize_vector(v: list[LaurentInt]) -> tuple[LaurentInt, ...]:
    """Divide out integer content and a unit so that the first nonzero
    entry has leading term +q^0."""
    coeffs = [c for e in v for _, c in e.items()]
    if not coeffs:
        return tuple(v)
    content = 0
    for c in coeffs:
        content = gcd(content, c)
    lead = next(e for e in v if not e.is_zero())
    exp = lead.max_exponent()
    sign = 1 if lead.coeff(exp) > 0 else -1
    out = []
    for e in v:
        w = LaurentInt({k: sign * (c // content) for k, c in e.items()})
        out.append(w.shift(-exp))
    return tuple(out)


def kernel_basis(M: LaurentMatrix) -> list[tuple[LaurentInt, ...]]:
    """Vectors spanning the nullspace over the fraction field, with
    Laurent entries, content-normalized, leading entry +q^0-monic."""
    rows, pivots = _eliminate(M)
    ncols = M.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        # back-substitute v with v[f] = product of pivots (cleared denoms)
        v: list[LaurentInt] = [ZERO] * ncols
        v[f] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            piv = rows[r][c]
            s = sum(
                (rows[r][j] * v[j] for j in range(c + 1, ncols) if not v[j].is_zero()),
                ZERO,
            )
            if s.is_zero():
                continue
            # scale the vector so the division by the pivot is exact
            for j in range(ncols):
                if not v[j].is_zero():
                    v[j] = v[j] * piv
            v[c] = -s
        basis.append(_normalize_vector(v))
    return basis


def in_span(vectors, x) -> bool:
    """Whether x lies in the fraction-field span of the given vectors
    (each a sequence of LaurentInt)."""
    vecs = [tuple(v) for v in vectors]
    xv = tuple(x)
    if all(e.is_zero() for e in xv):
        return True
    if not vecs:
        return False
    A = LaurentMatrix.of(list(zip(*vecs)))  # columns are the vectors
    B = LaurentMatrix.of([list(row) + [e] for row, e in zip(A.rows, xv)])
    return rank(A) == rank(B)


def invert_unitriangular(M: LaurentMatrix) -> LaurentMatrix:
    """Inverse of a square matrix that is lower-unitriangular in the given
    order (unit diagonal, zero above the diagonal); the inverse is again
    over the Laurent ring."""
    m = M.nrows
    if M.ncols != m:
        raise ValueError("matrix not square")
    for i in range(m):
        if M.entry(i, i) != ONE:
            raise ValueError(f"diagonal entry {i} is not 1")
        for j in range(i + 1, m):
            if not M.entry(i, j).is_zero():
                raise ValueError(f"entry ({i},{j}) above the diagonal is nonzero")
    inv = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(i):
            s = sum((M.entry(i, k) * inv[k][j] for k in range(j, i)), ZERO)
            inv[i][j] = -s
    return LaurentMatrix(tuple(tuple(r) for r in inv))
