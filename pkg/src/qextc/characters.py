"""Character combinatorics for the two commuting module families.

Everything here lives at the level of formal characters: integer vectors of
Weyl-module multiplicities indexed by fundamental weights (symplectic side)
or by highest weights 0..n (rank-1 side).  The central object is the
tilting-character recursion at a specialization (p, l): the exterior power
decomposes into fundamental tilting modules whose presence is governed by
digitwise dominance of binomial parameters, and inverting that system
determines each tilting character as a 0/1 vector of Weyl characters.  An
independent rank-1 computation (composition factors of rank-1 Weyl modules
via the mixed Steinberg character factorization) must produce the same
matrix (ringel_crosscheck), which is the authoritative cross-validation.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from math import comb

from .qarith import (
    LaurentInt,
    Specialization,
    ZERO,
    ONE,
    monomial,
    padic_expand,
    qbinom_nonzero,
)

__all__ = [
    "CharVec",
    "fundamental_dimension",
    "lambda_sp_character",
    "lambda_sl2_character",
    "tilting_weyl_matrix",
    "summand_multiplicity",
    "sl2_tilting_deltas",
    "ringel_crosscheck",
    "decomposition_closure",
    "qdim_fund",
    "qdim_tilting",
    "export_matrix_csv",
    "export_matrix_json",
]


@dataclass(frozen=True)
class CharVec:
    """Integer multiplicities indexed by k = 0..n; ``side`` records whether
    index k means the k-th fundamental weight (sp) or highest weight k
    (sl2)."""

    side: str
    n: int
    mult: tuple[int, ...]

    def __post_init__(self):
        if self.side not in ("sp", "sl2"):
            raise ValueError(f"unknown side {self.side!r}")
        if len(self.mult) != self.n + 1:
            raise ValueError("multiplicity vector has wrong length")

    def __add__(self, other: "CharVec") -> "CharVec":
        if (self.side, self.n) != (other.side, other.n):
            raise ValueError("incompatible character vectors")
        return CharVec(self.side, self.n, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __sub__(self, other: "CharVec") -> "CharVec":
        if (self.side, self.n) != (other.side, other.n):
            raise ValueError("incompatible character vectors")
        return CharVec(self.side, self.n, tuple(a - b for a, b in zip(self.mult, other.mult)))

    def scale(self, c: int) -> "CharVec":
        return CharVec(self.side, self.n, tuple(c * a for a in self.mult))


def fundamental_dimension(n: int, k: int) -> int:
    """Rank of the k-th fundamental Weyl module: C(2n,k) - C(2n,k-2)."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range 0..{n}")
    return comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0)


def lambda_sp_character(n: int, k: int) -> CharVec:
    """Weyl-character vector of the degree-k exterior power on the
    symplectic side: multiplicity 1 at each fundamental weight k-2i.
    Degrees above n reflect to 2n-k."""
    if not 0 <= k <= 2 * n:
        raise ValueError(f"degree {k} out of range 0..{2*n}")
    if k > n:
        k = 2 * n - k
    mult = [0] * (n + 1)
    j = k
    while j >= 0:
        mult[j] = 1
        j -= 2
    return CharVec("sp", n, tuple(mult))


def lambda_sl2_character(n: int) -> CharVec:
    """Weyl-character vector of the whole exterior algebra on the rank-1
    side: Delta(n-k) appears with multiplicity equal to the rank of the
    k-th fundamental Weyl module."""
    mult = [0] * (n + 1)
    for k in range(n + 1):
        mult[n - k] += fundamental_dimension(n, k)
    return CharVec("sl2", n, tuple(mult))


def summand_multiplicity(n: int, k: int, i: int, s: Specialization) -> int:
    """1 iff the k-th fundamental tilting module is a direct summand of the
    exterior power of degree k + 2i at the specialization."""
    if i < 0 or k < 0 or k + 2 * i > 2 * n:
        raise ValueError(f"need 0 <= k, 0 <= i, k+2i <= {2*n}")
    return 1 if qbinom_nonzero(n - k, i, s) else 0


def tilting_weyl_matrix(n: int, s: Specialization) -> list[list[int]]:
    """(n+1) x (n+1) matrix with entry [k][l] the multiplicity of the l-th
    fundamental Weyl character in the k-th fundamental tilting character,
    computed by inverting the exterior-power decomposition.  Entries are
    asserted to be 0 or 1."""
    rows: list[list[int]] = []
    for k in range(n + 1):
        row = [0] * (n + 1)
        j = k
        while j >= 0:  # Weyl character of the degree-k exterior power
            row[j] = 1
            j -= 2
        i = 1
        while k - 2 * i >= 0:
            if summand_multiplicity(n, k - 2 * i, i, s):
                lower = rows[k - 2 * i]
                row = [a - b for a, b in zip(row, lower)]
            i += 1
        for e in row:
            if e not in (0, 1):
                raise AssertionError(
                    f"tilting recursion produced entry {e} at n={n}, k={k}, {s}"
                )
        rows.append(row)
    return rows


def _rank1_simple_char(m: int, s: Specialization) -> dict[int, int]:
    """Character of the rank-1 simple module of highest weight m at the
    specialization, as {weight: multiplicity}: by the Steinberg-style
    factorization it is the product of classical rank-1 characters of the
    mixed digits of m, each in the variable scaled by its radix."""
    char = {0: 1}
    for j, a in enumerate(padic_expand(m, s)):
        radix = s.radix(j)
        out: dict[int, int] = {}
        for w, c in char.items():
            for e in range(-a, a + 1, 2):
                key = w + e * radix
                out[key] = out.get(key, 0) + c
        char = out
    return char


def _rank1_weyl_factors(m: int, s: Specialization) -> dict[int, int]:
    """Composition-factor multiplicities {m': [Weyl(m) : simple(m')]} of
    the rank-1 Weyl module of highest weight m, by triangular subtraction
    of simple characters from the classical character."""
    char = {w: 1 for w in range(-m, m + 1, 2)}
    out: dict[int, int] = {}
    for mp in range(m, -1, -1):
        mult = char.get(mp, 0)
        if mult:
            out[mp] = mult
            for w, c in _rank1_simple_char(mp, s).items():
                char[w] = char.get(w, 0) - mult * c
    if any(char.values()):
        raise AssertionError(f"rank-1 character subtraction left a remainder at m={m}")
    return out


def sl2_tilting_deltas(m: int, s: Specialization) -> set[int]:
    """Highest weights whose Weyl character appears in the rank-1 tilting
    character of highest weight m.  By rank-1 reciprocity this support
    equals the set of composition factors of the rank-1 Weyl module of
    highest weight m, which is computed from the mixed Steinberg
    character factorization.  On digit level the members arise from m+1
    by nested reflections x -> x - 2*(x mod radix(j+1)) at the non-leading
    digit positions (for digits without interaction this reduces to
    independent sign flips of the nonzero lower digits)."""
    if m < 0:
        raise ValueError("negative highest weight")
    factors = _rank1_weyl_factors(m, s)
    if any(v not in (0, 1) for v in factors.values()):
        raise AssertionError(f"rank-1 Weyl module at m={m} is not multiplicity-free")
    return set(factors)


def ringel_crosscheck(n: int, s: Specialization) -> bool:
    """Whether the symplectic tilting matrix agrees with the rank-1
    digit-flip rule: entry [k][l] = 1 iff n-k lies in
    sl2_tilting_deltas(n-l, s).  (This orientation is forced: the matrix
    is triangular with l <= k, while the flip set of n-l only contains
    values <= n-l, i.e. the member must be the n-k side.)"""
    M = tilting_weyl_matrix(n, s)
    for l in range(n + 1):
        deltas = sl2_tilting_deltas(n - l, s)
        for k in range(n + 1):
            if M[k][l] != (1 if n - k in deltas else 0):
                return False
    return True


def decomposition_closure(n: int, s: Specialization) -> bool:
    """Whether every exterior-power Weyl character equals the sum of the
    tilting characters of its direct summands (the identity the recursion
    inverts), for all degrees 0..2n."""
    M = tilting_weyl_matrix(n, s)
    for k in range(2 * n + 1):
        want = lambda_sp_character(n, k).mult
        total = [0] * (n + 1)
        k0 = min(k, 2 * n - k)
        for i in range(k0 // 2 + 1):
            if summand_multiplicity(n, k0 - 2 * i, i, s):
                total = [a + b for a, b in zip(total, M[k0 - 2 * i])]
        if tuple(total) != want:
            return False
    return True


def qdim_fund(n: int, k: int) -> LaurentInt:
    """Principal-specialization dimension of the k-th fundamental Weyl
    module: sum over crystal members of q^(2 rho, wt)."""
    from .crystal import crystal_members

    total = ZERO
    for S in crystal_members(n, k):
        e = 0
        for x in S.members:
            col = abs(x)
            e += (2 * (n - col + 1)) * (1 if x > 0 else -1)
        total = total + monomial(e)
    return total


def qdim_tilting(n: int, k: int, s: Specialization) -> LaurentInt:
    """Principal-specialization dimension of the k-th fundamental tilting
    character at the specialization."""
    row = tilting_weyl_matrix(n, s)[k]
    total = ZERO
    for l, e in enumerate(row):
        if e:
            total = total + qdim_fund(n, l)
    return total


def export_matrix_csv(n: int, s: Specialization) -> str:
    """The tilting/Weyl matrix as CSV with labeled header row/column."""
    M = tilting_weyl_matrix(n, s)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow([""] + [f"D({l})" for l in range(n + 1)])
    for k, row in enumerate(M):
        w.writerow([f"T({k})"] + row)
    return buf.getvalue()


def export_matrix_json(n: int, s: Specialization) -> str:
    M = tilting_weyl_matrix(n, s)
    return json.dumps(
        {
            "n": n,
            "p": None if s.p == float("inf") else s.p,
            "l": None if s.ell == float("inf") else s.ell,
            "rows": M,
        }
    )
