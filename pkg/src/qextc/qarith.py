"""Exact coefficient arithmetic over the integer Laurent ring Z[q, q^-1].

A Laurent polynomial is stored as a sparse mapping ``exponent -> coefficient``
with no zero coefficients, so two values are equal iff their mappings are
equal.  All coefficients are arbitrary-precision Python integers; the large
Gaussian binomials appearing in rank-78 tilting tables overflow 64-bit
machine words, so fixed-width arithmetic is never used.

On top of the ring this module provides:

* quantum integers ``[k] = q^{-k+1} + q^{-k+3} + ... + q^{k-1}`` (with
  ``[k] = -[-k]`` for negative ``k``), quantum factorials and quantum
  binomial coefficients (computed by exact division, which is asserted);
* the bar conjugation ``q -> q^{-1}``;
* specializations ``(p, ell)`` describing a field of characteristic ``p``
  (a prime, or infinity for characteristic 0) in which ``ell`` is the
  minimal positive integer with ``[ell] = 0`` (``ell = infinity`` when no
  quantum integer vanishes);
* mixed-radix digit expansions with radix sequence ``1, ell, ell*p,
  ell*p^2, ...`` and the digit-dominance criterion for nonvanishing of a
  quantum binomial under a specialization (quantum Lucas theorem).

Digits are stored low-to-high: ``digits[0]`` is the coefficient of 1,
``digits[1]`` the coefficient of ``ell``, ``digits[i]`` (i >= 1) the
coefficient of ``ell * p^(i-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "INF",
    "LaurentInt",
    "Specialization",
    "Digits",
    "ZERO",
    "ONE",
    "Q",
    "monomial",
    "neg_q_power",
    "qint",
    "qint_i",
    "qfact",
    "qbinom",
    "bar_conj",
    "padic_expand",
    "qbinom_nonzero",
]

INF = math.inf


class InexactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder.

    This signals a defect (a violated integrality guarantee) and must never
    fire during normal operation.
    """


class LaurentInt:
    """An integer Laurent polynomial in the variable ``q``.

    Immutable value type.  The canonical representation stores only nonzero
    coefficients, keyed by integer exponents.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        cleaned: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, c in items:
            if c:
                cleaned[int(e)] = cleaned.get(int(e), 0) + int(c)
                if not cleaned[int(e)]:
                    del cleaned[int(e)]
        self._c = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "LaurentInt":
        return LaurentInt({0: n}) if n else ZERO

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> "LaurentInt":
        return LaurentInt({exponent: coefficient})

    # -- queries ------------------------------------------------------

    def items(self):
        """Yield (exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._c.items())

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    def min_exponent(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exponent(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def is_unit(self) -> bool:
        """True iff the value is ``+-q^j`` (the units of the Laurent ring)."""
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def term_count(self) -> int:
        return len(self._c)

    def evaluate_at_one(self) -> int:
        """The classical specialization q -> 1."""
        return sum(self._c.values())

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentInt") -> "LaurentInt":
        if not isinstance(other, LaurentInt):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            n = c.get(e, 0) + v
            if n:
                c[e] = n
            else:
                c.pop(e, None)
        out = LaurentInt.__new__(LaurentInt)
        out._c = c
        return out

    def __neg__(self) -> "LaurentInt":
        out = LaurentInt.__new__(LaurentInt)
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other: "LaurentInt") -> "LaurentInt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            out = LaurentInt.__new__(LaurentInt)
            out._c = {e: v * other for e, v in self._c.items()}
            return out
        if not isinstance(other, LaurentInt):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        c: dict[int, int] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                n = c.get(e, 0) + v1 * v2
                if n:
                    c[e] = n
                else:
                    del c[e]
        out = LaurentInt.__new__(LaurentInt)
        out._c = c
        return out

    __rmul__ = __mul__

    def shift(self, exponent: int) -> "LaurentInt":
        """Multiply by the monomial ``q^exponent``."""
        out = LaurentInt.__new__(LaurentInt)
        out._c = {e + exponent: v for e, v in self._c.items()}
        return out

    def divexact(self, other: "LaurentInt") -> "LaurentInt":
        """Exact division; raises InexactDivisionError if not divisible.

        Works by long division from the lowest exponent upward after
        normalizing both operands to ordinary polynomials.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        a_shift = self.min_exponent()
        b_shift = other.min_exponent()
        rem = dict(self.shift(-a_shift)._c)
        den = other.shift(-b_shift)._c
        d_lead = den[0]
        d_max = max(den)
        quot: dict[int, int] = {}
        while rem:
            lo = min(rem)
            c, r = divmod(rem[lo], d_lead)
            if r:
                raise InexactDivisionError(f"inexact division: {self!r} / {other!r}")
            quot[lo] = c
            for e, v in den.items():
                ee = lo + e
                n = rem.get(ee, 0) - c * v
                if n:
                    rem[ee] = n
                else:
                    rem.pop(ee, None)
            if rem and min(rem) > max(rem, default=lo) + d_max:  # pragma: no cover
                raise InexactDivisionError(f"inexact division: {self!r} / {other!r}")
        out = LaurentInt(quot)
        return out.shift(a_shift - b_shift)

    def __pow__(self, n: int) -> "LaurentInt":
        if n < 0:
            raise ValueError("negative powers only exist for units; use shift()")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- conjugation and serialization ---------------------------------

    def bar(self) -> "LaurentInt":
        """The bar conjugation q -> q^{-1} (exponent negation)."""
        out = LaurentInt.__new__(LaurentInt)
        out._c = {-e: v for e, v in self._c.items()}
        return out

    def to_json(self) -> dict[str, int]:
        """JSON form: {"exponent-as-decimal-string": coefficient}, ascending."""
        return {str(e): c for e, c in self.items()}

    @staticmethod
    def from_json(obj: Mapping[str, int]) -> "LaurentInt":
        return LaurentInt({int(e): int(c) for e, c in obj.items()})

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q" if abs(c) != 1 else ("q" if c > 0 else "-q"))
            else:
                parts.append(f"{c}*q^{e}" if abs(c) != 1 else (f"q^{e}" if c > 0 else f"-q^{e}"))
        s = " + ".join(parts).replace("+ -", "- ")
        return s


ZERO = LaurentInt()
ONE = LaurentInt({0: 1})
Q = LaurentInt({1: 1})


def monomial(exponent: int, coefficient: int = 1) -> LaurentInt:
    return LaurentInt.monomial(exponent, coefficient)


def neg_q_power(exponent: int) -> LaurentInt:
    """The unit (-q)^exponent, defined for any integer exponent."""
    return LaurentInt.monomial(exponent, -1 if exponent % 2 else 1)


def qint(k: int, step: int = 1) -> LaurentInt:
    """The balanced quantum integer [k].

    [k] = q^{-k+1} + q^{-k+3} + ... + q^{k-1} for k >= 0 and [k] = -[-k].
    ``step`` doubles the exponents ([k] in the variable q^step); ``step=2``
    realizes the long-root convention used by the last simple root.
    """
    if k < 0:
        return -qint(-k, step)
    return LaurentInt({(-k + 1 + 2 * j) * step: 1 for j in range(k)})


def qint_i(k: int, i: int, n: int) -> LaurentInt:
    """[k] in the variable q_i, where q_i = q for i < n and q_n = q^2."""
    return qint(k, 2 if i == n else 1)


def qfact(l: int, step: int = 1) -> LaurentInt:
    """The quantum factorial [l]! (l >= 0)."""
    if l < 0:
        raise ValueError("quantum factorial needs a nonnegative argument")
    out = ONE
    for j in range(2, l + 1):
        out = out * qint(j, step)
    return out


def qbinom(k: int, l: int, step: int = 1) -> LaurentInt:
    """The quantum binomial coefficient [k; l] = [k][k-1]...[k-l+1] / [l]!.

    ``k`` may be any integer; ``l`` must be nonnegative.  The division is
    exact (asserted); the result is an integer Laurent polynomial.
    """
    if l < 0:
        raise ValueError("lower index of a quantum binomial must be nonnegative")
    num = ONE
    for j in range(l):
        num = num * qint(k - j, step)
    return num.divexact(qfact(l, step))


def bar_conj(x: LaurentInt) -> LaurentInt:
    """Bar conjugation q -> q^{-1}; an involution."""
    return x.bar()


@dataclass(frozen=True)
class Specialization:
    """A field over the Laurent ring, described by (p, ell).

    ``p`` is the characteristic: a prime, or infinity (``math.inf``) for
    characteristic 0.  ``ell`` is the minimal positive integer with
    ``[ell] = 0`` in the field, or infinity if no quantum integer vanishes.
    A finite characteristic forces a finite ``ell``; ``ell = 1`` is
    rejected because ``[1] = 1`` never vanishes.
    """

    p: float
    ell: float

    def __post_init__(self):
        p, ell = self.p, self.ell
        if p != INF:
            if not (isinstance(p, int) and p >= 2 and _is_prime(p)):
                raise ValueError(f"characteristic must be a prime or infinity, got {p}")
            if ell == INF:
                raise ValueError("finite characteristic forces a finite ell")
        if ell != INF:
            if not (isinstance(ell, int) and ell >= 2):
                raise ValueError(f"ell must be an integer >= 2 or infinity, got {ell}")

    def radix(self, i: int) -> float:
        """The weight of digit i: 1 for i=0, ell*p^(i-1) for i >= 1."""
        if i == 0:
            return 1
        return self.ell * self.p ** (i - 1)

    @property
    def generic(self) -> bool:
        return self.ell == INF


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


Digits = list  # list of ints, low-to-high; see module docstring


def padic_expand(m: int, s: Specialization) -> Digits:
    """Digits of m >= 0 for the specialization s, low-to-high.

    ``m = digits[0] + digits[1]*ell + digits[2]*ell*p + ...`` with
    ``digits[0] < ell`` and ``digits[i] < p`` for ``1 <= i < top`` (the top
    digit is unbounded when p is infinite).  For ``ell = infinity`` the
    expansion is the single digit ``[m]``.
    """
    if m < 0:
        raise ValueError("padic_expand needs a nonnegative argument")
    if s.ell == INF:
        return [m]
    ell = int(s.ell)
    digits = [m % ell]
    m //= ell
    if s.p == INF:
        digits.append(m)
    else:
        p = int(s.p)
        while m:
            digits.append(m % p)
            m //= p
        if len(digits) == 1:
            digits.append(0)
    while len(digits) > 1 and digits[-1] == 0:
        digits.pop()
    return digits


def digits_reconstruct(digits: Digits, s: Specialization) -> int:
    """Inverse of padic_expand."""
    total = 0
    for i, a in enumerate(digits):
        total += a * int(s.radix(i)) if s.ell != INF else a
    return total


def qbinom_nonzero(m: int, i: int, s: Specialization) -> bool:
    """Whether the quantum binomial [m; i] is nonzero under specialization s.

    By the quantum Lucas theorem this holds iff every digit of i is at most
    the corresponding digit of m (componentwise dominance of the mixed-radix
    expansions).  For ell = infinity it holds iff 0 <= i <= m.
    """
    if m < 0 or i < 0:
        raise ValueError("qbinom_nonzero expects nonnegative arguments")
    if s.ell == INF:
        return i <= m
    dm = padic_expand(m, s)
    di = padic_expand(i, s)
    if len(di) > len(dm):
        di, dm = di, dm + [0] * (len(di) - len(dm))
    else:
        di = di + [0] * (len(dm) - len(di))
    return all(a <= b for a, b in zip(di, dm))
