"""The rank-n quantum exterior algebra of type C over Z[q, q^-1].

Generators are indexed by the signed set {1, ..., n, -n, ..., -1}, totally
ordered as 1 < 2 < ... < n < -n < ... < -(n-1) < -1.  A standard basis
monomial is the product of generators along a strictly increasing word and
is indexed by the subset of indices used; subsets are visualized as 2 x n
dot diagrams (column i carries a top dot iff i is a member and a bottom dot
iff -i is).

The defining relations, oriented as a terminating rewriting system toward
that monomial order, are (for i < j in 1..n, and x != y):

* g_x g_x = 0 for every generator;
* g_j g_i = -q g_i g_j and g_{-i} g_{-j} = -q g_{-j} g_{-i};
* g_{-x} g_y = -q g_y g_{-x} for x != y;
* g_{-i} g_i = -q^2 g_i g_{-i}
  + (q - q^{-1}) * sum_{k=1}^{n-i} (-q)^{k+1} g_{i+k} g_{-(i+k)}.

The system is confluent (checked exhaustively by the verification suite),
so every word has a unique standard-basis expansion; the algebra is free of
rank 2^{2n}.

This module provides subsets and their dot-diagram statistics, vectors with
Laurent coefficients, normalization of words, products, the reversed and
dual bases, the bar involution, the sign-flip twist, bilinear and
sesquilinear forms, and the partial order used for unitriangularity
statements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .qarith import LaurentInt, ONE, ZERO, bar_conj, monomial, neg_q_power

__all__ = [
    "Subset",
    "ExtVec",
    "Stats",
    "normalize",
    "multiply",
    "reversed_expand",
    "dual_scalar",
    "dual_vector",
    "bar",
    "bar_scalar",
    "omega_twist",
    "bilinear",
    "sesquilinear",
    "leq",
    "stats",
    "w_stat",
    "w_gt",
    "w_lt",
    "window",
    "all_subsets",
    "subsets_of_size",
    "weyl_filtration_subset",
]


def _check_rank(n: int) -> None:
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"rank must be a positive integer, got {n}")


def _pos(x: int, n: int) -> int:
    """Position of the signed index x in the order 1<...<n<-n<...<-1."""
    if 0 < x <= n:
        return x - 1
    if -n <= x < 0:
        return 2 * n + x
    raise ValueError(f"index {x} out of range for rank {n}")


def _unpos(p: int, n: int) -> int:
    return p + 1 if p < n else p - 2 * n


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of the signed index set, encoded as a 2n-bit mask.

    Bit p of ``mask`` corresponds to the p-th element of the order
    1 < ... < n < -n < ... < -1, so masks compare consistently with the
    serialization order.
    """

    n: int
    mask: int

    def __post_init__(self):
        _check_rank(self.n)
        if not 0 <= self.mask < (1 << (2 * self.n)):
            raise ValueError(f"mask {self.mask} out of range for rank {self.n}")

    @staticmethod
    def of(n: int, members: Iterable[int]) -> "Subset":
        mask = 0
        for x in members:
            bit = 1 << _pos(x, n)
            if mask & bit:
                raise ValueError(f"repeated index {x}")
            mask |= bit
        return Subset(n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        """Members sorted in the 1<...<n<-n<...<-1 order."""
        n, m = self.n, self.mask
        return tuple(_unpos(p, n) for p in range(2 * n) if m >> p & 1)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> _pos(x, self.n) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def complement(self) -> "Subset":
        return Subset(self.n, self.mask ^ ((1 << (2 * self.n)) - 1))

    def negate(self) -> "Subset":
        """The subset -S = {-x : x in S}."""
        return Subset.of(self.n, (-x for x in self.members))

    def union(self, *xs: int) -> "Subset":
        return Subset.of(self.n, self.members + xs)

    def remove(self, *xs: int) -> "Subset":
        mask = self.mask
        for x in xs:
            bit = 1 << _pos(x, self.n)
            if not mask & bit:
                raise ValueError(f"{x} not a member")
            mask ^= bit
        return Subset(self.n, mask)

    def dotted_columns(self) -> tuple[int, ...]:
        """Columns i with both i and -i in S, ascending."""
        return tuple(i for i in range(1, self.n + 1) if i in self and -i in self)

    def undotted_columns(self) -> tuple[int, ...]:
        """Columns i with neither i nor -i in S, ascending."""
        return tuple(i for i in range(1, self.n + 1) if i not in self and -i not in self)

    def sort_key(self) -> tuple:
        return (self.mask.bit_count(), tuple(_pos(x, self.n) for x in self.members))

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class Stats:
    """Dot-diagram statistics of a subset: fully dotted columns S0 (as the
    subset S intersect -S), undotted columns S0c (complement analog), the
    diagonal weight w = #dotted - #undotted columns = |S| - n, and the
    sp weight vector (coefficient of epsilon_i is [i in S] - [-i in S])."""

    S0: Subset
    S0c: Subset
    w: int
    wgt: tuple[int, ...]


class ExtVec:
    """A vector in the algebra: sparse map from Subset to LaurentInt.

    Immutable value type; no zero coefficients are stored.
    """

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Mapping[Subset, LaurentInt] | Iterable[tuple[Subset, LaurentInt]] = ()):
        _check_rank(n)
        self.n = n
        cleaned: dict[Subset, LaurentInt] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for s, c in items:
            if s.n != n:
                raise ValueError("mixed ranks in vector")
            if c:
                acc = cleaned.get(s, ZERO) + c
                if acc:
                    cleaned[s] = acc
                else:
                    cleaned.pop(s, None)
        self._t = cleaned

    @staticmethod
    def basis(S: Subset) -> "ExtVec":
        return ExtVec(S.n, {S: ONE})

    @staticmethod
    def zero(n: int) -> "ExtVec":
        return ExtVec(n)

    def items(self) -> list[tuple[Subset, LaurentInt]]:
        """Terms sorted by (degree, position tuple) — the canonical order."""
        return sorted(self._t.items(), key=lambda kv: kv[0].sort_key())

    def coeff(self, S: Subset) -> LaurentInt:
        return self._t.get(S, ZERO)

    def support(self) -> list[Subset]:
        return [s for s, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._t

    def degrees(self) -> set[int]:
        return {len(s) for s in self._t}

    def __add__(self, other: "ExtVec") -> "ExtVec":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        t = dict(self._t)
        for s, c in other._t.items():
            acc = t.get(s, ZERO) + c
            if acc:
                t[s] = acc
            else:
                t.pop(s, None)
        out = ExtVec.__new__(ExtVec)
        out.n, out._t = self.n, t
        return out

    def __sub__(self, other: "ExtVec") -> "ExtVec":
        return self + other.scale(-1)

    def __neg__(self) -> "ExtVec":
        return self.scale(-1)

    def scale(self, c: LaurentInt | int) -> "ExtVec":
        if isinstance(c, int):
            c = LaurentInt.from_int(c)
        out = ExtVec.__new__(ExtVec)
        out.n = self.n
        out._t = {} if c.is_zero() else {s: v * c for s, v in self._t.items()}
        return out

    def map_coeffs(self, f) -> "ExtVec":
        return ExtVec(self.n, [(s, f(c)) for s, c in self._t.items()])

    def divexact(self, c: LaurentInt) -> "ExtVec":
        return self.map_coeffs(lambda v: v.divexact(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtVec):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._t.items())))

    def __bool__(self) -> bool:
        return bool(self._t)

    def __repr__(self) -> str:
        if not self._t:
            return "0"
        return " + ".join(f"({c!r})*v_{s!r}" for s, c in self.items())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"S": list(s.members), "c": c.to_json()} for s, c in self.items()],
        }

    @staticmethod
    def from_json(obj: Mapping) -> "ExtVec":
        n = int(obj["n"])
        return ExtVec(
            n,
            [
                (Subset.of(n, t["S"]), LaurentInt.from_json(t["c"]))
                for t in obj["terms"]
            ],
        )


# -- enumeration --------------------------------------------------------


def all_subsets(n: int) -> list[Subset]:
    return [Subset(n, m) for m in range(1 << (2 * n))]


def subsets_of_size(n: int, k: int) -> list[Subset]:
    out = []
    for c in itertools.combinations(range(2 * n), k):
        mask = 0
        for p in c:
            mask |= 1 << p
        out.append(Subset(n, mask))
    return out


def weyl_filtration_subset(n: int, k: int, i: int) -> Subset:
    """The subset {1, ..., k-2i} together with the fully dotted columns
    n-i+1, ..., n; its basis vector generates the i-th Weyl layer of the
    degree-k filtration."""
    if not (0 <= i and 0 <= k - 2 * i and k - 2 * i + i <= n):
        raise ValueError(f"illegal filtration parameters (n={n}, k={k}, i={i})")
    members = list(range(1, k - 2 * i + 1))
    for j in range(n - i + 1, n + 1):
        members += [j, -j]
    return Subset.of(n, members)


# -- rewriting to the standard basis ------------------------------------

_NORMALIZE_MEMO: dict[tuple[int, tuple[int, ...]], tuple[tuple[int, LaurentInt], ...]] = {}

_Q_MINUS_QINV = monomial(1) - monomial(-1)


def _rewrite_pair(a: int, b: int, n: int) -> list[tuple[LaurentInt, tuple[int, ...]]]:
    """Expansion of the out-of-order product g_a g_b (pos(a) > pos(b))."""
    if a < 0 and a == -b:
        i = b
        out = [(monomial(2, -1), (b, a))]
        for k in range(1, n - i + 1):
            out.append((_Q_MINUS_QINV * neg_q_power(k + 1), (i + k, -(i + k))))
        return out
    return [(monomial(1, -1), (b, a))]


def _normalize_word(word: tuple[int, ...], n: int) -> tuple[tuple[int, LaurentInt], ...]:
    """Standard-basis expansion of a generator word, as (mask, coeff) pairs."""
    key = (n, word)
    hit = _NORMALIZE_MEMO.get(key)
    if hit is not None:
        return hit
    bad = None
    for j in range(len(word) - 1):
        if _pos(word[j], n) >= _pos(word[j + 1], n):
            bad = j
            break
    if bad is None:
        mask = 0
        for x in word:
            mask |= 1 << _pos(x, n)
        result: tuple[tuple[int, LaurentInt], ...] = ((mask, ONE),)
    elif word[bad] == word[bad + 1]:
        result = ()
    else:
        acc: dict[int, LaurentInt] = {}
        head, tail = word[:bad], word[bad + 2:]
        for c, mid in _rewrite_pair(word[bad], word[bad + 1], n):
            for mask, c2 in _normalize_word(head + mid + tail, n):
                v = acc.get(mask, ZERO) + c * c2
                if v:
                    acc[mask] = v
                else:
                    acc.pop(mask, None)
        result = tuple(sorted(acc.items()))
    _NORMALIZE_MEMO[key] = result
    return result


def normalize(word: Sequence[int], n: int) -> ExtVec:
    """Expand the product of generators g_{word[0]} g_{word[1]} ... in the
    standard basis.  Repeated indices collapse to zero."""
    _check_rank(n)
    w = tuple(word)
    for x in w:
        _pos(x, n)
    return ExtVec(n, [(Subset(n, m), c) for m, c in _normalize_word(w, n)])


def multiply(x: ExtVec, y: ExtVec) -> ExtVec:
    """The algebra product, extended bilinearly from basis monomials."""
    if x.n != y.n:
        raise ValueError("rank mismatch")
    acc = ExtVec.zero(x.n)
    for s, cx in x.items():
        for t, cy in y.items():
            acc = acc + normalize(s.members + t.members, x.n).scale(cx * cy)
    return acc


def reversed_expand(S: Subset) -> ExtVec:
    """Standard-basis expansion of the reversed product of S's generators."""
    return normalize(tuple(reversed(S.members)), S.n)


# -- dual basis ---------------------------------------------------------


def dual_scalar(S: Subset) -> LaurentInt:
    """The scalar c with d_S = c * v_S, where the dual generators are
    d_i = (-q)^{-(i-1)} v_i and d_{-i} = q^{-2n} (-q)^{i-1} v_{-i}."""
    n = S.n
    c = ONE
    for x in S.members:
        if x > 0:
            c = c * neg_q_power(-(x - 1))
        else:
            c = c * neg_q_power(-x - 1).shift(-2 * n)
    return c


def dual_vector(S: Subset) -> ExtVec:
    return ExtVec(S.n, {S: dual_scalar(S)})


# -- bar involution and twist -------------------------------------------


def bar_scalar(S: Subset) -> LaurentInt:
    """The normalizing scalar (-q^{-1})^{C(|S|,2)} (q^{-1})^{|S0|} applied to
    the reversed word, where |S0| counts fully dotted columns."""
    k = len(S)
    m = k * (k - 1) // 2
    dots = len(S.dotted_columns())
    return LaurentInt.monomial(-m - dots, -1 if m % 2 else 1)


def bar(x: ExtVec) -> ExtVec:
    """The bar involution: antilinear (q -> q^{-1} on coefficients), sending
    each basis vector to its scaled reversed expansion."""
    acc = ExtVec.zero(x.n)
    for s, c in x.items():
        acc = acc + reversed_expand(s).scale(bar_conj(c) * bar_scalar(s))
    return acc


def omega_twist(x: ExtVec) -> ExtVec:
    """The linear twist sending each basis vector of S to that of -S; it
    exchanges the raising and lowering generator actions."""
    return ExtVec(x.n, [(s.negate(), c) for s, c in x.items()])


# -- forms --------------------------------------------------------------


def bilinear(x: ExtVec, y: ExtVec) -> LaurentInt:
    """The symmetric bilinear form with orthonormal standard basis."""
    if x.n != y.n:
        raise ValueError("rank mismatch")
    acc = ZERO
    small, big = (x, y) if len(x._t) <= len(y._t) else (y, x)
    for s, c in small._t.items():
        d = big._t.get(s)
        if d is not None:
            acc = acc + c * d
    return acc


def sesquilinear(x: ExtVec, y: ExtVec) -> LaurentInt:
    """The sesquilinear form <x, y> = (x, bar(y))."""
    return bilinear(x, bar(y))


# -- partial order ------------------------------------------------------


def leq(S: Subset, T: Subset) -> bool:
    """The partial order driving unitriangularity: S <= T iff S and T agree
    outside their fully dotted columns and the sorted fully-dotted column
    lists satisfy componentwise <=."""
    if S.n != T.n:
        raise ValueError("rank mismatch")
    sd, td = S.dotted_columns(), T.dotted_columns()
    if len(sd) != len(td):
        return False
    s_rest = S.mask
    t_rest = T.mask
    for i in sd:
        s_rest ^= (1 << _pos(i, S.n)) | (1 << _pos(-i, S.n))
    for i in td:
        t_rest ^= (1 << _pos(i, T.n)) | (1 << _pos(-i, T.n))
    if s_rest != t_rest:
        return False
    return all(a <= b for a, b in zip(sd, td))


# -- statistics ---------------------------------------------------------


def stats(S: Subset) -> Stats:
    n = S.n
    dotted = S.dotted_columns()
    undotted = S.undotted_columns()
    s0 = Subset.of(n, [y for i in dotted for y in (i, -i)])
    s0c = Subset.of(n, [y for i in undotted for y in (i, -i)])
    wgt = tuple((1 if i in S else 0) - (1 if -i in S else 0) for i in range(1, n + 1))
    return Stats(S0=s0, S0c=s0c, w=len(S) - n, wgt=wgt)


def w_stat(S: Subset) -> int:
    """w(S) = #fully dotted - #undotted columns = |S| - n."""
    return len(S) - S.n


def w_gt(S: Subset, i: int) -> int:
    """#fully dotted - #undotted columns strictly to the right of column i."""
    d = sum(1 for j in S.dotted_columns() if j > i)
    u = sum(1 for j in S.undotted_columns() if j > i)
    return d - u


def w_lt(S: Subset, i: int) -> int:
    """#undotted - #fully dotted columns strictly to the left of column i."""
    d = sum(1 for j in S.dotted_columns() if j < i)
    u = sum(1 for j in S.undotted_columns() if j < i)
    return u - d


def window(S: Subset, i: int) -> frozenset[int]:
    """S intersected with {±i, ±(i+1)} for i < n, and with {±n} for i = n."""
    n = S.n
    if not 1 <= i <= n:
        raise ValueError(f"window index {i} out of range for rank {n}")
    if i == n:
        cols = (n, -n)
    else:
        cols = (i, i + 1, -(i + 1), -i)
    return frozenset(x for x in cols if x in S)
