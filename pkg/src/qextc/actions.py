"""The two commuting actions on the quantum exterior algebra.

The sp(2n) side acts by Chevalley generators e_i, f_i, k_i (1 <= i <= n)
that move single dots between adjacent columns of the dot diagram; their
case tables are driven by the window S ∩ {±i, ±(i+1)} (and S ∩ {±n} for
i = n).  Divided powers are computed as plain powers followed by exact
division by the quantum factorial in q_i (q_i = q for short roots, q^2 for
the long root i = n); the division being exact is an integrality guarantee
and is asserted.

The sl(2) side acts by E, F, K that add/remove fully dotted columns,
weighted by signed powers of (-q) read off the diagonal statistics
w(S) = |S| - n, w_{>i}, w_{<i}.  Divided powers E^(k), F^(k) have closed
formulas (no division).  Lusztig's quantum Weyl group operator T and its
inverse are triple sums of divided powers over each weight component; T
flips degree k to 2n - k bijectively.

A third family realizes the dual action by differential-style operators:
e and f add/remove a fully dotted column with (-q)-powers counting members
in higher columns, pr_m projects onto the weight-m component, and the
dot-rescaled versions Edot, Fdot satisfy the sl(2) commutator relation
(Edot Fdot - Fdot Edot) pr_m = [m] pr_m.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .qarith import LaurentInt, ONE, ZERO, monomial, neg_q_power, qfact, qint
from .extalg import (
    ExtVec,
    Subset,
    stats,
    subsets_of_size,
    w_gt,
    w_lt,
    w_stat,
    window,
)

__all__ = [
    "GeneratorTag",
    "apply_sp",
    "apply_sl2",
    "apply_T",
    "apply_T_inv",
    "apply_diff",
    "apply_tag",
    "apply_word",
    "parse_word",
    "operator_matrix",
    "OperatorMatrix",
    "sp_e",
    "sp_f",
    "sp_k",
    "sl2_E",
    "sl2_F",
    "sl2_K",
    "diff_e",
    "diff_f",
    "diff_pr",
    "diff_Edot",
    "diff_Fdot",
]


@dataclass(frozen=True)
class GeneratorTag:
    """A generator token: ``side`` in {"sp", "sl2", "sl2-diff"}, ``kind``
    naming the operator, ``index`` the node i (sp) or projector weight m,
    and ``power`` a divided power (K and pr admit none)."""

    side: str
    kind: str
    index: int = 0
    power: int = 1

    def __post_init__(self):
        kinds = {
            "sp": {"e", "f", "k", "kinv"},
            "sl2": {"E", "F", "K", "Kinv", "T", "Tinv"},
            "sl2-diff": {"e", "f", "pr", "Edot", "Fdot"},
        }
        if self.side not in kinds:
            raise ValueError(f"unknown side {self.side!r}")
        if self.kind not in kinds[self.side]:
            raise ValueError(f"unknown kind {self.kind!r} for side {self.side!r}")
        if self.power < 1:
            raise ValueError("power must be >= 1")
        if self.power > 1 and self.kind in {"k", "kinv", "K", "Kinv", "T", "Tinv", "pr"}:
            raise ValueError(f"{self.kind} admits no divided power")


# -- sp(2n) Chevalley action -------------------------------------------


def _sp_f_basis(i: int, S: Subset) -> ExtVec:
    n = S.n
    if i == n:
        if window(S, n) == {n}:
            return ExtVec.basis(S.remove(n).union(-n))
        return ExtVec.zero(n)
    w = window(S, i)
    up = lambda: ExtVec.basis(S.remove(i).union(i + 1))        # move top dot right
    dn = lambda: ExtVec.basis(S.remove(-(i + 1)).union(-i))    # move bottom dot left
    if w == {i}:
        return up()
    if w == {-(i + 1)}:
        return dn()
    if w == {i, -(i + 1)}:
        return dn() + up().scale(monomial(-1))
    if w == {i, -i}:
        return up().scale(monomial(1))
    if w == {i + 1, -(i + 1)}:
        return dn()
    if w == {i, -(i + 1), -i}:
        return up()
    if w == {i, i + 1, -(i + 1)}:
        return dn()
    return ExtVec.zero(n)


def _sp_e_basis(i: int, S: Subset) -> ExtVec:
    n = S.n
    if i == n:
        if window(S, n) == {-n}:
            return ExtVec.basis(S.remove(-n).union(n))
        return ExtVec.zero(n)
    w = window(S, i)
    up = lambda: ExtVec.basis(S.remove(i + 1).union(i))        # move top dot left
    dn = lambda: ExtVec.basis(S.remove(-i).union(-(i + 1)))    # move bottom dot right
    if w == {-i}:
        return dn()
    if w == {i + 1}:
        return up()
    if w == {i + 1, -i}:
        return up() + dn().scale(monomial(-1))
    if w == {i, -i}:
        return dn().scale(monomial(1))
    if w == {i + 1, -(i + 1)}:
        return up()
    if w == {i, i + 1, -i}:
        return dn()
    if w == {i + 1, -(i + 1), -i}:
        return up()
    return ExtVec.zero(n)


def _alpha_pairing(i: int, S: Subset) -> int:
    """(alpha_i, wt S): the k_i eigenvalue exponent."""
    wgt = stats(S).wgt
    if i == S.n:
        return 2 * wgt[i - 1]
    return wgt[i - 1] - wgt[i]


def _linear(basis_op, x: ExtVec) -> ExtVec:
    acc = ExtVec.zero(x.n)
    for S, c in x.items():
        acc = acc + basis_op(S).scale(c)
    return acc


def sp_f(i: int, x: ExtVec, power: int = 1) -> ExtVec:
    if not 1 <= i <= x.n:
        raise ValueError(f"node {i} out of range for rank {x.n}")
    out = x
    for _ in range(power):
        out = _linear(lambda S: _sp_f_basis(i, S), out)
    if power > 1:
        out = out.divexact(qfact(power, 2 if i == x.n else 1))
    return out


def sp_e(i: int, x: ExtVec, power: int = 1) -> ExtVec:
    if not 1 <= i <= x.n:
        raise ValueError(f"node {i} out of range for rank {x.n}")
    out = x
    for _ in range(power):
        out = _linear(lambda S: _sp_e_basis(i, S), out)
    if power > 1:
        out = out.divexact(qfact(power, 2 if i == x.n else 1))
    return out


def sp_k(i: int, x: ExtVec, inverse: bool = False) -> ExtVec:
    if not 1 <= i <= x.n:
        raise ValueError(f"node {i} out of range for rank {x.n}")
    sign = -1 if inverse else 1
    return ExtVec(
        x.n, [(S, c.shift(sign * _alpha_pairing(i, S))) for S, c in x.items()]
    )


def apply_sp(tag: GeneratorTag, x: ExtVec) -> ExtVec:
    if tag.side != "sp":
        raise ValueError("apply_sp expects an sp-side tag")
    if tag.kind == "e":
        return sp_e(tag.index, x, tag.power)
    if tag.kind == "f":
        return sp_f(tag.index, x, tag.power)
    if tag.kind == "k":
        return sp_k(tag.index, x)
    return sp_k(tag.index, x, inverse=True)


# -- sl(2) action -------------------------------------------------------


def sl2_K(x: ExtVec, inverse: bool = False) -> ExtVec:
    sign = -1 if inverse else 1
    return ExtVec(
        x.n,
        [(S, c * neg_q_power(sign * w_stat(S))) for S, c in x.items()],
    )


def _choose_exp(k: int) -> int:
    return k * (k - 1) // 2


def sl2_E(x: ExtVec, power: int = 1) -> ExtVec:
    """E^(power) by the closed divided-power formula: add ``power`` fully
    dotted columns in all ways, with prefactor q^C(power,2) and a signed
    (-q)-weight per added column."""
    import itertools

    k = power
    acc: list[tuple[Subset, LaurentInt]] = []
    pref = monomial(_choose_exp(k))
    for S, c in x.items():
        free = S.undotted_columns()
        for cols in itertools.combinations(free, k):
            e = sum(w_gt(S, i) for i in cols)
            t = S
            for i in cols:
                t = t.union(i, -i)
            acc.append((t, c * pref * neg_q_power(e)))
    return ExtVec(x.n, acc)


def sl2_F(x: ExtVec, power: int = 1) -> ExtVec:
    """F^(power): remove ``power`` fully dotted columns in all ways."""
    import itertools

    k = power
    acc: list[tuple[Subset, LaurentInt]] = []
    pref = monomial(_choose_exp(k))
    for S, c in x.items():
        dotted = S.dotted_columns()
        for cols in itertools.combinations(dotted, k):
            e = sum(w_lt(S, i) for i in cols)
            t = S
            for i in cols:
                t = t.remove(i, -i)
            acc.append((t, c * pref * neg_q_power(e)))
    return ExtVec(x.n, acc)


def apply_sl2(tag: GeneratorTag, x: ExtVec) -> ExtVec:
    if tag.side != "sl2":
        raise ValueError("apply_sl2 expects an sl2-side tag")
    if tag.kind == "E":
        return sl2_E(x, tag.power)
    if tag.kind == "F":
        return sl2_F(x, tag.power)
    if tag.kind == "K":
        return sl2_K(x)
    if tag.kind == "Kinv":
        return sl2_K(x, inverse=True)
    if tag.kind == "T":
        return apply_T(x)
    return apply_T_inv(x)


def _weight_components(x: ExtVec) -> dict[int, ExtVec]:
    comps: dict[int, list] = {}
    for S, c in x.items():
        comps.setdefault(w_stat(S), []).append((S, c))
    return {m: ExtVec(x.n, ts) for m, ts in comps.items()}


def _tilde_qfact(k: int) -> LaurentInt:
    """The quantum factorial [k]! evaluated in the variable -q.

    With K acting by (-q)^w, the triple (E, F, K) satisfies the standard
    type-1 sl(2) relations in the variable -q (the commutator on the
    weight-m part is [m] at -q), so the quantum Weyl group sums must use
    divided powers and exponent weights in -q to be invertible.
    """
    out = ONE
    for m in range(2, k + 1):
        t = qint(m)
        out = out * LaurentInt({e: (c if e % 2 == 0 else -c) for e, c in t.items()})
    return out


def _tilde_E(x: ExtVec, k: int) -> ExtVec:
    if k == 0:
        return x
    for _ in range(k):
        x = sl2_E(x)
    return x.divexact(_tilde_qfact(k))


def _tilde_F(x: ExtVec, k: int) -> ExtVec:
    if k == 0:
        return x
    for _ in range(k):
        x = sl2_F(x)
    return x.divexact(_tilde_qfact(k))


def apply_T(x: ExtVec) -> ExtVec:
    """The quantum Weyl group operator: on the weight-m component,
    T = sum over a,b,c >= 0 with -a+b-c = m of (-1)^b qt^(b-ac)
    E^(a) F^(b) E^(c) applied right to left, where qt = -q is the variable
    in which the sl(2) action is type 1 (see _tilde_qfact); exponents above
    n+1 act by 0, so the sum is finite."""
    n = x.n
    acc = ExtVec.zero(n)
    for m, comp in _weight_components(x).items():
        for a in range(n + 2):
            for b in range(n + 2):
                c = -m - a + b
                if not 0 <= c <= n + 1:
                    continue
                y = _tilde_E(_tilde_F(_tilde_E(comp, c), b), a)
                acc = acc + y.scale(neg_q_power(b - a * c) * (-1 if b % 2 else 1))
    return acc


def apply_T_inv(x: ExtVec) -> ExtVec:
    """Inverse of apply_T: on the weight-m component,
    sum over a-b+c = m of (-1)^b qt^(ac-b) F^(a) E^(b) F^(c), qt = -q."""
    n = x.n
    acc = ExtVec.zero(n)
    for m, comp in _weight_components(x).items():
        for a in range(n + 2):
            for b in range(n + 2):
                c = m - a + b
                if not 0 <= c <= n + 1:
                    continue
                y = _tilde_F(_tilde_E(_tilde_F(comp, c), b), a)
                acc = acc + y.scale(neg_q_power(a * c - b) * (-1 if b % 2 else 1))
    return acc


# -- differential-style dual operators ---------------------------------


def _higher_count(S: Subset, i: int) -> int:
    """Number of members of S in columns strictly greater than i."""
    return sum(1 for y in S.members if abs(y) > i)


def diff_e(x: ExtVec) -> ExtVec:
    """Add a fully dotted column i per undotted column, with coefficient
    (-q)^i (-q)^(#members above column i)."""
    acc: list[tuple[Subset, LaurentInt]] = []
    for S, c in x.items():
        for i in S.undotted_columns():
            acc.append((S.union(i, -i), c * neg_q_power(i + _higher_count(S, i))))
    return ExtVec(x.n, acc)


def diff_f(x: ExtVec) -> ExtVec:
    """Remove a fully dotted column i, with coefficient
    (-q)^i (-q)^(#members above column i)."""
    acc: list[tuple[Subset, LaurentInt]] = []
    for S, c in x.items():
        for i in S.dotted_columns():
            acc.append((S.remove(i, -i), c * neg_q_power(i + _higher_count(S, i))))
    return ExtVec(x.n, acc)


def diff_pr(m: int, x: ExtVec) -> ExtVec:
    """Projector onto the diagonal weight-m part (|S| - n = m)."""
    return ExtVec(x.n, [(S, c) for S, c in x.items() if w_stat(S) == m])


def diff_Edot(x: ExtVec) -> ExtVec:
    """Dot-rescaled raising operator: q^(-|S|-1) e on each basis input."""
    acc = ExtVec.zero(x.n)
    for S, c in x.items():
        acc = acc + diff_e(ExtVec.basis(S)).scale(c.shift(-len(S) - 1))
    return acc


def diff_Fdot(x: ExtVec) -> ExtVec:
    """Dot-rescaled lowering operator: q^(-n) f."""
    return diff_f(x).scale(monomial(-x.n))


def apply_diff(tag: GeneratorTag, x: ExtVec) -> ExtVec:
    if tag.side != "sl2-diff":
        raise ValueError("apply_diff expects an sl2-diff tag")
    if tag.kind == "e":
        out = x
        for _ in range(tag.power):
            out = diff_e(out)
        return out
    if tag.kind == "f":
        out = x
        for _ in range(tag.power):
            out = diff_f(out)
        return out
    if tag.kind == "pr":
        return diff_pr(tag.index, x)
    if tag.kind == "Edot":
        out = x
        for _ in range(tag.power):
            out = diff_Edot(out)
        return out
    out = x
    for _ in range(tag.power):
        out = diff_Fdot(out)
    return out


def apply_tag(tag: GeneratorTag, x: ExtVec) -> ExtVec:
    if tag.side == "sp":
        return apply_sp(tag, x)
    if tag.side == "sl2":
        return apply_sl2(tag, x)
    return apply_diff(tag, x)


# -- word grammar -------------------------------------------------------

_TOKEN_RE = re.compile(
    r"^(?P<name>e|f|k|K|E|F|T|Tinv|pr)(?P<idx>-?\d+)?"
    r"(?:\^(?P<pow1>\d+)|\((?P<pow2>\d+)\))?$"
)


def parse_word(word: str, n: int) -> list[GeneratorTag]:
    """Parse a whitespace-separated operator word; tokens are
    ``e<i>``, ``f<i>``, ``k<i>``, ``K``, ``E``, ``F``, ``T``, ``Tinv``,
    ``pr<m>``, with optional divided power ``^p`` or ``(p)``.  The word is
    applied right to left."""
    tags: list[GeneratorTag] = []
    for tok in word.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad operator token {tok!r}")
        name = m.group("name")
        idx = m.group("idx")
        power = int(m.group("pow1") or m.group("pow2") or 1)
        if name in {"e", "f", "k"}:
            if idx is None:
                raise ValueError(f"token {tok!r} needs a node index")
            i = int(idx)
            if not 1 <= i <= n:
                raise ValueError(f"node {i} out of range for rank {n}")
            tags.append(GeneratorTag("sp", name, i, power))
        elif name == "pr":
            if idx is None:
                raise ValueError(f"token {tok!r} needs a weight index")
            m_idx = int(idx)
            if not -n <= m_idx <= n:
                raise ValueError(f"projector weight {m_idx} out of range for rank {n}")
            tags.append(GeneratorTag("sl2-diff", "pr", m_idx))
        else:
            if idx is not None:
                raise ValueError(f"token {tok!r} takes no index")
            tags.append(GeneratorTag("sl2", name, 0, power))
    return tags


def apply_word(tags: list[GeneratorTag], x: ExtVec) -> ExtVec:
    """Apply a parsed word right to left."""
    for tag in reversed(tags):
        x = apply_tag(tag, x)
    return x


# -- matrices -----------------------------------------------------------


@dataclass
class OperatorMatrix:
    """Matrix of an operator on standard-basis slices: ``entries[r][c]`` is
    the coefficient of ``codomain[r]`` in the image of ``domain[c]``."""

    domain: list[Subset]
    codomain: list[Subset]
    entries: list[list[LaurentInt]]


def operator_matrix(
    op, n: int, degrees: list[int] | None = None, out_degrees: list[int] | None = None
) -> OperatorMatrix:
    """Matrix of the linear map ``op`` (an ExtVec -> ExtVec callable) on the
    standard basis of the given input degrees (default: all of 0..2n).  The
    codomain is the basis of ``out_degrees`` (default: all degrees hit)."""
    if degrees is None:
        degrees = list(range(2 * n + 1))
    domain = [S for k in degrees for S in subsets_of_size(n, k)]
    images = [op(ExtVec.basis(S)) for S in domain]
    if out_degrees is None:
        seen = sorted({len(T) for img in images for T in img.support()})
        out_degrees = seen if seen else [0]
    codomain = [T for k in out_degrees for T in subsets_of_size(n, k)]
    index = {T: r for r, T in enumerate(codomain)}
    entries = [[ZERO] * len(domain) for _ in codomain]
    for c, img in enumerate(images):
        for T, v in img.items():
            if T not in index:
                raise ValueError(f"image degree {len(T)} outside requested codomain")
            entries[index[T]][c] = v
    return OperatorMatrix(domain=domain, codomain=codomain, entries=entries)
