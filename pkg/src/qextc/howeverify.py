"""Certificate suite: exhaustive machine checks of the engine's structural
identities at a fixed rank n, with machine-readable pass/fail reports.

Each check sweeps its entire declared domain (every basis vector, every
generator, every legal parameter) so that a pass constitutes a finite
proof at that rank.  Reports are deterministic; a failing check always
carries a witness recording the offending input and both sides.

Registry (all exact, zero tolerance):
  flatness             normal forms form a free basis of rank 4^n
  confluence           overlap resolutions agree; associativity on triples
  commuting            the two Chevalley actions commute
  divided_integrality  divided powers stay in the Laurent lattice
  singular_vectors     joint kernel of raising operators per weight space
  kernel_weyl          ker F on degree k = span of canonical crystal vectors
  filtration_kernels   kernel chain of F^(i) has Weyl-character quotients
  filtration_scalar    F^(i) maps filtration vectors to explicit monomials
  T_iso                the Weyl-group operator is a degree-flip isomorphism
  self_dual            dual-generator lowering action table, coefficientwise
  omega_twist          the negation twist intertwines raising and lowering
  bar_canonical        bar fixes canonical vectors; triangular tails; pairing
  diff_sl2             commutator of dot operators is the quantum integer
  diff_commute         dot operators commute with the symplectic action
  images_agree         dot-operator and dual-action operator algebras agree
  character_identity   dimension bookkeeping of the bimodule decomposition
  howe_tilting_shadow  specialized decomposition closure on characters
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from itertools import product
from math import comb

from .actions import (
    apply_T,
    apply_T_inv,
    diff_Edot,
    diff_Fdot,
    diff_e,
    diff_f,
    diff_pr,
    operator_matrix,
    sl2_E,
    sl2_F,
    sl2_K,
    sp_e,
    sp_f,
    sp_k,
)
from .canonical import canonical_vector, to_canonical
from .characters import decomposition_closure, fundamental_dimension
from .crystal import crystal_members
from .diffalg import confluence_report_diff
from .exactla import LaurentMatrix, in_span, kernel_basis, rank
from .extalg import (
    ExtVec,
    Subset,
    all_subsets,
    bar,
    dual_vector,
    multiply,
    normalize,
    omega_twist,
    sesquilinear,
    subsets_of_size,
    w_stat,
    weyl_filtration_subset,
)
from .qarith import INF, LaurentInt, Specialization, qfact, qint

# -- reports ------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check at one parameter point."""

    name: str
    params: dict
    status: str
    assertions: int
    witness: dict | None = None

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("failing report requires a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "params": self.params,
            "status": self.status,
            "assertions": self.assertions,
            "witness": self.witness,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class _Tally:
    """Counts assertions and records the first failure witness."""

    def __init__(self):
        self.count = 0
        self.witness: dict | None = None

    def check(self, cond: bool, **witness) -> None:
        self.count += 1
        if not cond and self.witness is None:
            self.witness = {k: str(v) for k, v in witness.items()}

    def equal_vec(self, lhs: ExtVec, rhs: ExtVec, **witness) -> None:
        self.check(
            (lhs - rhs).is_zero(),
            lhs=_show(lhs),
            rhs=_show(rhs),
            **witness,
        )


def _show(x: ExtVec) -> str:
    return " + ".join(f"({c})*v_{list(S.members)}" for S, c in x.items()) or "0"


def _sp_weight(S: Subset) -> tuple[int, ...]:
    w = [0] * S.n
    for x in S.members:
        w[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(w)


def _letters(n: int) -> list[int]:
    return [x for x in range(1, n + 1)] + [-x for x in range(n, 0, -1)]


# -- individual checks (each returns a populated _Tally) ----------------


def _check_flatness(n: int, s=None) -> _Tally:
    t = _Tally()
    subs = all_subsets(n)
    t.check(len(subs) == 4**n, normal_forms=len(subs), expected=4**n)
    for S in subs:
        t.equal_vec(normalize(S.members, n), ExtVec.basis(S), word=S.members)
    letters = _letters(n)
    for a, b in product(letters, repeat=2):
        w = normalize((a, b), n)
        ok = all(len(T) == 2 for T in w.support()) and (
            not w.is_zero() or a == b or abs(a) == abs(b)
        )
        t.check(ok, word=(a, b), result=_show(w))
    return t


def _check_confluence(n: int, s=None) -> _Tally:
    t = _Tally()
    letters = _letters(n)
    for a, b, c in product(letters, repeat=3):
        va, vb, vc = (normalize((x,), n) for x in (a, b, c))
        left = multiply(multiply(va, vb), vc)
        right = multiply(va, multiply(vb, vc))
        t.equal_vec(left, right, word=(a, b, c))
        t.equal_vec(left, normalize((a, b, c), n), word=(a, b, c))
    rep = confluence_report_diff(n)
    t.check(
        not rep.failures,
        failures=rep.failures[:3],
        words_checked=rep.words_checked,
    )
    t.count += rep.overlaps
    return t


_SP_GENS = (
    ("e", lambda i, x: sp_e(i, x)),
    ("f", lambda i, x: sp_f(i, x)),
    ("k", lambda i, x: sp_k(i, x)),
    ("k_inv", lambda i, x: sp_k(i, x, inverse=True)),
)

_SL2_GENS = (
    ("E", sl2_E),
    ("F", sl2_F),
    ("K", sl2_K),
    ("K_inv", lambda x: sl2_K(x, inverse=True)),
)


def _check_commuting(n: int, s=None) -> _Tally:
    t = _Tally()
    for S in all_subsets(n):
        v = ExtVec.basis(S)
        for i in range(1, n + 1):
            for gname, g in _SP_GENS:
                gv = g(i, v)
                for hname, h in _SL2_GENS:
                    t.equal_vec(
                        h(gv),
                        g(i, h(v)),
                        subset=S.members,
                        sp_gen=f"{gname}_{i}",
                        sl2_gen=hname,
                    )
    return t


def _check_divided_integrality(n: int, s=None) -> _Tally:
    t = _Tally()
    for S in all_subsets(n):
        v = ExtVec.basis(S)
        for p in range(2, n + 2):
            for i in range(1, n + 1):
                for gname, g in (("e", sp_e), ("f", sp_f)):
                    try:
                        g(i, v, power=p)
                        t.check(True)
                    except ValueError as exc:
                        t.check(
                            False,
                            subset=S.members,
                            op=f"{gname}_{i}^({p})",
                            error=exc,
                        )
            fact = qfact(p, 1)
            for gname, g in (("E", sl2_E), ("F", sl2_F)):
                it = v
                for _ in range(p):
                    it = g(it)
                try:
                    divided = it.divexact(fact)
                    t.equal_vec(
                        divided,
                        g(v, power=p),
                        subset=S.members,
                        op=f"{gname}^({p})",
                    )
                except ValueError as exc:
                    t.check(False, subset=S.members, op=f"{gname}^({p})", error=exc)
    return t


def _joint_kernel(n: int, domain: list[Subset], ops) -> list[tuple[LaurentInt, ...]]:
    """Kernel of the stacked matrices of ``ops`` on the span of ``domain``."""
    images = [[op(ExtVec.basis(S)) for S in domain] for op in ops]
    rows = []
    for imgs in images:
        targets = sorted({T for img in imgs for T in img.support()}, key=lambda T: T.mask)
        for T in targets:
            rows.append([img.coeff(T) for img in imgs])
    if not rows:
        rows = [[LaurentInt({}) for _ in domain]]
    return kernel_basis(LaurentMatrix.of(rows))


def _check_singular_vectors(n: int, s=None) -> _Tally:
    t = _Tally()
    ops = [lambda x, i=i: sp_e(i, x) for i in range(1, n + 1)] + [sl2_F]
    for k in range(n + 1):
        target = tuple([1] * k + [0] * (n - k))
        by_m: dict[int, list[Subset]] = {}
        for S in all_subsets(n):
            if _sp_weight(S) == target:
                by_m.setdefault(w_stat(S), []).append(S)
        for m, domain in sorted(by_m.items()):
            domain.sort(key=lambda S: S.mask)
            ker = _joint_kernel(n, domain, ops)
            expected = 1 if m == k - n else 0
            t.check(
                len(ker) == expected,
                fundamental=k,
                weight=m,
                kernel_dim=len(ker),
                expected=expected,
            )
            if expected == 1 and len(ker) == 1:
                hw = Subset.of(n, range(1, k + 1))
                unit = [
                    LaurentInt({0: 1}) if S == hw else LaurentInt({})
                    for S in domain
                ]
                t.check(
                    in_span(ker, unit) and in_span([unit], list(ker[0])),
                    fundamental=k,
                    weight=m,
                    kernel=ker[0],
                )
    return t


def _check_kernel_weyl(n: int, s=None) -> _Tally:
    t = _Tally()
    for k in range(2 * n + 1):
        domain = subsets_of_size(n, k)
        if k >= 2:
            m = operator_matrix(sl2_F, n, degrees=[k], out_degrees=[k - 2])
            ker = kernel_basis(LaurentMatrix.of(m.entries))
        else:
            m = None
            ker = [
                tuple(
                    LaurentInt({0: 1}) if j == i else LaurentInt({})
                    for j in range(len(domain))
                )
                for i in range(len(domain))
            ]
        members = set(crystal_members(n, k)) if k <= n else set()
        t.check(
            len(ker) == len(members),
            degree=k,
            kernel_dim=len(ker),
            crystal_count=len(members),
        )
        canon = [
            [canonical_vector(S).coeff(T) for T in domain] for S in sorted(
                members, key=lambda S: S.mask
            )
        ]
        for S, coords in zip(sorted(members, key=lambda S: S.mask), canon):
            t.check(in_span(ker, coords), degree=k, canonical=S.members)
        for vec in ker:
            x = ExtVec(n, list(zip(domain, vec)))
            expansion = to_canonical(x)
            outside = [
                S.members
                for S, c in expansion.items()
                if not c.is_zero() and S not in members
            ]
            t.check(not outside, degree=k, outside_support=outside)
            t.check(in_span(canon, list(vec)), degree=k, kernel_vector=vec)
    return t


def _check_filtration_kernels(n: int, s=None) -> _Tally:
    t = _Tally()
    for k in range(2 * n + 1):
        size = len(subsets_of_size(n, k))
        prev = 0
        quotients = []
        i = 1
        while True:
            if k - 2 * i >= 0:
                m = operator_matrix(
                    lambda x, i=i: sl2_F(x, power=i),
                    n,
                    degrees=[k],
                    out_degrees=[k - 2 * i],
                )
                dim = size - rank(LaurentMatrix.of(m.entries))
            else:
                dim = size
            quotients.append(dim - prev)
            prev = dim
            if dim == size:
                break
            i += 1
        t.check(
            len(quotients) == k // 2 + 1,
            degree=k,
            chain_length=len(quotients),
            expected=k // 2 + 1,
        )
        expected = [
            fundamental_dimension(n, k - 2 * j)
            if j >= max(0, k - n) and k - 2 * j >= 0
            else 0
            for j in range(len(quotients))
        ]
        t.check(
            quotients == expected,
            degree=k,
            quotient_dims=quotients,
            expected=expected,
        )
    return t


def _check_filtration_scalar(n: int, s=None) -> _Tally:
    t = _Tally()
    for k in range(2 * n + 1):
        for i in range(k // 2 + 1):
            try:
                start = weyl_filtration_subset(n, k, i)
            except ValueError:
                continue
            got = sl2_F(ExtVec.basis(start), power=i)
            e2 = i * (n - k + i) + comb(i, 2)
            scalar = LaurentInt({e2 - comb(i, 2): (-1) ** (e2 % 2)})
            want = ExtVec.basis(weyl_filtration_subset(n, k - 2 * i, 0)).scale(scalar)
            t.equal_vec(got, want, degree=k, power=i, scalar=scalar)
    return t


def _check_T_iso(n: int, s=None) -> _Tally:
    t = _Tally()
    for S in all_subsets(n):
        v = ExtVec.basis(S)
        tv = apply_T(v)
        degs = {len(T) for T in tv.support()}
        t.check(
            not tv.is_zero() and degs == {2 * n - len(S)},
            subset=S.members,
            image_degrees=sorted(degs),
        )
        t.equal_vec(apply_T_inv(tv), v, subset=S.members, direction="T_inv.T")
        t.equal_vec(apply_T(apply_T_inv(v)), v, subset=S.members, direction="T.T_inv")
        for i in range(1, n + 1):
            for gname, g in _SP_GENS:
                t.equal_vec(
                    apply_T(g(i, v)),
                    g(i, tv),
                    subset=S.members,
                    sp_gen=f"{gname}_{i}",
                )
    return t


def _neg_q(e: int) -> LaurentInt:
    return LaurentInt({e: (-1) ** (e % 2)})


def _dual_f_table(i: int, S: Subset) -> list[tuple[LaurentInt, set[int]]]:
    """Expected expansion of f_i acting on the dual generator of S, as a
    case table on the members of S near the node i."""
    n = S.n
    mem = set(S.members)
    if i == n:
        if mem & {n, -n} == {n}:
            return [(_neg_q(2), (mem - {n}) | {-n})]
        return []
    loc = mem & {i, i + 1, -i, -(i + 1)}
    up = (mem - {i}) | {i + 1}
    dn = (mem - {-(i + 1)}) | {-i}
    if loc == {i}:
        return [(_neg_q(1), up)]
    if loc == {-(i + 1)}:
        return [(_neg_q(1), dn)]
    if loc == {i, -(i + 1)}:
        return [(_neg_q(1), dn), (_neg_q(1) * LaurentInt({-1: 1}), up)]
    if loc == {i, -i}:
        return [(_neg_q(1) * LaurentInt({1: 1}), up)]
    if loc == {i + 1, -(i + 1)}:
        return [(_neg_q(1), dn)]
    if loc == {i, -(i + 1), -i}:
        return [(_neg_q(1), up)]
    if loc == {i, i + 1, -(i + 1)}:
        return [(_neg_q(1), dn)]
    return []


def _check_self_dual(n: int, s=None) -> _Tally:
    t = _Tally()
    for S in all_subsets(n):
        for i in range(1, n + 1):
            got = sp_f(i, dual_vector(S))
            want = ExtVec.zero(n)
            for c, members in _dual_f_table(i, S):
                want = want + dual_vector(Subset.of(n, members)).scale(c)
            t.equal_vec(got, want, subset=S.members, node=i)
    return t


def _check_omega_twist(n: int, s=None) -> _Tally:
    t = _Tally()
    for S in all_subsets(n):
        v = ExtVec.basis(S)
        for i in range(1, n + 1):
            t.equal_vec(
                omega_twist(sp_e(i, v)),
                sp_f(i, omega_twist(v)),
                subset=S.members,
                node=i,
                pair="e->f",
            )
            t.equal_vec(
                omega_twist(sp_f(i, v)),
                sp_e(i, omega_twist(v)),
                subset=S.members,
                node=i,
                pair="f->e",
            )
            t.equal_vec(
                omega_twist(sp_k(i, v)),
                sp_k(i, omega_twist(v), inverse=True),
                subset=S.members,
                node=i,
                pair="k->k_inv",
            )
    return t


def _check_bar_canonical(n: int, s=None) -> _Tally:
    t = _Tally()
    one = LaurentInt({0: 1})
    for S in all_subsets(n):
        b = canonical_vector(S)
        t.equal_vec(bar(b), b, subset=S.members, kind="bar-invariance")
        t.check(
            (b.coeff(S) - one).is_zero(),
            subset=S.members,
            diagonal=b.coeff(S),
            kind="unit diagonal",
        )
        for T, c in b.items():
            if T != S:
                t.check(
                    c.max_exponent() < 0,
                    subset=S.members,
                    tail=T.members,
                    coefficient=c,
                    kind="tail in q^-1 Z[q^-1]",
                )
    for k in range(2 * n + 1):
        domain = subsets_of_size(n, k)
        bars = {T: bar(ExtVec.basis(T)) for T in domain}
        for S in domain:
            vS = ExtVec.basis(S)
            for T in domain:
                val = sesquilinear(vS, bars[T])
                want = one if S == T else LaurentInt({})
                t.check(
                    (val - want).is_zero(),
                    left=S.members,
                    right=T.members,
                    pairing=val,
                )
    return t


def _check_diff_sl2(n: int, s=None) -> _Tally:
    t = _Tally()
    for S in all_subsets(n):
        v = ExtVec.basis(S)
        comm = diff_Edot(diff_Fdot(v)) - diff_Fdot(diff_Edot(v))
        t.equal_vec(
            comm,
            v.scale(qint(len(S) - n)),
            subset=S.members,
            kind="commutator",
        )
        for m in range(-n, n + 1):
            want = v if w_stat(S) == m else ExtVec.zero(n)
            t.equal_vec(diff_pr(m, v), want, subset=S.members, weight=m, kind="pr")
    return t


def _check_diff_commute(n: int, s=None) -> _Tally:
    t = _Tally()
    diff_ops = (
        ("e_dot", diff_e),
        ("f_dot", diff_f),
        ("E_dot", diff_Edot),
        ("F_dot", diff_Fdot),
    )
    for S in all_subsets(n):
        v = ExtVec.basis(S)
        for i in range(1, n + 1):
            for gname, g in _SP_GENS:
                gv = g(i, v)
                for dname, d in diff_ops:
                    t.equal_vec(
                        d(gv),
                        g(i, d(v)),
                        subset=S.members,
                        sp_gen=f"{gname}_{i}",
                        diff_op=dname,
                    )
    return t


class _Span:
    """Incremental fraction-free row span over the Laurent ring, with sparse
    vectors (membership taken over the fraction field)."""

    def __init__(self):
        self.rows: dict[int, dict[int, LaurentInt]] = {}

    @staticmethod
    def _normalize(v: dict[int, LaurentInt]) -> dict[int, LaurentInt]:
        shift = None
        content = 0
        for a in v.values():
            for e, c in a.items():
                shift = e if shift is None else min(shift, e)
                content = math.gcd(content, c)
        if shift is None or content == 0:
            return v
        return {
            i: LaurentInt({e - shift: c // content for e, c in a.items()})
            for i, a in v.items()
        }

    def reduce(self, v: dict[int, LaurentInt]) -> dict[int, LaurentInt]:
        v = dict(v)
        for p in sorted(self.rows):
            c = v.get(p)
            if c is None or c.is_zero():
                continue
            r = self.rows[p]
            lead = r[p]
            out = {i: a * lead for i, a in v.items()}
            for i, b in r.items():
                out[i] = out.get(i, LaurentInt({})) - b * c
            v = {i: a for i, a in out.items() if not a.is_zero()}
        return v

    def add(self, v: dict[int, LaurentInt]) -> bool:
        v = self._normalize(self.reduce(v))
        if not v:
            return False
        self.rows[min(v)] = v
        return True

    def contains(self, v: dict[int, LaurentInt]) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[dict[int, LaurentInt]]:
        return [self.rows[p] for p in sorted(self.rows)]


def _operator_algebra_span(n: int, extra_ops) -> _Span:
    """Span of the algebra generated by the symplectic Chevalley operators
    together with ``extra_ops``, as sparsely flattened matrices on the full
    basis (operators act columnwise on basis vectors)."""
    subs = all_subsets(n)
    index = {S: i for i, S in enumerate(subs)}
    size = len(subs)

    def matrix_of(op) -> dict[tuple[int, int], LaurentInt]:
        entries: dict[tuple[int, int], LaurentInt] = {}
        for c, S in enumerate(subs):
            for T, v in op(ExtVec.basis(S)).items():
                entries[(index[T], c)] = v
        return entries

    def compose(g, b):
        out: dict[tuple[int, int], LaurentInt] = {}
        bycol: dict[int, list[tuple[int, LaurentInt]]] = {}
        for (r, c), v in b.items():
            bycol.setdefault(c, []).append((r, v))
        byrow: dict[int, list[tuple[int, LaurentInt]]] = {}
        for (r, c), v in g.items():
            byrow.setdefault(c, []).append((r, v))
        for c, col in bycol.items():
            for mid, bv in col:
                for r, gv in byrow.get(mid, ()):
                    key = (r, c)
                    acc = out.get(key)
                    out[key] = bv * gv if acc is None else acc + bv * gv
        return {k: v for k, v in out.items() if not v.is_zero()}

    def flat(m) -> dict[int, LaurentInt]:
        return {r * size + c: v for (r, c), v in m.items()}

    ops = [lambda x, i=i, g=g: g(i, x) for i in range(1, n + 1) for _, g in _SP_GENS]
    ops += list(extra_ops)
    gens = [matrix_of(op) for op in ops]
    ident = {(i, i): LaurentInt({0: 1}) for i in range(size)}

    span = _Span()
    frontier = [m for m in gens + [ident] if span.add(flat(m))]
    while frontier:
        fresh = []
        for g in gens:
            for b in frontier:
                p = compose(g, b)
                if span.add(flat(p)):
                    fresh.append(p)
        frontier = fresh
    return span


def _check_images_agree(n: int, s=None) -> _Tally:
    t = _Tally()
    dot_side = _operator_algebra_span(
        n,
        [diff_Edot, diff_Fdot] + [lambda x, m=m: diff_pr(m, x) for m in range(-n, n + 1)],
    )
    dual_side = _operator_algebra_span(n, [h for _, h in _SL2_GENS])
    t.check(
        len(dot_side.rows) == len(dual_side.rows),
        dot_dim=len(dot_side.rows),
        dual_dim=len(dual_side.rows),
    )
    for row in dot_side.basis():
        t.check(dual_side.contains(row), direction="dot in dual")
    for row in dual_side.basis():
        t.check(dot_side.contains(row), direction="dual in dot")
    return t


def _check_character_identity(n: int, s=None) -> _Tally:
    t = _Tally()
    total = sum(
        fundamental_dimension(n, k) * (n - k + 1) for k in range(n + 1)
    )
    t.check(total == 4**n, total=total, expected=4**n)
    lhs: dict[tuple[int, ...], int] = {}
    for S in all_subsets(n):
        mu = _sp_weight(S)
        lhs[mu] = lhs.get(mu, 0) + 1
    rhs: dict[tuple[int, ...], int] = {}
    for k in range(n + 1):
        for S in crystal_members(n, k):
            mu = _sp_weight(S)
            rhs[mu] = rhs.get(mu, 0) + (n - k + 1)
    for mu in sorted(set(lhs) | set(rhs)):
        t.check(
            lhs.get(mu, 0) == rhs.get(mu, 0),
            weight=mu,
            exterior_dim=lhs.get(mu, 0),
            bimodule_dim=rhs.get(mu, 0),
        )
    return t


def _check_howe_tilting_shadow(n: int, s: Specialization | None) -> _Tally:
    t = _Tally()
    specs = [s] if s is not None else [
        Specialization(INF, INF),
        Specialization(3, 2),
        Specialization(7, 3),
    ]
    for spec in specs:
        t.check(
            decomposition_closure(n, spec),
            p=spec.p,
            ell=spec.ell,
        )
    return t


# -- registry and drivers ----------------------------------------------

_DEFAULT_BOUND = 3
_CHEAP_BOUND = 4

_REGISTRY = {
    "flatness": (_check_flatness, _CHEAP_BOUND),
    "confluence": (_check_confluence, _DEFAULT_BOUND),
    "commuting": (_check_commuting, _CHEAP_BOUND),
    "divided_integrality": (_check_divided_integrality, _CHEAP_BOUND),
    "singular_vectors": (_check_singular_vectors, _DEFAULT_BOUND),
    "kernel_weyl": (_check_kernel_weyl, _DEFAULT_BOUND),
    "filtration_kernels": (_check_filtration_kernels, _DEFAULT_BOUND),
    "filtration_scalar": (_check_filtration_scalar, _CHEAP_BOUND),
    "T_iso": (_check_T_iso, _CHEAP_BOUND),
    "self_dual": (_check_self_dual, _CHEAP_BOUND),
    "omega_twist": (_check_omega_twist, _CHEAP_BOUND),
    "bar_canonical": (_check_bar_canonical, _DEFAULT_BOUND),
    "diff_sl2": (_check_diff_sl2, _CHEAP_BOUND),
    "diff_commute": (_check_diff_commute, _CHEAP_BOUND),
    "images_agree": (_check_images_agree, 2),
    "character_identity": (_check_character_identity, _CHEAP_BOUND),
    "howe_tilting_shadow": (_check_howe_tilting_shadow, _CHEAP_BOUND),
}

CHECK_NAMES = tuple(_REGISTRY)


def _bound(name: str) -> int:
    env = os.environ.get("HOWE_MAX_RANK")
    base = _REGISTRY[name][1]
    if env:
        return max(base, int(env))
    return base


def _spec_params(s: Specialization | None) -> dict:
    if s is None:
        return {}
    return {
        "p": None if s.p == INF else int(s.p),
        "l": None if s.ell == INF else int(s.ell),
    }


def run_check(name: str, n: int, s: Specialization | None = None) -> CheckReport:
    """Run one registered check exhaustively at rank ``n``."""
    if name not in _REGISTRY:
        raise ValueError(f"unknown check {name!r}")
    if n < 1:
        raise ValueError("rank must be positive")
    if n > _bound(name):
        raise ValueError(
            f"rank {n} exceeds bound {_bound(name)} for check {name!r}"
            " (override with HOWE_MAX_RANK)"
        )
    fn = _REGISTRY[name][0]
    tally = fn(n, s)
    params = {"n": n, **_spec_params(s)}
    return CheckReport(
        name=name,
        params=params,
        status="pass" if tally.witness is None else "fail",
        assertions=tally.count,
        witness=tally.witness,
    )


def run_all(n: int, specs: list[Specialization] | None = None) -> list[CheckReport]:
    """Run the full registry in order, clamping each check to its rank
    bound; specialization-dependent checks run once per entry of ``specs``."""
    if specs is None:
        specs = [Specialization(INF, INF)]
    reports = []
    for name in CHECK_NAMES:
        n_eff = min(n, _bound(name))
        if name == "howe_tilting_shadow":
            for s in specs:
                reports.append(run_check(name, n_eff, s))
        else:
            reports.append(run_check(name, n_eff))
    return reports


def all_passed(reports: list[CheckReport]) -> bool:
    return all(r.passed for r in reports)


def certificates_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)
