"""Rainbow matching and the canonical basis of the quantum exterior algebra.

A subset S is drawn as a 2 x n dot diagram.  Its fully dotted columns are
matched to undotted columns by the *rainbow* rule: processing fully dotted
columns from right to left, column x is matched to the nearest still-unused
undotted column strictly to its right whenever the number of dots strictly
to the right of column x is smaller than the number of columns strictly to
the right (|S_{>x}| < n - x); otherwise x stays unmatched.  The resulting
arcs never cross.

The canonical basis vector b_S is the sum over all subsets P of the matched
columns of q^{-|P|} times the standard basis vector of S with each column
x in P jumped to its partner column x^S (remove {x, -x}, add {x^S, -x^S}).
In particular b_S = v_S whenever S has no fully dotted or no undotted
column.  The family {b_S} is bar-invariant and unitriangular over the
standard basis with off-leading coefficients in q^{-1} Z[q^{-1}].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .qarith import LaurentInt, ONE
from .extalg import ExtVec, Subset, subsets_of_size

__all__ = [
    "Rainbow",
    "rainbow",
    "matched_columns",
    "canonical_vector",
    "to_canonical",
    "fundamental_subsets",
    "is_fundamental_member",
]


@dataclass(frozen=True)
class Rainbow:
    """The rainbow matching of a subset: ``pairing`` maps each matched fully
    dotted column x to its partner undotted column x^S > x; ``unmatched``
    lists the fully dotted columns with no partner."""

    pairing: dict[int, int]
    unmatched: frozenset[int]

    def __post_init__(self):
        for x, y in self.pairing.items():
            if not x < y:
                raise ValueError(f"matched pair must go rightward, got {x} -> {y}")


def rainbow(S: Subset) -> Rainbow:
    n = S.n
    members = set(S.members)
    dotted = S.dotted_columns()
    undotted = S.undotted_columns()
    used: set[int] = set()
    pairing: dict[int, int] = {}
    unmatched: set[int] = set()
    for x in reversed(dotted):
        dots_right = sum(1 for y in members if abs(y) > x)
        if dots_right < n - x:
            partner = min(u for u in undotted if u > x and u not in used)
            used.add(partner)
            pairing[x] = partner
        else:
            unmatched.add(x)
    return Rainbow(pairing=pairing, unmatched=frozenset(unmatched))


def matched_columns(S: Subset) -> tuple[int, ...]:
    """The matched fully dotted columns of S, ascending."""
    return tuple(sorted(rainbow(S).pairing))


def canonical_vector(S: Subset) -> ExtVec:
    """The canonical basis vector b_S."""
    rb = rainbow(S)
    pairs = sorted(rb.pairing.items())
    terms: list[tuple[Subset, LaurentInt]] = []
    for p in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, p):
            t = S
            for x, y in chosen:
                t = t.remove(x, -x).union(y, -y)
            terms.append((t, LaurentInt.monomial(-p)))
    return ExtVec(S.n, terms)


def _dotted_key(S: Subset) -> tuple:
    return (S.dotted_columns(), S.mask)


def to_canonical(x: ExtVec) -> dict[Subset, LaurentInt]:
    """Coefficients of x over the canonical basis, by unitriangular
    back-substitution along the lexicographic order of fully-dotted column
    tuples (a linear extension of the triangularity order)."""
    coeffs: dict[Subset, LaurentInt] = {}
    rem = x
    while rem:
        S = min(rem.support(), key=_dotted_key)
        c = rem.coeff(S)
        coeffs[S] = coeffs.get(S, LaurentInt()) + c
        rem = rem - canonical_vector(S).scale(c)
    return coeffs


def is_fundamental_member(S: Subset) -> bool:
    """Whether every fully dotted column of S is matched by the rainbow."""
    return not rainbow(S).unmatched


def fundamental_subsets(n: int, k: int) -> list[Subset]:
    """All S with |S| = k and every fully dotted column matched; these index
    the canonical basis of the degree-k fundamental Weyl module."""
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range 0..{n}")
    return [S for S in subsets_of_size(n, k) if is_fundamental_member(S)]
