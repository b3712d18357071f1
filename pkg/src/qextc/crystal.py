"""Fundamental crystals in the subset and column-tableau models.

The degree-k fundamental crystal consists of all subsets S of size k whose
fully dotted columns are all matched by the rainbow (see
:mod:`qextc.canonical`); its cardinality is C(2n,k) - C(2n,k-2).

The crystal operators are computed through the column-splitting
construction: the rainbow pairing splits a member S into a left word
(each matched dotted column x replaced in the top row by its partner) and
a right word (replaced in the bottom row), and the operator is the
tensor-product signature rule applied twice to the concatenated word
(the split doubles the weight).  This reproduces the naive case-by-case
window table except on the window {i+1, -(i+1)}, where the naive move is
never part of the crystal structure: keeping it would give the target two
raising preimages and break invertibility.

Operators extend to arbitrary subsets (the full 4^n-element crystal):
stripping all unmatched fully dotted columns projects onto a fundamental
crystal member, the fiber over a (member, count) pair is a single subset,
and the rank-n operators act through that projection.  The commuting
rank-1 operators move along the fibers instead, removing or adding an
unmatched fully dotted column.

The column-tableau model sends a member to its sorted member tuple; the
tableau condition "if entries x and -x appear at positions p < q then
q - p <= n - x" characterizes the image, and the same signature rule on
the word realizes the crystal operators there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canonical import is_fundamental_member, rainbow
from .extalg import Subset, subsets_of_size
from .actions import GeneratorTag

__all__ = [
    "crystal_members",
    "crystal_f",
    "crystal_e",
    "sl2_crystal_F",
    "sl2_crystal_E",
    "strip_unmatched",
    "unstrip",
    "CrystalGraph",
    "crystal_graph",
    "export_dot",
    "length",
    "generating_word",
    "tableau_iso",
    "tableau_crystal_f",
    "tableau_crystal_e",
    "source_subset",
]


def crystal_members(n: int, k: int) -> list[Subset]:
    """All members of the degree-k fundamental crystal."""
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range 0..{n}")
    return [S for S in subsets_of_size(n, k) if is_fundamental_member(S)]


def source_subset(n: int, k: int) -> Subset:
    """The highest-weight element {1, ..., k}."""
    return Subset.of(n, range(1, k + 1))


# -- signature rule on split words --------------------------------------


def _letter_sign(x: int, i: int, n: int) -> int:
    """+1 if the single-column letter x accepts the lowering move at node
    i, -1 if it accepts the raising move, 0 otherwise."""
    if i == n:
        return 1 if x == n else (-1 if x == -n else 0)
    if x == i or x == -(i + 1):
        return 1
    if x == i + 1 or x == -i:
        return -1
    return 0


def _lower_letter(x: int, i: int, n: int) -> int:
    if i == n:
        return -n
    return i + 1 if x == i else -i


def _raise_letter(x: int, i: int, n: int) -> int:
    if i == n:
        return n
    return i if x == i + 1 else -(i + 1)


def _order_key(x: int, n: int) -> int:
    return (x - 1) if x > 0 else (2 * n + x)


def _split_word(S: Subset) -> list[int]:
    """Left word followed by right word, each sorted ascending."""
    n = S.n
    pairing = rainbow(S).pairing
    left = set(S.members)
    right = set(S.members)
    for x, t in pairing.items():
        left.discard(x)
        left.add(t)
        right.discard(-x)
        right.add(-t)
    key = lambda v: _order_key(v, n)
    return sorted(left, key=key) + sorted(right, key=key)


def _unsplit(word: list[int], n: int) -> Subset | None:
    """Inverse of _split_word (the two halves taken as sets), or None when
    the word is not the split of a crystal member."""
    k = len(word) // 2
    left = set(word[:k])
    right = set(word[k:])
    common = left & right
    members = set(common)
    for x in right - common:  # top-row entries of the split pairs
        if x > 0:
            members.add(x)
    for y in left - common:  # bottom-row entries are kept on the left
        if y < 0:
            members.add(y)
    if len(members) != k:
        return None
    S = Subset.of(n, members)
    if len(S) != k or not is_fundamental_member(S):
        return None
    check = _split_word(S)
    if set(check[:k]) == left and set(check[k:]) == right:
        return S
    return None


def _signature_move(word: list[int], i: int, n: int, lower: bool) -> list[int] | None:
    """One step of the tensor-product signature rule: cancel matched
    (+,-) sign pairs, then lower the leftmost surviving plus or raise the
    rightmost surviving minus."""
    stack: list[tuple[int, int]] = []
    for p, x in enumerate(word):
        s = _letter_sign(x, i, n)
        if s == 0:
            continue
        if s == -1 and stack and stack[-1][1] == 1:
            stack.pop()
        else:
            stack.append((p, s))
    if lower:
        hits = [p for p, s in stack if s == 1]
        if not hits:
            return None
        p = hits[0]
        out = list(word)
        out[p] = _lower_letter(word[p], i, n)
    else:
        hits = [p for p, s in stack if s == -1]
        if not hits:
            return None
        p = hits[-1]
        out = list(word)
        out[p] = _raise_letter(word[p], i, n)
    return out


def _member_op(i: int, S: Subset, lower: bool) -> Subset | None:
    n = S.n
    word = _split_word(S)
    word = _signature_move(word, i, n, lower)
    if word is None:
        return None
    word = _signature_move(word, i, n, lower)
    if word is None:
        return None
    return _unsplit(word, n)


# -- projection to members and fibers -----------------------------------


def _bracket_columns(S: Subset) -> tuple[list[int], list[int]]:
    """Match full columns to empty columns on their right, maximally:
    scanning columns left to right, a full column opens a bracket and an
    empty column closes the innermost open one.  Returns (unmatched full
    columns, unmatched empty columns), each ascending."""
    n = S.n
    open_cols: list[int] = []
    closed: list[int] = []
    for c in range(1, n + 1):
        full = c in S and -c in S
        empty = c not in S and -c not in S
        if full:
            open_cols.append(c)
        elif empty:
            if open_cols:
                open_cols.pop()
            else:
                closed.append(c)
    return open_cols, closed


def _unmatched(S: Subset) -> tuple[int, ...]:
    return tuple(_bracket_columns(S)[0])


def strip_unmatched(S: Subset) -> tuple[Subset, int]:
    """Remove the fully dotted columns left unmatched by the maximal
    matching; returns a fundamental crystal member and the number of
    columns removed."""
    cols = _unmatched(S)
    T = S
    for x in cols:
        T = T.remove(x, -x)
    return T, len(cols)


def unstrip(core: Subset, r: int) -> Subset:
    """The unique subset with the given fundamental member as its matched
    part and r unmatched fully dotted columns."""
    from itertools import combinations

    n = core.n
    if r == 0:
        return core
    free = [c for c in range(1, n + 1) if c not in core and -c not in core]
    for cols in combinations(free, r):
        T = core.union(*(x for c in cols for x in (c, -c)))
        if strip_unmatched(T) == (core, r):
            return T
    raise ValueError(f"no subset over {core!r} with {r} unmatched columns")


def crystal_f(i: int, S: Subset) -> Subset | None:
    """Lowering operator at node i on an arbitrary subset, acting through
    the matched part; None when the operator vanishes."""
    core, r = strip_unmatched(S)
    T = _member_op(i, core, lower=True)
    if T is None:
        return None
    return unstrip(T, r)


def crystal_e(i: int, S: Subset) -> Subset | None:
    """Raising operator at node i; partial inverse of crystal_f."""
    core, r = strip_unmatched(S)
    T = _member_op(i, core, lower=False)
    if T is None:
        return None
    return unstrip(T, r)


# -- the commuting rank-1 crystal ---------------------------------------


def sl2_crystal_F(S: Subset) -> Subset | None:
    """Empty the smallest unmatched fully dotted column, or None when all
    full columns are matched."""
    opens, _ = _bracket_columns(S)
    if not opens:
        return None
    return S.remove(opens[0], -opens[0])


def sl2_crystal_E(S: Subset) -> Subset | None:
    """Fill the largest unmatched empty column, or None when every empty
    column is matched; partial inverse of sl2_crystal_F."""
    _, closed = _bracket_columns(S)
    if not closed:
        return None
    return S.union(closed[-1], -closed[-1])


# -- graph --------------------------------------------------------------


@dataclass
class CrystalGraph:
    """The labeled directed graph of a fundamental crystal."""

    n: int
    k: int
    nodes: list[Subset]
    edges: list[tuple[Subset, int, Subset]] = field(default_factory=list)

    def successors(self, S: Subset) -> list[tuple[int, Subset]]:
        return [(i, T) for (A, i, T) in self.edges if A == S]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "nodes": [list(S.members) for S in self.nodes],
            "edges": [
                {"from": list(A.members), "label": i, "to": list(B.members)}
                for A, i, B in self.edges
            ],
        }


def crystal_graph(n: int, k: int) -> CrystalGraph:
    nodes = sorted(crystal_members(n, k), key=Subset.sort_key)
    edges = []
    for S in nodes:
        for i in range(1, n + 1):
            T = crystal_f(i, S)
            if T is not None:
                edges.append((S, i, T))
    return CrystalGraph(n=n, k=k, nodes=nodes, edges=edges)


def export_dot(g: CrystalGraph) -> str:
    def name(S: Subset) -> str:
        return '"' + ",".join(map(str, S.members)) + '"'

    lines = ["digraph crystal {"]
    for S in g.nodes:
        lines.append(f"  {name(S)};")
    for A, i, B in g.edges:
        lines.append(f"  {name(A)} -> {name(B)} [label={i}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _distances(n: int, k: int) -> dict[Subset, tuple[int, list]]:
    """BFS from the source: subset -> (distance, path of (label, subset))."""
    from collections import deque

    src = source_subset(n, k)
    seen: dict[Subset, tuple[int, list]] = {src: (0, [])}
    queue = deque([src])
    while queue:
        S = queue.popleft()
        d, path = seen[S]
        for i in range(1, n + 1):
            T = crystal_f(i, S)
            if T is not None and T not in seen:
                seen[T] = (d + 1, path + [(i, T)])
                queue.append(T)
    return seen


def length(S: Subset, k: int | None = None) -> int:
    """Graph distance from the source {1..k} to S."""
    if k is None:
        k = len(S)
    dist = _distances(S.n, k)
    if S not in dist:
        raise ValueError(f"{S!r} is not in the degree-{k} crystal")
    return dist[S][0]


def generating_word(S: Subset) -> list[GeneratorTag]:
    """A divided-power lowering word sending the source basis vector to
    the canonical basis vector of S: f-steps along a shortest crystal
    path, with a double step at the same node fused to a divided square
    exactly when the first step's subset shows the fully dotted window
    {j, -j} (the configuration whose single step produces a quantum-2
    coefficient)."""
    from .extalg import window

    n = S.n
    k = len(S)
    src = source_subset(n, k)
    if not is_fundamental_member(S) or len(S) != k:
        raise ValueError(f"{S!r} is not in the degree-{k} crystal")
    tags: list[GeneratorTag] = []  # leftmost tag acts last
    cur = S
    while cur != src:
        for i in range(1, n + 1):
            up = crystal_e(i, cur)
            if up is None:
                continue
            if window(up, i) == {i, -i}:
                # the step into this window is the second half of a
                # double move and must be fused to a divided square
                up2 = crystal_e(i, up)
                assert up2 is not None, (S, cur, i)
                tags.append(GeneratorTag("sp", "f", i, 2))
                cur = up2
            else:
                tags.append(GeneratorTag("sp", "f", i, 1))
                cur = up
            break
        else:
            raise AssertionError(f"no raising move from {cur!r}")
    return tags


# -- column tableaux ----------------------------------------------------


def tableau_iso(S: Subset) -> tuple[int, ...]:
    """The column tableau of a crystal member: its sorted member tuple.
    Validates the column condition (entries x at position p and -x at
    position q satisfy q - p <= n - x)."""
    if not is_fundamental_member(S):
        raise ValueError(f"{S!r} is not a crystal member")
    word = S.members
    n = S.n
    pos = {x: p for p, x in enumerate(word, start=1)}
    for x in word:
        if x > 0 and -x in pos:
            if pos[-x] - pos[x] > n - x:
                raise AssertionError(
                    f"column condition violated for {S!r} at entry {x}"
                )
    return word


def _tableau_op(word: tuple[int, ...], i: int, n: int, lower: bool):
    S = Subset.of(n, word)
    if len(S) != len(word):
        raise ValueError(f"repeated entries in {word!r}")
    T = _member_op(i, S, lower=lower)
    return None if T is None else tableau_iso(T)


def tableau_crystal_f(word: tuple[int, ...], i: int, n: int):
    """Lowering operator in the column-tableau model."""
    return _tableau_op(word, i, n, lower=True)


def tableau_crystal_e(word: tuple[int, ...], i: int, n: int):
    """Raising operator in the column-tableau model."""
    return _tableau_op(word, i, n, lower=False)
