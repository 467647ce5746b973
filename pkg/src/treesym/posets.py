"""
The three partial orders, their Mobius functions, and interval-retract checks.

* permutations: ``u <= v`` iff the inversion set of ``u`` is contained in
  that of ``v``; covers swap adjacent values ``k, k+1`` appearing in order;
* trees: covers move a child node from the left to the right branch of its
  parent (a rotation); the order is the transitive closure;
* marked trees: ``(s; S) <= (t; T)`` iff ``s <= t`` for trees and ``S >= T``.

:class:`FinitePoset` stores the order relation of a finite poset as bitmask
rows and computes covers and exact Mobius values from it.  Chain-counting
oracles (used by the test suite to cross-check Mobius values) live here too.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from . import trees_core as tc

__all__ = [
    "FinitePoset", "node_poset", "family_poset", "inversion_set", "weak_leq",
    "weak_covers", "tamari_leq", "tamari_covers", "m_leq", "m_covers",
    "m_covers_by_types", "mobius", "chain_sum", "all_chains",
    "chain_sum_meeting_all_blocks", "hall_mobius", "interval_retract_verify",
    "fiberwise_mobius_verify", "hasse_dot",
]


class FinitePoset:
    """A finite poset with precomputed reachability bitmasks."""

    def __init__(self, elements: Sequence, *, leq: Callable = None,
                 cover_pairs: Iterable[tuple] = None):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        if cover_pairs is not None:
            succ = [0] * n
            for x, y in cover_pairs:
                succ[self.index[x]] |= 1 << self.index[y]
            self.up = _transitive_closure(succ)
        elif leq is not None:
            self.up = []
            for i, x in enumerate(self.elements):
                mask = 0
                for j, y in enumerate(self.elements):
                    if leq(x, y):
                        mask |= 1 << j
                self.up.append(mask)
        else:
            raise ValueError("need either leq or cover_pairs")
        self.down = [0] * n
        for i in range(n):
            m = self.up[i]
            while m:
                j = (m & -m).bit_length() - 1
                self.down[j] |= 1 << i
                m &= m - 1
        self._mobius_memo: dict = {}
        self._covers = None

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, x, y) -> bool:
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    def covers(self) -> tuple:
        """All cover pairs ``(x, y)`` with ``x`` covered by ``y``."""
        if self._covers is None:
            out = []
            for i, x in enumerate(self.elements):
                strict_up = self.up[i] & ~(1 << i)
                m = strict_up
                while m:
                    j = (m & -m).bit_length() - 1
                    between = strict_up & self.down[j] & ~(1 << j)
                    if not between:
                        out.append((x, self.elements[j]))
                    m &= m - 1
            self._covers = tuple(out)
        return self._covers

    def interval(self, x, y) -> list:
        """Elements ``z`` with ``x <= z <= y``."""
        m = self.up[self.index[x]] & self.down[self.index[y]]
        out = []
        while m:
            j = (m & -m).bit_length() - 1
            out.append(self.elements[j])
            m &= m - 1
        return out

    def is_interval_subset(self, subset) -> bool:
        """Is ``subset`` exactly an interval ``[lo, hi]`` of this poset?"""
        idx = [self.index[x] for x in subset]
        if not idx:
            return False
        mins = [i for i in idx if all(
            not (self.up[j] >> i & 1) or j == i for j in idx)]
        maxs = [i for i in idx if all(
            not (self.up[i] >> j & 1) or j == i for j in idx)]
        if len(mins) != 1 or len(maxs) != 1:
            return False
        lo, hi = mins[0], maxs[0]
        full = self.up[lo] & self.down[hi]
        mask = 0
        for i in idx:
            mask |= 1 << i
        return full == mask

    def mobius(self, x, y) -> int:
        i, j = self.index[x], self.index[y]
        return self._mobius_idx(i, j)

    def _mobius_idx(self, i: int, j: int) -> int:
        if not (self.up[i] >> j & 1):
            return 0
        if i == j:
            return 1
        memo = self._mobius_memo
        key = (i, j)
        if key not in memo:
            total = 0
            m = self.up[i] & self.down[j] & ~(1 << j)
            while m:
                k = (m & -m).bit_length() - 1
                total += self._mobius_idx(i, k)
                m &= m - 1
            memo[key] = -total
        return memo[key]


def _transitive_closure(succ: list) -> list:
    """Reflexive-transitive closure of a DAG given as successor bitmasks."""
    n = len(succ)
    up = [None] * n

    def solve(i: int) -> int:
        if up[i] is None:
            up[i] = -1  # sentinel; the input must be acyclic
            mask = 1 << i
            m = succ[i]
            while m:
                j = (m & -m).bit_length() - 1
                mask |= solve(j)
                m &= m - 1
            up[i] = mask
        elif up[i] == -1:
            raise ValueError("cover relation contains a cycle")
        return up[i]

    for i in range(n):
        solve(i)
    return up


# ---------------------------------------------------------------------------
# the three families


def node_poset(t: tuple) -> FinitePoset:
    """Node order of a tree: elements ``1..n``, the root is the maximum."""
    n = tc.nodes(t)
    return FinitePoset(range(1, n + 1), cover_pairs=tc.node_covers(t))


@lru_cache(maxsize=None)
def inversion_set(w: tuple) -> frozenset:
    """Position pairs ``(i, j)`` with ``i < j`` and ``w(i) > w(j)``."""
    n = len(w)
    return frozenset(
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
        if w[i - 1] > w[j - 1]
    )


def weak_leq(u: tuple, v: tuple) -> bool:
    if len(u) != len(v):
        raise ValueError("permutations must have the same size")
    return inversion_set(u) <= inversion_set(v)


def weak_covers(w: tuple) -> tuple:
    """Covers swap the values ``k`` and ``k+1`` when ``k`` appears first."""
    pos = {a: i for i, a in enumerate(w)}
    out = []
    for k in range(1, len(w)):
        if pos[k] < pos[k + 1]:
            lst = list(w)
            lst[pos[k]], lst[pos[k + 1]] = k + 1, k
            out.append(tuple(lst))
    return tuple(out)


def tamari_covers(t: tuple) -> tuple:
    """All single rotations moving a left child to the right branch."""
    out = []
    if not t:
        return ()
    left, right = t
    if left:
        a, b = left
        out.append((a, (b, right)))
    for l2 in tamari_covers(left):
        out.append((l2, right))
    for r2 in tamari_covers(right):
        out.append((left, r2))
    return tuple(out)


@lru_cache(maxsize=None)
def family_poset(family: str, n: int) -> FinitePoset:
    elements = tc.enumerate_family(family, n)
    if family == "S":
        return FinitePoset(elements, leq=weak_leq)
    if family == "Y":
        pairs = [(t, s) for t in elements for s in tamari_covers(t)]
        return FinitePoset(elements, cover_pairs=pairs)
    if family == "M":
        ytail = family_poset("Y", n)

        def leq(b, c):
            return ytail.leq(b.tree, c.tree) and b.ideal >= c.ideal

        return FinitePoset(elements, leq=leq)
    raise ValueError(f"unknown family {family!r}")


def tamari_leq(s: tuple, t: tuple) -> bool:
    if tc.nodes(s) != tc.nodes(t):
        raise ValueError("trees must have the same size")
    return family_poset("Y", tc.nodes(s)).leq(s, t)


def m_leq(b: tc.BiLeveledTree, c: tc.BiLeveledTree) -> bool:
    if tc.nodes(b.tree) != tc.nodes(c.tree):
        raise ValueError("sizes must agree")
    return tamari_leq(b.tree, c.tree) and b.ideal >= c.ideal


def m_covers(b: tc.BiLeveledTree) -> tuple:
    """Covers of ``b``: minimal elements strictly greater than ``b``."""
    poset = family_poset("M", tc.nodes(b.tree))
    return tuple(c for x, c in poset.covers() if x == b)


def _rotate_leftmost_node(t: tuple) -> tuple:
    """Rotate the leftmost node across its parent (positions are kept)."""
    left, right = t
    if not left:
        raise ValueError("the leftmost node has no parent to rotate across")
    if not left[0]:
        # ``left`` is the leftmost node: ((),B) over C becomes ((),(B,C))
        return (tc.LEAF, (left[1], right))
    return (_rotate_leftmost_node(left), right)


def m_covers_by_types(b: tc.BiLeveledTree) -> dict:
    """Candidate covers of ``b`` from the three local moves, with types.

    Used by tests as a cross-check of :func:`m_covers`: (i) rotate inside
    exactly one component of the forest form, mark count unchanged;
    (ii) rotate the leftmost node across
    its parent -- allowed when the parent has no other marked child -- and
    unmark the parent; (iii) keep the tree, unmark one marked node other
    than the two smallest.  Returns ``{candidate: sorted tuple of types}``
    without filtering by minimality.
    """
    out: dict = {}
    if not b.tree:
        return out

    def add(cand, kind):
        if tc.is_admissible_ideal(cand.tree, cand.ideal):
            out.setdefault(cand, set()).add(kind)

    # type (i): a rotation inside exactly one component of the forest form
    # (the marked upper tree or one lower piece); the mark count is fixed
    t0, forest = tc.forest_form(b)
    for t02 in tamari_covers(t0):
        add(tc.ideal_form(t02, forest), "i")
    for i, piece in enumerate(forest):
        for piece2 in tamari_covers(piece):
            add(tc.ideal_form(t0, forest[:i] + (piece2,) + forest[i + 1:]),
                "i")

    marked = sorted(b.ideal)
    if len(marked) >= 2:
        # (ii): the parent of node 1 is the second-smallest marked node
        parent = dict(tc.node_covers(b.tree))
        p = parent.get(1)
        children_of_p = [c for c, q in tc.node_covers(b.tree) if q == p]
        if p is not None and not any(
                c in b.ideal for c in children_of_p if c != 1):
            add(tc.BiLeveledTree(_rotate_leftmost_node(b.tree),
                                 b.ideal - {p}), "ii")
        # (iii): drop a marked node other than the two smallest
        for v in marked[2:]:
            add(tc.BiLeveledTree(b.tree, b.ideal - {v}), "iii")
    return {cand: tuple(sorted(kinds)) for cand, kinds in out.items()}


# ---------------------------------------------------------------------------
# Mobius values and chain oracles


def mobius(family: str, x, y) -> int:
    """Exact Mobius value between two same-degree elements of a family."""
    if family == "S":
        n = len(x)
    elif family == "Y":
        n = tc.nodes(x)
    else:
        n = tc.nodes(x.tree)
    return family_poset(family, n).mobius(x, y)


def all_chains(poset: FinitePoset) -> Iterator[tuple]:
    """All nonempty chains, as tuples of elements in increasing order."""
    n = len(poset.elements)

    def extend(prefix: tuple, i: int) -> Iterator[tuple]:
        yield prefix
        above = poset.up[i] & ~(1 << i)
        m = above
        while m:
            j = (m & -m).bit_length() - 1
            yield from extend(prefix + (poset.elements[j],), j)
            m &= m - 1

    for i in range(n):
        yield from extend((poset.elements[i],), i)


def chain_sum(poset: FinitePoset) -> int:
    """Sum of ``(-1)**edges`` over all nonempty chains; 1 on intervals."""
    n = len(poset.elements)
    memo = [None] * n

    def starting_at(i: int) -> int:
        if memo[i] is None:
            total = 1
            m = poset.up[i] & ~(1 << i)
            while m:
                j = (m & -m).bit_length() - 1
                total -= starting_at(j)
                m &= m - 1
            memo[i] = total
        return memo[i]

    return sum(starting_at(i) for i in range(n))


def chain_sum_meeting_all_blocks(poset: FinitePoset, blocks: Sequence[set]) -> int:
    """Sum of ``(-1)**edges`` over chains meeting every block."""
    block_of = {}
    for i, block in enumerate(blocks):
        for x in block:
            block_of[x] = i
    total = 0
    for chain in all_chains(poset):
        if {block_of[x] for x in chain} == set(range(len(blocks))):
            total += (-1) ** (len(chain) - 1)
    return total


def hall_mobius(poset: FinitePoset, x, y) -> int:
    """Mobius value via chains from ``x`` to ``y`` (test oracle)."""
    if not poset.leq(x, y):
        return 0
    i0, j0 = poset.index[x], poset.index[y]
    memo: dict = {}

    def from_idx(i: int) -> int:
        if i == j0:
            return 1
        if i not in memo:
            total = 0
            m = poset.up[i] & poset.down[j0] & ~(1 << i)
            while m:
                j = (m & -m).bit_length() - 1
                total -= from_idx(j)
                m &= m - 1
            memo[i] = total
        return memo[i]

    return from_idx(i0)


# ---------------------------------------------------------------------------
# verification reports


def interval_retract_verify(n: int) -> dict:
    """Check that the projection from permutations is an interval retract.

    (a) each fiber is an interval of the weak order, (b) the canonical
    section is order-preserving on covers, (c) it is a genuine section.
    """
    from . import projections as pj

    sposet = family_poset("S", n)
    violations = []
    for b in tc.enumerate_family("M", n):
        fiber = pj.beta_fiber(b)
        if not sposet.is_interval_subset(fiber):
            violations.append(("fiber-not-interval", tc.format_bileveled(b)))
        w = pj.iota(b)
        if pj.beta(w) != b:
            violations.append(("not-a-section", tc.format_bileveled(b)))
    mposet = family_poset("M", n)
    for b, c in mposet.covers():
        if not weak_leq(pj.iota(b), pj.iota(c)):
            violations.append(
                ("section-not-order-preserving",
                 tc.format_bileveled(b), tc.format_bileveled(c)))
    return {"n": n, "ok": not violations, "violations": violations}


def fiberwise_mobius_verify(n: int) -> dict:
    """Compare Mobius values across the fiber projection, all pairs."""
    from . import projections as pj

    sposet = family_poset("S", n)
    mposet = family_poset("M", n)
    fibers: dict = {}
    for w in sposet.elements:
        fibers.setdefault(pj.beta(w), []).append(w)
    violations = []
    for x in mposet.elements:
        for y in mposet.elements:
            lhs = mposet.mobius(x, y)
            rhs = sum(
                sposet.mobius(a, b)
                for a in fibers[x] for b in fibers[y]
                if sposet.leq(a, b)
            )
            if lhs != rhs:
                violations.append(
                    (tc.format_bileveled(x), tc.format_bileveled(y), lhs, rhs))
    return {"n": n, "ok": not violations, "violations": violations}


def hasse_dot(family: str, n: int) -> str:
    """DOT digraph of the cover relation, edges pointing upward."""
    poset = family_poset(family, n)
    lines = [f'digraph "{family}{n}" {{']
    for x in poset.elements:
        lines.append(f'  "{tc.format_element(family, x)}";')
    for x, y in sorted(
            poset.covers(),
            key=lambda p: (tc.format_element(family, p[0]),
                           tc.format_element(family, p[1]))):
        lines.append(
            f'  "{tc.format_element(family, x)}" -> '
            f'"{tc.format_element(family, y)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
