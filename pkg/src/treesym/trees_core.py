"""
Core combinatorial objects and their structural operations.

Three families of objects, all immutable:

* planar binary trees, encoded as nested pairs -- the empty tree is ``()``
  and a tree with a root node is ``(left, right)``;
* permutations in one-line notation, encoded as tuples of the integers
  ``1..n`` (a permutation doubles as an "ordered tree": the node in in-order
  position ``i`` carries the label ``w[i-1]``);
* bi-leveled trees: a tree together with an admissible upper set of its
  nodes (see :class:`BiLeveledTree`).

Nodes and the gaps between leaves are numbered ``1..n`` from left to right
(in-order); leaves are numbered ``0..n`` from left to right.

The module also implements splitting a tree along a multiset of leaves and
grafting a forest onto the leaves of a base tree, for all three families.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "LEAF", "PlanarTree", "Permutation", "BiLeveledTree", "DecoratedForest",
    "ParseError", "nodes", "leaves", "vee", "backslash", "indecomposables",
    "tree_indecomposables", "perm_indecomposables", "node_covers",
    "node_descendants", "leftmost_branch", "parse_tree", "format_tree",
    "parse_perm", "format_perm", "parse_bileveled", "format_bileveled",
    "parse_element", "format_element", "standardize", "all_trees",
    "all_perms", "all_bileveled", "is_admissible_ideal", "splittings",
    "perm_splittings", "tree_splittings", "bileveled_splittings",
    "restricted_splittings", "graft", "graft_trees", "graft_perms",
    "graft_bileveled", "graft_forest_on_tree", "forest_form", "ideal_form",
    "tree_backslash_bileveled", "enumerate_family", "sort_key",
]

# The empty tree.  A nonempty tree is a pair (left, right) of trees.
LEAF: tuple = ()

PlanarTree = tuple  # () or (PlanarTree, PlanarTree)
Permutation = tuple  # tuple of ints, one-line notation


class ParseError(ValueError):
    """Raised on malformed text encodings; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class BiLeveledTree(NamedTuple):
    """A planar binary tree plus an admissible upper set of its nodes.

    ``ideal`` is up-closed in the node order (the root is the unique
    maximum), contains the leftmost node (node 1), and contains nothing
    strictly under node 1.  The empty object is ``BiLeveledTree((), frozenset())``.
    """

    tree: tuple
    ideal: frozenset


# A forest produced by splitting a bi-leveled tree: parts are (tree, marks)
# pairs with marks the local node indices inherited from the ideal.  Only
# the first part is guaranteed to be a valid BiLeveledTree.
DecoratedForest = tuple


# ---------------------------------------------------------------------------
# basic tree operations


@lru_cache(maxsize=None)
def nodes(t: tuple) -> int:
    """Number of internal nodes of a tree."""
    if not t:
        return 0
    return 1 + nodes(t[0]) + nodes(t[1])


def leaves(t: tuple) -> int:
    return nodes(t) + 1


def vee(t_l: tuple, t_r: tuple) -> tuple:
    """Join two trees under a new root node."""
    return (t_l, t_r)


def backslash(t1: tuple, t2: tuple) -> tuple:
    """Graft the root of ``t2`` onto the rightmost leaf of ``t1``."""
    if not t1:
        return t2
    return (t1[0], backslash(t1[1], t2))


def tree_indecomposables(t: tuple) -> tuple:
    """The unique maximal decomposition of ``t`` under ``backslash``.

    A tree is indecomposable when its root node is its rightmost node,
    i.e. its right subtree is empty.
    """
    out = []
    while t:
        out.append((t[0], LEAF))
        t = t[1]
    return tuple(out)


def indecomposables(x) -> tuple:
    """Indecomposable factors of a tree or a permutation."""
    if x and isinstance(x[0], int):
        return perm_indecomposables(x)
    return tree_indecomposables(x)


def perm_indecomposables(w: tuple) -> tuple:
    """Factors of ``w = u1 \\ u2 \\ ... \\ ur`` with each factor indecomposable.

    ``w = u\\v`` exactly when the first ``k`` values of ``w`` are the ``k``
    largest; each factor is standardized.
    """
    out = []
    start = 0
    n = len(w)
    seen_min = n + 1
    for i, a in enumerate(w):
        seen_min = min(seen_min, a)
        # positions start..i hold the largest len-many remaining values
        if seen_min == n - i:
            out.append(standardize(w[start:i + 1]))
            start = i + 1
    return tuple(out)


def node_covers(t: tuple) -> tuple:
    """Cover pairs ``(child, parent)`` of the node order, 1-based in-order."""
    out = []

    def walk(sub: tuple, offset: int) -> int:
        left, right = sub
        root = offset + nodes(left) + 1
        if left:
            out.append((walk(left, offset), root))
        if right:
            out.append((walk(right, root), root))
        return root

    if t:
        walk(t, 0)
    return tuple(out)


@lru_cache(maxsize=None)
def node_descendants(t: tuple) -> dict:
    """Map each node to the frozenset of nodes strictly under it."""
    down: dict = {}

    def fill(sub: tuple, offset: int) -> None:
        left, right = sub
        root = offset + nodes(left) + 1
        acc = set()
        if left:
            fill(left, offset)
            l_root = offset + nodes(left[0]) + 1
            acc |= down[l_root] | {l_root}
        if right:
            fill(right, root)
            r_root = root + nodes(right[0]) + 1
            acc |= down[r_root] | {r_root}
        down[root] = frozenset(acc)

    if t:
        fill(t, 0)
    return down


@lru_cache(maxsize=None)
def leftmost_branch(t: tuple) -> frozenset:
    """Nodes on the path from the leftmost leaf to the root (in-order)."""
    path = []
    sub = t
    while sub:
        path.append(nodes(sub[0]) + 1)
        sub = sub[0]
    return frozenset(path)


# ---------------------------------------------------------------------------
# text encodings


def format_tree(t: tuple) -> str:
    if not t:
        return "."
    return "(" + format_tree(t[0]) + format_tree(t[1]) + ")"


def parse_tree(text: str) -> tuple:
    t, end = _parse_tree_at(text, 0)
    if end != len(text):
        raise ParseError("trailing characters after tree", end)
    return t


def _parse_tree_at(text: str, i: int):
    if i >= len(text):
        raise ParseError("unexpected end of input", i)
    if text[i] == ".":
        return LEAF, i + 1
    if text[i] == "(":
        left, j = _parse_tree_at(text, i + 1)
        right, k = _parse_tree_at(text, j)
        if k >= len(text) or text[k] != ")":
            raise ParseError("expected ')'", k)
        return (left, right), k + 1
    raise ParseError(f"unexpected character {text[i]!r}", i)


def format_perm(w: tuple) -> str:
    if len(w) <= 9:
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


def parse_perm(text: str) -> tuple:
    text = text.strip()
    if text == "":
        return ()
    if "," in text:
        try:
            w = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ParseError(f"bad permutation {text!r}", 0) from exc
    else:
        if not text.isdigit():
            raise ParseError(f"bad permutation {text!r}", 0)
        w = tuple(int(ch) for ch in text)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ParseError(f"not a permutation of 1..{len(w)}: {text!r}", 0)
    return w


def format_bileveled(b: BiLeveledTree) -> str:
    inner = ",".join(str(i) for i in sorted(b.ideal))
    return f"{format_tree(b.tree)};{{{inner}}}"


def parse_bileveled(text: str) -> BiLeveledTree:
    if ";" not in text:
        raise ParseError("expected 'TREE;{i,...}'", 0)
    tree_part, _, ideal_part = text.partition(";")
    t = parse_tree(tree_part)
    ideal_part = ideal_part.strip()
    if not (ideal_part.startswith("{") and ideal_part.endswith("}")):
        raise ParseError("expected '{i,...}' after ';'", len(tree_part) + 1)
    body = ideal_part[1:-1].strip()
    ideal = frozenset(int(s) for s in body.split(",")) if body else frozenset()
    b = BiLeveledTree(t, ideal)
    if not is_admissible_ideal(t, ideal):
        raise ParseError(f"inadmissible node set in {text!r}", 0)
    return b


def format_element(family: str, x) -> str:
    if family == "S":
        return format_perm(x)
    if family == "Y":
        return format_tree(x)
    if family == "M":
        return format_bileveled(x)
    raise ValueError(f"unknown family {family!r}")


def parse_element(family: str, text: str):
    if family == "S":
        return parse_perm(text)
    if family == "Y":
        return parse_tree(text)
    if family == "M":
        return parse_bileveled(text)
    raise ValueError(f"unknown family {family!r}")


def sort_key(family: str, x) -> str:
    """Canonical total order on each family: lexicographic on encodings."""
    return format_element(family, x)


# ---------------------------------------------------------------------------
# exhaustive generation


def standardize(word: Sequence[int]) -> tuple:
    """The permutation with the same relative order as ``word``."""
    ranks = {a: i + 1 for i, a in enumerate(sorted(word))}
    return tuple(ranks[a] for a in word)


@lru_cache(maxsize=None)
def all_trees(n: int) -> tuple:
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n):
        for left in all_trees(k):
            for right in all_trees(n - 1 - k):
                out.append((left, right))
    return tuple(out)


def all_perms(n: int) -> tuple:
    return tuple(permutations(range(1, n + 1)))


def is_admissible_ideal(t: tuple, ideal: frozenset) -> bool:
    """Check the bi-leveled constraints for ``(t, ideal)``."""
    n = nodes(t)
    if n == 0:
        return ideal == frozenset()
    if 1 not in ideal or not ideal <= frozenset(range(1, n + 1)):
        return False
    down = node_descendants(t)
    # up-closed: every ancestor of a member is a member
    for child, parent in node_covers(t):
        if child in ideal and parent not in ideal:
            return False
    # nothing strictly under node 1
    return not (ideal & down[1])


@lru_cache(maxsize=None)
def all_bileveled(n: int) -> tuple:
    if n == 0:
        return (BiLeveledTree(LEAF, frozenset()),)
    out = []
    for t in all_trees(n):
        down = node_descendants(t)
        branch = leftmost_branch(t)
        optional = [
            v for v in range(1, n + 1)
            if v not in branch and v not in down[1]
        ]
        covers = node_covers(t)
        for r in range(len(optional) + 1):
            for extra in combinations(optional, r):
                ideal = branch | frozenset(extra)
                if all(p in ideal for c, p in covers if c in ideal):
                    out.append(BiLeveledTree(t, ideal))
    return tuple(out)


def enumerate_family(family: str, n: int) -> tuple:
    if family == "S":
        items = all_perms(n)
    elif family == "Y":
        items = all_trees(n)
    elif family == "M":
        items = all_bileveled(n)
    else:
        raise ValueError(f"unknown family {family!r}")
    return tuple(sorted(items, key=lambda x: sort_key(family, x)))


# ---------------------------------------------------------------------------
# splitting


def _split_tree_once(t: tuple, i: int):
    """Sever ``t`` along the path from leaf ``i`` to the root."""
    if not t:
        return LEAF, LEAF
    left, right = t
    nl = nodes(left)
    if i <= nl:
        l0, l1 = _split_tree_once(left, i)
        return l0, (l1, right)
    r0, r1 = _split_tree_once(right, i - nl - 1)
    return (left, r0), r1


def split_tree_at(t: tuple, leaf_multiset: Sequence[int]) -> tuple:
    """Split ``t`` along a weakly increasing sequence of leaf indices."""
    parts = []
    offset = 0
    rest = t
    for i in leaf_multiset:
        first, rest = _split_tree_once(rest, i - offset)
        parts.append(first)
        offset = i
    parts.append(rest)
    return tuple(parts)


def tree_splittings(t: tuple, m: int) -> Iterator[tuple]:
    n = nodes(t)
    for choice in combinations_with_replacement(range(n + 1), m):
        yield split_tree_at(t, choice)


def perm_splittings(w: tuple, m: int) -> Iterator[tuple]:
    n = len(w)
    for choice in combinations_with_replacement(range(n + 1), m):
        parts = []
        prev = 0
        for i in choice:
            parts.append(w[prev:i])
            prev = i
        parts.append(w[prev:])
        yield tuple(parts)


def bileveled_splittings(b: BiLeveledTree, m: int) -> Iterator[DecoratedForest]:
    """Split a bi-leveled tree; parts carry their inherited node marks."""
    n = nodes(b.tree)
    for choice in combinations_with_replacement(range(n + 1), m):
        trees = split_tree_at(b.tree, choice)
        bounds = list(choice) + [n]
        parts = []
        prev = 0
        for tree_part, bound in zip(trees, bounds):
            marks = frozenset(p - prev for p in b.ideal if prev < p <= bound)
            parts.append((tree_part, marks))
            prev = bound
        yield tuple(parts)


def splittings(x, m: int):
    """All splittings of ``x`` along a multiset of ``m`` leaves."""
    if isinstance(x, BiLeveledTree):
        return list(bileveled_splittings(x, m))
    if x and isinstance(x[0], int):
        return list(perm_splittings(x, m))
    return list(tree_splittings(x, m))


def restricted_splittings(b: BiLeveledTree, m: int) -> Iterator[DecoratedForest]:
    """Splittings of ``b`` whose first part is nonempty."""
    if not b.tree:
        raise ValueError("restricted splittings need a nonempty tree")
    for forest in bileveled_splittings(b, m):
        if forest[0][0]:
            yield forest


# ---------------------------------------------------------------------------
# grafting


def graft_trees(forest: Sequence[tuple], base: tuple) -> tuple:
    """Attach the root of ``forest[i]`` to the ``i``-th leaf of ``base``."""
    if len(forest) != leaves(base):
        raise ValueError("forest size must equal number of leaves of base")
    if not base:
        return forest[0]
    left, right = base
    k = leaves(left)
    return (graft_trees(forest[:k], left), graft_trees(forest[k:], right))


def graft_perms(forest: Sequence[tuple], base: tuple) -> tuple:
    """Graft labeled parts onto a base whose labels sit above the forest's.

    Relative orders inside each part and inside the base are kept; the base's
    labels become the largest.
    """
    if len(forest) != len(base) + 1:
        raise ValueError("forest size must equal number of leaves of base")
    flat = [a for part in forest for a in part]
    ranks = {a: i + 1 for i, a in enumerate(sorted(flat))}
    n = len(flat)
    out = []
    for j, part in enumerate(forest):
        if j > 0:
            out.append(n + base[j - 1])
        out.extend(ranks[a] for a in part)
    return tuple(out)


def _grafted_positions(part_sizes: Sequence[int]):
    """In-order positions of base nodes and of each part's nodes.

    For a grafting of parts ``(f0..fm)`` onto an ``m``-node base, returns
    ``(base_pos, part_offsets)`` where ``base_pos[j]`` is the final position
    of base node ``j+1`` and part ``j``'s node ``k`` lands at
    ``part_offsets[j] + k``.
    """
    base_pos = []
    part_offsets = []
    total = 0
    for j, size in enumerate(part_sizes):
        part_offsets.append(total + j)
        total += size
    for j in range(1, len(part_sizes)):
        base_pos.append(part_offsets[j])
    return base_pos, part_offsets


def graft_bileveled(forest: DecoratedForest, base: BiLeveledTree) -> BiLeveledTree:
    """Graft a decorated forest onto a bi-leveled base.

    The resulting marked set is the base's when the first part is empty,
    and otherwise the forest's marks together with all base nodes.
    """
    part_trees = [p[0] for p in forest]
    tree = graft_trees(part_trees, base.tree)
    base_pos, part_offsets = _grafted_positions([nodes(p) for p in part_trees])
    if not forest[0][0]:
        ideal = frozenset(base_pos[v - 1] for v in base.ideal)
    else:
        ideal = frozenset(base_pos) | frozenset(
            part_offsets[j] + k for j, (pt, marks) in enumerate(forest) for k in marks
        )
    return BiLeveledTree(tree, ideal)


def graft_forest_on_tree(forest: DecoratedForest, base: tuple) -> BiLeveledTree:
    """Graft a decorated forest onto a plain tree.

    The marked set always absorbs the base's nodes (used by the module
    action on the positively graded part).
    """
    part_trees = [p[0] for p in forest]
    tree = graft_trees(part_trees, base)
    base_pos, part_offsets = _grafted_positions([nodes(p) for p in part_trees])
    ideal = frozenset(base_pos) | frozenset(
        part_offsets[j] + k for j, (pt, marks) in enumerate(forest) for k in marks
    )
    return BiLeveledTree(tree, ideal)


def graft(forest, base):
    """Graft a forest onto a base tree, permutation, or bi-leveled tree."""
    if isinstance(base, BiLeveledTree):
        return graft_bileveled(forest, base)
    if base and isinstance(base[0], int):
        return graft_perms(forest, base)
    if forest and isinstance(forest[0], tuple) and len(forest[0]) == 2 \
            and isinstance(forest[0][1], frozenset):
        return graft_forest_on_tree(forest, base)
    if base == LEAF and forest and forest[0] and isinstance(forest[0][0], int):
        return graft_perms(forest, base)
    return graft_trees(forest, base)


# ---------------------------------------------------------------------------
# the two representations of a bi-leveled tree


def _prune_marked(t: tuple, ideal: frozenset, offset: int):
    """Induced subtree on the marked nodes plus the hanging pieces.

    ``t``'s root must be marked.  Returns the induced tree and the list of
    unmarked subtrees hanging at its leaves, left to right.
    """
    left, right = t
    root = offset + nodes(left) + 1
    if left and (offset + nodes(left[0]) + 1) in ideal:
        lt, lparts = _prune_marked(left, ideal, offset)
    else:
        lt, lparts = LEAF, [left]
    if right and (root + nodes(right[0]) + 1) in ideal:
        rt, rparts = _prune_marked(right, ideal, root)
    else:
        rt, rparts = LEAF, [right]
    return (lt, rt), lparts + rparts


def _drop_leftmost_node(t: tuple) -> tuple:
    left, right = t
    if not left:
        if right:
            raise ValueError("leftmost node has a child in the upper set")
        return LEAF
    return (_drop_leftmost_node(left), right)


def _add_leftmost_node(t: tuple) -> tuple:
    if not t:
        return (LEAF, LEAF)
    return (_add_leftmost_node(t[0]), t[1])


def forest_form(b: BiLeveledTree):
    """Rewrite ``b`` as ``(t0, (t1, ..., tr))``.

    ``t0`` is the upper part with its (forced) leftmost node removed; the
    forest collects the lower pieces hanging at the remaining ``r`` leaves
    of the upper part, where ``r`` is the size of the upper set.
    """
    if not b.tree:
        raise ValueError("the empty tree has no forest form")
    upper, hanging = _prune_marked(b.tree, b.ideal, 0)
    if hanging[0]:
        raise ValueError("inadmissible upper set: piece under the leftmost node")
    return _drop_leftmost_node(upper), tuple(hanging[1:])


def ideal_form(t0: tuple, forest: Sequence[tuple]) -> BiLeveledTree:
    """Inverse of :func:`forest_form`."""
    if len(forest) != nodes(t0) + 1:
        raise ValueError("forest size must be one more than the upper tree size")
    upper = _add_leftmost_node(t0)
    tree = graft_trees((LEAF,) + tuple(forest), upper)
    sizes = [0] + [nodes(f) for f in forest]
    base_pos, _ = _grafted_positions(sizes)
    return BiLeveledTree(tree, frozenset(base_pos))


def tree_backslash_bileveled(b: BiLeveledTree, s: tuple) -> BiLeveledTree:
    """Graft ``s`` onto the rightmost leaf of ``b``, keeping ``b``'s upper set."""
    if not b.tree:
        raise ValueError("left factor must be nonempty")
    return BiLeveledTree(backslash(b.tree, s), b.ideal)


def fold_backslash(parts: Sequence[tuple]) -> tuple:
    """Refold trees or permutations under ``backslash``."""
    if not parts:
        return LEAF
    if isinstance(parts[0], tuple) and parts[0] and isinstance(parts[0][0], int):
        # permutations: labels of earlier factors sit above later ones
        def pbackslash(u, v):
            k = len(v)
            return tuple(a + k for a in u) + tuple(v)
        return reduce(pbackslash, parts)
    return reduce(backslash, parts)
