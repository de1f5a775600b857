"""Immutable binary search trees over integer keys, plus the structural
primitives everything else is built from: construction, traversal, rotation,
path encodings, root-subtree extraction and substitution, and exhaustive
shape enumeration.

Trees are values: every operation returns a new tree and never mutates its
input.  Two trees are equal when they have the same keys in the same
arrangement.  The empty tree is ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional


class KeyAbsentError(KeyError):
    """A named key is not present in the tree."""


class DuplicateKeyError(ValueError):
    """Insertion of a key that is already present."""


class RotationAtRootError(ValueError):
    """Rotation at the root is undefined."""


class DisconnectedSubtreeError(ValueError):
    """A key set does not induce a connected subtree of the root."""


@dataclass(frozen=True, eq=False)
class Node:
    """One node of an immutable binary search tree."""

    key: int
    left: Optional["Node"] = None
    right: Optional["Node"] = None

    # Structural equality and hashing are iterative: spines can be tens of
    # thousands of nodes deep, far past the recursion limit.
    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Node):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a is None or b is None or a.key != b.key:
                return False
            stack.append((a.left, b.left))
            stack.append((a.right, b.right))
        return True

    def __hash__(self) -> int:
        return hash(shape_key(self))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Node({shape_print(self)})"


Tree = Optional[Node]


def size(t: Tree) -> int:
    n = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            n += 1
            stack.append(node.left)
            stack.append(node.right)
    return n


def tree_keys(t: Tree) -> frozenset[int]:
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            out.append(node.key)
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(out)


def contains(t: Tree, key: int) -> bool:
    while t is not None:
        if key == t.key:
            return True
        t = t.left if key < t.key else t.right
    return False


def find(t: Tree, key: int) -> Node:
    while t is not None:
        if key == t.key:
            return t
        t = t.left if key < t.key else t.right
    raise KeyAbsentError(key)


def path_nodes(t: Tree, key: int) -> list[Node]:
    """Access path from the root to ``key``, inclusive."""
    path = []
    node = t
    while node is not None:
        path.append(node)
        if key == node.key:
            return path
        node = node.left if key < node.key else node.right
    raise KeyAbsentError(key)


def depth(t: Tree, key: int) -> int:
    return len(path_nodes(t, key)) - 1


def path_encoding(t: Tree, key: int) -> str:
    """Binary encoding of the access path: 0 = left, 1 = right, empty = root."""
    bits = []
    node = t
    while node is not None:
        if key == node.key:
            return "".join(bits)
        if key < node.key:
            bits.append("0")
            node = node.left
        else:
            bits.append("1")
            node = node.right
    raise KeyAbsentError(key)


def decode_path(t: Tree, encoding: str) -> int:
    """Follow an encoding from the root; the landing node must exist."""
    node = t
    for bit in encoding:
        if node is None:
            break
        node = node.left if bit == "0" else node.right
    if node is None:
        raise KeyAbsentError(f"encoding {encoding!r} leaves the tree")
    return node.key


def preorder(t: Tree) -> tuple[int, ...]:
    out: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            out.append(node.key)
            stack.append(node.right)
            stack.append(node.left)
    return tuple(out)


def postorder(t: Tree) -> tuple[int, ...]:
    # Reverse of (key, right, left) preorder.
    out: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            out.append(node.key)
            stack.append(node.left)
            stack.append(node.right)
    out.reverse()
    return tuple(out)


def shape_key(t: Tree) -> tuple[int, ...]:
    """Canonical dictionary key: the preorder uniquely identifies the
    arrangement among trees on the same key set."""
    return preorder(t)


def insert_leaf(t: Tree, key: int) -> Node:
    """Standard leaf insertion; rebuilds the access path."""
    path = []
    node = t
    while node is not None:
        if key == node.key:
            raise DuplicateKeyError(key)
        path.append(node)
        node = node.left if key < node.key else node.right
    new: Node = Node(key)
    for parent in reversed(path):
        if key < parent.key:
            new = Node(parent.key, new, parent.right)
        else:
            new = Node(parent.key, parent.left, new)
    return new


def bst_from_sequence(keys: Iterable[int]) -> Tree:
    """Insertion tree: insert keys in order of first appearance.

    Built as the cartesian tree on (key, first-appearance index) with the
    min-heap order on indices, which is the same tree leaf insertion builds,
    in O(n log n) instead of O(n^2) for adversarial orders.
    """
    first: dict[int, int] = {}
    for i, k in enumerate(keys):
        if k not in first:
            first[k] = i
    items = sorted(first.items())  # ascending by key
    root: Tree = None
    # Stack holds the right spine of the tree under construction, paired
    # with each node's current left child.
    spine: list[tuple[int, int, Tree]] = []  # (key, index, left subtree)

    def collapse(upto: int) -> Tree:
        sub: Tree = None
        while spine and spine[-1][1] > upto:
            k, _, left = spine.pop()
            sub = Node(k, left, sub)
        return sub

    for k, idx in items:
        left = collapse(idx)
        spine.append((k, idx, left))
    root = collapse(-1)
    return root


def rotate(t: Tree, key: int) -> Node:
    """Single rotation at ``key``; its parent must exist."""
    if t is None:
        raise KeyAbsentError(key)
    path = path_nodes(t, key)
    if len(path) == 1:
        raise RotationAtRootError(f"rotation at the root key {key} is undefined")
    x = path[-1]
    y = path[-2]
    if y.left is x:
        # x rises, y becomes its right child.
        new = Node(x.key, x.left, Node(y.key, x.right, y.right))
    else:
        new = Node(x.key, Node(y.key, y.left, x.left), x.right)
    for parent in reversed(path[:-2]):
        if new.key < parent.key:
            new = Node(parent.key, new, parent.right)
        else:
            new = Node(parent.key, parent.left, new)
    return new


def parent_key(t: Tree, key: int) -> Optional[int]:
    path = path_nodes(t, key)
    return path[-2].key if len(path) >= 2 else None


def root_subtree(t: Tree, keys: Iterable[int]) -> Node:
    """The induced subtree on ``keys``, which must form a connected subtree
    containing the root."""
    want = frozenset(keys)
    if t is None or not want:
        raise DisconnectedSubtreeError("empty tree or key set")
    if t.key not in want:
        raise DisconnectedSubtreeError(f"root {t.key} not in key set")
    missing = set(want) - tree_keys(t)
    if missing:
        raise KeyAbsentError(sorted(missing))

    def build(node: Tree) -> Tree:
        if node is None or node.key not in want:
            return None
        return Node(node.key, build(node.left), build(node.right))

    # Recursion depth is bounded by |keys|, which callers keep moderate.
    q = build(t)
    if size(q) != len(want):
        raise DisconnectedSubtreeError(
            f"keys {sorted(want)} are not connected through the root"
        )
    return q


def hanging_subtrees(t: Tree, keys: frozenset[int]) -> list[Tree]:
    """Subtrees of ``t`` hanging off the root subtree induced by ``keys``,
    in symmetric (left-to-right) order."""
    out: list[Tree] = []

    def walk(node: Tree) -> None:
        if node is None:
            return
        if node.key in keys:
            walk(node.left)
            walk(node.right)
        else:
            out.append(node)

    walk(t)
    return out


def substitute(t: Tree, q_prime: Tree) -> Node:
    """Replace the root subtree on ``q_prime``'s keys with ``q_prime``,
    re-attaching hanging subtrees in the slots forced by symmetric order."""
    keys = tree_keys(q_prime)
    root_subtree(t, keys)  # validates connectivity
    hangers = {}
    for sub in hanging_subtrees(t, keys):
        hangers[_slot_interval(keys, sub.key)] = sub

    def rebuild(node: Tree, lo: float, hi: float) -> Tree:
        if node is None:
            return hangers.get((lo, hi))
        return Node(
            node.key,
            rebuild(node.left, lo, node.key),
            rebuild(node.right, node.key, hi),
        )

    out = rebuild(q_prime, float("-inf"), float("inf"))
    assert out is not None
    return out


def _slot_interval(keys: frozenset[int], probe: int) -> tuple[float, float]:
    lo: float = float("-inf")
    hi: float = float("inf")
    for k in keys:
        if k < probe and k > lo:
            lo = k
        elif k > probe and k < hi:
            hi = k
    return (lo, hi)


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


@lru_cache(maxsize=None)
def _shapes_range(lo: int, hi: int) -> tuple[Tree, ...]:
    if lo > hi:
        return (None,)
    out: list[Tree] = []
    for k in range(lo, hi + 1):
        for left in _shapes_range(lo, k - 1):
            for right in _shapes_range(k + 1, hi):
                out.append(Node(k, left, right))
    return tuple(out)


def all_shapes(n: int) -> tuple[Tree, ...]:
    """Every binary search tree on keys 1..n, exactly once."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _shapes_range(1, n)


@lru_cache(maxsize=None)
def shapes_on_keys(keys: tuple[int, ...]) -> tuple[Tree, ...]:
    """Every arrangement of the given (sorted) key tuple."""
    if not keys:
        return (None,)
    out: list[Tree] = []
    for i, k in enumerate(keys):
        for left in shapes_on_keys(keys[:i]):
            for right in shapes_on_keys(keys[i + 1:]):
                out.append(Node(k, left, right))
    return tuple(out)


def left_spine_tree(keys: Iterable[int]) -> Tree:
    """Tree whose every node is on the left spine (root holds the maximum)."""
    t: Tree = None
    for k in sorted(keys):
        t = Node(k, t, None)
    return t


def right_spine_tree(keys: Iterable[int]) -> Tree:
    t: Tree = None
    for k in sorted(keys, reverse=True):
        t = Node(k, None, t)
    return t


def is_left_spine(t: Tree) -> bool:
    while t is not None:
        if t.right is not None:
            return False
        t = t.left
    return True


def is_right_spine(t: Tree) -> bool:
    while t is not None:
        if t.left is not None:
            return False
        t = t.right
    return True


def shape_print(t: Tree) -> str:
    """Parenthesized print form: ``(key left right)`` with ``.`` for absent."""
    if t is None:
        return "."
    parts: list[str] = []
    stack: list[object] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item is None:
            parts.append(".")
        else:
            parts.append(f"({item.key}")
            stack.append(")")
            stack.append(item.right)
            stack.append(" ")
            stack.append(item.left)
            stack.append(" ")
    return "".join(parts)


def parse_shape(text: str) -> Tree:
    """Inverse of :func:`shape_print`."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        tok = tokens[pos]
        if tok == ".":
            pos += 1
            return None
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r} in shape text")
        pos += 1
        key = int(tokens[pos])
        pos += 1
        left = parse()
        right = parse()
        if tokens[pos] != ")":
            raise ValueError("unbalanced parentheses in shape text")
        pos += 1
        return Node(key, left, right)

    out = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in shape text")
    return out


def canonical_relabel(t: Tree) -> tuple[Tree, dict[int, int]]:
    """Relabel keys to 1..n preserving symmetric order.  Returns the new tree
    and the map from original keys to canonical ones."""
    ordered = sorted(tree_keys(t))
    to_canonical = {k: i + 1 for i, k in enumerate(ordered)}

    def rebuild(node: Tree) -> Tree:
        if node is None:
            return None
        return Node(to_canonical[node.key], rebuild(node.left), rebuild(node.right))

    return rebuild(t), to_canonical


def relabel(t: Tree, mapping: dict[int, int]) -> Tree:
    def rebuild(node: Tree) -> Tree:
        if node is None:
            return None
        return Node(mapping[node.key], rebuild(node.left), rebuild(node.right))

    return rebuild(t)


def child_pointer_diff(a: Tree, b: Tree) -> int:
    """Number of child pointers that differ between two trees on the same
    keys, counting the root handle as one pointer."""

    def pointers(t: Tree) -> dict[tuple[int, str], Optional[int]]:
        out: dict[tuple[int, str], Optional[int]] = {}
        stack = [t]
        while stack:
            node = stack.pop()
            if node is None:
                continue
            out[(node.key, "L")] = node.left.key if node.left else None
            out[(node.key, "R")] = node.right.key if node.right else None
            stack.append(node.left)
            stack.append(node.right)
        return out

    pa, pb = pointers(a), pointers(b)
    diff = sum(1 for slot in pa if pa[slot] != pb.get(slot))
    root_a = a.key if a else None
    root_b = b.key if b else None
    return diff + (1 if root_a != root_b else 0)
