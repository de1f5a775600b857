"""Self-adjusting algorithms as pure tree-to-tree functions: bottom-up Splay
with step classification, Move-to-Root, Top-Down Splay, insertion splaying,
and splay-based deque operations.

Each access returns the new tree together with an :class:`AccessRecord`
carrying the path encoding, splay-step classification, and the crossing /
bookkeeping split of its cost.

The three algorithms are path-based: the rearranged top of the tree is a
function of the access path's binary encoding alone, and subtrees hanging
off the path are re-attached wherever symmetric order forces them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .tree import (
    DuplicateKeyError,
    KeyAbsentError,
    Node,
    Tree,
    insert_leaf,
    path_nodes,
    rotate,
    size,
)


@dataclass(frozen=True)
class AccessRecord:
    """Bookkeeping for one access."""

    key: int
    encoding: str
    steps: tuple[str, ...]  # splay-step kinds, bottom-up (empty for MTR/TDS)
    cost: int  # depth + 1
    crossing: int  # crossing nodes on the access path (the level)
    bookkeeping: int  # cost - crossing


def crossing_count(encoding: str) -> int:
    """Number of crossing nodes on a path with the given encoding: both
    endpoints plus every direction alternation strictly between them."""
    d = len(encoding)
    if d == 0:
        return 1
    alternations = sum(
        1 for i in range(d - 1) if encoding[i] != encoding[i + 1]
    )
    return 2 + alternations


def classify_steps(encoding: str) -> tuple[str, ...]:
    """Splay-step kinds for a path, in bottom-up execution order."""
    steps = []
    i = len(encoding)
    while i >= 2:
        steps.append("zig-zag" if encoding[i - 1] != encoding[i - 2] else "zig-zig")
        i -= 2
    if i == 1:
        steps.append("zig")
    return tuple(steps)


def _record(key: int, encoding: str, steps: tuple[str, ...]) -> AccessRecord:
    cost = len(encoding) + 1
    crossing = crossing_count(encoding)
    return AccessRecord(key, encoding, steps, cost, crossing, cost - crossing)


class _Mut:
    """Mutable shadow of a path node used while splaying; children are either
    other shadows or already-frozen immutable subtrees."""

    __slots__ = ("key", "left", "right", "parent")

    def __init__(self, key: int, left, right):
        self.key = key
        self.left = left
        self.right = right
        self.parent: Optional[_Mut] = None


def _freeze(node) -> Tree:
    if node is None or isinstance(node, Node):
        return node
    # Iterative post-order freeze; path arrangements stay shallow after a
    # splay but the pre-splay arms can be long.
    done: dict[int, Tree] = {}
    stack = [node]
    while stack:
        cur = stack[-1]
        if isinstance(cur, Node) or cur is None:
            stack.pop()
            continue
        left, right = cur.left, cur.right
        pending = []
        if isinstance(left, _Mut) and id(left) not in done:
            pending.append(left)
        if isinstance(right, _Mut) and id(right) not in done:
            pending.append(right)
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        lf = done[id(left)] if isinstance(left, _Mut) else left
        rf = done[id(right)] if isinstance(right, _Mut) else right
        done[id(cur)] = Node(cur.key, lf, rf)
    return done[id(node)]


def _rotate_up(x: _Mut) -> None:
    """Rotate the mutable shadow ``x`` above its parent."""
    y = x.parent
    g = y.parent
    if y.left is x:
        y.left = x.right
        if isinstance(y.left, _Mut):
            y.left.parent = y
        x.right = y
    else:
        y.right = x.left
        if isinstance(y.right, _Mut):
            y.right.parent = y
        x.left = y
    y.parent = x
    x.parent = g
    if g is not None:
        if g.left is y:
            g.left = x
        else:
            g.right = x


def splay(t: Tree, key: int) -> tuple[Node, AccessRecord]:
    """Bottom-up splay: zig-zag rotates twice at x, zig-zig rotates at the
    parent first, a lone zig finishes the access."""
    path = path_nodes(t, key)
    encoding = "".join(
        "0" if path[i + 1] is path[i].left else "1" for i in range(len(path) - 1)
    )
    if len(path) == 1:
        return path[0], _record(key, "", ())

    shadows = [_Mut(p.key, p.left, p.right) for p in path]
    for i in range(len(shadows) - 1):
        if encoding[i] == "0":
            shadows[i].left = shadows[i + 1]
        else:
            shadows[i].right = shadows[i + 1]
        shadows[i + 1].parent = shadows[i]

    x = shadows[-1]
    while x.parent is not None:
        y = x.parent
        g = y.parent
        if g is None:
            _rotate_up(x)  # zig
        elif (g.left is y) == (y.left is x):
            _rotate_up(y)  # zig-zig: parent first
            _rotate_up(x)
        else:
            _rotate_up(x)  # zig-zag: twice at x
            _rotate_up(x)
    return _freeze(x), _record(key, encoding, classify_steps(encoding))


def move_to_root(t: Tree, key: int) -> tuple[Node, AccessRecord]:
    """Rotate the searched node all the way to the root.

    Equivalent unzip view: path nodes smaller than the key form the right
    spine of its new left subtree in increasing order, larger ones the left
    spine of its new right subtree in decreasing order; every path node keeps
    its off-path subtree on the outside.
    """
    path = path_nodes(t, key)
    encoding = "".join(
        "0" if path[i + 1] is path[i].left else "1" for i in range(len(path) - 1)
    )
    x = path[-1]
    left_arm: Tree = x.left
    right_arm: Tree = x.right
    for node in reversed(path[:-1]):
        if node.key < key:
            left_arm = Node(node.key, node.left, left_arm)
        else:
            right_arm = Node(node.key, right_arm, node.right)
    return Node(key, left_arm, right_arm), _record(key, encoding, ())


def splay_by_encoding(t: Tree, key: int) -> Node:
    """Reference splay driven purely by the path encoding: first Move-to-Root,
    then for original path positions v1,v2,... above the accessed node rotate
    every same-side pair (v_{2i+1}, v_{2i+2}).  Used to cross-check the
    rotation-level implementation.
    """
    path = path_nodes(t, key)
    out, _ = move_to_root(t, key)
    ascending = [p.key for p in reversed(path)]  # v0 = key, ..., root
    pairs = [
        (ascending[i], ascending[i + 1])
        for i in range(1, len(ascending) - 1, 2)
    ]
    # The pair element nearer the accessed node absorbs the other.
    return _arm_pair_rotations(out, key, pairs, rotate_first=True)


def top_down_splay(t: Tree, key: int) -> tuple[Node, AccessRecord]:
    """Top-Down Splay in the global view: Move-to-Root, then rotate adjacent
    same-side path pairs taken from the root downward.  Identical to the
    bottom-up variant on access paths with an odd number of nodes, different
    on even paths longer than two.
    """
    path = path_nodes(t, key)
    encoding = "".join(
        "0" if path[i + 1] is path[i].left else "1" for i in range(len(path) - 1)
    )
    out, _ = move_to_root(t, key)
    descending = [p.key for p in path]  # p0 = root, ..., key
    pairs = [
        (descending[i], descending[i + 1])
        for i in range(0, len(descending) - 1, 2)
    ]
    out = _arm_pair_rotations(out, key, pairs, rotate_first=False)
    return out, _record(key, encoding, ())


def _arm_pair_rotations(
    t: Node, key: int, pairs: list[tuple[int, int]], rotate_first: bool
) -> Node:
    """Rotate each same-side path pair on the arms of a Move-to-Root result.

    The rotated element (first or second of the pair, fixed by the caller)
    sits below its partner on the arm; the rotation removes the partner from
    the arm and makes it the rotated node's child.  Pairs touching the
    accessed key are skipped.
    """
    for a, b in pairs:
        if a == key or b == key:
            continue
        if (a < key) == (b < key):
            t = rotate(t, a if rotate_first else b)
    return t


def insertion_splay(t: Tree, key: int) -> Node:
    """Insert a key at a leaf, then splay the new node to the root."""
    grown = insert_leaf(t, key)
    out, _ = splay(grown, key)
    return out


AccessFn = Callable[[Tree, int], tuple[Node, AccessRecord]]

ALGORITHMS: dict[str, AccessFn] = {
    "splay": splay,
    "mtr": move_to_root,
    "tds": top_down_splay,
}


def run_accesses(
    t: Tree, keys: Iterable[int], algo: str = "splay"
) -> tuple[Tree, list[AccessRecord]]:
    """Apply one algorithm along a request sequence; returns the final tree
    and the per-access records."""
    fn = ALGORITHMS[algo]
    records = []
    for k in keys:
        t, rec = fn(t, k)
        records.append(rec)
    return t, records


def access_cost(t: Tree, keys: Iterable[int], algo: str = "splay") -> int:
    fn = ALGORITHMS[algo]
    total = 0
    for k in keys:
        t, rec = fn(t, k)
        total += rec.cost
    return total


# ---------------------------------------------------------------------------
# Deque operations via splaying.


class EmptyDequeError(ValueError):
    """Delete requested on an empty tree."""


def deque_run(t0: Tree, ops: Iterable[tuple[str, Optional[int]]]) -> tuple[Tree, int]:
    """Run ``push k`` / ``inject k`` / ``pop`` / ``eject`` operations.

    Push and inject are insertion splays of a new minimum or maximum.  Pop
    splays the successor of the minimum and detaches the minimum node (and
    symmetrically for eject); a tree of one node is splayed and dropped.
    Returns the final tree and the summed splay costs.
    """
    t = t0
    total = 0
    for op, arg in ops:
        if op in ("push", "inject"):
            assert arg is not None
            keys = sorted(k for k in _keys_iter(t))
            if keys:
                if op == "push" and arg >= keys[0]:
                    raise ValueError(f"push key {arg} is not a new minimum")
                if op == "inject" and arg <= keys[-1]:
                    raise ValueError(f"inject key {arg} is not a new maximum")
            grown = insert_leaf(t, arg)
            t, rec = splay(grown, arg)
            total += rec.cost
        elif op in ("pop", "eject"):
            if t is None:
                raise EmptyDequeError(op)
            if size(t) == 1:
                total += 1  # splaying the extremum at the root
                t = None
                continue
            if op == "pop":
                low = _min_key(t)
                succ = _successor(t, low)
                t, rec = splay(t, succ)
                total += rec.cost
                t = Node(t.key, None, t.right)  # left subtree is exactly the minimum
            else:
                high = _max_key(t)
                pred = _predecessor(t, high)
                t, rec = splay(t, pred)
                total += rec.cost
                t = Node(t.key, t.left, None)
        else:
            raise ValueError(f"unknown deque op {op!r}")
    return t, total


def _keys_iter(t: Tree):
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            yield node.key
            stack.append(node.left)
            stack.append(node.right)


def _min_key(t: Node) -> int:
    while t.left is not None:
        t = t.left
    return t.key


def _max_key(t: Node) -> int:
    while t.right is not None:
        t = t.right
    return t.key


def _successor(t: Node, key: int) -> int:
    succ = None
    node: Tree = t
    while node is not None:
        if node.key > key:
            succ = node.key
            node = node.left
        else:
            node = node.right
    if succ is None:
        raise KeyAbsentError(f"{key} has no successor")
    return succ


def _predecessor(t: Node, key: int) -> int:
    pred = None
    node: Tree = t
    while node is not None:
        if node.key < key:
            pred = node.key
            node = node.right
        else:
            node = node.left
    if pred is None:
        raise KeyAbsentError(f"{key} has no predecessor")
    return pred


def parse_deque_script(text: str) -> list[tuple[str, Optional[int]]]:
    """One op per line: ``push k`` | ``inject k`` | ``pop`` | ``eject``."""
    ops: list[tuple[str, Optional[int]]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] in ("push", "inject"):
            if len(parts) != 2:
                raise ValueError(f"bad deque op line: {line!r}")
            ops.append((parts[0], int(parts[1])))
        elif parts[0] in ("pop", "eject") and len(parts) == 1:
            ops.append((parts[0], None))
        else:
            raise ValueError(f"bad deque op line: {line!r}")
    return ops
