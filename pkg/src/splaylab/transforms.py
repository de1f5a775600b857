"""Transformation machinery: transition digraphs, restricted-rotation
flattening, splay-realized tree transformations, simulation embeddings,
augmented repetitions, universal and simultaneous transforms, and the
top-down-splay embedding.

A restricted rotation rotates a node whose parent is either the root or the
root's left child.  Flattening a tree into the right spine takes at most 2n
restricted rotations, so any tree maps to any other in at most 4n; a single
restricted rotation is realized by at most five splays of keys inside a
four-node window at the top of the tree, each of cost at most four.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .algorithms import ALGORITHMS, move_to_root, splay, top_down_splay
from .model import Execution, Instance, smallest_root_subtree, validate
from .tree import (
    Node,
    Tree,
    all_shapes,
    canonical_relabel,
    contains,
    left_spine_tree,
    path_nodes,
    relabel,
    root_subtree,
    rotate,
    shape_key,
    shape_print,
    size,
    tree_keys,
)


class TransformUnreachableError(ValueError):
    """No request sequence drives the algorithm between these shapes."""


# ---------------------------------------------------------------------------
# Transition digraphs.

MAX_DIGRAPH_N = 8


@dataclass(frozen=True)
class TransitionDigraph:
    n: int
    algo: str
    vertices: tuple[Node, ...]
    index: dict[tuple[int, ...], int]
    arcs: tuple[tuple[int, ...], ...]  # arcs[v][key-1] = target vertex


def build_digraph(n: int, algo: str = "splay") -> TransitionDigraph:
    if not 1 <= n <= MAX_DIGRAPH_N:
        raise ValueError(f"digraph size {n} outside 1..{MAX_DIGRAPH_N}")
    fn = ALGORITHMS[algo]
    vertices = tuple(all_shapes(n))
    index = {shape_key(v): i for i, v in enumerate(vertices)}
    arcs = []
    for v in vertices:
        row = []
        for key in range(1, n + 1):
            after, _ = fn(v, key)
            row.append(index[shape_key(after)])
        arcs.append(tuple(row))
    return TransitionDigraph(n, algo, vertices, index, tuple(arcs))


def strongly_connected(g: TransitionDigraph) -> bool:
    order: list[int] = []
    seen = [False] * len(g.vertices)
    for start in range(len(g.vertices)):
        if seen[start]:
            continue
        stack = [(start, 0)]
        seen[start] = True
        while stack:
            v, i = stack.pop()
            if i < len(g.arcs[v]):
                stack.append((v, i + 1))
                w = g.arcs[v][i]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                order.append(v)
    rev: list[list[int]] = [[] for _ in g.vertices]
    for v, row in enumerate(g.arcs):
        for w in row:
            rev[w].append(v)
    seen = [False] * len(g.vertices)
    components = 0
    for v in reversed(order):
        if seen[v]:
            continue
        components += 1
        stack2 = [v]
        seen[v] = True
        while stack2:
            u = stack2.pop()
            for w in rev[u]:
                if not seen[w]:
                    seen[w] = True
                    stack2.append(w)
    return components == 1


def _bfs(g: TransitionDigraph, src: int) -> tuple[list[int], list[Optional[tuple[int, int]]]]:
    dist = [-1] * len(g.vertices)
    back: list[Optional[tuple[int, int]]] = [None] * len(g.vertices)
    dist[src] = 0
    queue = [src]
    for v in queue:
        for key_minus, w in enumerate(g.arcs[v]):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                back[w] = (v, key_minus + 1)
                queue.append(w)
    return dist, back


def diameter(g: TransitionDigraph) -> int:
    worst = 0
    for src in range(len(g.vertices)):
        dist, _ = _bfs(g, src)
        if min(dist) < 0:
            raise TransformUnreachableError(
                f"digraph for {g.algo} on {g.n} keys is not strongly connected"
            )
        worst = max(worst, max(dist))
    return worst


def eccentricities(g: TransitionDigraph) -> list[int]:
    out = []
    for src in range(len(g.vertices)):
        dist, _ = _bfs(g, src)
        out.append(max(dist) if min(dist) >= 0 else -1)
    return out


def shortest_path(g: TransitionDigraph, s: Node, t: Node) -> tuple[int, ...]:
    """Request keys realizing the cheapest transition from shape s to t."""
    si = g.index[shape_key(s)]
    ti = g.index[shape_key(t)]
    if si == ti:
        return ()
    dist, back = _bfs(g, si)
    if dist[ti] < 0:
        raise TransformUnreachableError(
            f"{shape_print(t)} unreachable from {shape_print(s)} under {g.algo}"
        )
    keys: list[int] = []
    cur = ti
    while cur != si:
        prev, key = back[cur]  # type: ignore[misc]
        keys.append(key)
        cur = prev
    keys.reverse()
    return tuple(keys)


# ---------------------------------------------------------------------------
# Restricted rotations and flattening.


def is_restricted_rotation(t: Node, key: int) -> bool:
    """True when the key's parent is the root or the root's left child."""
    path = path_nodes(t, key)
    if len(path) == 2:
        return True
    return len(path) == 3 and path[1] is path[0].left


def flatten_restricted(t: Node) -> list[tuple[int, int]]:
    """Restricted rotations (key, parent key) combing ``t`` into the right
    spine: lift the maximum to the root, then repeatedly raise the left
    subtree's maximum to the root's left child and push the root onto the
    finished chain.  At most 2n rotations: every key is push-rotated at most
    once, and a key is lift-rotated only while it is a right child, which
    stops being true after its first lift.
    """
    from .tree import is_right_spine

    if is_right_spine(t):
        return []
    rots: list[tuple[int, int]] = []
    while t.right is not None:
        rots.append((t.right.key, t.key))
        t = rotate(t, t.right.key)
    while t.left is not None:
        left = t.left
        while left.right is not None:
            rots.append((left.right.key, left.key))
            t = rotate(t, left.right.key)
            left = t.left
        rots.append((left.key, t.key))
        t = rotate(t, left.key)
    return rots


def restricted_rotation_script(source: Node, target: Node) -> list[int]:
    """Keys of restricted rotations mapping ``source`` to ``target`` through
    the flat form; inverses of the target's flattening run in reverse,
    rotating at the recorded parents."""
    if tree_keys(source) != tree_keys(target):
        raise ValueError("transforms require identical key sets")
    forward = [k for k, _ in flatten_restricted(source)]
    backward = [p for _, p in reversed(flatten_restricted(target))]
    return forward + backward


# ---------------------------------------------------------------------------
# Realizing restricted rotations with splays of a small top window.


@lru_cache(maxsize=1)
def _g4_paths() -> dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]]:
    g = build_digraph(4, "splay")
    table: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]] = {}
    for s in g.vertices:
        for t in g.vertices:
            table[(shape_key(s), shape_key(t))] = shortest_path(g, s, t)
    return table


def _window_keys(t: Node, key: int, target_size: int = 4) -> tuple[int, ...]:
    """Topmost window of ``target_size`` nodes containing the rotation edge,
    ties broken toward the root's left spine."""
    selected = {n.key for n in path_nodes(t, key)}
    left_spine = set()
    node: Tree = t
    while node is not None:
        left_spine.add(node.key)
        node = node.left
    depths = {t.key: 0}
    while len(selected) < min(target_size, size(t)):
        candidates = []
        stack = [(t, 0)]
        while stack:
            node, d = stack.pop()
            if node.key in selected:
                for child in (node.left, node.right):
                    if child is not None:
                        if child.key in selected:
                            stack.append((child, d + 1))
                        else:
                            candidates.append(
                                (d + 1, 0 if child.key in left_spine else 1, child.key)
                            )
        candidates.sort()
        selected.add(candidates[0][2])
    return tuple(sorted(selected))


def realize_restricted_rotation(t: Node, key: int) -> tuple[Node, tuple[int, ...], int]:
    """Splay keys inside a four-node top window to enact one restricted
    rotation; returns the new tree, the splayed keys, and the splay cost."""
    window_keys = _window_keys(t, key)
    window = root_subtree(t, window_keys)
    target = rotate(window, key)
    canon_window, mapping = canonical_relabel(window)
    canon_target = relabel(target, mapping)
    path = _g4_paths()[(shape_key(canon_window), shape_key(canon_target))]
    inverse = {v: k for k, v in mapping.items()}
    cost = 0
    for canon_key in path:
        real = inverse[canon_key]
        cost += len(path_nodes(t, real))
        t, _ = splay(t, real)
    return t, tuple(inverse[k] for k in path), cost


@dataclass(frozen=True)
class TransformPlan:
    source: Node
    target: Node
    algo: str
    keys: tuple[int, ...]
    cost: int  # measured cost of replaying the keys
    rotation_count: int  # restricted rotations realized (0 for small trees)

    @property
    def cost_bound(self) -> int:
        return 80 * size(self.source)


def replay(plan: TransformPlan) -> Node:
    fn = ALGORITHMS[plan.algo]
    t = plan.source
    for k in plan.keys:
        t, _ = fn(t, k)
    return t


def transform_sequence(source: Node, target: Node, algo: str = "splay") -> TransformPlan:
    """Request sequence inducing the algorithm to turn ``source`` into
    ``target``; identical trees map to the bare root key."""
    if tree_keys(source) != tree_keys(target):
        raise ValueError("transforms require identical key sets")
    n = size(source)
    if source == target:
        return TransformPlan(source, target, algo, (source.key,), 1, 0)
    if n < 4 or algo != "splay":
        g = build_digraph(n, algo)
        keys = shortest_path(g, source, target)
        cost = _replay_cost(source, keys, algo)
        return TransformPlan(source, target, algo, keys, cost, 0)
    script = restricted_rotation_script(source, target)
    t = source
    keys: list[int] = []
    cost = 0
    for rot in script:
        expect = rotate(t, rot)
        t, block, block_cost = realize_restricted_rotation(t, rot)
        assert t == expect, "window realization must enact exactly the rotation"
        keys.extend(block)
        cost += block_cost
    assert t == target
    return TransformPlan(source, target, "splay", tuple(keys), cost, len(script))


def _replay_cost(t: Node, keys: Iterable[int], algo: str) -> int:
    fn = ALGORITHMS[algo]
    cost = 0
    for k in keys:
        cost += len(path_nodes(t, k))
        t, _ = fn(t, k)
    return cost


# ---------------------------------------------------------------------------
# Simulation embedding for Splay.


def embedding_blocks(inst: Instance, e: Execution) -> list[tuple[int, ...]]:
    """Per-access key blocks of the simulation embedding.

    Trees of at most three keys are served directly by the requests
    themselves: each splay costs at most the tree size, which is within the
    constant budget, and no transformation bookkeeping is needed.  Otherwise
    an access whose transition keeps its subtree's arrangement costs one
    splay of the root; a transition of at most four keys is enacted by one
    shortest splay walk of a four-node window; larger transitions go through
    restricted rotations.
    """
    trace = validate(inst, e)
    if inst.n <= 3:
        return [(x,) for x in inst.requests]
    blocks: list[tuple[int, ...]] = []
    t = inst.initial
    for step in trace.steps:
        q, q_prime, x = step.subtree, step.transition, step.requested
        if q == q_prime:
            block: tuple[int, ...] = (x,)
            landed, _ = splay(t, x)
        elif size(q) <= 4:
            window_keys = _grow_keys(t, tree_keys(q), 4)
            window = root_subtree(t, window_keys)
            target = root_subtree(step.after, window_keys)
            _, mapping = canonical_relabel(window)
            canon_target = relabel(target, mapping)
            inverse = {v: k for k, v in mapping.items()}
            canon_window, _ = canonical_relabel(window)
            path = _g4_paths()[(shape_key(canon_window), shape_key(canon_target))]
            block = tuple(inverse[k] for k in path)
            landed = t
            for k in block:
                landed, _ = splay(landed, k)
        else:
            keys: list[int] = []
            landed = t
            for rot in restricted_rotation_script(q, q_prime):
                landed, splayed, _ = realize_restricted_rotation(landed, rot)
                keys.extend(splayed)
            block = tuple(keys)
        assert block and block[-1] == x, "every block finishes at the request"
        assert landed == step.after, "block must land exactly on the after-tree"
        blocks.append(block)
        t = step.after
    return blocks


def simulation_embedding(inst: Instance, e: Execution) -> tuple[int, ...]:
    """Request sequence driving Splay through the execution's subtree
    substitutions; the original requests appear in order as a subsequence,
    and the splay cost stays within a constant factor of the execution's."""
    return tuple(k for block in embedding_blocks(inst, e) for k in block)


def _grow_keys(t: Node, keys: frozenset[int], target_size: int) -> tuple[int, ...]:
    selected = set(keys)
    left_spine = set()
    node: Tree = t
    while node is not None:
        left_spine.add(node.key)
        node = node.left
    while len(selected) < min(target_size, size(t)):
        candidates = []
        stack = [(t, 0)]
        while stack:
            node, d = stack.pop()
            if node.key in selected:
                for child in (node.left, node.right):
                    if child is not None:
                        if child.key in selected:
                            stack.append((child, d + 1))
                        else:
                            candidates.append(
                                (d + 1, 0 if child.key in left_spine else 1, child.key)
                            )
        candidates.sort()
        selected.add(candidates[0][2])
    return tuple(sorted(selected))


def embedding_block_costs(inst: Instance, e: Execution) -> list[tuple[int, int, int]]:
    """Per-access (block splay cost, transition size, max path nodes) for a
    simulation; exposed for the acceptance checks."""
    trace = validate(inst, e)
    blocks = embedding_blocks(inst, e)
    out: list[tuple[int, int, int]] = []
    t: Tree = inst.initial
    for step, block in zip(trace.steps, blocks):
        cost = 0
        maxpath = 0
        for k in block:
            d = len(path_nodes(t, k))
            cost += d
            maxpath = max(maxpath, d)
            t, _ = splay(t, k)
        out.append((cost, size(step.transition), maxpath))
    return out


# ---------------------------------------------------------------------------
# Augmented repetition.


def augmented_repeat(inst: Instance, k: int) -> tuple[int, ...]:
    """The request sequence X followed by the transformation resetting the
    splayed tree to its initial shape, repeated k times."""
    if k < 1:
        raise ValueError("repetition count must be at least 1")
    t: Tree = inst.initial
    for x in inst.requests:
        t, _ = splay(t, x)
    reset = transform_sequence(t, inst.initial).keys
    unit = inst.requests + reset
    return unit * k


# ---------------------------------------------------------------------------
# Universal transforms.


def universal_transform(q: Node) -> tuple[int, ...]:
    """Key sequence that leaves ``q`` as a connected root subtree when
    splayed from any tree containing its keys: a reverse sequential access,
    cleanup groups normalizing consecutive key triples onto the left spine,
    and the left-spine-to-q transformation."""
    keys = sorted(tree_keys(q))
    if len(keys) < 5 or len(keys) % 2 == 0:
        raise ValueError("universal transforms need an odd key count >= 5")
    reverse_access = tuple(reversed(keys))
    cleanup: list[int] = []
    for i in range(0, len(keys) - 2, 2):
        x, y, z = keys[i], keys[i + 1], keys[i + 2]
        cleanup.extend((z, y, z, x, y, z))
    spine = left_spine_tree(keys)
    to_shape = transform_sequence(spine, q).keys
    return reverse_access + tuple(cleanup) + to_shape


def smallest_spanning_subtree(t: Node, keys: Iterable[int]) -> Node:
    """Smallest connected subgraph of ``t`` containing the root and keys."""
    return smallest_root_subtree(t, keys)


# ---------------------------------------------------------------------------
# Simultaneous transforms for four-node trees.

# The lone access (2,) is sometimes quoted for the sixth target, but the two
# algorithms disagree on it (a zig-zig splits the path, a plain rotation walk
# does not); (3, 2) is the shortest sequence they agree on.
_SIMULTANEOUS_BASE: tuple[tuple[int, ...], ...] = (
    (3, 1, 4, 1),
    (2, 3, 4, 1, 2, 1),
    (2, 3, 4, 1, 3, 1),
    (2, 3, 4, 2, 4, 1),
    (3, 2),
    (2, 3, 4, 2, 4, 1, 2),
)

_MIRROR = {1: 4, 2: 3, 3: 2, 4: 1}


def _run_both(t: Node, keys: Sequence[int]) -> Node:
    s = m = t
    for k in keys:
        s, _ = splay(s, k)
        m, _ = move_to_root(m, k)
    assert s == m, "sequence must drive Splay and Move-to-Root identically"
    return s


@lru_cache(maxsize=1)
def _simultaneous_table() -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map from each four-node shape (keys 1..4) to a request sequence that
    drives both Splay and Move-to-Root onto it from the left spine."""
    left = left_spine_tree(range(1, 5))
    table: dict[tuple[int, ...], tuple[int, ...]] = {
        shape_key(left): (1, 2, 3, 4),
    }
    right_route = (4, 3, 2, 1)
    table[shape_key(_run_both(left, right_route))] = right_route
    for seq in _SIMULTANEOUS_BASE:
        table[shape_key(_run_both(left, seq))] = seq
        mirrored = right_route + tuple(_MIRROR[k] for k in seq)
        table[shape_key(_run_both(left, mirrored))] = mirrored
    assert len(table) == 14, "all four-node shapes must be covered"
    return table


def simultaneous_transform4(source: Node, target: Node) -> tuple[int, ...]:
    """Request sequence turning ``source`` into ``target`` under both Splay
    and Move-to-Root simultaneously (four-node trees)."""
    if size(source) != 4 or tree_keys(source) != tree_keys(target):
        raise ValueError("simultaneous transforms are defined on equal four-key sets")
    canon_target, mapping = canonical_relabel(target)
    inverse = {v: k for k, v in mapping.items()}
    to_left = (1, 2, 3, 4)
    seq = to_left + _simultaneous_table()[shape_key(canon_target)]
    return tuple(inverse[k] for k in seq)


# ---------------------------------------------------------------------------
# Simulation embedding for Top-Down Splay.


def _strip_frame(t: Node, a: int, b: int, z: int) -> Tree:
    """Remove the minimum, its successor, and the maximum, splicing each
    removed node's inner subtree into its parent."""

    def remove_min(node: Node) -> Tree:
        if node.left is None:
            return node.right
        return Node(node.key, remove_min(node.left), node.right)

    def remove_max(node: Node) -> Tree:
        if node.right is None:
            return node.left
        return Node(node.key, node.left, remove_max(node.right))

    out = remove_min(t)  # drops a
    assert out is not None
    out = remove_min(out)  # drops b, the new minimum
    assert out is not None
    return remove_max(out)  # drops z


def _frame_tree(core: Tree, a: int, b: int, z: int) -> Node:
    return Node(z, Node(b, Node(a), core), None)


_PATTERN_SHORT = ("P1", "P2")  # children of the framed subtree's root


def _framed_rotation_keys(core: Node, rot_key: int, a: int, z: int) -> tuple[int, ...]:
    """Top-down-splay keys inducing one restricted rotation inside the
    framed subtree: root children use (key, a, z); grandchildren through the
    left child use (a, key, a, z)."""
    path = path_nodes(core, rot_key)
    if len(path) == 2:
        return (rot_key, a, z)
    assert len(path) == 3 and path[1] is path[0].left
    return (a, rot_key, a, z)


def _maneuver(x: int, a: int, b: int, z: int) -> tuple[int, ...]:
    if x == z:
        return (z,)
    if x == b:
        return (b, z)
    if x == a:
        return (a, b, z)
    return (x, z, b, a, z)


def topdown_embedding(inst: Instance, e: Execution) -> tuple[int, ...]:
    """Request sequence driving Top-Down Splay through a framed realization
    of the execution: the minimum, its successor, and the maximum are pinned
    as a left spine above everything, substitutions happen inside the framed
    subtree via induced restricted rotations, and each access ends with a
    frame-preserving maneuver that features the requested key."""
    if inst.n <= 3:
        raise ValueError("the framed embedding needs more than three keys")
    trace = validate(inst, e)
    keys = sorted(tree_keys(inst.initial))
    a, z = keys[0], keys[-1]
    b = keys[1]

    out: list[int] = []
    t = inst.initial
    for k in (z, b, a, z):
        out.append(k)
        t, _ = top_down_splay(t, k)
    assert t.key == z and t.left is not None and t.left.key == b
    core = t.left.right  # framed subtree holding every other key
    assert core is not None

    def run_script(core_now: Node, core_target: Node, touched: Iterable[int]) -> Node:
        # Transform only the top region the substitution moved; restricted
        # rotations of that root subtree are restricted for the whole framed
        # subtree as well.
        nonlocal t
        if core_now == core_target:
            return core_now
        span = _span_both(core_now, core_target, touched)
        before = root_subtree(core_now, span)
        after = root_subtree(core_target, span)
        for rot in restricted_rotation_script(before, after):
            expect = rotate(core_now, rot)
            for k in _framed_rotation_keys(core_now, rot, a, z):
                out.append(k)
                t, _ = top_down_splay(t, k)
            core_now = expect
            assert t == _frame_tree(core_now, a, b, z)
        assert core_now == core_target
        return core_now

    target0 = _strip_frame(inst.initial, a, b, z)
    assert target0 is not None
    core = run_script(core, target0, tree_keys(core))
    for step in trace.steps:
        target_core = _strip_frame(step.after, a, b, z)
        assert target_core is not None
        touched = tree_keys(step.transition) - {a, b, z}
        core = run_script(core, target_core, touched or {core.key})
        for k in _maneuver(step.requested, a, b, z):
            out.append(k)
            t, _ = top_down_splay(t, k)
        assert t == _frame_tree(core, a, b, z), "maneuver must preserve the frame"
    return tuple(out)


def _span_both(before: Node, after: Node, keys: Iterable[int]) -> frozenset[int]:
    cur = set(keys)
    while True:
        grown = set(cur)
        for t in (before, after):
            for k in list(grown):
                for node in path_nodes(t, k):
                    grown.add(node.key)
        if grown == cur:
            return frozenset(cur)
        cur = grown
