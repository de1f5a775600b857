"""Exact brute-force optimal execution cost by layered dynamic programming
over tree shapes.

State after i requests is the whole tree arrangement; each request expands
every (connected root subtree containing the requested key, rearrangement
with that key at the root) pair.  Guards keep the state space at desk scale;
the environment variable SPLAYLAB_GUARD_OVERRIDE lifts them at the caller's
risk.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .model import Execution, Instance, validate
from .tree import (
    Node,
    Tree,
    all_shapes,
    shape_key,
    shape_print,
    shapes_on_keys,
    size,
    substitute,
    tree_keys,
)

DEFAULT_GUARD_N = 7
DEFAULT_GUARD_M = 8


class GuardExceededError(ValueError):
    """Instance larger than the oracle guards allow."""


@dataclass(frozen=True)
class OptResult:
    cost: int
    execution: Execution
    states_expanded: int


def _guards_overridden() -> bool:
    return bool(os.environ.get("SPLAYLAB_GUARD_OVERRIDE"))


def check_guards(inst: Instance, guard_n: int = DEFAULT_GUARD_N, guard_m: int = DEFAULT_GUARD_M) -> None:
    if _guards_overridden():
        return
    if inst.n > guard_n or inst.m > guard_m:
        raise GuardExceededError(
            f"instance n={inst.n}, m={inst.m} exceeds guards n<={guard_n}, m<={guard_m}"
        )


@lru_cache(maxsize=200_000)
def _transitions(shape: tuple[int, ...], x: int) -> tuple[tuple[tuple[int, ...], Node, int], ...]:
    """All (after-shape key, transition tree, cost) moves for one request.

    Enumerates every connected root subtree containing ``x`` and every
    arrangement of its keys with ``x`` at the root; deduplicates to the
    cheapest transition per resulting arrangement (ties to the smaller
    transition-tree print, so reconstructed executions are deterministic).
    """
    t = _tree_from_shape(shape)
    best: dict[tuple[int, ...], tuple[int, str, Node]] = {}
    for q_keys in _root_subtree_keysets(t, x):
        cost = len(q_keys)
        for q_prime in shapes_on_keys(q_keys):
            if q_prime.key != x:
                continue
            after = substitute(t, q_prime)
            k = shape_key(after)
            entry = (cost, shape_print(q_prime), q_prime)
            if k not in best or (best[k][0], best[k][1]) > (cost, entry[1]):
                best[k] = entry
    return tuple((k, v[2], v[0]) for k, v in best.items())


@lru_cache(maxsize=50_000)
def _tree_from_shape(shape: tuple[int, ...]) -> Node:
    from .tree import bst_from_sequence

    t = bst_from_sequence(shape)
    assert t is not None
    return t


def _root_subtree_keysets(t: Node, x: int) -> list[tuple[int, ...]]:
    """Key sets of connected root subtrees of ``t`` containing ``x``."""

    def kept_sets(node: Node) -> list[frozenset[int]]:
        # Upward-closed key sets of the subtree at ``node`` that keep it.
        lefts = [frozenset()] + (kept_sets(node.left) if node.left else [])
        rights = [frozenset()] + (kept_sets(node.right) if node.right else [])
        return [lo | ro | {node.key} for lo in lefts for ro in rights]

    return sorted(tuple(sorted(s)) for s in kept_sets(t) if x in s)


def opt_cost(
    inst: Instance,
    guard_n: int = DEFAULT_GUARD_N,
    guard_m: int = DEFAULT_GUARD_M,
) -> OptResult:
    """Exact minimum execution cost and one optimal execution achieving it."""
    check_guards(inst, guard_n, guard_m)
    start = shape_key(inst.initial)
    layer: dict[tuple[int, ...], int] = {start: 0}
    parents: list[dict[tuple[int, ...], tuple[tuple[int, ...], Node, int]]] = []
    expanded = 0
    for x in inst.requests:
        nxt: dict[tuple[int, ...], int] = {}
        back: dict[tuple[int, ...], tuple[tuple[int, ...], Node, int]] = {}
        for shape, dist in layer.items():
            expanded += 1
            for after, q_prime, cost in _transitions(shape, x):
                cand = dist + cost
                if after not in nxt or cand < nxt[after] or (
                    cand == nxt[after] and _tiebreak(back[after], shape, q_prime)
                ):
                    nxt[after] = cand
                    back[after] = (shape, q_prime, cand)
        layer = nxt
        parents.append(back)
    best_shape = min(layer, key=lambda s: (layer[s], s))
    total = layer[best_shape]
    # Reconstruct one optimal execution.
    trees: list[Node] = []
    cur = best_shape
    for back in reversed(parents):
        shape, q_prime, _ = back[cur]
        trees.append(q_prime)
        cur = shape
    trees.reverse()
    execution = Execution(tuple(trees))
    trace = validate(inst, execution)
    assert trace.cost == total, "reconstructed execution must achieve the optimum"
    return OptResult(total, execution, expanded)


def _tiebreak(existing: tuple, shape: tuple[int, ...], q_prime: Node) -> bool:
    return shape_print(q_prime) < shape_print(existing[1])


def opt_monotone_sweep(max_n: int, max_m: int) -> dict:
    """Exhaustively confirm that dropping requests strictly lowers the
    optimum.  Returns counts; raises nothing (violations are reported)."""
    import itertools

    violations = []
    instances = 0
    comparisons = 0
    cache: dict[tuple, int] = {}

    def opt_of(requests: tuple[int, ...], t: Node) -> int:
        key = (shape_key(t), requests)
        if key not in cache:
            cache[key] = opt_cost(Instance(requests, t)).cost if requests else 0
        return cache[key]

    for n in range(1, max_n + 1):
        for t in all_shapes(n):
            for m in range(1, max_m + 1):
                for x_seq in itertools.product(range(1, n + 1), repeat=m):
                    instances += 1
                    full = opt_of(x_seq, t)
                    for mask in range(1, 2 ** m - 1):
                        sub = tuple(
                            x for j, x in enumerate(x_seq) if not (mask >> j) & 1
                        )
                        comparisons += 1
                        if sub and opt_of(sub, t) >= full:
                            violations.append((shape_print(t), x_seq, sub))
                        elif not sub and full <= 0:
                            violations.append((shape_print(t), x_seq, sub))
    return {
        "instances": instances,
        "comparisons": comparisons,
        "violations": violations,
    }


def initial_tree_shift(x_seq: tuple[int, ...], t: Node, t_prime: Node) -> int:
    """Difference in optimum cost from swapping the initial tree; its
    magnitude never exceeds the tree size."""
    if tree_keys(t) != tree_keys(t_prime):
        raise ValueError("initial trees must hold the same keys")
    a = opt_cost(Instance(x_seq, t)).cost
    b = opt_cost(Instance(x_seq, t_prime)).cost
    shift = a - b
    assert abs(shift) <= size(t)
    return shift
