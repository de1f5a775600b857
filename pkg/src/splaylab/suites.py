"""Verification suites: one runnable check per acceptance criterion.

Each suite returns a :class:`SuiteResult`; the CLI and the acceptance tests
are thin wrappers around these functions.  Suites that sample use the given
seed through per-trial derivation, so results are reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from .algorithms import access_cost, move_to_root, splay, top_down_splay
from .families import generate, random_tree
from .model import (
    Execution,
    Instance,
    RotationAccess,
    RotationExecution,
    elide,
    from_rotation_model,
    rotation_trace,
    subsequence_instance,
    to_rotation_model,
    validate,
)
from .opt import opt_cost, opt_monotone_sweep
from .probes import probe
from .transforms import (
    TransformUnreachableError,
    build_digraph,
    diameter,
    embedding_block_costs,
    embedding_blocks,
    replay,
    shortest_path,
    simulation_embedding,
    simultaneous_transform4,
    smallest_spanning_subtree,
    strongly_connected,
    topdown_embedding,
    transform_sequence,
    universal_transform,
)
from .tree import (
    Node,
    all_shapes,
    bst_from_sequence,
    depth,
    left_spine_tree,
    parse_shape,
    path_nodes,
    shape_print,
    shapes_on_keys,
    size,
    substitute,
    tree_keys,
)
from .wilber import (
    crossing_bound,
    level,
    remove_one_gap,
    sequence_crossing_bound,
    validate_level_formulas,
    window_decompose,
)

G4_DIAMETER = 5  # pinned by direct computation
SPLAY_312_SPINE100_COST = 103  # pinned regression value for X=(3,1,2), n=100
TOPDOWN_EMBED_FACTOR = 64  # implementation constant for the framed embedding


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name: str, start: float, passed: bool, detail: str) -> SuiteResult:
    return SuiteResult(name, passed, detail, time.time() - start)


def _trial_rng(seed: int, trial) -> random.Random:
    return random.Random(f"suite:{seed}:{trial}")


def _is_subsequence(xs: Iterable[int], ys: Iterable[int]) -> bool:
    it = iter(ys)
    return all(any(x == y for y in it) for x in xs)


def random_execution(rng: random.Random, inst: Instance) -> Execution:
    """Uniform-ish random valid execution: grow a random connected root
    subtree around each request and rearrange it randomly."""
    t = inst.initial
    trees = []
    for x in inst.requests:
        keys = {node.key for node in path_nodes(t, x)}
        while True:
            frontier = []
            stack = [t]
            while stack:
                node = stack.pop()
                if node.key in keys:
                    for child in (node.left, node.right):
                        if child is not None:
                            if child.key in keys:
                                stack.append(child)
                            else:
                                frontier.append(child.key)
            if not frontier or rng.random() < 0.45:
                break
            keys.add(rng.choice(frontier))
        options = [s for s in shapes_on_keys(tuple(sorted(keys))) if s.key == x]
        q_prime = rng.choice(options)
        trees.append(q_prime)
        t = substitute(t, q_prime)
    return Execution(tuple(trees))


def _all_transitions(t: Node, x: int):
    from .opt import _root_subtree_keysets

    for q_keys in _root_subtree_keysets(t, x):
        for q_prime in shapes_on_keys(q_keys):
            if q_prime.key == x:
                yield q_prime


# ---------------------------------------------------------------------------
# Criterion 1.


def suite_g4(**_: object) -> SuiteResult:
    start = time.time()
    g4 = build_digraph(4, "splay")
    checks = [
        (len(g4.vertices) == 14, "G4 has 14 vertices"),
        (strongly_connected(g4), "G4 strongly connected"),
        (diameter(g4) == G4_DIAMETER, f"G4 diameter == {G4_DIAMETER} (<= 5)"),
        (not strongly_connected(build_digraph(3, "splay")), "G3 splay not strongly connected"),
        (strongly_connected(build_digraph(3, "mtr")), "G3 move-to-root strongly connected"),
    ]
    failed = [msg for ok, msg in checks if not ok]
    return _result(
        "g4",
        start,
        not failed,
        "; ".join(msg for _, msg in checks) if not failed else "FAILED: " + "; ".join(failed),
    )


# ---------------------------------------------------------------------------
# Criterion 2.


def suite_transform(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    worst = 0.0
    for s in all_shapes(4):
        for t in all_shapes(4):
            plan = transform_sequence(s, t)
            if replay(plan) != t or plan.cost > 320 or plan.rotation_count > 16:
                return _result("transform", start, False, f"4-node pair {shape_print(s)} -> {shape_print(t)}")
            worst = max(worst, plan.cost / 4)
    for n in (8, 16, 32, 64):
        for trial in range(100):
            rng = _trial_rng(seed, f"transform:{n}:{trial}")
            s = random_tree(n, rng)
            t = random_tree(n, rng)
            plan = transform_sequence(s, t)
            if replay(plan) != t:
                return _result("transform", start, False, f"replay mismatch at n={n}")
            if plan.cost > 80 * n or plan.rotation_count > 4 * n:
                return _result(
                    "transform", start, False,
                    f"bounds exceeded at n={n}: cost {plan.cost}, rotations {plan.rotation_count}",
                )
            worst = max(worst, plan.cost / n)
    return _result(
        "transform", start, True,
        f"14x14 and 4x100 random pairs exact; max cost/n {worst:.1f} <= 80",
    )


# ---------------------------------------------------------------------------
# Criterion 3.


def suite_embedding(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    # Exhaustive part: verify every per-access block over every reachable
    # (tree, request, transition) edge; every execution is a path through
    # these edges and its three properties are sums/conjunctions over them.
    edges_checked = 0
    executions_covered = 0
    for n in range(1, 5):
        for t0 in all_shapes(n):
            block_ok: dict[tuple, bool] = {}
            for m in range(1, 4):
                for x_seq in itertools.product(range(1, n + 1), repeat=m):
                    counts = {t0: 1}
                    for x in x_seq:
                        nxt: dict[Node, int] = {}
                        for t, ways in counts.items():
                            for q_prime in _all_transitions(t, x):
                                key = (t, x, q_prime)
                                if key not in block_ok:
                                    inst1 = Instance((x,), t)
                                    e1 = Execution((q_prime,))
                                    costs = embedding_block_costs(inst1, e1)
                                    blocks = embedding_blocks(inst1, e1)
                                    (cost, qsize, maxpath), block = costs[0], blocks[0]
                                    block_ok[key] = (
                                        cost <= 80 * qsize
                                        and maxpath <= 4
                                        and block[-1] == x
                                    )
                                    edges_checked += 1
                                if not block_ok[key]:
                                    return _result(
                                        "embedding", start, False,
                                        f"block violation at {shape_print(t)}, x={x}",
                                    )
                                after = substitute(t, q_prime)
                                nxt[after] = nxt.get(after, 0) + ways
                        counts = nxt
                    executions_covered += sum(counts.values())
    # Random part: full end-to-end checks.
    for trial in range(1000):
        rng = _trial_rng(seed, f"embed:{trial}")
        n = rng.randint(1, 6)
        m = rng.randint(1, 5)
        inst = Instance(
            tuple(rng.randint(1, n) for _ in range(m)), random_tree(n, rng)
        )
        e = random_execution(rng, inst)
        trace = validate(inst, e)
        seq = simulation_embedding(inst, e)
        if not _is_subsequence(inst.requests, seq):
            return _result("embedding", start, False, f"subsequence violated on trial {trial}")
        costs = embedding_block_costs(inst, e)
        total = sum(c for c, _, _ in costs)
        if total > 80 * trace.cost or any(mp > 4 for _, _, mp in costs):
            return _result("embedding", start, False, f"cost/path violated on trial {trial}")
    return _result(
        "embedding", start, True,
        f"{edges_checked} distinct blocks verified covering {executions_covered} executions;"
        " 1000 random executions pass",
    )


# ---------------------------------------------------------------------------
# Criterion 4.


def suite_opt_monotone(max_n: int = 4, max_m: int = 3, **_: object) -> SuiteResult:
    start = time.time()
    sweep = opt_monotone_sweep(max_n, max_m)
    if sweep["violations"]:
        return _result(
            "opt-monotone", start, False, f"violations: {sweep['violations'][:3]}"
        )
    # Elision produces valid, strictly cheaper executions for subsequences.
    elisions = 0
    for n in range(1, max_n + 1):
        for t in all_shapes(n):
            for m in range(1, max_m + 1):
                for x_seq in itertools.product(range(1, n + 1), repeat=m):
                    inst = Instance(x_seq, t)
                    best = opt_cost(inst)
                    for mask in range(1, 2 ** m):
                        deleted = {i + 1 for i in range(m) if (mask >> i) & 1}
                        sub_inst = subsequence_instance(inst, deleted)
                        pruned = elide(inst, best.execution, deleted)
                        sub_trace = validate(sub_inst, pruned)
                        elisions += 1
                        if sub_trace.cost >= best.cost:
                            return _result(
                                "opt-monotone", start, False,
                                f"elision not cheaper: {shape_print(t)} {x_seq} {deleted}",
                            )
                        if sub_inst.requests and sub_trace.cost < opt_cost(sub_inst).cost:
                            return _result(
                                "opt-monotone", start, False,
                                f"elision beat the oracle: {shape_print(t)} {x_seq}",
                            )
    return _result(
        "opt-monotone", start, True,
        f"{sweep['instances']} instances, {sweep['comparisons']} subsequence comparisons,"
        f" {elisions} elisions: zero violations",
    )


# ---------------------------------------------------------------------------
# Criterion 5.


def suite_wilber_equivalence(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    checked = 0
    for keycount in range(1, 5):
        for m in range(1, 6):
            for x_seq in itertools.product(range(1, keycount + 1), repeat=m):
                t = bst_from_sequence(x_seq)
                lhs = sequence_crossing_bound(x_seq)
                rhs = crossing_bound(Instance(x_seq, t)) - size(t) + 1
                checked += 1
                if lhs != rhs:
                    return _result(
                        "wilber-equivalence", start, False, f"mismatch on {x_seq}"
                    )
    for trial in range(10_000):
        rng = _trial_rng(seed, f"weq:{trial}")
        m = rng.randint(1, 12)
        keys = rng.randint(1, 8)
        x_seq = tuple(rng.randint(1, keys) for _ in range(m))
        t = bst_from_sequence(x_seq)
        lhs = sequence_crossing_bound(x_seq)
        rhs = crossing_bound(Instance(x_seq, t)) - size(t) + 1
        checked += 1
        if lhs != rhs:
            return _result("wilber-equivalence", start, False, f"mismatch on {x_seq}")
    return _result(
        "wilber-equivalence", start, True, f"{checked} sequences: exact equality"
    )


# ---------------------------------------------------------------------------
# Criterion 6.


def suite_lambda_opt(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    worst = 0.0
    for n in range(1, 5):
        for t in all_shapes(n):
            for m in range(1, 4):
                for x_seq in itertools.product(range(1, n + 1), repeat=m):
                    inst = Instance(x_seq, t)
                    lam = crossing_bound(inst)
                    best = opt_cost(inst).cost
                    if lam > 24 * best:
                        return _result(
                            "lambda-opt", start, False, f"{shape_print(t)} {x_seq}"
                        )
                    worst = max(worst, lam / best)
    for trial in range(200):
        rng = _trial_rng(seed, f"lamopt:{trial}")
        inst = Instance(
            tuple(rng.randint(1, 5) for _ in range(4)), random_tree(5, rng)
        )
        lam = crossing_bound(inst)
        best = opt_cost(inst).cost
        if lam > 24 * best:
            return _result("lambda-opt", start, False, f"random trial {trial}")
        worst = max(worst, lam / best)
    return _result(
        "lambda-opt", start, True, f"max lambda/opt ratio observed: {worst:.3f} (<= 24)"
    )


# ---------------------------------------------------------------------------
# Criterion 7.


def suite_remove_one(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    # Counter-example control for the retracted one-times bound.
    s = bst_from_sequence([1, 7, 4, 2, 3, 6, 5])
    gap = remove_one_gap(s, 4, (5, 3))
    if not gap > level(s, 4) == 3:
        return _result(
            "remove-one", start, False, f"control gap {gap} not above level 3"
        )
    checked = 0
    for n in range(1, 6):
        for t in all_shapes(n):
            for x in range(1, n + 1):
                lim = 4 * level(t, x)
                for m in range(0, 5):
                    for z_seq in itertools.product(range(1, n + 1), repeat=m):
                        checked += 1
                        if remove_one_gap(t, x, z_seq) > lim:
                            return _result(
                                "remove-one", start, False,
                                f"{shape_print(t)} x={x} Z={z_seq}",
                            )
    for trial in range(10_000):
        rng = _trial_rng(seed, f"rmone:{trial}")
        n = rng.randint(1, 10)
        t = random_tree(n, rng)
        x = rng.randint(1, n)
        z_seq = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 8)))
        checked += 1
        if remove_one_gap(t, x, z_seq) > 4 * level(t, x):
            return _result("remove-one", start, False, f"random trial {trial}")
    return _result(
        "remove-one", start, True,
        f"control gap {gap} > 3; {checked} gaps within four times the level",
    )


# ---------------------------------------------------------------------------
# Criterion 8.


def suite_wilber_monotone(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    checked = 0
    for n in range(1, 5):
        for t in all_shapes(n):
            for m in range(1, 5):
                for x_seq in itertools.product(range(1, n + 1), repeat=m):
                    full = crossing_bound(Instance(x_seq, t))
                    for mask in range(1, 2 ** m):
                        sub = tuple(
                            x for j, x in enumerate(x_seq) if not (mask >> j) & 1
                        )
                        if not sub:
                            continue
                        checked += 1
                        if crossing_bound(Instance(sub, t)) > 4 * full:
                            return _result(
                                "wilber-monotone", start, False,
                                f"{shape_print(t)} {x_seq} -> {sub}",
                            )
    for trial in range(10_000):
        rng = _trial_rng(seed, f"wmono:{trial}")
        n = rng.randint(1, 8)
        t = random_tree(n, rng)
        m = rng.randint(1, 6)
        x_seq = tuple(rng.randint(1, n) for _ in range(m))
        sub = tuple(x for x in x_seq if rng.random() < 0.6)
        if not sub:
            continue
        checked += 1
        if crossing_bound(Instance(sub, t)) > 4 * crossing_bound(Instance(x_seq, t)):
            return _result("wilber-monotone", start, False, f"random trial {trial}")
    return _result(
        "wilber-monotone", start, True,
        f"{checked} subsequences within factor four",
    )


# ---------------------------------------------------------------------------
# Criterion 9.


def suite_window(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    runs = 0
    formula_checks = 0
    for n in range(2, 6):
        for t in all_shapes(n):
            for x in range(1, n + 1):
                for m in range(0, 5):
                    for z_seq in itertools.product(range(1, n + 1), repeat=m):
                        ok, count, msg = _window_run(t, x, z_seq)
                        runs += 1
                        formula_checks += count
                        if not ok:
                            return _result("window", start, False, msg)
    for trial in range(1000):
        rng = _trial_rng(seed, f"window:{trial}")
        n = rng.randint(2, 8)
        t = random_tree(n, rng)
        x = rng.randint(1, n)
        z_seq = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 6)))
        ok, count, msg = _window_run(t, x, z_seq)
        runs += 1
        formula_checks += count
        if not ok:
            return _result("window", start, False, f"random: {msg}")
    return _result(
        "window", start, True,
        f"{runs} decompositions, {formula_checks} formula checks: zero violations",
    )


def _window_run(t: Node, x: int, z_seq: tuple[int, ...]) -> tuple[bool, int, str]:
    steps, witnesses = window_decompose(t, x, z_seq)
    for st in steps:
        if st.zipped is not None:
            if st.unzipped != move_to_root(st.zipped, x)[0]:
                return False, 0, f"unzipped subtree mismatch at step {st.index}"
        if st.index >= 1:
            if st.s_tree.key != st.t_tree.key:
                return False, 0, f"roots differ at step {st.index}"
            for key in st.top_keys:
                pa = _parent_key_of(st.s_tree, key)
                pb = _parent_key_of(st.t_tree, key)
                if pa != pb:
                    return False, 0, f"top-tree parent mismatch at step {st.index}"
    report = validate_level_formulas(steps, witnesses, x)
    if not report.ok:
        return False, report.checked, "; ".join(report.violations[:2])
    return True, report.checked, ""


def _parent_key_of(t: Node, key: int):
    path = path_nodes(t, key)
    return path[-2].key if len(path) >= 2 else None


# ---------------------------------------------------------------------------
# Criterion 10.


def suite_repetition(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    from .transforms import augmented_repeat

    for trial in range(100):
        rng = _trial_rng(seed, f"rep:{trial}")
        n = rng.randint(4, 32)
        m = rng.randint(1, 16)
        k = rng.randint(1, 5)
        inst = Instance(
            tuple(rng.randint(1, n) for _ in range(m)), random_tree(n, rng)
        )
        unit = augmented_repeat(inst, 1)
        repeated = augmented_repeat(inst, k)
        unit_cost = access_cost(inst.initial, unit, "splay")
        rep_cost = access_cost(inst.initial, repeated, "splay")
        if rep_cost != k * unit_cost:
            return _result(
                "repetition", start, False,
                f"trial {trial}: {rep_cost} != {k} * {unit_cost}",
            )
        if unit_cost < access_cost(inst.initial, inst.requests, "splay"):
            return _result("repetition", start, False, f"trial {trial}: unit below base")
    # Oracle-scale inequality for the repeated augmented sequence.
    rng = _trial_rng(seed, "rep:oracle")
    inst = Instance((rng.randint(1, 4), rng.randint(1, 4)), random_tree(4, rng))
    k = 2
    repeated = augmented_repeat(inst, k)
    lhs = opt_cost(Instance(repeated, inst.initial), guard_m=200).cost
    rhs = 83 * k * opt_cost(inst).cost
    if lhs > rhs:
        return _result("repetition", start, False, f"oracle bound {lhs} > {rhs}")
    return _result(
        "repetition", start, True,
        f"100 exact repetition identities; oracle bound {lhs} <= {rhs}",
    )


# ---------------------------------------------------------------------------
# Criterion 11.


def suite_families(**_: object) -> SuiteResult:
    start = time.time()
    fam = generate("spine-312", n=10_000)
    cx = access_cost(fam.instance.initial, fam.instance.requests, "splay")
    cy = access_cost(fam.instance.initial, fam.subsequence, "splay")
    spine_ratio = cy / cx
    fam = generate("powers", k=14)
    cx2 = access_cost(fam.instance.initial, fam.instance.requests, "splay")
    cy2 = access_cost(fam.instance.initial, fam.subsequence, "splay")
    powers_ratio = cy2 / cx2
    small = generate("spine-312", n=100)
    pinned = access_cost(small.instance.initial, small.instance.requests, "splay")
    ok = (
        1.45 <= spine_ratio <= 1.55
        and 1.9 <= powers_ratio <= 2.1
        and pinned == SPLAY_312_SPINE100_COST
    )
    return _result(
        "families", start, ok,
        f"spine-312 ratio {spine_ratio:.4f} in [1.45,1.55]; powers ratio"
        f" {powers_ratio:.4f} in [1.9,2.1]; pinned n=100 cost {pinned}",
    )


# ---------------------------------------------------------------------------
# Criterion 12.


def suite_rotation_model(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    checked = 0
    for n in range(1, 4):
        for t in all_shapes(n):
            for m in range(1, 3):
                for x_seq in itertools.product(range(1, n + 1), repeat=m):
                    inst = Instance(x_seq, t)
                    for e in _all_executions(inst):
                        checked += 1
                        ok, msg = _rotation_round_trip(inst, e)
                        if not ok:
                            return _result("rotation-model", start, False, msg)
    for trial in range(1000):
        rng = _trial_rng(seed, f"rot:{trial}")
        n = rng.randint(1, 6)
        m = rng.randint(1, 4)
        inst = Instance(
            tuple(rng.randint(1, n) for _ in range(m)), random_tree(n, rng)
        )
        e = random_execution(rng, inst)
        checked += 1
        ok, msg = _rotation_round_trip(inst, e)
        if not ok:
            return _result("rotation-model", start, False, f"random: {msg}")
        # Random rotation executions, independently of the transition side.
        racc = []
        t2 = inst.initial
        for x in inst.requests:
            rots = []
            for _ in range(rng.randint(0, 3)):
                keys = [k for k in range(1, n + 1) if t2.key != k]
                if not keys:
                    break
                kk = rng.choice(keys)
                rots.append(kk)
                from .tree import rotate

                t2 = rotate(t2, kk)
            racc.append(RotationAccess(tuple(rots)))
        r = RotationExecution(tuple(racc))
        rt = rotation_trace(inst, r)
        e2 = from_rotation_model(inst, r)
        if validate(inst, e2).cost > 4 * rt.cost:
            return _result("rotation-model", start, False, f"4x exceeded on trial {trial}")
    return _result("rotation-model", start, True, f"{checked} executions round-tripped")


def _all_executions(inst: Instance):
    def expand(t: Node, i: int, prefix: tuple[Node, ...]):
        if i == inst.m:
            yield Execution(prefix)
            return
        for q_prime in _all_transitions(t, inst.requests[i]):
            yield from expand(substitute(t, q_prime), i + 1, prefix + (q_prime,))

    yield from expand(inst.initial, 0, ())


def _rotation_round_trip(inst: Instance, e: Execution) -> tuple[bool, str]:
    trace = validate(inst, e)
    r = to_rotation_model(inst, e)
    rt = rotation_trace(inst, r)
    if rt.cost > 3 * trace.cost:
        return False, f"to_rotation {rt.cost} > 3 x {trace.cost}"
    if any(d != 0 for d in rt.search_depths):
        return False, "search did not happen at the root"
    back = from_rotation_model(inst, r)
    back_trace = validate(inst, back)
    if back_trace.cost > 4 * rt.cost:
        return False, f"from_rotation {back_trace.cost} > 4 x {rt.cost}"
    if back_trace.final_tree != trace.final_tree:
        return False, "round trip changed the final tree"
    return True, ""


# ---------------------------------------------------------------------------
# Criterion 13.


def suite_topdown(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    g3 = build_digraph(3, "tds")
    if strongly_connected(g3):
        return _result("topdown", start, False, "top-down digraph unexpectedly connected")
    spine = left_spine_tree([1, 2, 3])
    zigzag = parse_shape("(3 (1 . (2 . .)) .)")
    try:
        shortest_path(g3, spine, zigzag)
        return _result("topdown", start, False, "left spine reached the zig-zag shape")
    except TransformUnreachableError:
        pass
    worst = 0.0
    for trial in range(200):
        rng = _trial_rng(seed, f"tds:{trial}")
        n = rng.randint(4, 8)
        m = rng.randint(1, 4)
        inst = Instance(
            tuple(rng.randint(1, n) for _ in range(m)), random_tree(n, rng)
        )
        e = random_execution(rng, inst)
        trace = validate(inst, e)
        seq = topdown_embedding(inst, e)
        if not _is_subsequence(inst.requests, seq):
            return _result("topdown", start, False, f"subsequence violated on trial {trial}")
        t = inst.initial
        cost = 0
        for k in seq:
            cost += depth(t, k) + 1
            t, _ = top_down_splay(t, k)
        keys = sorted(tree_keys(inst.initial))
        a, b, z = keys[0], keys[1], keys[-1]
        if not (t.key == z and t.left is not None and t.left.key == b):
            return _result("topdown", start, False, f"frame broken on trial {trial}")
        from .transforms import _strip_frame

        if t.left.right != _strip_frame(trace.final_tree, a, b, z):
            return _result("topdown", start, False, f"final shape mismatch on trial {trial}")
        ratio = cost / (trace.cost + inst.n)
        worst = max(worst, ratio)
        if cost > TOPDOWN_EMBED_FACTOR * (trace.cost + inst.n):
            return _result("topdown", start, False, f"cost factor exceeded: {ratio:.1f}")
    return _result(
        "topdown", start, True,
        f"digraph non-connectivity confirmed; 200 embeddings pass, max cost factor {worst:.1f}",
    )


# ---------------------------------------------------------------------------
# Criterion 14.


def suite_universal(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    for qsize in (5, 7, 9):
        for trial in range(100):
            rng = _trial_rng(seed, f"uni:{qsize}:{trial}")
            n = rng.randint(qsize, 200)
            universe = rng.sample(range(1, 401), n)
            q_keys = sorted(rng.sample(universe, qsize))
            t = bst_from_sequence(universe)
            q = rng.choice(shapes_on_keys(tuple(q_keys)))
            u = universal_transform(q)
            if len(u) > 30 * qsize:
                return _result("universal", start, False, f"|U| too long at {qsize}")
            cur = t
            for k in u:
                cur, _ = splay(cur, k)
            if smallest_spanning_subtree(cur, q_keys) != q:
                return _result(
                    "universal", start, False,
                    f"subtree not realized: |Q|={qsize} trial {trial}",
                )
    return _result("universal", start, True, "300 supersets: subtree realized, |U| <= 30|Q|")


# ---------------------------------------------------------------------------
# Criterion 15.


def suite_simultaneous(**_: object) -> SuiteResult:
    start = time.time()
    pairs = 0
    for s in all_shapes(4):
        for t in all_shapes(4):
            seq = simultaneous_transform4(s, t)
            a = b = s
            for k in seq:
                a, _ = splay(a, k)
                b, _ = move_to_root(b, k)
            if a != t or b != t:
                return _result(
                    "simultaneous", start, False,
                    f"{shape_print(s)} -> {shape_print(t)} diverged",
                )
            pairs += 1
    return _result("simultaneous", start, True, f"{pairs} pairs reached under both algorithms")


# ---------------------------------------------------------------------------
# Criterion 16.


def suite_probes(seed: int = 0, **_: object) -> SuiteResult:
    start = time.time()
    specs = [
        ("splay-mr-crossings", dict(trials=50, n=200, m=400, seed=seed)),
        ("monotone-splay-crossings", dict(trials=50, n=200, m=400, seed=seed)),
        ("splay-bookkeeping", dict(trials=50, n=200, m=400, seed=seed)),
        ("deque-linear", dict(trials=5, n=1000, m=10_000, seed=seed)),
        ("traversal-linear", dict(trials=10, n=1000, m=0, seed=seed)),
        ("subseq-ratio", dict(trials=1, n=10_000, m=0, seed=seed)),
    ]
    names = []
    for name, kwargs in specs:
        first = probe(name, **kwargs).to_csv()
        second = probe(name, **kwargs).to_csv()
        if first != second:
            return _result("probes", start, False, f"{name} not deterministic")
        names.append(name)
    return _result(
        "probes", start, True, "deterministic reports for " + ", ".join(names)
    )


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "g4": suite_g4,
    "transform": suite_transform,
    "embedding": suite_embedding,
    "opt-monotone": suite_opt_monotone,
    "wilber-equivalence": suite_wilber_equivalence,
    "lambda-opt": suite_lambda_opt,
    "remove-one": suite_remove_one,
    "wilber-monotone": suite_wilber_monotone,
    "window": suite_window,
    "repetition": suite_repetition,
    "families": suite_families,
    "rotation-model": suite_rotation_model,
    "topdown": suite_topdown,
    "universal": suite_universal,
    "simultaneous": suite_simultaneous,
    "probes": suite_probes,
}


def run_suite(name: str, **kwargs: object) -> list[SuiteResult]:
    if name == "all":
        return [fn(**kwargs) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](**kwargs)]
