"""Brute-force optimal execution oracle."""

import itertools
import os

import pytest

from splaylab.algorithms import access_cost
from splaylab.model import Instance, elide, subsequence_instance, validate
from splaylab.opt import GuardExceededError, initial_tree_shift, opt_cost
from splaylab.tree import all_shapes, bst_from_sequence, left_spine_tree
from splaylab.model import smallest_root_subtree

from conftest import make_random_instance


class TestOracleBasics:
    def test_root_access(self):
        t = bst_from_sequence([2, 1, 3])
        assert opt_cost(Instance((2,), t)).cost == 1

    def test_forced_path(self):
        t = left_spine_tree([1, 2, 3])
        assert opt_cost(Instance((1,), t)).cost == 3

    def test_execution_achieves_reported_cost(self, rng):
        for _ in range(60):
            inst = make_random_instance(rng, rng.randint(1, 5), rng.randint(0, 4))
            result = opt_cost(inst)
            trace = validate(inst, result.execution)
            assert trace.cost == result.cost

    def test_cost_at_least_m(self, rng):
        for _ in range(60):
            inst = make_random_instance(rng, rng.randint(1, 5), rng.randint(1, 4))
            assert opt_cost(inst).cost >= inst.m

    def test_never_beats_oracle(self, rng):
        for _ in range(40):
            inst = make_random_instance(rng, rng.randint(1, 5), rng.randint(1, 4))
            best = opt_cost(inst).cost
            assert best <= access_cost(inst.initial, inst.requests, "splay")
            assert best <= access_cost(inst.initial, inst.requests, "mtr")

    def test_cost_at_least_tree_size_when_all_nodes_needed(self, rng):
        # When the initial tree is the smallest root subtree spanning the
        # requested keys, even an optimal execution visits every node.
        found = 0
        for _ in range(300):
            inst = make_random_instance(rng, rng.randint(1, 5), rng.randint(1, 5))
            span = smallest_root_subtree(inst.initial, set(inst.requests))
            if span == inst.initial:
                found += 1
                assert opt_cost(inst).cost >= inst.n
        assert found > 10


class TestGuards:
    def test_guard_exceeded(self):
        t = bst_from_sequence(range(8, 0, -1))
        with pytest.raises(GuardExceededError):
            opt_cost(Instance((1,), t))

    def test_override_env(self, monkeypatch):
        t = bst_from_sequence(range(8, 0, -1))
        monkeypatch.setenv("SPLAYLAB_GUARD_OVERRIDE", "1")
        assert opt_cost(Instance((8,), t)).cost >= 1


class TestEliedOptimal:
    def test_elided_cost_between_sub_opt_and_full(self, rng):
        for _ in range(60):
            inst = make_random_instance(rng, rng.randint(1, 4), rng.randint(1, 3))
            best = opt_cost(inst)
            deleted = {i for i in range(1, inst.m + 1) if rng.random() < 0.5}
            if not deleted or len(deleted) == inst.m:
                continue
            pruned = elide(inst, best.execution, deleted)
            sub = subsequence_instance(inst, deleted)
            cost = validate(sub, pruned).cost
            assert cost < best.cost
            assert cost >= opt_cost(sub).cost


class TestInitialTreeShift:
    def test_same_tree_is_zero(self):
        t = bst_from_sequence([2, 1, 3])
        assert initial_tree_shift((1, 2), t, t) == 0

    def test_bound_exhaustive_n4(self):
        shapes = all_shapes(4)
        for t in shapes:
            for t_prime in shapes:
                for m in range(1, 3):
                    for x_seq in itertools.product(range(1, 5), repeat=m):
                        shift = initial_tree_shift(x_seq, t, t_prime)
                        assert abs(shift) <= 4

    def test_bound_random_n5(self, rng):
        from conftest import make_random_tree

        for _ in range(40):
            t = make_random_tree(rng, 5)
            t_prime = make_random_tree(rng, 5)
            x_seq = tuple(rng.randint(1, 5) for _ in range(3))
            assert abs(initial_tree_shift(x_seq, t, t_prime)) <= 5

    def test_key_set_mismatch(self):
        with pytest.raises(ValueError):
            initial_tree_shift((1,), bst_from_sequence([1, 2]), bst_from_sequence([1, 3]))
