"""Crossing-node machinery: levels, the crossing bound and its two
formulations, the splay cost decomposition, and the window decomposition."""

import itertools

import pytest
from splaylab.model import Instance
from splaylab.tree import (
    all_shapes,
    bst_from_sequence,
    path_nodes,
    shape_print,
    size,
)
from splaylab.wilber import (
    crossing_bound,
    crossing_keys_graphical,
    crossing_keys_on_path,
    level,
    level_report,
    remove_one_gap,
    sequence_crossing_bound,
    splay_bookkeeping_cost,
    splay_crossing_cost,
    validate_level_formulas,
    wilber_score,
    window_decompose,
)

from conftest import make_random_instance, make_random_tree


class TestLevel:
    def test_root_level_one(self):
        t = bst_from_sequence([2, 1, 3])
        assert level(t, 2) == 1
        assert level_report(t, 2).crossing_keys == (2,)

    def test_left_spine_bottom(self):
        rep = level_report(bst_from_sequence([3, 2, 1]), 1)
        assert rep.crossing_keys == (3, 1)
        assert rep.level == 2
        assert rep.bookkeeping == 1

    def test_alternation_example(self):
        s = bst_from_sequence([1, 7, 4, 2, 3, 6, 5])
        rep = level_report(s, 4)
        assert rep.crossing_keys == (1, 7, 4)
        assert rep.level == 3

    def test_level_in_range(self, rng):
        for _ in range(100):
            n = rng.randint(1, 10)
            t = make_random_tree(rng, n)
            x = rng.randint(1, n)
            rep = level_report(t, x)
            d = len(path_nodes(t, x)) - 1
            assert 1 <= rep.level <= d + 1
            assert rep.level + rep.bookkeeping == d + 1

    def test_graphical_oracle_matches_exhaustive(self):
        for n in range(1, 7):
            for t in all_shapes(n):
                for key in range(1, n + 1):
                    assert crossing_keys_on_path(path_nodes(t, key)) == (
                        crossing_keys_graphical(t, key)
                    )


class TestCrossingBound:
    def test_root_access(self):
        t = bst_from_sequence([2, 1, 3])
        assert crossing_bound(Instance((2,), t)) == 1

    def test_hand_traced_example(self):
        t = bst_from_sequence([2, 1, 3])
        assert crossing_bound(Instance((1, 3), t)) == 4

    def test_repeated_access_adds_one(self, rng):
        for _ in range(40):
            n = rng.randint(1, 8)
            inst = make_random_instance(rng, n, rng.randint(1, 5))
            x = inst.requests[-1]
            doubled = Instance(inst.requests + (x,), inst.initial)
            assert crossing_bound(doubled) == crossing_bound(inst) + 1


class TestSplayDecomposition:
    def test_sum_is_cost(self, rng):
        from splaylab.algorithms import access_cost

        for _ in range(60):
            inst = make_random_instance(rng, rng.randint(1, 10), rng.randint(0, 8))
            total = access_cost(inst.initial, inst.requests, "splay")
            assert splay_crossing_cost(inst) + splay_bookkeeping_cost(inst) == total

    def test_single_root_access(self):
        t = bst_from_sequence([2, 1, 3])
        inst = Instance((2,), t)
        assert splay_crossing_cost(inst) == 1
        assert splay_bookkeeping_cost(inst) == 0

    def test_splay_crossings_can_dip_below_bound(self):
        inst = Instance((3, 1, 4, 2), bst_from_sequence([3, 1, 2, 4]))
        assert crossing_bound(inst) == 9
        assert splay_crossing_cost(inst) == 8


class TestBackwardScan:
    def test_first_access_scores_zero(self):
        assert wilber_score((5, 2, 5), 1) == 0

    def test_lambda2_single_request(self):
        assert sequence_crossing_bound((7,)) == 1

    def test_lambda2_two_requests(self):
        assert sequence_crossing_bound((1, 3)) == 2

    def test_empty_sequence(self):
        assert sequence_crossing_bound(()) == 0

    def test_terminates_on_long_sequences(self, rng):
        for _ in range(200):
            m = rng.randint(1, 12)
            seq = tuple(rng.randint(1, 8) for _ in range(m))
            for i in range(1, m + 1):
                assert wilber_score(seq, i) >= 0

    def test_equivalence_identity_exhaustive_small(self):
        for keycount in range(1, 4):
            for m in range(1, 5):
                for seq in itertools.product(range(1, keycount + 1), repeat=m):
                    t = bst_from_sequence(seq)
                    assert sequence_crossing_bound(seq) == (
                        crossing_bound(Instance(seq, t)) - size(t) + 1
                    )


class TestRemoveOneGap:
    def test_empty_sequence_gap_zero(self):
        s = bst_from_sequence([2, 1, 3])
        assert remove_one_gap(s, 1, ()) == 0

    def test_retracted_bound_counterexample(self):
        s = bst_from_sequence([1, 7, 4, 2, 3, 6, 5])
        gap = remove_one_gap(s, 4, (5, 3))
        assert level(s, 4) == 3
        assert gap > 3
        assert gap <= 4 * level(s, 4)

    def test_factor_four_random(self, rng):
        for _ in range(300):
            n = rng.randint(1, 9)
            s = make_random_tree(rng, n)
            x = rng.randint(1, n)
            z = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 6)))
            assert remove_one_gap(s, x, z) <= 4 * level(s, x)


class TestWindowDecomposition:
    def test_initial_state(self):
        s = bst_from_sequence([2, 1, 3])
        steps, _ = window_decompose(s, 1, ())
        st0 = steps[0]
        assert st0.top_keys == ()
        assert st0.zipped == s
        from splaylab.algorithms import move_to_root

        assert st0.unzipped == move_to_root(s, 1)[0]

    def test_after_accessing_x_everything_collapses(self):
        s = bst_from_sequence([4, 2, 1, 3, 5])
        steps, _ = window_decompose(s, 2, (2, 4, 1))
        for st_ in steps[1:]:
            assert st_.u == st_.v == 2
            assert st_.zipped is None and st_.unzipped is None
            assert st_.s_tree == st_.t_tree

    def test_delta_sum_matches_gap_random(self, rng):
        for _ in range(150):
            n = rng.randint(2, 8)
            s = make_random_tree(rng, n)
            x = rng.randint(1, n)
            z = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 6)))
            steps, wits = window_decompose(s, x, z)
            assert sum(w.delta_z for w in wits) == remove_one_gap(s, x, z)

    def test_formula_validator_random(self, rng):
        for _ in range(150):
            n = rng.randint(2, 8)
            s = make_random_tree(rng, n)
            x = rng.randint(1, n)
            z = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 6)))
            steps, wits = window_decompose(s, x, z)
            report = validate_level_formulas(steps, wits, x)
            assert report.ok, report.violations[:3]

    def test_absent_key_rejected(self):
        with pytest.raises(KeyError):
            window_decompose(bst_from_sequence([2, 1, 3]), 9, (1,))
