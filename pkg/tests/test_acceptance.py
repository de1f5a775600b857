"""Acceptance battery: every criterion runs at its stated scale and prints
one pass/fail line.  Run with ``pytest -s tests/test_acceptance.py`` to see
the lines as they complete, or ``splaylab verify --suite all``."""

import pytest

from splaylab.suites import SUITES, run_suite

CRITERIA = [
    ("g4", 1, "transition digraph facts for four and three keys"),
    ("transform", 2, "transformation property with cost at most 80n"),
    ("embedding", 3, "simulation embedding: subsequence, 80x cost, short paths"),
    ("opt-monotone", 4, "optimal cost strictly monotone; elision strictly cheaper"),
    ("wilber-equivalence", 5, "score-function bound equals the treap formulation"),
    ("lambda-opt", 6, "crossing bound within 24x of the oracle"),
    ("remove-one", 7, "lifting one key changes the bound by at most 4x its level"),
    ("wilber-monotone", 8, "crossing bound approximately monotone with factor 4"),
    ("window", 9, "window decomposition invariants and level formulas"),
    ("repetition", 10, "augmented repetitions scale exactly; oracle bound 83k"),
    ("families", 11, "subsequence-overhead families hit their ratios"),
    ("rotation-model", 12, "rotation-model conversions within 3x and 4x"),
    ("topdown", 13, "top-down digraph non-connectivity; framed embedding"),
    ("universal", 14, "universal transforms realize the subtree from any superset"),
    ("simultaneous", 15, "four-node transforms drive both algorithms identically"),
    ("probes", 16, "conjecture probes run deterministically, assert nothing"),
]


@pytest.mark.parametrize("suite,number,summary", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance_criterion(suite, number, summary):
    result = run_suite(suite)[0]
    status = "PASS" if result.passed else "FAIL"
    print(f"criterion {number:2d} [{status}] {suite}: {result.detail} ({result.seconds:.1f}s)")
    assert result.passed, f"criterion {number} ({suite}): {result.detail}"


def test_every_suite_is_a_criterion():
    assert set(SUITES) == {c[0] for c in CRITERIA}
