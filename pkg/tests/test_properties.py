"""Every randomized check suite, driven by hypothesis-chosen seeds."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from mfhrr.checks import CASE_WEIGHT, SUITES, run_suites

SLOW = {"pushforward_chain_map", "kunneth_chain_map", "b_squared_mf", "psi_chain_map",
        "phi_chain_map", "b_squared_curved", "curved_axiom"}


@pytest.mark.parametrize("name", sorted(SUITES))
@settings(max_examples=10)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_suite(name, seed):
    if name in SLOW and seed % 3:
        return
    SUITES[name](random.Random(seed), 4)


def test_run_suites_is_deterministic():
    names = ["ring_axioms", "residue_independence", "b_squared_poly"]
    assert run_suites(42, 3, 3, names) == run_suites(42, 3, 3, names)


def test_run_suites_reports_counts():
    counts, failure = run_suites(0, 4, 5, ["lambda_powers", "pushforward_chain_map"])
    assert failure is None
    assert counts == {"lambda_powers": 5, "pushforward_chain_map": max(1, int(5 * CASE_WEIGHT["pushforward_chain_map"]))}
