"""Acceptance battery: one test per verification criterion.

Each test runs the corresponding named check from ``sturmlab.checks`` (the
same registry the ``sturmlab verify-all`` command uses), prints its one-line
verdict, and enforces the runtime budget where one is pinned.
"""

import pytest

from sturmlab.checks import run_check


def run_and_report(name: str, budget: float = None):
    result = run_check(name)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {name} [{result.seconds:.2f}s] {result.detail}")
    assert result.passed, f"{name}: {result.detail}"
    if budget is not None:
        assert result.seconds < budget, (
            f"{name} took {result.seconds:.1f}s, budget {budget:.0f}s"
        )
    return result


def test_cyclic_products_balanced_maximizer():
    run_and_report("cyclic-products", budget=60.0)


def test_sturmian_measure_support_and_weights():
    run_and_report("sturmian-measure")


def test_convex_order_least_element():
    run_and_report("convex-order", budget=120.0)


def test_jsr_golden_ratio_bracket():
    run_and_report("jsr-golden-ratio")


def test_alpha_star_reference_digits():
    run_and_report("alpha-star-digits", budget=5.0)


def test_trace_recurrence():
    run_and_report("trace-recurrence")


def test_optimal_ratio_staircase():
    run_and_report("ratio-staircase", budget=600.0)


def test_heaps_balanced_schedules():
    run_and_report("heaps-balanced")


def test_wigner_ground_states_balanced():
    run_and_report("wigner-ground-states", budget=60.0)


def test_words_core_invariants():
    run_and_report("words-core")


def test_queue_admission_competition():
    run_and_report("queue-admission")


def test_registry_covers_exactly_the_battery():
    from sturmlab.checks import check_names

    assert check_names() == [
        "cyclic-products",
        "sturmian-measure",
        "convex-order",
        "jsr-golden-ratio",
        "alpha-star-digits",
        "trace-recurrence",
        "ratio-staircase",
        "heaps-balanced",
        "wigner-ground-states",
        "words-core",
        "queue-admission",
    ]


def test_unknown_check_rejected():
    with pytest.raises(ValueError):
        run_check("no-such-criterion")
