"""Acceptance gate: the twelve panel criteria, one test each.

Every criterion is exact (algebraic identities, no tolerances).  Each test
prints its own pass/fail line so a full run reads as a checklist; the
functions under test are the same ones behind ``torsionlab verify-suite
paper``.
"""

from __future__ import annotations

from torsionlab import suite


def _run(criterion_fn):
    result = criterion_fn(0)
    marker = "PASS" if result.passed else "FAIL"
    print(f"{marker} {result.identifier}: {result.detail}")
    assert result.passed, f"{result.identifier}: {result.detail}"


def test_criterion_01_tensor_power_suite():
    _run(suite.criterion_1_tensor_power_suite)


def test_criterion_02_relation_property():
    _run(suite.criterion_2_relation_property)


def test_criterion_03_node_regression():
    _run(suite.criterion_3_node_regression)


def test_criterion_04_torsion_bound():
    _run(suite.criterion_4_torsion_bound)


def test_criterion_05_depth_tor():
    _run(suite.criterion_5_depth_tor)


def test_criterion_06_carrier_panel():
    _run(suite.criterion_6_carrier_panel)


def test_criterion_07_twisted_flatness():
    _run(suite.criterion_7_twisted_flatness)


def test_criterion_08_infinite_pd_detection():
    _run(suite.criterion_8_infinite_pd_detection)


def test_criterion_09_equivalence_panel():
    _run(suite.criterion_9_equivalence_panel)


def test_criterion_10_regularity_probe():
    _run(suite.criterion_10_regularity_probe)


def test_criterion_11_syzygy_oracle():
    _run(suite.criterion_11_syzygy_oracle)


def test_criterion_12_cli_determinism():
    _run(suite.criterion_12_cli_determinism)
