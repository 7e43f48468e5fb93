"""
Validation rules of the report and run-configuration models.
"""

import pytest
from pydantic import ValidationError

from sombor_trees.models import AltGreedyValue, Command, ConditionReport, ExtremalReport, RunConfig


def make_report(**overrides) -> ExtremalReport:
    fields = dict(
        sequence=[2, 1, 1],
        index_name="sombor",
        min_value=4.0,
        max_value=4.0,
        argmin_forms=[],
        argmax_forms=[],
        labeled_count=1,
        expected_labeled_count=1,
        unlabeled_count=1,
        greedy_form="(()())",
        greedy_value=4.0,
        greedy_attains_min=True,
        greedy_attains_max=True,
        alt_greedy_attains_min=True,
        alt_greedy_attains_max=True,
        alt_greedy_values=[],
        orientation="min",
        tolerance=1e-9,
    )
    fields.update(overrides)
    return ExtremalReport(**fields)


def test_condition_report_needs_witness():
    with pytest.raises(ValidationError):
        ConditionReport(function="f", holds=False, strict_holds=True, grid_max=10)
    with pytest.raises(ValidationError):
        ConditionReport(function="f", holds=True, strict_holds=True, grid_max=1)

    report = ConditionReport(function="f", holds=True, strict_holds=False,
                             strict_witness=(2, 1, 2, 1), grid_max=10)
    assert report.witness is None


def test_extremal_report_order():
    with pytest.raises(ValidationError):
        make_report(min_value=5.0, max_value=4.0)


def test_verified_follows_orientation():
    assert make_report().verified is True
    assert make_report(greedy_attains_min=False).verified is False
    assert make_report(orientation="max", greedy_attains_max=False).verified is False
    assert make_report(orientation=None).verified is None


def test_alt_greedy_uniform():
    same = [AltGreedyValue(form="a", value=1.0, attains_min=False, attains_max=True),
            AltGreedyValue(form="b", value=1.0, attains_min=False, attains_max=True)]
    mixed = same + [AltGreedyValue(form="c", value=0.5, attains_min=False, attains_max=False)]
    assert make_report(alt_greedy_values=same).alt_greedy_uniform
    assert not make_report(alt_greedy_values=mixed).alt_greedy_uniform
    assert "alt_greedy_uniform" in make_report().model_dump()


def test_alt_greedy_uniform_uses_report_tolerance():
    close = [AltGreedyValue(form="a", value=1.0, attains_min=False, attains_max=True),
             AltGreedyValue(form="b", value=1.05, attains_min=False, attains_max=True)]
    assert not make_report(alt_greedy_values=close).alt_greedy_uniform
    assert make_report(alt_greedy_values=close, tolerance=0.1).alt_greedy_uniform
    with pytest.raises(ValidationError):
        make_report(tolerance=-1.0)


@pytest.mark.parametrize("fields", [
    dict(command=Command.GREEDY),
    dict(command=Command.INDEX),
    dict(command=Command.VERIFY, sequence="1 1", jobs=0),
    dict(command=Command.SWEEP, n_max=1),
])
def test_run_config_rejects(fields):
    with pytest.raises(ValidationError):
        RunConfig(**fields)


def test_run_config_accepts():
    assert RunConfig(command=Command.CONDITION).index_name == "sombor"
    assert RunConfig(command=Command.SWITCH_SCAN, tree_file="t.txt").sequence is None
    assert RunConfig(command="switch-scan", sequence="3 2 2", internal=True).command is Command.SWITCH_SCAN
