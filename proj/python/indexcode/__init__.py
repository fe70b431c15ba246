"""Bounds and achievable rates for groupcast index coding."""

from fractions import Fraction

from ._indexcode import (
    GuardError,
    Instance,
    InstanceError,
    PreconditionError,
    capm,
    classify,
    directed_cycle,
    exact,
    fixture,
    fixture_names,
    lower_bound,
    normalize,
    random_dag,
    random_gm2,
    random_instance,
    undirected_cycle,
)
from ._indexcode import check as _check
from ._indexcode import scapm_parts as _scapm_parts


def _fraction(parts):
    return Fraction(int(parts[0]), int(parts[1]))


def scapm(instance):
    """(rate as Fraction, block length t, expanded message table)."""
    rate, t, table = _scapm_parts(instance)
    return _fraction(rate), t, table


def check(instance, run_oracle=True, max_oracle_bits=9):
    report = _check(instance, run_oracle, max_oracle_bits)
    report["scapm"] = _fraction(report["scapm"])
    if report["optimal"] is not None:
        report["optimal"] = _fraction(report["optimal"])
    return report


__all__ = [
    "GuardError", "Instance", "InstanceError", "PreconditionError", "capm", "check", "classify",
    "directed_cycle", "exact", "fixture", "fixture_names", "lower_bound", "normalize", "random_dag",
    "random_gm2", "random_instance", "scapm", "undirected_cycle",
]
