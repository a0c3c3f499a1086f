"""Exact boundary complexes, stable fibers and weight walls for del Pezzo moduli."""

import json
from fractions import Fraction

from ._core import (
    DomainError,
    canonical_form,
    catalog_labels,
    classify_wall,
    count_strata,
    eckardt_count,
    lines,
    roots,
    subsystems,
)
from . import _core

__all__ = [
    "DomainError",
    "canonical_form",
    "catalog_labels",
    "chamber_model",
    "classify_wall",
    "count_strata",
    "eckardt_count",
    "fiber",
    "lines",
    "restrictions",
    "roots",
    "subsystems",
    "total_degree",
    "walls",
]


def _weight(c):
    if c is None:
        return None
    if isinstance(c, float):
        raise TypeError("weights must be exact: pass a Fraction, an int or a 'p/q' string")
    return str(Fraction(c)) if not isinstance(c, str) else c


def fiber(fiber_type, weight=None):
    return json.loads(_core.fiber_json(fiber_type, _weight(weight)))


def chamber_model(fiber_type, weight):
    return fiber(fiber_type, weight)


def restrictions(fiber_type, weight=None):
    return _core.restrictions(fiber_type, _weight(weight))


def total_degree(model, c):
    return Fraction(_core.total_degree(json.dumps(model), _weight(c)))


def walls(degree, threads=1):
    report = json.loads(_core.walls_json(degree, threads))
    report["walls"] = [Fraction(w) for w in report["walls"]]
    return report
