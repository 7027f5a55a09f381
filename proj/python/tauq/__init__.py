"""Bound quivers, tau-tilting finiteness and brick censuses."""

import json

from ._core import (
    AdmissibilityError,
    BoundQuiver,
    BudgetError,
    Error,
    ParseError,
    PreconditionError,
    are_isomorphic,
    glue,
    linear_A,
    model_A,
    model_B,
    model_C,
    model_D,
    model_E,
    parse,
    resolve,
    resolve_all,
)
from . import _core

__all__ = [
    "AdmissibilityError", "BoundQuiver", "BudgetError", "Error", "ParseError", "PreconditionError",
    "analyze", "are_isomorphic", "bricks", "classify", "family", "glue", "linear_A", "load",
    "model_A", "model_B", "model_C", "model_D", "model_E", "parse", "resolve", "resolve_all",
]


def load(path, allow_disconnected=False):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), allow_disconnected)


def analyze(bq):
    """Report dict: nodes, distributivity, relation counts."""
    return json.loads(_core._analyze(bq))


def classify(bq, witness_field=None, probe=0):
    return json.loads(_core._classify(bq, witness_field, probe))


def bricks(bq, dims, field, budget=10_000_000, threads=0):
    return json.loads(_core._bricks(bq, list(dims), field, budget, threads))


def family(bq, field, count, vertex=None, target=None):
    """One-parameter brick family with parameters 0..count-1."""
    return json.loads(_core._family(bq, field, count, vertex, target))
