"""Exception taxonomy shared across the pipeline.

Exit codes (used by the CLI): 0 ok, 2 schema/input, 3 math precondition,
4 precision exhausted.
"""
from __future__ import annotations


class Selmer2Error(Exception):
    """Base class; carries a machine-readable category and an exit code."""

    category = "error"
    exit_code = 1


class SchemaError(Selmer2Error):
    category = "schema"
    exit_code = 2


class CurveMismatch(SchemaError):
    category = "curve-mismatch"


class MathPreconditionError(Selmer2Error):
    category = "math-precondition"
    exit_code = 3


class DegenerateCurve(MathPreconditionError):
    category = "degenerate-curve"


class NotOrdinaryPresentation(MathPreconditionError):
    category = "not-ordinary"


class BadShift(MathPreconditionError):
    category = "bad-shift"


class HenselFailure(MathPreconditionError):
    category = "hensel-failure"


class NotASquare(MathPreconditionError):
    category = "not-a-square"


class InconsistentSigns(MathPreconditionError):
    category = "inconsistent-signs"


class ComponentVanishes(MathPreconditionError):
    category = "component-vanishes"


class MissingRank(MathPreconditionError):
    category = "missing-rank"


class PrecisionExhausted(Selmer2Error):
    category = "precision-exhausted"
    exit_code = 4
