"""Typed domain errors.  Each carries a machine-readable code and context."""

from __future__ import annotations


class StaggerError(Exception):
    code = "domain_error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "context": self.context}


class HomogeneityError(StaggerError):
    code = "not_homogeneous"


class DimensionMismatch(StaggerError):
    code = "dimension_mismatch"


class ParityError(StaggerError):
    code = "parity_violation"


class PerversityConditionError(StaggerError):
    code = "perversity_condition"


class NotFiniteLength(StaggerError):
    code = "not_finite_length"


class NotPure(StaggerError):
    code = "not_pure"


class NotChainMap(StaggerError):
    code = "not_chain_map"


class ResolutionTooLong(StaggerError):
    code = "resolution_too_long"


class ExpressionError(StaggerError):
    code = "expression_error"


class ScenarioError(StaggerError):
    code = "scenario_error"
