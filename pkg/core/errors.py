from __future__ import annotations

from typing import Any, Dict, Optional

# ============================================
# CUSTOM EXCEPTIONS
# ============================================


class HolokitBaseException(Exception):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class DimensionMismatchError(HolokitBaseException):
    def __init__(self, message: str, expected: Any = None, got: Any = None):
        super().__init__(message, {"expected": expected, "got": got})


class InvalidStructureError(HolokitBaseException):
    pass


class NotInSoError(HolokitBaseException):
    def __init__(self, message: str = "algebra is not contained in so(eta)"):
        super().__init__(message)


class MissingComplexStructureError(HolokitBaseException):
    def __init__(self, message: str = "operation requires a complex structure J"):
        super().__init__(message)


class UnsupportedMetricError(HolokitBaseException):
    pass


class CurvatureTensorError(HolokitBaseException):
    pass


class ContainmentError(HolokitBaseException):
    pass


class ParameterConstraintError(HolokitBaseException):
    def __init__(self, family: str, constraint: str):
        self.family = family
        self.constraint = constraint
        super().__init__(f"{family}: violated constraint {constraint}", {"family": family, "constraint": constraint})


class RecipeError(HolokitBaseException):
    pass


class FrameMismatchError(HolokitBaseException):
    pass


class InputFormatError(HolokitBaseException):
    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message, {"source": source})
