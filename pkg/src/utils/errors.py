"""Error hierarchy"""
from typing import Optional


class HatlfError(Exception):
    pass


class ConfigError(HatlfError):
    pass


# --- model ---

class ModelError(HatlfError):
    pass


class SchemaError(ModelError):
    pass


class DanglingReference(ModelError):
    pass


class PartialTransition(ModelError):
    pass


class DegreeRange(ModelError):
    pass


class UnavailableAction(ModelError):
    pass


# --- formulas ---

class FormulaError(HatlfError):
    pass


class ParseError(FormulaError):
    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownConnective(FormulaError):
    pass


class NegativeBound(FormulaError):
    pass


class ArityError(FormulaError):
    pass


class UnknownAtom(FormulaError):
    pass


# --- checking ---

class NoMatch(HatlfError):
    pass


class InvalidStrategy(HatlfError):
    pass


class StateBlowup(HatlfError):
    pass


class NonConvergence(HatlfError):
    pass


class LimitExceeded(HatlfError):
    pass
