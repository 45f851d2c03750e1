"""Exception types shared across the package."""
from __future__ import annotations


class DemorganError(Exception):
    """Base class for all package errors."""


class MalformedTable(DemorganError):
    """A table is ragged, has the wrong shape or holds out-of-range entries."""


class AxiomViolation(DemorganError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = [f"{v.law} at {v.witness}" for v in self.violations]
        super().__init__("axiom violations: " + "; ".join(lines))


class NotInvolutive(DemorganError):
    """Raised when an involution is required but the algebra has none."""


class UndefinedConnective(DemorganError):
    pass


class SignatureMismatch(DemorganError):
    pass


class SpecViolation(DemorganError):
    def __init__(self, clause: str, witness: tuple):
        self.clause = clause
        self.witness = witness
        super().__init__(f"skew order clause {clause} fails at {witness}")


class NotCrystalline(DemorganError):
    pass


class UnknownName(DemorganError):
    pass


class Inconsistent(DemorganError):
    pass


class BudgetExceeded(DemorganError):
    pass


class IllDefinedOperation(DemorganError):
    pass
