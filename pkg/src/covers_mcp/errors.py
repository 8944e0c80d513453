"""
Exception types raised by the algorithm layer.

The service layer (service.py) turns these into error dicts; nothing below
the service layer catches them.
"""


class CoversError(Exception):
    """Base class for all covers-mcp errors."""

    kind = "internal"


class CoverInputError(CoversError, ValueError):
    """Bad symbol, index, length or pattern supplied by the caller."""

    kind = "usage"


class ContractViolation(CoversError, ValueError):
    """A primitive was called outside its contract (e.g. IPM with |Y| > 2|X|)."""

    kind = "usage"


class IndexBuildError(CoversError, RuntimeError):
    """Construction or query found an inconsistency; this is a logic bug."""


class BudgetExhausted(CoversError, RuntimeError):
    """The adversary refused a query because the budget q was reached."""


class HarnessMisuse(CoversError, RuntimeError):
    """The adversary harness was driven past its guarantees."""

    kind = "usage"
