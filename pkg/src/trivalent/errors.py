"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TrivalentError(Exception):
    """Base class for all errors raised by this package."""


class CaptureError(TrivalentError):
    """A term is not free for a variable in a formula."""


class SignatureError(TrivalentError):
    """A formula uses a connective outside the active signature."""


class ParseError(TrivalentError):
    """Concrete-syntax error, carrying the offending span and what was expected."""

    def __init__(self, message: str, span=None, expected=()):
        self.message = message
        self.span = span
        self.expected = tuple(sorted(set(expected)))
        text = message
        if span is not None:
            text = f"{message} at line {span.line}, column {span.column}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class SchemaError(TrivalentError):
    """A JSON container file is missing a field or has the wrong shape."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ArityError(SchemaError):
    pass


class DomainError(SchemaError):
    """A table entry falls outside the carrier or domain."""


class UnboundVariable(TrivalentError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


class BudgetExceeded(TrivalentError):
    """A configured enumeration cap was hit."""


class VariableBudgetExceeded(BudgetExceeded):
    pass


class CarrierBudgetExceeded(BudgetExceeded):
    pass


class AssignmentBudgetExceeded(BudgetExceeded):
    pass


class ProofNotFound(BudgetExceeded):
    """No derivation exists within the search budget.

    This never means the goal is unprovable, only that the bounded search ran dry.
    """

    def __init__(self, depth: int, explored: int):
        self.depth = depth
        self.explored = explored
        super().__init__(f"no derivation within depth {depth} ({explored} formulas explored)")


class NotModal(TrivalentError):
    pass


class NotCongruence(TrivalentError):
    pass


class PartitionError(TrivalentError):
    pass


class NotSemisimpleWitness(TrivalentError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"decomposition map identifies distinct elements {x} and {y}")


class TrivialAlgebraError(TrivalentError):
    pass


class MeetUndefined(TrivalentError):
    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"no infimum exists for elements {self.witness}")
