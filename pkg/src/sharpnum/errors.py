"""Exception hierarchy shared by all sharpnum modules.

Every error carries a machine-readable ``kind`` (snake_case), which the CLI
echoes in its structured JSON error reports.
"""

from __future__ import annotations

import re


def _snake(name: str) -> str:
    name = name.removesuffix("Error")
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


class SharpError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self) -> str:
        return _snake(type(self).__name__)


class IndexSetError(SharpError):
    """Invalid index-set constructor data (residue range, exception overlap)."""


class FieldMismatchError(SharpError):
    """Operands live over different scalar fields."""


class NotAUnitError(SharpError):
    """Inversion requested for a non-unit."""


class ComplexOrderUndefinedError(SharpError):
    """Order predicates are only defined over the real scalar field."""


class IndeterminateSignError(SharpError):
    """abs() needs a certified sign on every region."""


class NotQPositiveError(SharpError):
    """Square roots require a certified q-positive argument."""


class IrrationalLeadingCoefficientError(SharpError):
    """A square root left the rational-coefficient class."""


class NotIdempotentError(SharpError):
    """Idempotent decomposition of a non-idempotent."""


class NonRealIdempotentError(SharpError):
    """Diagnostic: a quaternion idempotent outside the scalar characteristic
    family. Not reachable for exact class members; raised as a test hook."""


class InexactError(SharpError):
    """Base for operations that demand exact (untruncated) inputs."""


class InexactGeneratorError(InexactError):
    pass


class InexactElementError(InexactError):
    pass


class InexactCoefficientError(InexactError):
    pass


class InexactInputError(InexactError):
    pass


class ContainmentViolationError(SharpError):
    """Diagnostic: a norm-ideal hull failed to contain a component."""


class ArityMismatchError(SharpError):
    """Multivariate polynomials over different variable counts."""


class DegreeTooHighError(SharpError):
    """The quadratic case analysis only covers degree <= 2."""


class PreconditionFailedError(SharpError):
    """A stated operation precondition does not hold."""


class ParseError(SharpError):
    """Expression syntax error with byte offset and expected-token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.offset = offset
        self.expected = expected

    def __str__(self) -> str:
        base = super().__str__()
        if self.expected:
            return f"{base} at offset {self.offset} (expected {', '.join(self.expected)})"
        return f"{base} at offset {self.offset}"
