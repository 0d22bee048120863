"""Define exception types for ``ncforms``."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ncforms.report import AuditReport


class NcFormsError(Exception):
    """Define a base ncforms exception."""


class ParameterMismatchError(NcFormsError):
    """Define an exception for Scalars built over different parameter tables."""


class NotInvertibleError(NcFormsError):
    """Define an exception for inverting a Scalar that is not a monomial."""


class SignatureMismatchError(NcFormsError):
    """Define an exception for combining Forms over different signatures."""


class ExpressionSyntaxError(NcFormsError):
    """Define an exception for malformed expression text."""

    def __init__(self, message: str, position: int) -> None:
        """Initialize.

        Args:
        ----
            message: A description of the problem.
            position: The zero-based offset in the text where it was found.

        """
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGeneratorError(ExpressionSyntaxError):
    """Define an exception for a token naming no generator or parameter."""


class NotClosedError(NcFormsError):
    """Define an exception for asking a primitive of a form that is not closed."""


class IncompatibleRelationsError(NcFormsError):
    """Define an exception for relations the homotopy machinery cannot pass through."""


class InvalidPresentationError(NcFormsError):
    """Define an exception for malformed generator, rule or d-image data."""


class AuditFailureError(NcFormsError):
    """Define an exception for an audit that was required to come back clean."""


class InvalidLieDataError(NcFormsError):
    """Define an exception for Lie data that fails a structural check."""


class InvalidQMatrixError(NcFormsError):
    """Define an exception for a malformed matrix of Q-constants."""


class InconsistentQFamilyError(InvalidQMatrixError):
    """Define an exception for a group-indexed Q family that is not self-consistent."""


class CommandLineError(NcFormsError):
    """Define an exception for command-line arguments that cannot be used together."""


def raise_on_report(
    report: AuditReport, error: type[NcFormsError] = AuditFailureError
) -> None:
    """Raise an error if an audit report has entries.

    Args:
    ----
        report: The audit report to inspect.
        error: The exception type to raise.

    Raises:
    ------
        NcFormsError: Raised (as ``error``) when the report is not clean.

    """
    if report.ok:
        return

    first = report.entries[0]
    raise error(
        f"{report.name}: {len(report.entries)} failing check(s); first: "
        f"{first.kind} on {first.word} -> {first.residual}"
    )
