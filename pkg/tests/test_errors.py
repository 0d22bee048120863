"""Define tests for errors."""

from __future__ import annotations

import pytest

from ncforms.errors import (
    AuditFailureError,
    ExpressionSyntaxError,
    IncompatibleRelationsError,
    InconsistentQFamilyError,
    InvalidQMatrixError,
    NcFormsError,
    NotClosedError,
    UnknownGeneratorError,
    raise_on_report,
)
from ncforms.report import AuditEntry, AuditReport


def test_hierarchy() -> None:
    """Test that every ncforms error can be caught through the base class."""
    assert issubclass(UnknownGeneratorError, ExpressionSyntaxError)
    assert issubclass(InconsistentQFamilyError, InvalidQMatrixError)
    for error in (ExpressionSyntaxError, NotClosedError, InvalidQMatrixError):
        assert issubclass(error, NcFormsError)


def test_syntax_error_position() -> None:
    """Test that a syntax error carries and prints its position."""
    err = ExpressionSyntaxError("Unexpected character '$'", 4)
    assert err.position == 4
    assert str(err) == "Unexpected character '$' (at position 4)"


def test_clean_report() -> None:
    """Test that a clean report raises nothing."""
    raise_on_report(AuditReport("clean", 3))


def test_failing_report() -> None:
    """Test the message built from the first failing entry."""
    report = AuditReport(
        "sample",
        5,
        (AuditEntry("d-relation", "b*a", "a"), AuditEntry("degree", "b", "a")),
    )
    with pytest.raises(AuditFailureError) as err:
        raise_on_report(report)
    assert str(err.value) == (
        "sample: 2 failing check(s); first: d-relation on b*a -> a"
    )
    with pytest.raises(IncompatibleRelationsError):
        raise_on_report(report, IncompatibleRelationsError)


def test_merged_report() -> None:
    """Test combining two audit reports."""
    first = AuditReport("first", 2)
    second = AuditReport("second", 3, (AuditEntry("confluence", "a^3", "a"),))
    merged = first.merged(second, name="both")
    assert merged.name == "both"
    assert merged.checked == 5
    assert not merged.ok
    assert merged.to_dict()["entries"] == [
        {"kind": "confluence", "word": "a^3", "residual": "a"}
    ]
