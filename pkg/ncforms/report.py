"""Define audit report types shared by the rewrite and calculus layers."""

from __future__ import annotations

from dataclasses import dataclass, field

from ncforms.helpers.types import DictType


@dataclass(frozen=True)
class AuditEntry:
    """Define a single failing check inside an audit."""

    kind: str
    word: str
    residual: str
    detail: str = ""

    def to_dict(self) -> DictType:
        """Return a JSON-ready representation.

        Returns
        -------
            A dictionary with the entry's fields.

        """
        data: DictType = {
            "kind": self.kind,
            "word": self.word,
            "residual": self.residual,
        }
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass(frozen=True)
class AuditReport:
    """Define the outcome of an audit: how much was checked and what failed."""

    name: str
    checked: int = 0
    entries: tuple[AuditEntry, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        """Return whether the audit came back clean."""
        return not self.entries

    def merged(self, other: AuditReport, *, name: str | None = None) -> AuditReport:
        """Combine two reports.

        Args:
        ----
            other: The report to append.
            name: An optional name for the combined report.

        Returns:
        -------
            A report counting and listing both.

        """
        return AuditReport(
            name or self.name,
            self.checked + other.checked,
            self.entries + other.entries,
        )

    def to_dict(self) -> DictType:
        """Return a JSON-ready representation.

        Returns
        -------
            A dictionary with the report's fields.

        """
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "entries": [entry.to_dict() for entry in self.entries],
        }
