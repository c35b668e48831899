"""Flatness verdicts shared by the Riemannian and sub-Riemannian certifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .symexpr import SampleConfig, ZeroVerdict, is_zero

FLAT_PROVEN = "FlatProven"
FLAT_NUMERIC = "FlatNumeric"
NOT_FLAT = "NotFlat"
UNDECIDED = "Undecided"


@dataclass
class Violation:
    slot: str
    expr: str
    witness: Optional[tuple]
    value: Optional[float]

    def to_dict(self):
        return {
            "slot": self.slot,
            "expr": self.expr,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "value": self.value,
        }


@dataclass
class FlatnessReport:
    verdict: str
    violations: list = field(default_factory=list)
    transcript: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    residuals_checked: int = 0

    @property
    def flat(self) -> bool:
        return self.verdict in (FLAT_PROVEN, FLAT_NUMERIC)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "violations": [v.to_dict() for v in self.violations],
            "transcript": dict(self.transcript),
            "warnings": list(self.warnings),
            "residuals_checked": self.residuals_checked,
        }


def aggregate_residuals(named_residuals, config: SampleConfig = SampleConfig()) -> FlatnessReport:
    """Zero-test every (name, Expr) residual and fold into one verdict.

    Every residual ProvenZero -> FlatProven; zero with at least one
    numeric grade -> FlatNumeric; any nonzero -> NotFlat carrying the
    worst violations.
    """
    report = FlatnessReport(verdict=FLAT_PROVEN)
    numeric = False
    for name, e in named_residuals:
        report.residuals_checked += 1
        v = is_zero(e, config=config)
        if v.is_zero:
            if v.kind == "NumericallyZero":
                numeric = True
            continue
        witness = v.witness
        value = v.value
        report.violations.append(Violation(name, str(e), witness, value))
    if report.violations:
        report.verdict = NOT_FLAT
        report.violations.sort(key=lambda x: -(abs(x.value) if x.value is not None else 0.0))
    elif numeric:
        report.verdict = FLAT_NUMERIC
    return report
