"""AMMET region classification of government spending shares.

The gain-versus-share diagram splits into three policy bands:

    A   0.085 <= alpha <= 0.35   sustainable mixed economies
    B   0.4   <= alpha <= 0.75   heavy social-protection economies
    C   alpha > 0.75             weak growth (gain below 4/3), not advisable

The published bands leave two stretches uncovered; rather than guess which
band was meant, shares below 0.085 get BELOW_A and shares strictly between
0.35 and 0.4 get GAP_AB. Together the five labels partition every positive
share, endpoints inclusive on the stated bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError
from .model import PAIR_RTOL, beta_from_alpha
from .worldbank import CountryRecord, to_alpha

# Band edges as published; endpoints belong to the named band.
A_LOWER = 0.085
A_UPPER = 0.35
B_LOWER = 0.4
B_UPPER = 0.75


class Region(Enum):
    """Classification outcome for one spending share."""

    BELOW_A = "below_A"
    A = "A"
    GAP_AB = "gap_AB"
    B = "B"
    C = "C"


def classify_alpha(alpha: float) -> Region:
    """Label a spending share with its AMMET region."""
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise DomainError(f"alpha must be finite and > 0, got {alpha!r}")
    if alpha < A_LOWER:
        return Region.BELOW_A
    if alpha <= A_UPPER:
        return Region.A
    if alpha < B_LOWER:
        return Region.GAP_AB
    if alpha <= B_UPPER:
        return Region.B
    return Region.C


@dataclass(frozen=True)
class ClassifiedRecord:
    """A country record with its share, gain, and region."""

    country: CountryRecord
    alpha: float
    beta: float
    region: Region

    def __post_init__(self):
        if abs(self.alpha * self.beta - 1.0) > PAIR_RTOL:
            raise DomainError(
                f"alpha*beta must equal 1, got {self.alpha * self.beta!r}"
            )
        if self.region is not classify_alpha(self.alpha):
            raise DomainError(
                f"region {self.region} inconsistent with alpha={self.alpha!r}"
            )


@dataclass(frozen=True)
class ClassificationResult:
    """Classified rows, a per-region census, and the skipped records.

    The census counts classified rows only; skipped records (missing or
    zero expenditure, where the gain is undefined) are listed separately so
    nothing is dropped silently. Census total plus skipped count equals the
    input length.
    """

    records: tuple[ClassifiedRecord, ...]
    census: dict[Region, int]
    skipped: tuple[CountryRecord, ...] = field(default_factory=tuple)


def classify_records(records: list[CountryRecord]) -> ClassificationResult:
    """Classify every record that carries a usable expenditure share.

    Records with a missing percentage, or one so small that the share
    rounds to zero (gain undefined), land in `skipped`.
    """
    classified: list[ClassifiedRecord] = []
    skipped: list[CountryRecord] = []
    census = {region: 0 for region in Region}
    for record in records:
        if record.expenditure_pct is None or record.expenditure_pct <= 0:
            skipped.append(record)
            continue
        alpha = to_alpha(record.expenditure_pct)
        if alpha <= 0:  # sub-0.05% expenditure rounds to a zero share
            skipped.append(record)
            continue
        region = classify_alpha(alpha)
        classified.append(
            ClassifiedRecord(
                country=record,
                alpha=alpha,
                beta=beta_from_alpha(alpha),
                region=region,
            )
        )
        census[region] += 1
    return ClassificationResult(
        records=tuple(classified), census=census, skipped=tuple(skipped)
    )
