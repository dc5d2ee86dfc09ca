"""Ground-truth labeling from the seven-day activity log.

A person is not at risk when they meet a published weekly exercise
guideline (vigorous 3x20min or moderate 5x30min) or when their combined
weekly energy expenditure reaches 600 MET-weighted minutes.
"""

from __future__ import annotations

from .survey import ActivityLog, RiskLabel

MET_THRESHOLD = 600.0

# Guideline minima: days/week and average minutes/day.
VIGOROUS_DAYS, VIGOROUS_MIN = 3, 20.0
MODERATE_DAYS, MODERATE_MIN = 5, 30.0


def weekly_met(log: ActivityLog) -> float:
    """MET-weighted minutes per week: moderate counts 4x, vigorous 8x."""
    return 4.0 * log.mod_days * log.mod_min + 8.0 * log.vig_days * log.vig_min


def classify_activity(log: ActivityLog) -> RiskLabel:
    """AT_RISK unless a guideline clause or the 600-MET threshold is met.

    The MET boundary is inclusive: exactly 600 counts as not at risk.
    Minutes are the reported per-day averages, so the guideline clauses
    compare those averages against the per-session minima.
    """
    meets_vigorous = log.vig_days >= VIGOROUS_DAYS and log.vig_min >= VIGOROUS_MIN
    meets_moderate = log.mod_days >= MODERATE_DAYS and log.mod_min >= MODERATE_MIN
    if meets_vigorous or meets_moderate or weekly_met(log) >= MET_THRESHOLD:
        return RiskLabel.NOT_AT_RISK
    return RiskLabel.AT_RISK
