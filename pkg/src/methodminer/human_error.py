"""Human-factor scoring of change events.

Two per-event scores are computed and summed per method:

* a retention ("savings") score from a forgetting curve, measuring how much
  of the author's prior exposure to the method plausibly survives at the
  time of the change, and
* an alertness score looked up from a fixed table of time-of-day bins using
  the author's local clock time as recorded in the commit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, time

from .errors import DomainError


@dataclass(frozen=True)
class ForgettingCurveParams:
    """Constants of the savings curve b = 100*k / ((log t)^c + k).

    The defaults (c=1.25, k=1.84) are the published fit of the curve;
    log_base is 10 by default and may be set to math.e.
    """

    c: float = 1.25
    k: float = 1.84
    log_base: float = 10.0

    def __post_init__(self) -> None:
        if self.c <= 0 or self.k <= 0:
            raise ValueError("curve constants c and k must be positive")
        if self.log_base <= 1.0:
            raise ValueError("log base must be greater than 1")


DEFAULT_CURVE = ForgettingCurveParams()

# Time-of-day alertness bins: (start minute, end minute, score), half-open
# [start, end), covering the full day with no gaps or overlaps.
ALERTNESS_BINS: tuple[tuple[int, int, float], ...] = (
    (0, 330, 0.0),       # 00:00-05:30
    (330, 360, 5.0),     # 05:30-06:00
    (360, 450, 23.5),    # 06:00-07:30
    (450, 510, 60.0),    # 07:30-08:30
    (510, 570, 82.0),    # 08:30-09:30
    (570, 630, 86.5),    # 09:30-10:30
    (630, 690, 77.3),    # 10:30-11:30
    (690, 750, 66.0),    # 11:30-12:30
    (750, 810, 76.5),    # 12:30-13:30
    (810, 870, 88.5),    # 13:30-14:30
    (870, 930, 77.3),    # 14:30-15:30
    (930, 990, 57.3),    # 15:30-16:30
    (990, 1050, 44.2),   # 16:30-17:30
    (1050, 1110, 48.2),  # 17:30-18:30
    (1110, 1170, 68.0),  # 18:30-19:30
    (1170, 1230, 82.0),  # 19:30-20:30
    (1230, 1290, 80.9),  # 20:30-21:30
    (1290, 1350, 99.2),  # 21:30-22:30
    (1350, 1410, 64.5),  # 22:30-23:30
    (1410, 1440, 17.3),  # 23:30-24:00
)


@dataclass
class HEMetrics:
    """Per-method sums of the two human-factor scores."""

    e1_memory_decay: float = 0.0
    e2_alertness: float = 0.0


@dataclass
class HEDiagnostics:
    """Counters for degenerate inputs seen while scoring."""

    clock_skew_events: int = 0


def savings(t_minutes: float, params: ForgettingCurveParams = DEFAULT_CURVE) -> float:
    """Retention percentage after t_minutes; 100.0 means full retention.

    Defined for t >= 1 minute: below that the logarithm goes negative and
    the fractional power is not real.
    """
    if t_minutes < 1:
        raise DomainError(f"savings is defined for t >= 1 minute, got {t_minutes}")
    if params.log_base == 10.0:
        lg = math.log10(t_minutes)
    elif params.log_base == math.e:
        lg = math.log(t_minutes)
    else:
        lg = math.log(t_minutes, params.log_base)
    return 100.0 * params.k / (lg**params.c + params.k)


def memory_decay_event(
    prev_touch: datetime | None,
    now: datetime,
    params: ForgettingCurveParams = DEFAULT_CURVE,
    diagnostics: HEDiagnostics | None = None,
) -> float:
    """Savings score for one change, given the same author's previous touch
    of the same method.

    First touch (no prior exposure) scores 0. Elapsed time is whole minutes,
    clamped to at least 1; a prev_touch at or after now is treated as one
    minute and counted as clock skew.
    """
    if prev_touch is None:
        return 0.0
    if prev_touch >= now:
        if diagnostics is not None:
            diagnostics.clock_skew_events += 1
        t = 1
    else:
        t = max(1, math.floor((now - prev_touch).total_seconds() / 60.0))
    return savings(t, params)


def alertness_event(local_time: datetime | time) -> float:
    """Score of the unique half-open bin containing the local clock time."""
    if isinstance(local_time, datetime):
        local_time = local_time.timetz()
    seconds = local_time.hour * 3600 + local_time.minute * 60 + local_time.second
    for start, end, score in ALERTNESS_BINS:
        if start * 60 <= seconds < end * 60:
            return score
    raise AssertionError("alertness bins must cover the full day")


def aggregate_he(decay_scores: list[float], alertness_scores: list[float]) -> HEMetrics:
    """Sum per-event scores into the per-method metrics."""
    return HEMetrics(
        e1_memory_decay=sum(decay_scores),
        e2_alertness=sum(alertness_scores),
    )


def he_for_events(
    events: list,
    params: ForgettingCurveParams = DEFAULT_CURVE,
    diagnostics: HEDiagnostics | None = None,
) -> HEMetrics:
    """Fold one method's change events (oldest first) into HEMetrics.

    Each event needs an author key and an offset-aware timestamp; the decay
    chain is tracked per author, so one author's history never feeds
    another's score.
    """
    last_touch: dict[str, datetime] = {}
    decay: list[float] = []
    alert: list[float] = []
    for ev in events:
        author = ev.author.key if hasattr(ev.author, "key") else str(ev.author)
        when = ev.authored_at
        decay.append(memory_decay_event(last_touch.get(author), when, params, diagnostics))
        alert.append(alertness_event(when))
        last_touch[author] = when
    return aggregate_he(decay, alert)
