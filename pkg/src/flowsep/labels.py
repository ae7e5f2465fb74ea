"""Shared label vocabulary for activities, outcomes, and fused events."""

from __future__ import annotations

import enum

ACTIVITY_NAMES = ("3-point", "free-throw", "layup", "2-point", "slam-dunk", "steal")
NUM_ACTIVITIES = len(ACTIVITY_NAMES)
STEAL = ACTIVITY_NAMES.index("steal")


class Outcome(enum.IntEnum):
    """Success/failure outcome; the value is the index in the 2-d outcome vector."""

    SUCCESS = 0
    FAILURE = 1


EVENT12_NAMES = tuple(
    f"{name} {suffix}" for name in ACTIVITY_NAMES for suffix in ("succ.", "fail.")
)
# Steal success/failure collapse into one terminal class.
EVENT11_NAMES = EVENT12_NAMES[:10] + ("steal",)


def activity_index(token: str) -> int:
    """Resolve an activity given either its index or its name.

    Accepts '0'..'5' or a name, case-insensitive, with '-', '_' or spaces
    interchangeable ('slam dunk' == 'slam-dunk' == 'SLAM_DUNK').
    """
    token = token.strip()
    if token.isdigit():
        idx = int(token)
        if 0 <= idx < NUM_ACTIVITIES:
            return idx
        raise ValueError(f"activity index {idx} out of range 0..{NUM_ACTIVITIES - 1}")
    canon = token.lower().replace("_", "-").replace(" ", "-")
    try:
        return ACTIVITY_NAMES.index(canon)
    except ValueError:
        raise ValueError(f"unknown activity {token!r}; expected one of {ACTIVITY_NAMES}") from None


def outcome_from_token(token: str) -> Outcome | None:
    """Parse success/failure/none (None meaning no outcome annotation)."""
    canon = token.strip().lower()
    if canon in ("success", "succ", "succ."):
        return Outcome.SUCCESS
    if canon in ("failure", "fail", "fail."):
        return Outcome.FAILURE
    if canon in ("none", "-", ""):
        return None
    raise ValueError(f"unknown outcome {token!r}; expected success, failure, or none")
