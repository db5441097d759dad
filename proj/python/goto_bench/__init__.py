"""Desk-scale SE(2) GoTo locomotion benchmark."""

from goto_bench._core import (
    ConfigError,
    Constellation,
    DistanceBreakdown,
    Pose2,
    UsageError,
    constellation_distance,
    constellation_reward,
    evaluate,
    orientation_error,
    run_trial,
    trace,
    train,
    wrap_angle,
)

__all__ = [
    "ConfigError",
    "Constellation",
    "DistanceBreakdown",
    "Pose2",
    "UsageError",
    "constellation_distance",
    "constellation_reward",
    "evaluate",
    "orientation_error",
    "run_trial",
    "trace",
    "train",
    "wrap_angle",
]
