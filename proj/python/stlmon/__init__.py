"""Streaming STL monitoring: classic robustness intervals, causation
distances, epoch diagnostics, and the reset baseline."""

from ._stlmon import *  # noqa: F401,F403
from ._stlmon import (
    BooleanCausationMonitor,
    CausationVerdict,
    ClassicMonitor,
    QuantitativeCausationMonitor,
    ResetMonitor,
    Trace,
    Verdict,
    derive_bcaum,
    derive_verdict,
    parse,
    robustness,
    satisfaction_epoch,
    satisfies,
    synth_trace,
    violation_epoch,
)

__all__ = [
    "BooleanCausationMonitor",
    "CausationVerdict",
    "ClassicMonitor",
    "QuantitativeCausationMonitor",
    "ResetMonitor",
    "Trace",
    "Verdict",
    "derive_bcaum",
    "derive_verdict",
    "parse",
    "robustness",
    "satisfaction_epoch",
    "satisfies",
    "synth_trace",
    "violation_epoch",
]
