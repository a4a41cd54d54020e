"""Smoke tests for the python bindings."""

import math

import pytest

import stlmon


def make_trace(values, step=1.0):
    trace = stlmon.Trace(step, ["x"])
    for v in values:
        trace.append([v])
    return trace


def test_parse_and_print_roundtrip():
    f = stlmon.parse("alw_[0,2] (x > 0)", ["x"])
    assert f.horizon == 2.0
    g = stlmon.parse(str(f), ["x"])
    assert str(g) == str(f)
    assert f.atoms() == [(0, "x")]


def test_parse_error_reports_position():
    with pytest.raises(stlmon.ParseError):
        stlmon.parse("alw_[2,1] (x > 0)", ["x"])


def test_offline_robustness():
    trace = make_trace([1, 2, -1, 0, 3, -2])
    f = stlmon.parse("alw_[0,2] (x > 0)", ["x"])
    assert stlmon.robustness(trace, f, 0) == -1.0
    assert not stlmon.satisfies(trace, f, 0)


def test_classic_monitor_stream():
    trace = make_trace([1, 2, -1])
    f = stlmon.parse("alw_[0,2] (x > 0)", ["x"])
    monitor = stlmon.ClassicMonitor(f, trace)
    iv = monitor.step(trace, 0)
    assert iv.upper == 1.0 and math.isinf(iv.lower)
    monitor.step(trace, 1)
    iv = monitor.step(trace, 2)
    assert (iv.lower, iv.upper) == (-1.0, -1.0)
    assert monitor.verdict == stlmon.Verdict.FALSE


def test_causation_monitor_and_reconstruction():
    trace = make_trace([1, 2, -1])
    f = stlmon.parse("alw_[0,2] (x > 0)", ["x"])
    q = stlmon.QuantitativeCausationMonitor(f, trace)
    c = stlmon.ClassicMonitor(f, trace)
    distances = []
    for b in range(3):
        out = q.step(trace, b)
        iv = c.step(trace, b)
        distances.append(out.vio_distance)
        assert out.running_upper == iv.upper
        assert out.running_lower == iv.lower
    assert distances == [1.0, 2.0, -1.0]


def test_epochs_and_boolean_causation():
    trace = make_trace([1, 2, -1])
    f = stlmon.parse("alw_[0,2] (x > 0)", ["x"])
    assert stlmon.violation_epoch(trace, 2, f) == [(0, 2)]
    m = stlmon.BooleanCausationMonitor(f, trace)
    verdicts = [m.step(trace, b) for b in range(3)]
    assert verdicts == [
        stlmon.CausationVerdict.IRRELEVANT,
        stlmon.CausationVerdict.IRRELEVANT,
        stlmon.CausationVerdict.VIOLATION,
    ]


def test_reset_monitor_counts_episodes():
    trace = make_trace([1, 2, -1, 5])
    f = stlmon.parse("alw_[0,1] (x > 0)", ["x"])
    m = stlmon.ResetMonitor(f, trace)
    for b in range(4):
        m.step(trace, b)
    assert m.violation_episodes == 1
    assert m.reset_instants == [1, 2]


def test_synthetic_excursions_recover():
    trace = stlmon.synth_trace("AT1", 46, 1.0)
    f = stlmon.parse(
        "alw_[0,27] (speed > 50 -> ev_[1,3] (RPM < 3000))", trace.variables
    )
    q = stlmon.QuantitativeCausationMonitor(f, trace)
    signs = []
    for b in range(len(trace)):
        out = q.step(trace, b)
        sign = 1 if out.vio_distance > 0 else -1
        if not signs or signs[-1] != sign:
            signs.append(sign)
    assert -1 in signs and signs.count(-1) >= 2  # two violation dips
