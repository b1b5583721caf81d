"""Sweeps, timelines and availability runs."""

import dataclasses
import math
import time

import numpy as np
import pytest
from scipy import stats

from owclink.adaptation import AdaptationConfig
from owclink.channel import AtmosphereModel, ChannelState, GlassPane, WeatherDistribution, total_channel_loss_db
from owclink.config import AvailabilitySpec, SweepSpec, Timeline, TimelineEvent
from owclink.optics import LinkGeometry
from owclink.phy import FrontendParams, link_rate
from owclink.scenario import _loss_budget_db, demo_scenario, run_availability, run_sweep, run_timeline


# --- sweep --------------------------------------------------------------------

def test_sweep_endpoints_and_order():
    recs = run_sweep(demo_scenario(), SweepSpec(25, 100, 25))
    assert [r.distance_m for r in recs] == [25, 50, 75, 100]
    rates = [r.rate_mbps for r in recs]
    assert rates == sorted(rates, reverse=True)
    assert all(0 < r <= 2000.0 + 1e-9 for r in rates)


def test_sweep_step_larger_than_range():
    recs = run_sweep(demo_scenario(), SweepSpec(25, 100, 500))
    assert len(recs) == 1 and recs[0].distance_m == 25


def test_sweep_distances_strictly_increase():
    d = [r.distance_m for r in run_sweep(demo_scenario())]
    assert len(d) == 191
    assert all(b > a for a, b in zip(d, d[1:]))


def test_sweep_dark_frontend_gives_zero_rate():
    cfg = demo_scenario(frontend=FrontendParams(tx_optical_power=1e-15))
    assert all(r.rate_mbps == 0.0 for r in run_sweep(cfg, SweepSpec(10, 200, 10)))


def test_sweep_matches_stateless_rate():
    cfg = demo_scenario()
    for r in run_sweep(cfg, SweepSpec(10, 200, 19)):
        state = ChannelState(LinkGeometry(r.distance_m))
        assert r.rate_mbps == pytest.approx(
            link_rate(cfg.frontend, cfg.tx_optics, cfg.rx_optics, state, cfg.ofdm) / 1e6, rel=1e-12
        )


def test_sweep_is_deterministic():
    cfg = demo_scenario()
    assert run_sweep(cfg) == run_sweep(cfg)


# --- timeline -----------------------------------------------------------------

def test_timeline_step_count_and_times():
    recs = run_timeline(demo_scenario())
    assert len(recs) == 21
    assert [r.time_ms for r in recs] == [100.0 * k for k in range(21)]


def test_empty_timeline_is_constant():
    recs = run_timeline(demo_scenario(timeline=Timeline(1000.0, ())))
    # first step trains the table from zero; afterwards nothing changes
    assert len({dataclasses.astuple(r)[1:] for r in recs[1:]}) == 1
    assert recs[0] == dataclasses.replace(recs[1], time_ms=0.0)


def test_insert_then_remove_returns_to_start():
    tl = Timeline(2000.0, (TimelineEvent(500.0, "insert_glass"), TimelineEvent(1200.0, "remove_glass")))
    recs = run_timeline(demo_scenario(timeline=tl))
    assert dataclasses.astuple(recs[-1])[1:] == dataclasses.astuple(recs[0])[1:]
    during = [r for r in recs if 500.0 <= r.time_ms < 1200.0]
    assert all(r.owc_rate_mbps < recs[0].owc_rate_mbps for r in during)
    assert all(not r.mmwave_link_up for r in during)


@pytest.mark.parametrize("distance", [20.0, 50.0, 120.0])
def test_zero_hysteresis_tracks_stateless_rate(distance):
    tl = Timeline(1500.0, (
        TimelineEvent(300.0, "insert_glass", (GlassPane("p", 4.0),)),
        TimelineEvent(600.0, "set_atmosphere", attenuation_db_per_km=40.0),
        TimelineEvent(900.0, "remove_glass"),
        TimelineEvent(1200.0, "set_offset", lateral_offset=0.5),
    ))
    cfg = demo_scenario(timeline=tl, adaptation=AdaptationConfig(hysteresis_db=0.0),
                         channel=ChannelState(LinkGeometry(distance)))
    state = cfg.channel
    events = list(tl.events)
    for rec in run_timeline(cfg):
        while events and events[0].time <= rec.time_ms:
            state = events.pop(0).apply(state)
        expected = link_rate(cfg.frontend, cfg.tx_optics, cfg.rx_optics, state, cfg.ofdm) / 1e6
        assert rec.owc_rate_mbps == pytest.approx(expected, rel=1e-12)


def test_timeline_with_scintillation_is_seeded():
    cfg = demo_scenario(channel=ChannelState(LinkGeometry(50.0), AtmosphereModel(0.0, 2.0)))
    a, b = run_timeline(cfg), run_timeline(cfg)
    assert a == b
    c = run_timeline(cfg.replace(seed=1))
    assert [r.owc_mean_snr_db for r in a] != [r.owc_mean_snr_db for r in c]


def test_timeline_rate_never_exceeds_peak():
    cfg = demo_scenario(channel=ChannelState(LinkGeometry(5.0), AtmosphereModel(0.0, 3.0)))
    assert max(r.owc_rate_mbps for r in run_timeline(cfg)) <= cfg.ofdm.peak_rate / 1e6 + 1e-9


# --- availability -------------------------------------------------------------

def _at(distance, weather, n=1_000_000, sigma=0.0):
    return demo_scenario(
        channel=ChannelState(LinkGeometry(distance), AtmosphereModel(0.0, sigma)),
        availability=AvailabilitySpec(n, weather),
    )


def test_clear_weather_always_available():
    assert run_availability(_at(100.0, WeatherDistribution(((0.0, 1.0),)), n=10_000)) == 1.0


def test_catastrophic_fog_never_available():
    assert run_availability(_at(100.0, WeatherDistribution(((5000.0, 1.0),)), n=10_000)) == 0.0


def test_rare_outage_within_three_sigma():
    cfg = _at(100.0, WeatherDistribution(((0.0, 0.999), (1000.0, 0.001))))
    # the heavy state really is beyond the budget, the clear state within it
    budget = _loss_budget_db(cfg)
    clear = total_channel_loss_db(cfg.channel, cfg.tx_optics, cfg.rx_optics).value
    assert clear < budget < clear + 100.0
    t0 = time.perf_counter()
    a = run_availability(cfg)
    elapsed = time.perf_counter() - t0
    sigma = math.sqrt(0.999 * 0.001 / 1_000_000)
    assert abs(a - 0.999) <= 3 * sigma
    assert elapsed < 30.0


def test_availability_is_seeded():
    cfg = _at(100.0, WeatherDistribution(((0.0, 0.9), (1000.0, 0.1))), n=20_000)
    assert run_availability(cfg) == run_availability(cfg)
    assert run_availability(cfg) != run_availability(cfg.replace(seed=5))


def test_scintillation_matches_normal_tail():
    cfg = _at(150.0, WeatherDistribution(((0.0, 1.0),)), n=200_000, sigma=3.0)
    budget = _loss_budget_db(cfg)
    fixed = total_channel_loss_db(ChannelState(LinkGeometry(150.0)), cfg.tx_optics, cfg.rx_optics).value
    # weather that leaves a 2 dB margin, so the fade tail matters
    att = (budget - fixed - 2.0) / 0.15
    p = stats.norm.cdf(2.0 / 3.0)
    a = run_availability(cfg, WeatherDistribution(((att, 1.0),)))
    assert abs(a - p) <= 4 * math.sqrt(p * (1 - p) / 200_000)


def test_stateless_budget_edge():
    cfg = _at(100.0, WeatherDistribution(((0.0, 1.0),)), n=10)
    budget = _loss_budget_db(cfg)
    clear = total_channel_loss_db(cfg.channel, cfg.tx_optics, cfg.rx_optics).value
    km = 0.1
    below = WeatherDistribution((((budget - clear - 0.01) / km, 1.0),))
    above = WeatherDistribution((((budget - clear + 0.01) / km, 1.0),))
    assert run_availability(cfg, below) == 1.0
    assert run_availability(cfg, above) == 0.0


def test_n_samples_validation():
    with pytest.raises(ValueError):
        run_availability(demo_scenario(), n_samples=0)


def test_sample_count_is_respected():
    cfg = _at(100.0, WeatherDistribution(((0.0, 0.5), (5000.0, 0.5))), n=7)
    a = run_availability(cfg)
    assert a * 7 == pytest.approx(round(a * 7))
