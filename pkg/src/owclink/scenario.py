"""Scenario runs: distance sweeps, event timelines and weather availability."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import mmwave
from .adaptation import adapt_step, initial_state
from .channel import COATED_DOUBLE_PANE, ChannelState, WeatherDistribution, total_channel_loss_db
from .config import ScenarioConfig, SweepSpec, Timeline, TimelineEvent
from .optics import LinkGeometry
from .phy import FrontendParams, OfdmConfig, carrier_snr_profile, gross_rate, link_snr_profile, received_optical_power
from .quantities import DecibelOptical, LinkDark

__all__ = [
    "SweepRecord",
    "StepRecord",
    "AvailabilityRecord",
    "run_sweep",
    "run_timeline",
    "run_availability",
    "step_rng",
    "demo_scenario",
    "CALIBRATED_FRONTEND",
    "CALIBRATED_OFDM",
]


@dataclass(frozen=True)
class SweepRecord:
    distance_m: float
    rate_mbps: float
    mean_snr_db: float


@dataclass(frozen=True)
class StepRecord:
    time_ms: float
    owc_rate_mbps: float
    owc_mean_snr_db: float
    owc_link_up: bool
    mmwave_cinr_db: float
    mmwave_link_up: bool


@dataclass(frozen=True)
class AvailabilityRecord:
    distance_m: float
    n_samples: int
    availability: float


def step_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for step ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def run_sweep(config: ScenarioConfig, sweep: SweepSpec | None = None) -> list[SweepRecord]:
    """Rate and mean SNR over the sweep distances, channel otherwise as configured.

    Scintillation is not sampled: sweeps are deterministic.
    """
    sweep = sweep or config.sweep
    base = config.channel
    out = []
    for d in sweep.distances():
        state = dataclasses.replace(base, geometry=dataclasses.replace(base.geometry, distance=d))
        profile = link_snr_profile(config.frontend, config.tx_optics, config.rx_optics, state, config.ofdm)
        rate, _ = gross_rate(profile, config.ofdm)
        out.append(SweepRecord(d, rate / 1e6, profile.mean_db))
    return out


def run_timeline(config: ScenarioConfig) -> list[StepRecord]:
    """Step the link every measurement period, applying due events first.

    Events with equal times apply in list order. Scintillation (when
    configured) is drawn from a per-step generator, so reruns are identical.
    """
    period = config.adaptation.measurement_period
    n_steps = int(math.floor(config.timeline.duration / period + 1e-9)) + 1
    events = list(config.timeline.events)
    state = config.channel
    adapt = initial_state(config.ofdm)
    distance = state.geometry.distance
    records = []
    next_event = 0
    for k in range(n_steps):
        t = k * period
        while next_event < len(events) and events[next_event].time <= t + 1e-9:
            state = events[next_event].apply(state)
            next_event += 1
        profile = link_snr_profile(
            config.frontend, config.tx_optics, config.rx_optics, state, config.ofdm, step_rng(config.seed, k)
        )
        adapt = adapt_step(adapt, profile, config.ofdm, config.adaptation)
        cinr = mmwave.cinr_db(config.mmwave, distance, glass_present=bool(state.panes))
        records.append(
            StepRecord(
                time_ms=t,
                owc_rate_mbps=adapt.current_rate / 1e6,
                owc_mean_snr_db=profile.mean_db,
                owc_link_up=adapt.link_up,
                mmwave_cinr_db=cinr,
                mmwave_link_up=mmwave.link_up(cinr, config.mmwave),
            )
        )
    return records


def _link_up_for_loss(config: ScenarioConfig, loss_db: float) -> bool:
    p = received_optical_power(config.frontend, DecibelOptical(loss_db))
    profile = carrier_snr_profile(p, config.frontend, config.ofdm)
    return gross_rate(profile, config.ofdm)[1].total >= 1


def _loss_budget_db(config: ScenarioConfig) -> float:
    """Largest total optical loss that still loads at least one bit."""
    lo, hi = -200.0, 400.0
    if not _link_up_for_loss(config, lo):
        return -math.inf
    if _link_up_for_loss(config, hi):
        return math.inf
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _link_up_for_loss(config, mid):
            lo = mid
        else:
            hi = mid
    return lo


def run_availability(
    config: ScenarioConfig,
    weather: WeatherDistribution | None = None,
    n_samples: int | None = None,
) -> float:
    """Fraction of seeded weather draws with the OWC link up at the configured distance.

    A link is up when the stateless loading puts at least one bit on some
    carrier; closed-loop downgrades are immediate, so this is also the
    condition for an adapted link to stay up.
    """
    weather = weather or config.availability.weather
    n = config.availability.n_samples if n_samples is None else int(n_samples)
    if n < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(config.seed)
    att = weather.draw(rng, size=n)
    base = config.channel
    sigma = base.atmosphere.scintillation_sigma_db
    distance = base.geometry.distance

    fixed = ChannelState(base.geometry, dataclasses.replace(base.atmosphere, attenuation_db_per_km=0.0,
                                                            scintillation_sigma_db=0.0), base.panes)
    fixed_loss = total_channel_loss_db(fixed, config.tx_optics, config.rx_optics)
    if isinstance(fixed_loss, LinkDark):
        return 0.0
    if sigma == 0.0:
        states, idx = np.unique(att, return_inverse=True)
        up = np.array([_link_up_for_loss(config, fixed_loss.value + a * distance / 1000.0) for a in states])
        ok = up[idx]
        return float(np.count_nonzero(ok)) / n
    losses = fixed_loss.value + att * distance / 1000.0 + rng.normal(0.0, sigma, size=n)
    return float(np.count_nonzero(losses <= _loss_budget_db(config))) / n


# Output of fit(CalibrationSpace(), MEASURED_TARGETS); regenerate with `owclink calibrate`.
CALIBRATED_FRONTEND = FrontendParams(
    tx_optical_power=0.0022360679774997894,
    responsivity=0.5,
    led_rolloff_freq=0.11026515691205863,
    thermal_noise_density=9.999999999999998e-27,
)
CALIBRATED_OFDM = OfdmConfig(snr_gap_db=4.6892578125)


def demo_scenario(**overrides) -> ScenarioConfig:
    """Calibrated demo scenario: 50 m link, coated double pane inserted at 1 s."""
    cfg = ScenarioConfig(
        frontend=CALIBRATED_FRONTEND,
        ofdm=CALIBRATED_OFDM,
        channel=ChannelState(LinkGeometry(50.0)),
        timeline=Timeline(duration=2000.0, events=(TimelineEvent(1000.0, "insert_glass", (COATED_DOUBLE_PANE,)),)),
        sweep=SweepSpec(10.0, 200.0, 1.0),
    )
    return cfg.replace(**overrides) if overrides else cfg
