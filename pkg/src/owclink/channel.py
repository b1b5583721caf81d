"""Optical-domain losses between the two terminals: air, window glass, weather."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .optics import LinkGeometry, RxOptics, TxOptics, geometric_loss_db
from .quantities import DecibelOptical, LinkDark

__all__ = [
    "GlassPane",
    "AtmosphereModel",
    "WeatherDistribution",
    "ChannelState",
    "COATED_DOUBLE_PANE",
    "CLEAR_AIR",
    "atmospheric_loss_db",
    "glass_loss_db",
    "total_channel_loss_db",
    "sample_weather",
]


@dataclass(frozen=True)
class GlassPane:
    label: str
    transmittance_db: float  # optical loss, dB

    def __post_init__(self):
        if not (self.transmittance_db >= 0 and math.isfinite(self.transmittance_db)):
            raise ValueError("transmittance_db must be finite and >= 0")


# 13 dB electrical SNR drop halved by the square-law rule.
COATED_DOUBLE_PANE = GlassPane("coated double insulation glass", 6.5)


@dataclass(frozen=True)
class AtmosphereModel:
    attenuation_db_per_km: float = 0.0
    scintillation_sigma_db: float = 0.0

    def __post_init__(self):
        if not (self.attenuation_db_per_km >= 0 and math.isfinite(self.attenuation_db_per_km)):
            raise ValueError("attenuation_db_per_km must be finite and >= 0")
        if not (self.scintillation_sigma_db >= 0 and math.isfinite(self.scintillation_sigma_db)):
            raise ValueError("scintillation_sigma_db must be finite and >= 0")


CLEAR_AIR = AtmosphereModel()


@dataclass(frozen=True)
class WeatherDistribution:
    """Discrete table of (attenuation dB/km, probability) weather states."""

    states: tuple[tuple[float, float], ...]

    def __post_init__(self):
        states = tuple((float(a), float(p)) for a, p in self.states)
        if not states:
            raise ValueError("weather distribution needs at least one state")
        for a, p in states:
            if not (a >= 0 and math.isfinite(a)):
                raise ValueError(f"attenuation must be finite and >= 0, got {a}")
            if not p >= 0:
                raise ValueError(f"probability must be >= 0, got {p}")
        total = math.fsum(p for _, p in states)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "states", states)

    @property
    def attenuations(self) -> np.ndarray:
        return np.array([a for a, _ in self.states])

    @property
    def probabilities(self) -> np.ndarray:
        p = np.array([p for _, p in self.states])
        return p / p.sum()

    def draw(self, rng: np.random.Generator, size: int | None = None):
        """Draw attenuation values (dB/km) with a caller-owned generator."""
        return rng.choice(self.attenuations, size=size, p=self.probabilities)


@dataclass(frozen=True)
class ChannelState:
    geometry: LinkGeometry
    atmosphere: AtmosphereModel = CLEAR_AIR
    panes: tuple[GlassPane, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "panes", tuple(self.panes))


def atmospheric_loss_db(
    distance: float, model: AtmosphereModel, rng: np.random.Generator | None = None
) -> DecibelOptical:
    """Path attenuation over ``distance`` metres.

    With ``scintillation_sigma_db > 0`` and a generator, a zero-mean Gaussian
    term (in dB) is added, so a single draw can be a momentary gain.
    """
    if not distance > 0:
        raise ValueError("distance must be > 0")
    loss = model.attenuation_db_per_km * distance / 1000.0
    if model.scintillation_sigma_db > 0 and rng is not None:
        loss += rng.normal(0.0, model.scintillation_sigma_db)
    return DecibelOptical(loss)


def glass_loss_db(panes) -> DecibelOptical:
    return DecibelOptical(math.fsum(p.transmittance_db for p in panes))


def total_channel_loss_db(
    state: ChannelState,
    tx: TxOptics,
    rx: RxOptics,
    rng: np.random.Generator | None = None,
) -> DecibelOptical | LinkDark:
    """Geometric + atmospheric + glass loss; ``LINK_DARK`` if the beam misses."""
    geo = geometric_loss_db(tx, rx, state.geometry)
    if isinstance(geo, LinkDark):
        return geo
    return geo + atmospheric_loss_db(state.geometry.distance, state.atmosphere, rng) + glass_loss_db(
        state.panes
    )


def sample_weather(dist: WeatherDistribution, rng_seed) -> AtmosphereModel:
    """Draw one weather state. ``rng_seed`` is an int, SeedSequence or Generator."""
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    return AtmosphereModel(float(dist.draw(rng)))
