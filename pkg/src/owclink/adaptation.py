"""Closed-loop per-carrier rate adaptation with upward hysteresis.

Downgrades follow the measured SNR immediately (the link runs without a
margin). Upgrades wait until the SNR clears the next loading threshold by
``hysteresis_db``, which suppresses flapping on a noisy SNR estimate.
A link starts from an all-zero table and trains up, so the first
``adapt_step`` lands on the hysteresis-limited loading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .phy import (
    SNR_FLOOR_DB,
    BitTable,
    OfdmConfig,
    SnrProfile,
    bits_per_carrier,
    rate_from_bits,
)

__all__ = [
    "AdaptationConfig",
    "AdaptationState",
    "initial_state",
    "hysteresis_band",
    "adapt_step",
]


@dataclass(frozen=True)
class AdaptationConfig:
    measurement_period: float = 100.0  # ms
    hysteresis_db: float = 1.0
    down_margin_db: float = 0.0

    def __post_init__(self):
        if not (self.measurement_period > 0 and math.isfinite(self.measurement_period)):
            raise ValueError("measurement_period must be finite and > 0")
        if not (self.hysteresis_db >= 0 and math.isfinite(self.hysteresis_db)):
            raise ValueError("hysteresis_db must be finite and >= 0")
        if not (self.down_margin_db >= 0 and math.isfinite(self.down_margin_db)):
            raise ValueError("down_margin_db must be finite and >= 0")


@dataclass(frozen=True)
class AdaptationState:
    current_bit_table: BitTable
    current_rate: float  # bit/s
    last_profile: SnrProfile
    link_up: bool


def initial_state(cfg: OfdmConfig) -> AdaptationState:
    """Untrained link: no bits loaded, SNR at the floor."""
    zeros = BitTable(np.zeros(cfg.n_carriers, dtype=np.int64))
    floor = SnrProfile(np.full(cfg.n_carriers, SNR_FLOOR_DB), cfg.carrier_spacing)
    return AdaptationState(zeros, 0.0, floor, False)


def hysteresis_band(old_bits, snr_db, cfg: OfdmConfig, acfg: AdaptationConfig):
    """Next loading for carriers currently at ``old_bits`` seeing ``snr_db``.

    Up when ``snr >= threshold(b) + hysteresis`` for some ``b > old``; down
    to the supported loading when ``snr < threshold(old) + down_margin``;
    otherwise hold. Elementwise on arrays.
    """
    old = np.asarray(old_bits, dtype=np.int64)
    s = np.asarray(snr_db, dtype=float)
    if np.any(old < 0) or np.any(old > cfg.max_bits_per_carrier):
        raise ValueError("old_bits out of range")
    # Evaluating the loading formula at shifted SNR keeps hysteresis 0
    # bit-identical to stateless loading.
    up = bits_per_carrier(s - acfg.hysteresis_db, cfg)
    down = bits_per_carrier(s - acfg.down_margin_db, cfg)
    new = np.where(up > old, up, np.where(down < old, down, old))
    return int(new) if new.ndim == 0 else new


def adapt_step(
    state: AdaptationState,
    measured: SnrProfile,
    cfg: OfdmConfig,
    acfg: AdaptationConfig,
) -> AdaptationState:
    """Re-load bits from a fresh SNR measurement."""
    if len(measured) != cfg.n_carriers or len(state.current_bit_table) != cfg.n_carriers:
        raise ValueError(
            f"profile has {len(measured)} carriers, config expects {cfg.n_carriers}"
        )
    bits = hysteresis_band(state.current_bit_table.bits, measured.snr_db, cfg, acfg)
    table = BitTable(bits)
    if table == state.current_bit_table:
        table = state.current_bit_table
    return AdaptationState(table, rate_from_bits(table, cfg), measured, table.total >= 1)
