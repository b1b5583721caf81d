"""DC-biased OFDM physical layer, abstracted to per-carrier bit loading.

Chain: optical loss -> received optical power -> per-carrier electrical SNR
(first-order LED rolloff, thermal + shot noise) -> gap-approximation bit
loading capped at ``max_bits_per_carrier`` -> gross rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelState, total_channel_loss_db
from .optics import RxOptics, TxOptics
from .quantities import DecibelOptical, LinkDark, Power

__all__ = [
    "ELEMENTARY_CHARGE",
    "SNR_FLOOR_DB",
    "FrontendParams",
    "OfdmConfig",
    "SnrProfile",
    "BitTable",
    "received_optical_power",
    "carrier_frequencies",
    "carrier_snr_profile",
    "loading_threshold_db",
    "bits_per_carrier",
    "gross_rate",
    "rate_from_bits",
    "link_snr_profile",
    "link_rate",
]

ELEMENTARY_CHARGE = 1.602176634e-19  # C
SNR_FLOOR_DB = -60.0
_LOADING_EPS = 1e-9  # absorbs rounding when the SNR sits exactly on a threshold


@dataclass(frozen=True)
class FrontendParams:
    """Transmitter and receiver electro-optics.

    Only the wavelength comes from the hardware description; power,
    responsivity, rolloff and noise density are calibration outputs and the
    defaults below are plausible placeholders, not measurements.
    """

    tx_optical_power: float = 1.0  # W
    responsivity: float = 0.5  # A/W
    led_rolloff_freq: float = 100.0  # MHz
    thermal_noise_density: float = 1e-22  # A^2/Hz, input referred
    wavelength: float = 820.0  # nm, informational
    include_shot_noise: bool = True

    def __post_init__(self):
        for name in ("tx_optical_power", "responsivity", "led_rolloff_freq",
                     "thermal_noise_density", "wavelength"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
        if self.responsivity > 1.0:
            raise ValueError(f"responsivity must be <= 1 A/W, got {self.responsivity!r}")


@dataclass(frozen=True)
class OfdmConfig:
    bandwidth: float = 200.0  # MHz
    n_carriers: int = 1024
    max_bits_per_carrier: int = 12
    snr_gap_db: float = 6.0  # dB electrical
    overhead_efficiency: float = 5.0 / 6.0
    tdd_duty: float = 1.0

    def __post_init__(self):
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise ValueError("bandwidth must be finite and > 0")
        if isinstance(self.n_carriers, bool) or int(self.n_carriers) != self.n_carriers or self.n_carriers < 1:
            raise ValueError("n_carriers must be an integer >= 1")
        if int(self.max_bits_per_carrier) != self.max_bits_per_carrier or not 1 <= self.max_bits_per_carrier <= 15:
            raise ValueError("max_bits_per_carrier must be an integer in [1, 15]")
        if not math.isfinite(self.snr_gap_db):
            raise ValueError("snr_gap_db must be finite")
        if not 0 < self.overhead_efficiency <= 1:
            raise ValueError("overhead_efficiency must be in (0, 1]")
        if not 0 < self.tdd_duty <= 1:
            raise ValueError("tdd_duty must be in (0, 1]")
        object.__setattr__(self, "n_carriers", int(self.n_carriers))
        object.__setattr__(self, "max_bits_per_carrier", int(self.max_bits_per_carrier))

    @property
    def carrier_spacing(self) -> float:
        """Carrier spacing in Hz."""
        return self.bandwidth * 1e6 / self.n_carriers

    @property
    def peak_rate(self) -> float:
        """Rate with every carrier at full loading, bit/s."""
        return self.overhead_efficiency * self.tdd_duty * self.bandwidth * 1e6 * self.max_bits_per_carrier


@dataclass(frozen=True, eq=False)
class SnrProfile:
    snr_db: np.ndarray
    carrier_spacing: float  # Hz

    def __post_init__(self):
        arr = np.array(self.snr_db, dtype=float)
        if arr.ndim != 1 or not np.all(np.isfinite(arr)):
            raise ValueError("snr_db must be a finite 1-D vector")
        arr.setflags(write=False)
        object.__setattr__(self, "snr_db", arr)

    def __len__(self):
        return self.snr_db.size

    def __eq__(self, other):
        if not isinstance(other, SnrProfile):
            return NotImplemented
        return self.carrier_spacing == other.carrier_spacing and np.array_equal(self.snr_db, other.snr_db)

    @property
    def mean_db(self) -> float:
        """Arithmetic mean of the per-carrier SNR in dB."""
        return float(self.snr_db.mean())

    def shifted(self, delta_db: float) -> "SnrProfile":
        return SnrProfile(np.maximum(self.snr_db + delta_db, SNR_FLOOR_DB), self.carrier_spacing)


@dataclass(frozen=True, eq=False)
class BitTable:
    bits: np.ndarray

    def __post_init__(self):
        arr = np.array(self.bits, dtype=np.int64)
        if arr.ndim != 1 or np.any(arr < 0):
            raise ValueError("bits must be a 1-D vector of non-negative integers")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    def __len__(self):
        return self.bits.size

    def __eq__(self, other):
        if not isinstance(other, BitTable):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    @property
    def total(self) -> int:
        return int(self.bits.sum())


def received_optical_power(frontend: FrontendParams, total_loss: DecibelOptical | LinkDark) -> Power:
    return Power(frontend.tx_optical_power, "optical").attenuate(total_loss)


def carrier_frequencies(cfg: OfdmConfig) -> np.ndarray:
    """Centre frequency of each carrier in Hz, ``(k + 1/2) * spacing``."""
    return (np.arange(cfg.n_carriers) + 0.5) * cfg.carrier_spacing


def carrier_snr_profile(p_rx: Power, frontend: FrontendParams, cfg: OfdmConfig) -> SnrProfile:
    """Per-carrier electrical SNR for a received optical power.

    Signal: ``(R * P * |H(f)|)**2`` with ``|H(f)|**2 = 1 / (1 + (f/f0)**2)``.
    Noise per carrier: ``(N_th + 2 q R P) * spacing``; the shot term is dropped
    when ``include_shot_noise`` is off. Zero power maps to ``SNR_FLOOR_DB``.
    """
    df = cfg.carrier_spacing
    p = float(p_rx.value if isinstance(p_rx, Power) else p_rx)
    if p < 0:
        raise ValueError("received power must be >= 0")
    if p == 0.0:
        return SnrProfile(np.full(cfg.n_carriers, SNR_FLOOR_DB), df)
    f = carrier_frequencies(cfg)
    f0 = frontend.led_rolloff_freq * 1e6
    i_sig = frontend.responsivity * p
    noise_density = frontend.thermal_noise_density
    if frontend.include_shot_noise:
        noise_density = noise_density + 2.0 * ELEMENTARY_CHARGE * i_sig
    # Work in dB to stay finite for very weak or very strong signals.
    snr_db = (
        20.0 * np.log10(i_sig)
        - 10.0 * np.log10(1.0 + (f / f0) ** 2)
        - 10.0 * np.log10(noise_density * df)
    )
    return SnrProfile(np.maximum(snr_db, SNR_FLOOR_DB), df)


def loading_threshold_db(bits, cfg: OfdmConfig):
    """Lowest SNR (dB) that supports ``bits`` per carrier; -inf for zero bits."""
    b = np.asarray(bits, dtype=float)
    with np.errstate(divide="ignore"):
        out = cfg.snr_gap_db + 10.0 * np.log10(np.power(2.0, b) - 1.0)
    return float(out) if out.ndim == 0 else out


def bits_per_carrier(snr_db, cfg: OfdmConfig):
    """Gap-approximation loading ``floor(log2(1 + snr/gap))`` clipped to the cap.

    Works elementwise on arrays; returns ``int`` for scalar input.
    """
    s = np.asarray(snr_db, dtype=float)
    with np.errstate(over="ignore"):
        b = np.floor(np.log2(1.0 + np.power(10.0, (s - cfg.snr_gap_db) / 10.0)) + _LOADING_EPS)
    b = np.clip(b, 0, cfg.max_bits_per_carrier).astype(np.int64)
    return int(b) if b.ndim == 0 else b


def gross_rate(profile: SnrProfile, cfg: OfdmConfig) -> tuple[float, BitTable]:
    """Gross bit rate in bit/s and the per-carrier loading that produced it."""
    if len(profile) != cfg.n_carriers:
        raise ValueError(f"profile has {len(profile)} carriers, config expects {cfg.n_carriers}")
    table = BitTable(bits_per_carrier(profile.snr_db, cfg))
    return rate_from_bits(table, cfg), table


def rate_from_bits(table: BitTable, cfg: OfdmConfig) -> float:
    return cfg.overhead_efficiency * cfg.tdd_duty * cfg.carrier_spacing * table.total


def link_snr_profile(
    frontend: FrontendParams,
    tx_optics: TxOptics,
    rx_optics: RxOptics,
    channel_state: ChannelState,
    cfg: OfdmConfig,
    rng: np.random.Generator | None = None,
) -> SnrProfile:
    loss = total_channel_loss_db(channel_state, tx_optics, rx_optics, rng)
    return carrier_snr_profile(received_optical_power(frontend, loss), frontend, cfg)


def link_rate(
    frontend: FrontendParams,
    tx_optics: TxOptics,
    rx_optics: RxOptics,
    channel_state: ChannelState,
    cfg: OfdmConfig,
    rng: np.random.Generator | None = None,
) -> float:
    """End-to-end gross rate in bit/s for one channel state."""
    profile = link_snr_profile(frontend, tx_optics, rx_optics, channel_state, cfg, rng)
    return gross_rate(profile, cfg)[0]

