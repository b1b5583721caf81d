"""60 GHz point-to-point comparison link: Friis budget and scalar CINR.

No radio parameters are published for the commercial link, so EIRP, antenna
gain and noise figure act as one lumped budget. The default EIRP is the
value that puts the free-LOS CINR at 27 dB over 50 m; use
:func:`fit_eirp_dbm` to re-anchor it at another distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SPEED_OF_LIGHT",
    "BOLTZMANN_DBM_PER_HZ",
    "MmWaveParams",
    "fspl_db",
    "noise_power_dbm",
    "cinr_db",
    "link_up",
    "fit_eirp_dbm",
]

SPEED_OF_LIGHT = 299_792_458.0  # m/s
BOLTZMANN_DBM_PER_HZ = 10.0 * math.log10(1.380649e-23 * 290.0 * 1e3)  # kT at 290 K


def fspl_db(freq: float, distance: float) -> float:
    """Free-space path loss in dB for ``freq`` in GHz and ``distance`` in m."""
    if not freq > 0:
        raise ValueError("freq must be > 0")
    if not distance > 0:
        raise ValueError("distance must be > 0")
    return 20.0 * math.log10(4.0 * math.pi * distance * freq * 1e9 / SPEED_OF_LIGHT)


def noise_power_dbm(bandwidth_mhz: float, noise_figure_db: float) -> float:
    return BOLTZMANN_DBM_PER_HZ + 10.0 * math.log10(bandwidth_mhz * 1e6) + noise_figure_db


def _budget_db(carrier_freq, eirp_dbm, rx_antenna_gain_dbi, noise_figure_db, bandwidth,
               interference_floor_dbm, distance, extra_loss_db=0.0):
    rx_dbm = eirp_dbm + rx_antenna_gain_dbi - fspl_db(carrier_freq, distance) - extra_loss_db
    n_mw = 10.0 ** (noise_power_dbm(bandwidth, noise_figure_db) / 10.0)
    if interference_floor_dbm != -math.inf:
        n_mw += 10.0 ** (interference_floor_dbm / 10.0)
    return rx_dbm - 10.0 * math.log10(n_mw)


DEMO_DISTANCE_M = 50.0
_DEFAULTS = dict(carrier_freq=60.0, rx_antenna_gain_dbi=38.0, noise_figure_db=8.0, bandwidth=250.0)
_DEFAULT_EIRP = 27.0 - _budget_db(eirp_dbm=0.0, interference_floor_dbm=-math.inf,
                                   distance=DEMO_DISTANCE_M, **_DEFAULTS)


@dataclass(frozen=True)
class MmWaveParams:
    carrier_freq: float = 60.0  # GHz
    eirp_dbm: float = _DEFAULT_EIRP
    rx_antenna_gain_dbi: float = 38.0
    noise_figure_db: float = 8.0
    bandwidth: float = 250.0  # MHz
    interference_floor_dbm: float = -math.inf
    glass_penetration_loss_db: float = 30.0
    cinr_up_threshold_db: float = 5.0

    def __post_init__(self):
        if not (self.carrier_freq > 0 and math.isfinite(self.carrier_freq)):
            raise ValueError("carrier_freq must be finite and > 0")
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise ValueError("bandwidth must be finite and > 0")
        if not (self.glass_penetration_loss_db >= 0 and math.isfinite(self.glass_penetration_loss_db)):
            raise ValueError("glass_penetration_loss_db must be finite and >= 0")
        for name in ("eirp_dbm", "rx_antenna_gain_dbi", "noise_figure_db", "cinr_up_threshold_db"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if math.isnan(self.interference_floor_dbm) or self.interference_floor_dbm == math.inf:
            raise ValueError("interference_floor_dbm must be finite or -inf")


def cinr_db(params: MmWaveParams, distance: float, glass_present: bool = False) -> float:
    """Scalar CINR in dB, floored at 0 dB like the radio's own readout."""
    raw = _budget_db(
        params.carrier_freq,
        params.eirp_dbm,
        params.rx_antenna_gain_dbi,
        params.noise_figure_db,
        params.bandwidth,
        params.interference_floor_dbm,
        distance,
        params.glass_penetration_loss_db if glass_present else 0.0,
    )
    return max(0.0, raw)


def link_up(cinr: float, params: MmWaveParams) -> bool:
    return cinr >= params.cinr_up_threshold_db


def fit_eirp_dbm(params: MmWaveParams, distance: float, target_cinr_db: float = 27.0) -> float:
    """EIRP that gives ``target_cinr_db`` over free LOS at ``distance``."""
    raw = _budget_db(
        params.carrier_freq, 0.0, params.rx_antenna_gain_dbi, params.noise_figure_db,
        params.bandwidth, params.interference_floor_dbm, distance,
    )
    return target_cinr_db - raw
