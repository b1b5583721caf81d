"""Beam footprint and receiver capture for the directed optical link.

The beam is treated as a uniform (top-hat) disc whose diameter grows with
the far-field divergence. The receiver lens is a disc of the same area as
the lens. Collected power is the overlap of the two discs divided by the
spot area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quantities import LINK_DARK, DecibelOptical, LinkDark

__all__ = [
    "TxOptics",
    "RxOptics",
    "LinkGeometry",
    "DEFAULT_TX_OPTICS",
    "DEFAULT_RX_OPTICS",
    "spot_diameter",
    "disc_overlap_area",
    "capture_fraction",
    "geometric_loss_db",
]


@dataclass(frozen=True)
class TxOptics:
    """Transmitter optics: LED concentrator plus Fresnel lens."""

    divergence_half_angle: float = 0.41  # deg
    lens_area: float = 50.0  # cm^2
    lens_focal_length: float = 208.0  # mm
    led_half_angle: float = 10.0  # deg

    def __post_init__(self):
        if not 0 < self.led_half_angle < 90:
            raise ValueError("led_half_angle must be in (0, 90) deg")
        if not 0 < self.divergence_half_angle < self.led_half_angle:
            raise ValueError("divergence_half_angle must be in (0, led_half_angle)")
        if not self.lens_area > 0:
            raise ValueError("lens_area must be > 0")
        if not self.lens_focal_length > 0:
            raise ValueError("lens_focal_length must be > 0")


@dataclass(frozen=True)
class RxOptics:
    """Receiver Fresnel lens in front of the photodiode."""

    lens_area: float = 150.0  # cm^2
    lens_focal_length: float = 208.0  # mm

    def __post_init__(self):
        if not self.lens_area > 0:
            raise ValueError("lens_area must be > 0")
        if not self.lens_focal_length > 0:
            raise ValueError("lens_focal_length must be > 0")

    @property
    def area_m2(self) -> float:
        return self.lens_area * 1e-4


@dataclass(frozen=True)
class LinkGeometry:
    """Link distance and the lateral miss between beam centre and lens centre."""

    distance: float  # m
    lateral_offset: float = 0.0  # m

    def __post_init__(self):
        if not (self.distance > 0 and math.isfinite(self.distance)):
            raise ValueError("distance must be finite and > 0")
        if not (self.lateral_offset >= 0 and math.isfinite(self.lateral_offset)):
            raise ValueError("lateral_offset must be finite and >= 0")


DEFAULT_TX_OPTICS = TxOptics()
DEFAULT_RX_OPTICS = RxOptics()


def spot_diameter(distance: float, half_angle: float) -> float:
    """Beam footprint diameter in metres at ``distance`` for a half angle in degrees."""
    if not distance > 0:
        raise ValueError(f"distance must be > 0, got {distance}")
    if not 0 < half_angle < 90:
        raise ValueError(f"half_angle must be in (0, 90) deg, got {half_angle}")
    return 2.0 * distance * math.tan(math.radians(half_angle))


def disc_overlap_area(r1: float, r2: float, d: float) -> float:
    """Intersection area of two discs with radii ``r1``, ``r2`` and centre distance ``d``."""
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return math.pi * min(r1, r2) ** 2
    # Circular-segment (lens) formula; acos arguments clamped for tangency.
    c1 = min(1.0, max(-1.0, (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)))
    c2 = min(1.0, max(-1.0, (d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)))
    k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)
    return r1 * r1 * math.acos(c1) + r2 * r2 * math.acos(c2) - 0.5 * math.sqrt(max(k, 0.0))


def capture_fraction(spot_diameter: float, rx_area: float, lateral_offset: float = 0.0) -> float:
    """Fraction of a top-hat beam collected by a circular lens.

    Parameters
    ----------
    spot_diameter : float
        Beam footprint diameter at the receiver plane, m.
    rx_area : float
        Receiver lens area, m^2.
    lateral_offset : float
        Distance between beam centre and lens centre, m.
    """
    if not spot_diameter > 0:
        raise ValueError("spot_diameter must be > 0")
    if not rx_area > 0:
        raise ValueError("rx_area must be > 0")
    if not lateral_offset >= 0:
        raise ValueError("lateral_offset must be >= 0")
    r_spot = spot_diameter / 2.0
    r_rx = math.sqrt(rx_area / math.pi)
    if lateral_offset <= r_rx - r_spot:
        return 1.0
    frac = disc_overlap_area(r_spot, r_rx, lateral_offset) / (math.pi * r_spot * r_spot)
    return min(1.0, max(0.0, frac))


def geometric_loss_db(tx: TxOptics, rx: RxOptics, geo: LinkGeometry) -> DecibelOptical | LinkDark:
    """Optical loss from beam spreading; ``LINK_DARK`` when the lens misses the spot."""
    spot = spot_diameter(geo.distance, tx.divergence_half_angle)
    frac = capture_fraction(spot, rx.area_m2, geo.lateral_offset)
    if frac <= 0.0:
        return LINK_DARK
    # max() turns -0.0 into 0.0 for fully contained spots
    return DecibelOptical(max(0.0, -10.0 * math.log10(frac)))
