"""Decibel and power quantities shared by the link models.

Optical and electrical decibels are kept as separate types because a
photodetector squares the optical power: one optical dB of loss costs two
electrical dB of SNR. Mixing the two is the most common link-budget mistake,
so adding an optical dB to an electrical dB raises ``TypeError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

__all__ = [
    "DecibelOptical",
    "DecibelElectrical",
    "Power",
    "LinkDark",
    "LINK_DARK",
    "db_to_linear",
    "linear_to_db",
    "optical_to_electrical_db",
]


def db_to_linear(x):
    """Convert decibels to a power ratio, ``10**(x/10)``.

    Accepts scalars or array-likes. Non-finite input raises ``ValueError``.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"decibel value must be finite, got {x!r}")
    out = np.power(10.0, arr / 10.0)
    return float(out) if out.ndim == 0 else out


def linear_to_db(r):
    """Convert a strictly positive power ratio to decibels."""
    arr = np.asarray(r, dtype=float)
    if not np.all(arr > 0) or not np.all(np.isfinite(arr)):
        raise ValueError(f"ratio must be finite and > 0, got {r!r}")
    out = 10.0 * np.log10(arr)
    return float(out) if out.ndim == 0 else out


class _Decibel:
    """Arithmetic shared by the two decibel flavours (same-type only)."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v):
            raise ValueError(f"{type(self).__name__} must be finite, got {self.value!r}")
        object.__setattr__(self, "value", v)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )

    def __add__(self, other):
        if isinstance(other, LinkDark):
            return other
        self._check(other)
        return type(self)(self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.value - other.value)

    def __neg__(self):
        return type(self)(-self.value)

    def __mul__(self, k):
        if isinstance(k, _Decibel):
            raise TypeError("decibel quantities cannot be multiplied together")
        return type(self)(self.value * float(k))

    __rmul__ = __mul__

    def __lt__(self, other):
        self._check(other)
        return self.value < other.value

    def __le__(self, other):
        self._check(other)
        return self.value <= other.value

    def __float__(self):
        return self.value

    @property
    def linear(self) -> float:
        return db_to_linear(self.value)


@dataclass(frozen=True, order=False)
class DecibelOptical(_Decibel):
    """Optical power ratio in dB. Positive values are used for losses."""

    value: float

    def to_electrical(self) -> "DecibelElectrical":
        return optical_to_electrical_db(self)


@dataclass(frozen=True, order=False)
class DecibelElectrical(_Decibel):
    """Electrical power ratio in dB (SNR, SNR gap, electrical loss)."""

    value: float


def optical_to_electrical_db(x: DecibelOptical) -> DecibelElectrical:
    """Map an optical dB change to the electrical dB change it causes.

    Photocurrent follows optical power and electrical power follows the
    square of the photocurrent, hence the factor of two.
    """
    if not isinstance(x, DecibelOptical):
        raise TypeError(f"expected DecibelOptical, got {type(x).__name__}")
    return DecibelElectrical(2.0 * x.value)


class LinkDark:
    """Marker for a loss so large that no light reaches the receiver.

    Absorbing under addition, so it propagates through loss budgets.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "LINK_DARK"

    def __reduce__(self):
        return (LinkDark, ())


LINK_DARK = LinkDark()


@dataclass(frozen=True)
class Power:
    """Non-negative power in watts, tagged optical or electrical."""

    value: float
    domain: Literal["optical", "electrical"] = "optical"

    def __post_init__(self):
        v = float(self.value)
        if not (v >= 0 and math.isfinite(v)):
            raise ValueError(f"power must be finite and >= 0 W, got {self.value!r}")
        if self.domain not in ("optical", "electrical"):
            raise ValueError(f"unknown power domain {self.domain!r}")
        object.__setattr__(self, "value", v)

    def attenuate(self, loss: DecibelOptical | LinkDark) -> "Power":
        """Apply an optical loss; ``LINK_DARK`` gives zero power."""
        if self.domain != "optical":
            raise TypeError("optical loss applied to electrical power")
        if isinstance(loss, LinkDark):
            return Power(0.0, "optical")
        return Power(self.value * 10.0 ** (-loss.value / 10.0), "optical")
