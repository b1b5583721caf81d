"""Fit the unpublished frontend parameters to measured rate-vs-distance points.

The objective is piecewise constant (integer bit loading), so the search is
derivative free: a coarse grid over the parameter box, then coordinate
descent from the best grid point with step halving. Axes spanning decades
(optical power, noise density, rolloff) are searched in log space.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .channel import COATED_DOUBLE_PANE, ChannelState, GlassPane
from .optics import DEFAULT_RX_OPTICS, DEFAULT_TX_OPTICS, LinkGeometry, RxOptics, TxOptics
from .phy import FrontendParams, OfdmConfig, link_rate

__all__ = [
    "MEASURED_TARGETS",
    "CalibrationTarget",
    "CalibrationSpace",
    "CalibrationResult",
    "target_state",
    "objective",
    "fit",
    "validate_glass_point",
]

AXES = ("tx_optical_power", "thermal_noise_density", "led_rolloff_freq", "snr_gap_db")
_LOG_AXES = {"tx_optical_power", "thermal_noise_density", "led_rolloff_freq"}


@dataclass(frozen=True)
class CalibrationTarget:
    distance: float  # m
    expected_rate: float  # Mbit/s
    glass: bool = False

    def __post_init__(self):
        if not (self.distance > 0 and math.isfinite(self.distance)):
            raise ValueError("distance must be finite and > 0")
        if not (self.expected_rate >= 0 and math.isfinite(self.expected_rate)):
            raise ValueError("expected_rate must be finite and >= 0")


MEASURED_TARGETS = (
    CalibrationTarget(25.0, 1500.0),
    CalibrationTarget(50.0, 1400.0),
    CalibrationTarget(100.0, 1100.0),
)


@dataclass(frozen=True)
class CalibrationSpace:
    """Search box and grid resolution per axis.

    A range with ``lower == upper`` pins that axis; its resolution is ignored.
    The default box is deliberately wide. It is a search range, not a claim
    about the hardware: with watt-level power and sub-1e-20 A^2/Hz noise every
    carrier saturates at any distance up to a few hundred metres, so the box
    reaches down to microwatt effective power and up to 1e-14 A^2/Hz.
    """

    tx_optical_power: tuple[float, float] = (1e-6, 5.0)  # W
    thermal_noise_density: tuple[float, float] = (1e-26, 1e-14)  # A^2/Hz
    led_rolloff_freq: tuple[float, float] = (0.05, 300.0)  # MHz
    snr_gap_db: tuple[float, float] = (3.0, 12.0)  # dB
    resolution: tuple[int, int, int, int] = (15, 15, 12, 6)

    def __post_init__(self):
        if len(self.resolution) != len(AXES):
            raise ValueError(f"resolution needs {len(AXES)} entries")
        for name, res in zip(AXES, self.resolution):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"{name} range must be finite")
            if lo > hi:
                raise ValueError(f"{name}: lower bound {lo} exceeds upper bound {hi}")
            if name in _LOG_AXES and lo <= 0:
                raise ValueError(f"{name}: bounds must be > 0")
            if lo < hi and int(res) < 2:
                raise ValueError(f"{name}: resolution must be >= 2")
        object.__setattr__(self, "resolution", tuple(int(r) for r in self.resolution))

    def to_value(self, name: str, u: float) -> float:
        """Map a unit coordinate ``u`` in [0, 1] onto the axis."""
        lo, hi = getattr(self, name)
        if lo == hi:
            return float(lo)
        if name in _LOG_AXES:
            return float(math.exp(math.log(lo) + u * (math.log(hi) - math.log(lo))))
        return float(lo + u * (hi - lo))

    def free_axes(self) -> list[int]:
        return [i for i, n in enumerate(AXES) if getattr(self, n)[0] < getattr(self, n)[1]]

    def grid(self):
        """Unit-coordinate grid points in lexicographic order."""
        per_axis = []
        for i, name in enumerate(AXES):
            lo, hi = getattr(self, name)
            per_axis.append([0.0] if lo == hi else list(np.linspace(0.0, 1.0, self.resolution[i])))
        return itertools.product(*per_axis)


@dataclass(frozen=True)
class CalibrationResult:
    frontend: FrontendParams
    ofdm: OfdmConfig
    targets: tuple[CalibrationTarget, ...]
    residuals: tuple[float, ...]  # signed relative rate error per target
    objective: float
    grid_objective: float
    iterations: int
    evaluations: int
    ceiling: float

    @property
    def success(self) -> bool:
        return self.objective <= self.ceiling

    @property
    def snr_gap_db(self) -> float:
        return self.ofdm.snr_gap_db

    @property
    def max_abs_residual(self) -> float:
        return max(abs(r) for r in self.residuals)


def target_state(target: CalibrationTarget, panes=(COATED_DOUBLE_PANE,)) -> ChannelState:
    return ChannelState(LinkGeometry(target.distance), panes=tuple(panes) if target.glass else ())


def _rates_mbps(frontend, ofdm, targets, tx_optics, rx_optics):
    return [
        link_rate(frontend, tx_optics, rx_optics, target_state(t), ofdm) / 1e6 for t in targets
    ]


def _residuals(rates, targets):
    # a zero-rate target falls back to absolute error in Mbit/s
    return tuple(
        (r - t.expected_rate) / t.expected_rate if t.expected_rate > 0 else r
        for r, t in zip(rates, targets)
    )


def objective(
    frontend: FrontendParams,
    ofdm: OfdmConfig,
    targets,
    tx_optics: TxOptics = DEFAULT_TX_OPTICS,
    rx_optics: RxOptics = DEFAULT_RX_OPTICS,
) -> float:
    """Sum of squared relative rate errors over ``targets``."""
    res = _residuals(_rates_mbps(frontend, ofdm, targets, tx_optics, rx_optics), targets)
    return math.fsum(r * r for r in res)


class _Evaluator:
    """Objective over unit coordinates; counts evaluations."""

    def __init__(self, space, targets, base_frontend, base_ofdm, tx_optics, rx_optics):
        self.space = space
        self.targets = tuple(targets)
        self.base_frontend = base_frontend
        self.base_ofdm = base_ofdm
        self.tx_optics = tx_optics
        self.rx_optics = rx_optics
        self.count = 0

    def params(self, u):
        vals = {n: self.space.to_value(n, ui) for n, ui in zip(AXES, u)}
        gap = vals.pop("snr_gap_db")
        return replace(self.base_frontend, **vals), replace(self.base_ofdm, snr_gap_db=gap)

    def __call__(self, u) -> float:
        self.count += 1
        fe, cfg = self.params(u)
        return objective(fe, cfg, self.targets, self.tx_optics, self.rx_optics)


def fit(
    space: CalibrationSpace,
    targets,
    *,
    base_frontend: FrontendParams | None = None,
    base_ofdm: OfdmConfig | None = None,
    tx_optics: TxOptics = DEFAULT_TX_OPTICS,
    rx_optics: RxOptics = DEFAULT_RX_OPTICS,
    ceiling: float = 0.01,
    max_iterations: int = 200,
    tol: float = 1e-6,
    min_step: float = 1e-6,
) -> CalibrationResult:
    """Grid search followed by halving coordinate descent.

    Deterministic: grid ties resolve to the lexicographically smallest unit
    coordinate, and descent probes axes in fixed order (+ before -),
    accepting only strict improvements. Descent stops when an improving
    sweep gains less than ``tol`` relative, when steps fall below
    ``min_step``, when the objective reaches zero, or after
    ``max_iterations`` sweeps. ``success`` on the result compares the final
    objective with ``ceiling``.
    """
    targets = tuple(targets)
    if not targets:
        raise ValueError("at least one calibration target is required")
    ev = _Evaluator(
        space, targets, base_frontend or FrontendParams(), base_ofdm or OfdmConfig(), tx_optics, rx_optics
    )

    best_u, best = None, math.inf
    for u in space.grid():
        val = ev(u)
        if val < best:  # strict: first (lexicographic) point wins ties
            best_u, best = u, val
    grid_best = best
    u = list(best_u)

    free = space.free_axes()
    steps = {i: 1.0 / (space.resolution[i] - 1) for i in free}
    iterations = 0
    while free and iterations < max_iterations and best > 0.0:
        iterations += 1
        start = best
        for i in free:
            for sign in (1.0, -1.0):
                cand = list(u)
                cand[i] = min(1.0, max(0.0, u[i] + sign * steps[i]))
                if cand[i] == u[i]:
                    continue
                val = ev(cand)
                if val < best:
                    u, best = cand, val
                    break
        if best < start:
            if (start - best) / start < tol:
                break
        else:
            steps = {i: s / 2.0 for i, s in steps.items()}
            if max(steps.values()) < min_step:
                break

    fe, cfg = ev.params(u)
    rates = _rates_mbps(fe, cfg, targets, tx_optics, rx_optics)
    residuals = _residuals(rates, targets)
    return CalibrationResult(
        frontend=fe,
        ofdm=cfg,
        targets=targets,
        residuals=residuals,
        objective=math.fsum(r * r for r in residuals),
        grid_objective=grid_best,
        iterations=iterations,
        evaluations=ev.count,
        ceiling=ceiling,
    )


def validate_glass_point(
    result: CalibrationResult,
    demo_distance: float = 50.0,
    panes: tuple[GlassPane, ...] = (COATED_DOUBLE_PANE,),
    tx_optics: TxOptics = DEFAULT_TX_OPTICS,
    rx_optics: RxOptics = DEFAULT_RX_OPTICS,
) -> float:
    """Rate in Mbit/s through ``panes`` at ``demo_distance`` with the fitted frontend."""
    state = ChannelState(LinkGeometry(demo_distance), panes=tuple(panes))
    return link_rate(result.frontend, tx_optics, rx_optics, state, result.ofdm) / 1e6
