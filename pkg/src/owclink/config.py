"""Scenario configuration: TOML in, validated dataclasses out, TOML back.

Every section mirrors one model type and its keys are that type's field
names. Unknown keys are rejected so a misspelt physical parameter can never
silently fall back to a default. See ``docs/config.md`` for the grammar.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import tomli
import tomli_w

from .adaptation import AdaptationConfig
from .calibration import CalibrationSpace, CalibrationTarget
from .channel import (
    COATED_DOUBLE_PANE,
    AtmosphereModel,
    ChannelState,
    GlassPane,
    WeatherDistribution,
)
from .mmwave import MmWaveParams
from .optics import LinkGeometry, RxOptics, TxOptics
from .phy import FrontendParams, OfdmConfig

__all__ = [
    "ConfigError",
    "SweepSpec",
    "TimelineEvent",
    "Timeline",
    "AvailabilitySpec",
    "ScenarioConfig",
    "EVENT_KINDS",
    "load_config",
    "loads_config",
    "config_from_dict",
    "config_to_dict",
    "dump_config",
    "load_targets",
]


class ConfigError(ValueError):
    """Invalid scenario or targets file. ``field`` is the dotted key path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class SweepSpec:
    start: float = 10.0  # m
    stop: float = 200.0  # m
    step: float = 1.0  # m

    def __post_init__(self):
        if not (self.start > 0 and math.isfinite(self.start)):
            raise ValueError("start must be finite and > 0")
        if not (self.stop >= self.start and math.isfinite(self.stop)):
            raise ValueError("stop must be finite and >= start")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError("step must be finite and > 0")

    def distances(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(n)]


EVENT_KINDS = ("insert_glass", "remove_glass", "set_atmosphere", "set_offset")


@dataclass(frozen=True)
class TimelineEvent:
    """One scheduled change to the channel.

    ``insert_glass`` adds ``panes`` (the coated double pane when empty),
    ``remove_glass`` clears all panes, ``set_atmosphere`` sets the
    attenuation, ``set_offset`` sets the lateral pointing offset.
    """

    time: float  # ms
    kind: str
    panes: tuple[GlassPane, ...] = ()
    attenuation_db_per_km: float | None = None
    lateral_offset: float | None = None

    def __post_init__(self):
        if not (self.time >= 0 and math.isfinite(self.time)):
            raise ValueError("time must be finite and >= 0")
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"kind must be one of {', '.join(EVENT_KINDS)}, got {self.kind!r}")
        object.__setattr__(self, "panes", tuple(self.panes))
        if self.kind == "insert_glass" and not self.panes:
            object.__setattr__(self, "panes", (COATED_DOUBLE_PANE,))
        if self.kind == "set_atmosphere":
            if self.attenuation_db_per_km is None:
                raise ValueError("attenuation_db_per_km is required for set_atmosphere")
            AtmosphereModel(self.attenuation_db_per_km)
        if self.kind == "set_offset":
            if self.lateral_offset is None:
                raise ValueError("lateral_offset is required for set_offset")
            if not (self.lateral_offset >= 0 and math.isfinite(self.lateral_offset)):
                raise ValueError("lateral_offset must be finite and >= 0")

    def apply(self, state: ChannelState) -> ChannelState:
        if self.kind == "insert_glass":
            return dataclasses.replace(state, panes=state.panes + self.panes)
        if self.kind == "remove_glass":
            return dataclasses.replace(state, panes=())
        if self.kind == "set_atmosphere":
            atm = dataclasses.replace(state.atmosphere, attenuation_db_per_km=self.attenuation_db_per_km)
            return dataclasses.replace(state, atmosphere=atm)
        geo = dataclasses.replace(state.geometry, lateral_offset=self.lateral_offset)
        return dataclasses.replace(state, geometry=geo)


@dataclass(frozen=True)
class Timeline:
    duration: float = 2000.0  # ms
    events: tuple[TimelineEvent, ...] = ()

    def __post_init__(self):
        if not (self.duration >= 0 and math.isfinite(self.duration)):
            raise ValueError("duration must be finite and >= 0")
        object.__setattr__(self, "events", tuple(self.events))
        times = [e.time for e in self.events]
        if times != sorted(times):
            raise ValueError("events must be sorted by time")


@dataclass(frozen=True)
class AvailabilitySpec:
    n_samples: int = 1_000_000
    weather: WeatherDistribution = WeatherDistribution(((0.0, 1.0),))

    def __post_init__(self):
        if isinstance(self.n_samples, bool) or int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ValueError("n_samples must be an integer >= 1")


@dataclass(frozen=True)
class ScenarioConfig:
    frontend: FrontendParams = FrontendParams()
    tx_optics: TxOptics = TxOptics()
    rx_optics: RxOptics = RxOptics()
    ofdm: OfdmConfig = OfdmConfig()
    adaptation: AdaptationConfig = AdaptationConfig()
    mmwave: MmWaveParams = MmWaveParams()
    channel: ChannelState = ChannelState(LinkGeometry(50.0))
    timeline: Timeline = Timeline()
    sweep: SweepSpec = SweepSpec()
    availability: AvailabilitySpec = AvailabilitySpec()
    seed: int = 0

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


# --- dict <-> dataclass -------------------------------------------------------

_SIMPLE_SECTIONS = {
    "frontend": FrontendParams,
    "tx_optics": TxOptics,
    "rx_optics": RxOptics,
    "ofdm": OfdmConfig,
    "adaptation": AdaptationConfig,
    "mmwave": MmWaveParams,
    "sweep": SweepSpec,
}
_TOP_KEYS = set(_SIMPLE_SECTIONS) | {"seed", "channel", "timeline", "availability"}


def _check_type(path: str, value: Any, kind: str):
    if kind == "bool":
        if not isinstance(value, bool):
            raise ConfigError(path, f"expected true/false, got {value!r}")
    elif kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(path, f"expected an integer, got {value!r}")
    elif kind == "str":
        if not isinstance(value, str):
            raise ConfigError(path, f"expected a string, got {value!r}")
    else:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(path, f"expected a number, got {value!r}")


def _table(path: str, raw: Any) -> dict:
    if not isinstance(raw, dict):
        raise ConfigError(path, "expected a table")
    return raw


def _reject_unknown(path: str, raw: dict, known):
    for key in raw:
        if key not in known:
            where = f"{path}.{key}" if path else key
            raise ConfigError(where, f"unknown key (allowed: {', '.join(sorted(known))})")


def _construct(path: str, cls, kwargs: dict):
    try:
        return cls(**kwargs)
    except (ValueError, TypeError) as exc:
        msg = str(exc)
        # point at the offending key when the message names one
        for key in sorted(kwargs, key=len, reverse=True):
            if msg.startswith(key):
                raise ConfigError(f"{path}.{key}", msg) from None
        raise ConfigError(path, msg) from None


def _simple(path: str, cls, raw: Any):
    raw = _table(path, raw)
    flds = {f.name: f for f in dataclasses.fields(cls)}
    _reject_unknown(path, raw, flds)
    for key, value in raw.items():
        _check_type(f"{path}.{key}", value, str(flds[key].type).split(" ")[0])
    return _construct(path, cls, dict(raw))


def _panes(path: str, raw: Any) -> tuple[GlassPane, ...]:
    if not isinstance(raw, list):
        raise ConfigError(path, "expected an array of pane tables")
    out = []
    for i, item in enumerate(raw):
        p = f"{path}[{i}]"
        item = _table(p, item)
        _reject_unknown(p, item, {"label", "transmittance_db"})
        if "transmittance_db" not in item:
            raise ConfigError(f"{p}.transmittance_db", "required")
        _check_type(f"{p}.transmittance_db", item["transmittance_db"], "float")
        _check_type(f"{p}.label", item.get("label", ""), "str")
        out.append(_construct(p, GlassPane, {"label": item.get("label", "pane"),
                                               "transmittance_db": item["transmittance_db"]}))
    return tuple(out)


_CHANNEL_KEYS = {"distance", "lateral_offset", "attenuation_db_per_km", "scintillation_sigma_db", "panes"}


def _channel(raw: Any) -> ChannelState:
    raw = _table("channel", raw)
    _reject_unknown("channel", raw, _CHANNEL_KEYS)
    for key in _CHANNEL_KEYS - {"panes"}:
        if key in raw:
            _check_type(f"channel.{key}", raw[key], "float")
    geo = _construct("channel", LinkGeometry, {k: raw[k] for k in ("distance", "lateral_offset") if k in raw}
                     | ({} if "distance" in raw else {"distance": 50.0}))
    atm = _construct("channel", AtmosphereModel,
                     {k: raw[k] for k in ("attenuation_db_per_km", "scintillation_sigma_db") if k in raw})
    panes = _panes("channel.panes", raw.get("panes", []))
    return ChannelState(geo, atm, panes)


_EVENT_KEYS = {"time", "kind", "panes", "attenuation_db_per_km", "lateral_offset"}


def _timeline(raw: Any) -> Timeline:
    raw = _table("timeline", raw)
    _reject_unknown("timeline", raw, {"duration", "events"})
    events = []
    raw_events = raw.get("events", [])
    if not isinstance(raw_events, list):
        raise ConfigError("timeline.events", "expected an array of event tables")
    for i, ev in enumerate(raw_events):
        p = f"timeline.events[{i}]"
        ev = _table(p, ev)
        _reject_unknown(p, ev, _EVENT_KEYS)
        for key in ("time", "kind"):
            if key not in ev:
                raise ConfigError(f"{p}.{key}", "required")
        _check_type(f"{p}.time", ev["time"], "float")
        _check_type(f"{p}.kind", ev["kind"], "str")
        for key in ("attenuation_db_per_km", "lateral_offset"):
            if key in ev:
                _check_type(f"{p}.{key}", ev[key], "float")
        kwargs = {k: v for k, v in ev.items() if k != "panes"}
        if "panes" in ev:
            kwargs["panes"] = _panes(f"{p}.panes", ev["panes"])
        events.append(_construct(p, TimelineEvent, kwargs))
    if "duration" in raw:
        _check_type("timeline.duration", raw["duration"], "float")
    return _construct("timeline", Timeline, {"events": tuple(events)} |
                      ({"duration": raw["duration"]} if "duration" in raw else {}))


def _availability(raw: Any) -> AvailabilitySpec:
    raw = _table("availability", raw)
    _reject_unknown("availability", raw, {"n_samples", "weather"})
    kwargs = {}
    if "n_samples" in raw:
        _check_type("availability.n_samples", raw["n_samples"], "int")
        kwargs["n_samples"] = raw["n_samples"]
    if "weather" in raw:
        states = []
        if not isinstance(raw["weather"], list):
            raise ConfigError("availability.weather", "expected an array of state tables")
        for i, st in enumerate(raw["weather"]):
            p = f"availability.weather[{i}]"
            st = _table(p, st)
            _reject_unknown(p, st, {"attenuation_db_per_km", "probability"})
            for key in ("attenuation_db_per_km", "probability"):
                if key not in st:
                    raise ConfigError(f"{p}.{key}", "required")
                _check_type(f"{p}.{key}", st[key], "float")
            states.append((st["attenuation_db_per_km"], st["probability"]))
        kwargs["weather"] = _construct("availability.weather", WeatherDistribution, {"states": tuple(states)})
    return _construct("availability", AvailabilitySpec, kwargs)


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Validate a parsed document; raises :class:`ConfigError` naming the bad key."""
    raw = _table("", raw)
    _reject_unknown("", raw, _TOP_KEYS)
    kwargs = {}
    for name, cls in _SIMPLE_SECTIONS.items():
        if name in raw:
            kwargs[name] = _simple(name, cls, raw[name])
    if "channel" in raw:
        kwargs["channel"] = _channel(raw["channel"])
    if "timeline" in raw:
        kwargs["timeline"] = _timeline(raw["timeline"])
    if "availability" in raw:
        kwargs["availability"] = _availability(raw["availability"])
    if "seed" in raw:
        _check_type("seed", raw["seed"], "int")
        if raw["seed"] < 0:
            raise ConfigError("seed", "must be >= 0")
        kwargs["seed"] = raw["seed"]
    return ScenarioConfig(**kwargs)


def loads_config(text: str) -> ScenarioConfig:
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError("", f"not valid TOML: {exc}") from None
    return config_from_dict(raw)


def load_config(path) -> ScenarioConfig:
    return loads_config(Path(path).read_text(encoding="utf-8"))


def _pane_dict(p: GlassPane) -> dict:
    return {"label": p.label, "transmittance_db": p.transmittance_db}


def config_to_dict(cfg: ScenarioConfig) -> dict:
    out: dict[str, Any] = {"seed": cfg.seed}
    for name in _SIMPLE_SECTIONS:
        out[name] = dataclasses.asdict(getattr(cfg, name))
    ch = cfg.channel
    out["channel"] = {
        "distance": ch.geometry.distance,
        "lateral_offset": ch.geometry.lateral_offset,
        "attenuation_db_per_km": ch.atmosphere.attenuation_db_per_km,
        "scintillation_sigma_db": ch.atmosphere.scintillation_sigma_db,
        "panes": [_pane_dict(p) for p in ch.panes],
    }
    events = []
    for ev in cfg.timeline.events:
        d: dict[str, Any] = {"time": ev.time, "kind": ev.kind}
        if ev.kind == "insert_glass":
            d["panes"] = [_pane_dict(p) for p in ev.panes]
        if ev.attenuation_db_per_km is not None:
            d["attenuation_db_per_km"] = ev.attenuation_db_per_km
        if ev.lateral_offset is not None:
            d["lateral_offset"] = ev.lateral_offset
        events.append(d)
    out["timeline"] = {"duration": cfg.timeline.duration, "events": events}
    out["availability"] = {
        "n_samples": cfg.availability.n_samples,
        "weather": [
            {"attenuation_db_per_km": a, "probability": p} for a, p in cfg.availability.weather.states
        ],
    }
    return out


def dump_config(cfg: ScenarioConfig) -> str:
    return tomli_w.dumps(config_to_dict(cfg))


# --- calibration targets file -------------------------------------------------


def load_targets(path) -> tuple[tuple[CalibrationTarget, ...], CalibrationSpace, float]:
    """Read ``[[targets]]`` plus optional ``[space]`` and ``ceiling``."""
    try:
        raw = tomli.loads(Path(path).read_text(encoding="utf-8"))
    except tomli.TOMLDecodeError as exc:
        raise ConfigError("", f"not valid TOML: {exc}") from None
    _reject_unknown("", raw, {"targets", "space", "ceiling"})
    items = raw.get("targets")
    if not isinstance(items, list) or not items:
        raise ConfigError("targets", "at least one [[targets]] entry is required")
    targets = []
    for i, t in enumerate(items):
        p = f"targets[{i}]"
        t = _table(p, t)
        _reject_unknown(p, t, {"distance", "expected_rate", "glass"})
        for key in ("distance", "expected_rate"):
            if key not in t:
                raise ConfigError(f"{p}.{key}", "required")
            _check_type(f"{p}.{key}", t[key], "float")
        if "glass" in t:
            _check_type(f"{p}.glass", t["glass"], "bool")
        targets.append(_construct(p, CalibrationTarget, dict(t)))
    space = CalibrationSpace()
    if "space" in raw:
        sp = _table("space", raw["space"])
        names = {f.name for f in dataclasses.fields(CalibrationSpace)}
        _reject_unknown("space", sp, names)
        kwargs = {}
        for key, value in sp.items():
            if not isinstance(value, list) or len(value) != (4 if key == "resolution" else 2):
                raise ConfigError(f"space.{key}", "expected an array" +
                                  (" of 4 integers" if key == "resolution" else " [lower, upper]"))
            for v in value:
                _check_type(f"space.{key}", v, "int" if key == "resolution" else "float")
            kwargs[key] = tuple(value)
        space = _construct("space", CalibrationSpace, kwargs)
    ceiling = 0.01
    if "ceiling" in raw:
        _check_type("ceiling", raw["ceiling"], "float")
        ceiling = float(raw["ceiling"])
    return tuple(targets), space, ceiling
