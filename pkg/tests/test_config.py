"""Scenario TOML loading: validation messages, unknown keys, round trips."""

from pathlib import Path

import pytest

from owclink.calibration import CalibrationSpace, CalibrationTarget
from owclink.channel import COATED_DOUBLE_PANE, GlassPane
from owclink.config import (
    ConfigError,
    ScenarioConfig,
    SweepSpec,
    Timeline,
    TimelineEvent,
    dump_config,
    load_config,
    load_targets,
    loads_config,
)
from owclink.scenario import demo_scenario

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_empty_document_gives_defaults():
    assert loads_config("") == ScenarioConfig()


def test_round_trip_demo_scenario():
    cfg = demo_scenario()
    assert loads_config(dump_config(cfg)) == cfg


def test_round_trip_with_every_event_kind():
    tl = Timeline(500.0, (
        TimelineEvent(0.0, "set_offset", lateral_offset=0.2),
        TimelineEvent(100.0, "insert_glass", (GlassPane("a", 3.0), GlassPane("b", 1.5))),
        TimelineEvent(200.0, "set_atmosphere", attenuation_db_per_km=12.5),
        TimelineEvent(300.0, "remove_glass"),
    ))
    cfg = demo_scenario(timeline=tl, seed=17)
    assert loads_config(dump_config(cfg)) == cfg


def test_shipped_configs_load():
    for path in sorted(CONFIGS.glob("*.toml")):
        if "targets" in path.name:
            targets, _, _ = load_targets(path)
            assert targets
        else:
            assert isinstance(load_config(path), ScenarioConfig)


def test_shipped_demo_config_matches_builtin():
    assert load_config(CONFIGS / "demo.toml") == demo_scenario()


@pytest.mark.parametrize(
    "text, field",
    [
        ("[frontend]\nresponsivty = 0.5", "frontend.responsivty"),
        ("colour = 1", "colour"),
        ("[channel]\ndistanse = 3.0", "channel.distanse"),
        ("[[timeline.events]]\ntime = 1.0\nkind = 'insert_glass'\nwhen = 2", "timeline.events[0].when"),
        ("[availability]\nweather = [{attenuation_db_per_km = 0.0, probability = 1.0, p = 3}]",
         "availability.weather[0].p"),
    ],
)
def test_unknown_keys_rejected(text, field):
    with pytest.raises(ConfigError) as exc:
        loads_config(text)
    assert exc.value.field == field
    assert "unknown key" in str(exc.value)


@pytest.mark.parametrize(
    "text, field",
    [
        ("[frontend]\nresponsivity = -1.0", "frontend.responsivity"),
        ("[frontend]\ntx_optical_power = 0.0", "frontend.tx_optical_power"),
        ("[tx_optics]\ndivergence_half_angle = 20.0", "tx_optics.divergence_half_angle"),
        ("[rx_optics]\nlens_area = 0.0", "rx_optics.lens_area"),
        ("[ofdm]\nn_carriers = 0", "ofdm.n_carriers"),
        ("[adaptation]\nhysteresis_db = -1.0", "adaptation.hysteresis_db"),
        ("[sweep]\nstart = 50.0\nstop = 10.0", "sweep.stop"),
        ("[channel]\ndistance = -5.0", "channel.distance"),
        ("[channel]\nlateral_offset = -0.1", "channel.lateral_offset"),
        ("[channel]\npanes = [{label = 'x', transmittance_db = -2.0}]", "channel.panes[0].transmittance_db"),
        ("[channel]\npanes = [{label = 'x'}]", "channel.panes[0].transmittance_db"),
        ("[[timeline.events]]\nkind = 'insert_glass'", "timeline.events[0].time"),
        ("[[timeline.events]]\ntime = 1.0\nkind = 'explode'", "timeline.events[0].kind"),
        ("[[timeline.events]]\ntime = -1.0\nkind = 'remove_glass'", "timeline.events[0].time"),
        ("[availability]\nn_samples = 0", "availability.n_samples"),
        ("[availability]\nweather = [{attenuation_db_per_km = 0.0, probability = 0.5}]",
         "availability.weather"),
        ("seed = -3", "seed"),
    ],
)
def test_invariant_violations_name_the_field(text, field):
    with pytest.raises(ConfigError) as exc:
        loads_config(text)
    assert exc.value.field.startswith(field)
    assert str(exc.value).startswith(exc.value.field)


def test_unsorted_events_rejected():
    text = ("[[timeline.events]]\ntime = 500.0\nkind = 'remove_glass'\n"
            "[[timeline.events]]\ntime = 100.0\nkind = 'insert_glass'\n")
    with pytest.raises(ConfigError) as exc:
        loads_config(text)
    assert exc.value.field.startswith("timeline")
    assert "sorted" in str(exc.value)


@pytest.mark.parametrize(
    "text, field",
    [
        ("[frontend]\nresponsivity = 'high'", "frontend.responsivity"),
        ("[frontend]\ninclude_shot_noise = 1", "frontend.include_shot_noise"),
        ("[ofdm]\nn_carriers = 1024.5", "ofdm.n_carriers"),
        ("[ofdm]\nbandwidth = true", "ofdm.bandwidth"),
        ("seed = 1.5", "seed"),
        ("frontend = 3", "frontend"),
        ("[timeline]\nevents = 4", "timeline.events"),
    ],
)
def test_type_errors_name_the_field(text, field):
    with pytest.raises(ConfigError) as exc:
        loads_config(text)
    assert exc.value.field == field


def test_integers_accepted_for_floats():
    cfg = loads_config("[channel]\ndistance = 75")
    assert cfg.channel.geometry.distance == 75


def test_invalid_toml():
    with pytest.raises(ConfigError, match="not valid TOML"):
        loads_config("[frontend\n")


def test_insert_glass_defaults_to_coated_pane():
    cfg = loads_config("[[timeline.events]]\ntime = 0.0\nkind = 'insert_glass'")
    assert cfg.timeline.events[0].panes == (COATED_DOUBLE_PANE,)


def test_sweep_distances():
    assert SweepSpec(10, 12, 1).distances() == [10, 11, 12]
    assert SweepSpec(25, 100, 500).distances() == [25]
    assert SweepSpec(10, 200, 1).distances()[-1] == 200


def test_load_targets(tmp_path):
    path = tmp_path / "t.toml"
    path.write_text(
        "ceiling = 0.02\n"
        "[[targets]]\ndistance = 30.0\nexpected_rate = 900.0\n"
        "[[targets]]\ndistance = 50\nexpected_rate = 500.0\nglass = true\n"
        "[space]\nsnr_gap_db = [6.0, 6.0]\n"
    )
    targets, space, ceiling = load_targets(path)
    assert targets == (CalibrationTarget(30.0, 900.0), CalibrationTarget(50.0, 500.0, True))
    assert space.snr_gap_db == (6.0, 6.0)
    assert space.tx_optical_power == CalibrationSpace().tx_optical_power
    assert ceiling == 0.02


@pytest.mark.parametrize(
    "text, field",
    [
        ("", "targets"),
        ("[[targets]]\ndistance = 30.0", "targets[0].expected_rate"),
        ("[[targets]]\ndistance = -1.0\nexpected_rate = 10.0", "targets[0].distance"),
        ("[[targets]]\ndistance = 1.0\nexpected_rate = 10.0\nglass = 'yes'", "targets[0].glass"),
        ("[[targets]]\ndistance = 1.0\nexpected_rate = 10.0\n[space]\nfoo = [1, 2]", "space.foo"),
        ("[[targets]]\ndistance = 1.0\nexpected_rate = 10.0\n[space]\nsnr_gap_db = [1.0]", "space.snr_gap_db"),
        ("[[targets]]\ndistance = 1.0\nexpected_rate = 10.0\nceiling = 'low'", "targets[0].ceiling"),
    ],
)
def test_load_targets_errors(tmp_path, text, field):
    path = tmp_path / "t.toml"
    path.write_text(text)
    with pytest.raises(ConfigError) as exc:
        load_targets(path)
    assert exc.value.field.startswith(field)


def test_load_targets_ceiling_type(tmp_path):
    path = tmp_path / "t.toml"
    path.write_text("ceiling = 'low'\n[[targets]]\ndistance = 1.0\nexpected_rate = 10.0\n")
    with pytest.raises(ConfigError) as exc:
        load_targets(path)
    assert exc.value.field == "ceiling"
