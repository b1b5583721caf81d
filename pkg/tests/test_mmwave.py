import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from owclink.mmwave import DEMO_DISTANCE_M, MmWaveParams, cinr_db, fit_eirp_dbm, fspl_db, link_up


def test_fspl_examples():
    # 20 log10(4 pi d f / c) evaluated by hand
    assert fspl_db(60.0, 100.0) == pytest.approx(108.0, abs=0.1)
    assert fspl_db(60.0, 10.0) == pytest.approx(88.0, abs=0.1)
    assert fspl_db(60.0, 200.0) - fspl_db(60.0, 100.0) == pytest.approx(20 * math.log10(2), abs=1e-9)
    with pytest.raises(ValueError):
        fspl_db(0.0, 10.0)


def test_default_budget_gives_27db_at_demo_distance():
    p = MmWaveParams()
    assert DEMO_DISTANCE_M == 50.0
    assert cinr_db(p, 50.0) == pytest.approx(27.0, abs=1e-9)
    assert cinr_db(p, 50.0, glass_present=True) == 0.0


def test_zero_penetration_loss_is_transparent():
    p = MmWaveParams(glass_penetration_loss_db=0.0)
    assert cinr_db(p, 80.0, True) == cinr_db(p, 80.0, False)


def test_link_up_threshold():
    p = MmWaveParams()
    assert link_up(27.0, p)
    assert not link_up(0.0, p)
    assert link_up(p.cinr_up_threshold_db, p)


def test_interference_floor_lowers_cinr():
    clean = MmWaveParams()
    noisy = MmWaveParams(interference_floor_dbm=-80.0)
    assert cinr_db(noisy, 50.0) < cinr_db(clean, 50.0)


def test_fit_eirp_reanchors():
    p = MmWaveParams()
    q = MmWaveParams(eirp_dbm=fit_eirp_dbm(p, 120.0, 27.0))
    assert cinr_db(q, 120.0) == pytest.approx(27.0, abs=1e-9)


@given(st.floats(1, 2000), st.floats(0, 60), st.floats(-20, 60))
def test_glass_difference_and_floor(d, pen, eirp):
    p = MmWaveParams(eirp_dbm=eirp, glass_penetration_loss_db=pen)
    free, glass = cinr_db(p, d), cinr_db(p, d, True)
    assert glass <= free
    assert free - glass == pytest.approx(min(pen, free), abs=1e-9)
    assert glass >= 0.0


@given(st.floats(1, 2000), st.floats(1, 2000))
def test_cinr_monotone_in_distance(a, b):
    p = MmWaveParams()
    lo, hi = sorted((a, b))
    assert cinr_db(p, hi) <= cinr_db(p, lo)


def test_invalid_params():
    with pytest.raises(ValueError):
        MmWaveParams(carrier_freq=0.0)
    with pytest.raises(ValueError):
        MmWaveParams(glass_penetration_loss_db=-1.0)
