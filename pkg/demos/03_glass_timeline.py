"""Insert heat-insulation glass into a running link and compare optical and 60 GHz links.

Run with ``python demos/03_glass_timeline.py``.
"""

# %% The demo scenario: 50 m link, coated double pane inserted after one second.
from owclink import TimelineEvent, Timeline, demo_scenario, run_timeline

cfg = demo_scenario()
print(cfg.timeline)

# %% Every 100 ms the optical link re-loads bits from the measured SNR.
print(f"{'t/ms':>6} {'OWC Mbit/s':>11} {'SNR/dB':>7} {'up':>5} {'CINR/dB':>8} {'60G up':>7}")
for r in run_timeline(cfg):
    print(f"{r.time_ms:6.0f} {r.owc_rate_mbps:11.1f} {r.owc_mean_snr_db:7.2f} {str(r.owc_link_up):>5} "
          f"{r.mmwave_cinr_db:8.2f} {str(r.mmwave_link_up):>7}")
# The optical link slows down but stays up; the 60 GHz link drops out.

# %% Taking the glass out again returns the link to where it started.
tl = Timeline(2000.0, (TimelineEvent(500.0, "insert_glass"), TimelineEvent(1500.0, "remove_glass")))
recs = run_timeline(cfg.replace(timeline=tl))
print(f"start {recs[0].owc_rate_mbps:.1f} Mbit/s, glass {recs[10].owc_rate_mbps:.1f}, "
      f"end {recs[-1].owc_rate_mbps:.1f}")
