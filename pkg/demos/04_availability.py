"""Estimate weather availability by Monte Carlo.

Run with ``python demos/04_availability.py``.
"""

# %% A 100 m link with clear air 99.9% of the time and dense fog otherwise.
import math

from owclink import AtmosphereModel, AvailabilitySpec, ChannelState, LinkGeometry, WeatherDistribution, demo_scenario, run_availability

weather = WeatherDistribution(((0.0, 0.999), (1000.0, 0.001)))
cfg = demo_scenario(channel=ChannelState(LinkGeometry(100.0)), availability=AvailabilitySpec(1_000_000, weather))
a = run_availability(cfg)
print(f"availability {a:.6f} (binomial sigma {math.sqrt(0.999 * 0.001 / 1e6):.1e})")

# %% The calibrated link has roughly 50 dB of margin at 100 m, so 300 dB/km fog
# only interrupts links long enough for the fog to eat that margin.
for p_fog in (0.001, 0.01, 0.05):
    for d in (100.0, 150.0, 200.0):
        w = WeatherDistribution(((0.0, 1 - p_fog), (300.0, p_fog)))
        c = cfg.replace(channel=ChannelState(LinkGeometry(d)))
        print(f"fog 300 dB/km with p={p_fog:<5} at {d:>5.0f} m: {run_availability(c, w, 100_000):.4f}")

# %% Scintillation adds a Gaussian fade on top of the weather state.
c = cfg.replace(channel=ChannelState(LinkGeometry(200.0), AtmosphereModel(0.0, 6.0)))
w = WeatherDistribution(((150.0, 1.0),))
print(f"200 m, 150 dB/km haze, 6 dB fades: {run_availability(c, w, 100_000):.4f}")
