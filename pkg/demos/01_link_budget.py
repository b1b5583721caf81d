"""Walk through the optical link budget of a directed infrared link.

Run with ``python demos/01_link_budget.py``.
"""

# %% The beam is a top-hat disc. Its footprint grows linearly with distance.
import numpy as np

from owclink import (
    COATED_DOUBLE_PANE,
    DEFAULT_RX_OPTICS,
    DEFAULT_TX_OPTICS,
    ChannelState,
    LinkGeometry,
    capture_fraction,
    geometric_loss_db,
    spot_diameter,
    total_channel_loss_db,
)

for d in (25, 50, 100, 200):
    print(f"spot at {d:>3} m: {spot_diameter(d, DEFAULT_TX_OPTICS.divergence_half_angle):.3f} m")

# %% Only the part of the spot that lands on the 150 cm^2 lens is collected.
for d in (5, 10, 25, 50, 100):
    geo = LinkGeometry(d)
    print(f"{d:>3} m: capture {capture_fraction(spot_diameter(d, 0.41), DEFAULT_RX_OPTICS.area_m2):.4f}, "
          f"geometric loss {geometric_loss_db(DEFAULT_TX_OPTICS, DEFAULT_RX_OPTICS, geo)}")

# %% A pointing miss costs extra. Past spot radius + lens radius the link goes dark.
for off in np.linspace(0.0, 0.8, 5):
    print(f"offset {off:.2f} m: {geometric_loss_db(DEFAULT_TX_OPTICS, DEFAULT_RX_OPTICS, LinkGeometry(50, off))}")

# %% Window glass adds a flat optical loss on top of the geometry.
clear = total_channel_loss_db(ChannelState(LinkGeometry(50)), DEFAULT_TX_OPTICS, DEFAULT_RX_OPTICS)
glass = total_channel_loss_db(ChannelState(LinkGeometry(50), panes=(COATED_DOUBLE_PANE,)),
                              DEFAULT_TX_OPTICS, DEFAULT_RX_OPTICS)
print(f"50 m clear: {clear}, through {COATED_DOUBLE_PANE.label}: {glass}")
# Intensity modulation with direct detection squares the optical loss in the electrical domain:
print(f"the glass costs {(glass - clear).to_electrical()} of electrical SNR at most")
