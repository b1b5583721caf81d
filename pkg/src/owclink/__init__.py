"""Link-level simulator for LED-based optical wireless fixed-access links.

Optical geometry and channel losses feed a DC-biased OFDM bit-loading model
with closed-loop rate adaptation; a 60 GHz Friis budget serves as the radio
comparison. Unpublished frontend parameters are fitted by ``calibration``.
"""

from .adaptation import AdaptationConfig, AdaptationState, adapt_step, hysteresis_band, initial_state
from .calibration import (
    MEASURED_TARGETS,
    CalibrationResult,
    CalibrationSpace,
    CalibrationTarget,
    fit,
    objective,
    validate_glass_point,
)
from .channel import (
    CLEAR_AIR,
    COATED_DOUBLE_PANE,
    AtmosphereModel,
    ChannelState,
    GlassPane,
    WeatherDistribution,
    atmospheric_loss_db,
    glass_loss_db,
    sample_weather,
    total_channel_loss_db,
)
from .config import (
    AvailabilitySpec,
    ConfigError,
    ScenarioConfig,
    SweepSpec,
    Timeline,
    TimelineEvent,
    dump_config,
    load_config,
    loads_config,
)
from .mmwave import MmWaveParams, cinr_db, fspl_db, link_up
from .optics import (
    DEFAULT_RX_OPTICS,
    DEFAULT_TX_OPTICS,
    LinkGeometry,
    RxOptics,
    TxOptics,
    capture_fraction,
    geometric_loss_db,
    spot_diameter,
)
from .phy import (
    BitTable,
    FrontendParams,
    OfdmConfig,
    SnrProfile,
    bits_per_carrier,
    carrier_snr_profile,
    gross_rate,
    link_rate,
    received_optical_power,
)
from .quantities import (
    LINK_DARK,
    DecibelElectrical,
    DecibelOptical,
    Power,
    db_to_linear,
    linear_to_db,
    optical_to_electrical_db,
)
from .results import emit_results, read_results
from .scenario import StepRecord, SweepRecord, demo_scenario, run_availability, run_sweep, run_timeline

__version__ = "0.1.0"
