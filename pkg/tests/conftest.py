import pytest

from owclink.calibration import MEASURED_TARGETS, CalibrationSpace, fit
from owclink.scenario import demo_scenario


@pytest.fixture(scope="session")
def measured_fit():
    return fit(CalibrationSpace(), MEASURED_TARGETS)


@pytest.fixture(scope="session")
def calibrated(measured_fit):
    """Demo scenario with the freshly fitted frontend."""
    return demo_scenario(frontend=measured_fit.frontend, ofdm=measured_fit.ofdm)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
