import numpy as np
import pytest

from qre import build_study, feedback_benchmark_config, series_benchmark_config


@pytest.fixture(scope="session")
def series_study():
    return build_study(series_benchmark_config())


@pytest.fixture(scope="session")
def feedback_study():
    return build_study(feedback_benchmark_config())


@pytest.fixture(scope="session")
def delta_grid_21():
    return np.linspace(-1.0, 1.0, 21)
