import math

import pytest

from quartosc.model import ModelParams
from quartosc.report import comparison_table


@pytest.fixture(scope="session")
def default_params():
    return ModelParams(omega1=1.0, omega2=math.sqrt(2.0), g=0.1, hbar=1.0)


@pytest.fixture(scope="session")
def default_table(default_params):
    """Converged 20-row comparison at the reference configuration."""
    return comparison_table(default_params, n_rows=20)


@pytest.fixture(scope="session")
def small_hbar_table(default_params):
    """Same configuration with hbar = 0.1."""
    params = ModelParams(
        omega1=default_params.omega1,
        omega2=default_params.omega2,
        g=default_params.g,
        hbar=0.1,
    )
    return comparison_table(params, n_rows=20)
