import pytest

from wskg import SystemParams


@pytest.fixture
def ref_params():
    """Ten subcarriers, pilot budget 5, jam budget 4, threshold 2, unit variances."""
    return SystemParams(
        n_subcarriers=10,
        max_pilot_power=5.0,
        jam_power_budget=4.0,
        sense_threshold=2.0,
        legit_channel_var=1.0,
        jam_channel_var=1.0,
    )
