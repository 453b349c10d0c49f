import pytest

from qreuse import build_link_gain_table, load_scenario


@pytest.fixture(scope="session")
def default_scenario():
    return load_scenario("default")


@pytest.fixture(scope="session")
def det_gains(default_scenario):
    sc = default_scenario
    return build_link_gain_table(sc.deployment, sc.path_loss)
