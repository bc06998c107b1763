import pytest
from hypothesis import HealthCheck, settings

from ksetpack import gen_projective_plane

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def fano():
    return gen_projective_plane(2)


@pytest.fixture(scope="session")
def pp3():
    return gen_projective_plane(3)


@pytest.fixture()
def fig_graph():
    from helpers import make_fig_graph

    return make_fig_graph()
