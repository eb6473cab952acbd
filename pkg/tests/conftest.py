"""Shared fixtures: small graphs and the canonical epidemic setup."""

import pytest
from hypothesis import HealthCheck, settings

from llgames import epidemic, games

settings.register_profile(
    "llgames",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("llgames")


@pytest.fixture
def edge2():
    return games.Graph.complete(2)


@pytest.fixture
def triangle():
    return games.Graph.complete(3)


@pytest.fixture
def line3():
    return games.Graph.line(3)


@pytest.fixture
def ring6():
    return games.Graph.ring(6)


# gamma/beta1 = 0.5, q + gamma/beta1 = 1.2 > 1: every hypothesis holds
CANONICAL = dict(gamma=0.3, beta0=0.9, beta1=0.6, q=0.7)


@pytest.fixture
def canonical_cfg():
    def build(graph, s0=0.2, **overrides):
        params = {**CANONICAL, **overrides}
        return epidemic.SisgcgConfig(graph=graph, s0=s0, **params)

    return build


@pytest.fixture
def single_edge_gcg(edge2):
    # q = 0.2, bonus = 1.0: potential values 1.2 / 1.0 / 0 / 0
    return games.gcg_game(edge2, 0.2, 1.0)
