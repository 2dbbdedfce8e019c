import numpy as np
import pytest

from ancrelay import LayeredNetwork
from ancrelay.verify import random_network


def rel_close(a: float, b: float, tol: float) -> bool:
    scale = max(abs(a), abs(b))
    return abs(a - b) <= tol * scale if scale else True


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def symmetric_diamond(n: int, h: float = 1.0, g: float = 1.0, p: float = 1.0,
                      ps: float = 1.0, s2: float = 1.0) -> LayeredNetwork:
    return LayeredNetwork(
        layer_sizes=[n],
        gains=[np.full((1, n), h), np.full((n, 1), g)],
        source_power=ps,
        noise_variance=s2,
        relay_powers=[np.full(n, p)],
    )


def random_diamond(seed: int, n: int, ps: float = 1.0, low: float = 0.5,
                   high: float = 2.0) -> LayeredNetwork:
    rng = np.random.default_rng(seed)
    return random_network(rng, [n], low=low, high=high, source_power=ps)
