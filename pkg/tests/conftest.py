import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gpgda.model import (  # noqa: E402
    RadarScene,
    ReliabilityVector,
    SystemConfig,
    build_instance,
    generate_channel,
)


def random_instance(seed, n_t=8, m=3, k=2, **overrides):
    """Small instance with random scene, channel and health vector."""
    rng = np.random.default_rng(1000 + seed)
    scene = RadarScene(rng.uniform(-1.2, 1.2, k), rng.uniform(0.2, 2.0, k))
    cfg = SystemConfig(
        n_t=n_t,
        n_r=n_t,
        m=m,
        k=k,
        r_min=tuple(rng.uniform(0.01, 0.5, m)),
        bandwidths=tuple(rng.uniform(1e9, 8e9, m)),
        **overrides,
    )
    beta = ReliabilityVector(rng.uniform(0, 1, n_t))
    return build_instance(cfg, scene, generate_channel(seed, n_t, m), beta)


def random_weights(seed, n_t=8, m=3, scale=1.0):
    rng = np.random.default_rng(2000 + seed)
    return scale * (rng.standard_normal((n_t, m)) + 1j * rng.standard_normal((n_t, m)))


@pytest.fixture
def instance():
    return random_instance(0)
