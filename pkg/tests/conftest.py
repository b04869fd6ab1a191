import numpy as np
import pytest

import psispec as ps


@pytest.fixture(scope="session")
def zeros():
    """The bundled 2000-ordinate zero table."""
    return ps.load_zeros(ps.bundled_zeros_path())


@pytest.fixture(scope="session")
def fluc_1e4():
    """Fluctuation series on [2, 10001], shared by several test modules."""
    return ps.fluctuation_series(10**4)


def ar1_sample(seed: int, n: int, coeff: float = 0.9) -> np.ndarray:
    """Seeded AR(1) draw y_t = coeff * y_{t-1} + eps_t used across tests."""
    rng = np.random.default_rng(seed)
    eps = rng.standard_normal(n)
    out = np.empty(n)
    prev = 0.0
    for i in range(n):
        prev = coeff * prev + eps[i]
        out[i] = prev
    return out
