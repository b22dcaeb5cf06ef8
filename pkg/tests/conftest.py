import numpy as np
import pytest

from splitsurf import holofn


def enneper_x(u, v):
    """Closed form of the negative-curvature Enneper patch (real part)."""
    return np.stack(
        [
            -u * (u**2 + 3 * v**2 + 3) / 6.0,
            -v * (3 * u**2 + v**2 - 3) / 6.0,
            (u**2 + v**2) / 2.0,
        ],
        axis=-1,
    )


def enneper_y(u, v):
    """Closed form of the positive-curvature Enneper patch (imaginary part)."""
    return np.stack(
        [
            -v * (3 * u**2 + v**2 + 3) / 6.0,
            -u * (u**2 + 3 * v**2 - 3) / 6.0,
            u * v,
        ],
        axis=-1,
    )


@pytest.fixture
def expr():
    return holofn.parse
