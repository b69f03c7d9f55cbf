import math

import pytest
from hypothesis import assume, strategies as st

from janus import (
    DegenerateSpanError,
    InadmissibleCoefficientsError,
    SqueezeParams,
    from_ratio,
    solve_coefficients,
)

TWO_PI = 2.0 * math.pi


@st.composite
def squeeze_params(draw, r_max: float = 1.5):
    r = draw(st.floats(0.0, r_max, allow_nan=False, allow_infinity=False))
    theta = draw(st.floats(0.0, TWO_PI, exclude_max=True, allow_nan=False))
    return SqueezeParams(r, theta)


@st.composite
def janus_states(draw, r_max: float = 1.5):
    """Random admissible states through both construction routes."""
    xi = draw(squeeze_params(r_max))
    zeta = draw(squeeze_params(r_max))
    if draw(st.booleans()):
        t = draw(st.floats(-3.0, 3.0, allow_nan=False))
        try:
            return from_ratio(xi, zeta, t)
        except DegenerateSpanError:
            assume(False)
    eta_mag = draw(st.floats(0.0, 1.2, allow_nan=False))
    delta = draw(st.floats(0.0, TWO_PI, exclude_max=True, allow_nan=False))
    try:
        return solve_coefficients(xi, zeta, eta_mag, delta)
    except InadmissibleCoefficientsError:
        assume(False)


@pytest.fixture(scope="session")
def seeded_states():
    """Fixed 60-state sample shared by oracle-heavy tests."""
    import numpy as np

    from janus.verify import sample_states

    return sample_states(np.random.default_rng(777), 60, 1.5)
