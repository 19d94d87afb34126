import numpy as np
import pytest
from hypothesis import strategies as st

from qharm.field import FieldModel, FieldParams
from qharm.radial import RadialProfile


@pytest.fixture
def rng():
    return np.random.default_rng(20240810)


def make_profile(rng, params, kmin, kmax, tail=0.0):
    m = kmax - kmin + 1
    vals = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return RadialProfile(params, kmin, kmax, vals, tail=tail)


# hypothesis strategies ---------------------------------------------------------

field_params_st = st.builds(
    FieldParams,
    q=st.sampled_from([2, 3, 5]),
    n=st.sampled_from([1, 2]),
    alpha=st.sampled_from([0.5, 1.0, 2.0]),
)

complex_st = st.builds(
    complex,
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
)


@st.composite
def profile_st(draw, max_window=60, with_tail=True):
    params = draw(field_params_st)
    kmin = draw(st.integers(-30, 29))
    kmax = draw(st.integers(kmin, min(kmin + max_window - 1, 30)))
    coeffs = draw(
        st.lists(
            complex_st, min_size=kmax - kmin + 1, max_size=kmax - kmin + 1
        )
    )
    tail = draw(complex_st) if with_tail and draw(st.booleans()) else 0.0
    return RadialProfile(params, kmin, kmax, np.array(coeffs), tail=tail)


def quotient_params(q=2, n=1, alpha=1.0):
    return FieldParams(q, n, alpha, FieldModel.QADIC_QUOTIENT)
