import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lorcal.skew import SkewOp

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

coord = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(coord, coord, coord).map(np.array)
skew_ops = st.tuples(vec3, vec3).map(lambda eb: SkewOp(*eb))
seeds = st.integers(0, 2**32 - 1)
