import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kaehler.core import COMPLEX, PARA, Structure

KINDS4 = [Structure(4, COMPLEX), Structure(4, PARA)]


@pytest.fixture(params=KINDS4, ids=["complex", "para"])
def S4(request):
    return request.param


rationals = st.builds(
    Fraction, st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=6)
)


def rng_point(seed: int, m: int, scale: int = 8):
    rng = random.Random(seed)
    return [Fraction(rng.randint(-3, 3), scale) for _ in range(m)]
