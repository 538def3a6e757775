import hypothesis.strategies as st
from hypothesis import settings

from triforms.rationals import QQ
from triforms.series import TruncatedSeries

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")

small_rationals = st.builds(
    QQ, st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=9))

small_integers = st.integers(min_value=-5, max_value=5)


def series(trunc: int, elements=None):
    """Strategy for a TruncatedSeries of fixed truncation."""
    elements = small_rationals if elements is None else elements
    return st.lists(elements, min_size=0, max_size=trunc + 1).map(
        lambda cs: TruncatedSeries(cs, trunc))


def unit_series(trunc: int, elements=None):
    """Constant term 1."""
    elements = small_rationals if elements is None else elements
    return st.lists(elements, min_size=0, max_size=trunc).map(
        lambda cs: TruncatedSeries([QQ(1)] + cs, trunc))


def zero_constant_series(trunc: int, elements=None):
    """Constant term 0."""
    elements = small_rationals if elements is None else elements
    return st.lists(elements, min_size=0, max_size=trunc).map(
        lambda cs: TruncatedSeries([QQ(0)] + cs, trunc))


def unit_linear_series(trunc: int, elements=None):
    """s(0) = 0, s'(0) = 1 (revertible)."""
    elements = small_integers if elements is None else elements
    return st.lists(elements, min_size=0, max_size=trunc - 1).map(
        lambda cs: TruncatedSeries([QQ(0), QQ(1)] + [QQ(c) for c in cs], trunc))
