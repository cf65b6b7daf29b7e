"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from indexforge.algebra import GradedClass, Monomial, Partition

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-12, max_value=12),
    st.integers(min_value=1, max_value=6),
)


def monomials(n: int, with_euler: bool = True, with_ch: bool = False):
    l = n // 2
    parts = st.lists(st.integers(min_value=1, max_value=max(l, 1)), max_size=3) if l else st.just([])
    eul = st.integers(min_value=0, max_value=2) if (with_euler and l) else st.just(0)
    chs = st.lists(st.integers(min_value=0, max_value=l), max_size=2) if with_ch else st.just([])
    return st.builds(lambda p, e, c: Monomial.make(p, e, c), parts, eul, chs)


def graded_classes(n: int, with_euler: bool = True, with_ch: bool = False, max_degree=None):
    return st.dictionaries(monomials(n, with_euler, with_ch), small_fractions, max_size=5).map(
        lambda d: GradedClass(n, d, max_degree)
    )
