"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from nhw.exact_algebra import LaurentPoly, RatFun
from nhw.partitions import MultiPartition, Partition

CHAR = ("q", "t", "sigma")

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))
exponents = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2))

laurent = st.dictionaries(exponents, small_fractions, max_size=5).map(
    lambda d: LaurentPoly(CHAR, d))


@st.composite
def polys(draw, max_terms=3):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)),
                                 small_fractions, max_size=max_terms))
    out = RatFun.const(0)
    for (a, b, c), coef in terms.items():
        out = out + RatFun.var("x") ** a * RatFun.var("y") ** b * RatFun.var("z") ** c * coef
    return out


@st.composite
def ratfuns(draw):
    num = draw(polys())
    den = draw(polys().filter(bool))
    return num / den


@st.composite
def partitions(draw, max_size=8):
    n = draw(st.integers(0, max_size))
    cols = []
    remaining = n
    while remaining:
        top = remaining if not cols else min(cols[-1], remaining)
        c = draw(st.integers(1, top))
        cols.append(c)
        remaining -= c
    return Partition(cols)


@st.composite
def multipartitions(draw, max_r=3, max_size=5):
    r = draw(st.integers(1, max_r))
    return MultiPartition([draw(partitions(max_size)) for _ in range(r)])
