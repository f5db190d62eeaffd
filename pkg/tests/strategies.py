from fractions import Fraction

from hypothesis import strategies as st

small_ints = st.integers(min_value=-50, max_value=50)
rationals = st.builds(Fraction, st.integers(-10**4, 10**4), st.integers(1, 64))
nonzero_rationals = st.builds(
    lambda n, d, neg: Fraction(-n if neg else n, d),
    st.integers(1, 10**4), st.integers(1, 64), st.booleans(),
)
_entries = st.builds(Fraction, st.integers(-20, 20), st.sampled_from([1, 1, 1, 2, 4]))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4):
    from squarer_schemes.numeric import RMatrix

    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    return RMatrix(r, c, draw(st.lists(_entries, min_size=r * c, max_size=r * c)))


def pairs():
    return st.tuples(rationals, rationals)


def nonzero_pairs():
    return st.one_of(st.tuples(nonzero_rationals, rationals), st.tuples(rationals, nonzero_rationals))
