"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from krtoolkit.knots import Atom, Mirror, Sum
from krtoolkit.laurent import LaurentPoly, mono

monomials = st.builds(
    lambda t2, q, a, r: mono(t2=t2, q=q, a=a, r=r),
    st.integers(-4, 4),
    st.integers(-6, 6),
    st.integers(-3, 3),
    st.integers(-2, 2),
)

polys = st.dictionaries(monomials, st.integers(-5, 5), max_size=6).map(LaurentPoly)
nonneg_polys = st.dictionaries(monomials, st.integers(0, 4), max_size=6).map(LaurentPoly)
qa_polys = st.dictionaries(
    st.builds(lambda q, a: mono(q=q, a=a), st.integers(-6, 6), st.integers(-3, 3)),
    st.integers(-4, 4),
    max_size=5,
).map(LaurentPoly)

braid_words = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.lists(
            st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])),
            min_size=1,
            max_size=6,
        ),
        st.just(n),
    )
)

atom_names = st.sampled_from(["T(3,2)", "T(5,2)", "P(5,-3,2)", "P(7,-5,4)", "8_9", "trefoil", "B[1,1,1]@2"])
exprs = st.recursive(
    atom_names.map(Atom),
    lambda inner: st.one_of(
        inner.map(Mirror),
        st.lists(inner, min_size=2, max_size=3).map(lambda xs: Sum(tuple(xs))),
    ),
    max_leaves=6,
)
