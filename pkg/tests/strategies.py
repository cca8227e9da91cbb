from fractions import Fraction

from hypothesis import strategies as st

from dvrspec import seqcore as sc

monotone_lists = st.lists(st.integers(0, 12), min_size=1, max_size=40).map(lambda d: [sum(d[: i + 1]) for i in range(len(d))])


def monotone_window(length, vmax):
    return st.lists(st.integers(0, 3), min_size=length, max_size=length).map(
        lambda d: [min(vmax, sum(d[: i + 1])) for i in range(len(d))])


leaves = st.one_of(
    st.just(sc.Zero()),
    st.integers(1, 9).map(sc.Const),
    st.tuples(st.lists(st.integers(0, 4), max_size=2), st.integers(1, 3)).map(lambda t: sc.Poly((*t[0], t[1]))),
    st.fractions(min_value=0, max_value=3, max_denominator=3).map(lambda a: sc.PowerFloor(Fraction(a))),
    st.integers(2, 5).map(sc.Exp),
    st.just(sc.Factorial()),
    monotone_lists.map(lambda v: sc.window_ext(v)),
    st.lists(st.integers(0, 20), min_size=1, max_size=12).map(lambda v: sc.mono(sc.window_ext(v))),
)


def _extend(children):
    return st.one_of(
        st.tuples(children, st.integers(1, 3)).map(lambda t: sc.SigmaShift(t[0], t[1])),
        st.tuples(children, st.integers(1, 2)).map(lambda t: sc.MuDilate(t[0], t[1])),
        st.tuples(children, children).map(lambda t: sc.Join(*t)),
        st.tuples(children, children).map(lambda t: sc.Meet(*t)),
        st.tuples(children, children).map(lambda t: sc.Sum(*t)),
        st.tuples(st.integers(1, 5), children).map(lambda t: sc.Scale(*t)),
        st.tuples(children, children).map(lambda t: sc.Convolve(*t)),
        children.map(sc.SplitStretch),
    )


expressions = st.recursive(leaves, _extend, max_leaves=4)
