"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from penrose_cpn.flagspace import F, G, M, FlagSpace
from penrose_cpn.rootsys import Weight


def weights(n, lo=-4, hi=4):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(lambda c: Weight(n, tuple(c)))


def dominant_weights(n, hi=3):
    return weights(n, 0, hi)


@st.composite
def spaces(draw, n_min=2, n_max=4):
    n = draw(st.integers(n_min, n_max))
    kind = draw(st.sampled_from(["F", "G", "M", "other"]))
    if kind == "other":
        crossed = draw(st.sets(st.integers(1, n), min_size=1))
        return FlagSpace(n, frozenset(crossed))
    return {"F": F, "G": G, "M": M}[kind](n)


@st.composite
def valid_labels(draw, space: FlagSpace, lo=-4, hi=4):
    coeffs = [
        draw(st.integers(0, hi)) if j in space.uncrossed else draw(st.integers(lo, hi))
        for j in range(1, space.n + 1)
    ]
    return Weight(space.n, tuple(coeffs))


@st.composite
def space_and_label(draw, n_min=2, n_max=4, lo=-4, hi=4):
    space = draw(spaces(n_min, n_max))
    return space, draw(valid_labels(space, lo, hi))
