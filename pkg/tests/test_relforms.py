from collections import Counter
from math import comb

import pytest

from penrose_cpn.charlib import decompose
from penrose_cpn.errors import PenroseError
from penrose_cpn.flagspace import BundleSum, F, G, M, validate_bundle
from penrose_cpn.relforms import (
    ParabolicPattern,
    correspondence_pattern,
    pullback,
    pullback_sum,
    relative_cotangent,
    relative_cotangent_roots,
    relative_forms,
    tangent_series,
    twistor_pattern_swapped,
)
from penrose_cpn.rootsys import Weight


def W(*c):
    return Weight(len(c), c)


@pytest.mark.parametrize("p,expected", [
    (0, [(0, 0, 0)]),
    (1, [(1, 0, 1), (-2, 1, 0)]),
    (2, [(2, 1, 0), (-1, 1, 1)]),
    (3, [(0, 2, 0)]),
])
def test_relative_forms_n3(p, expected):
    assert relative_forms(3, p) == BundleSum.of(G(3), *[W(*e) for e in expected])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_relative_forms_ranks(n):
    assert relative_cotangent(n).rank == n
    assert [relative_forms(n, p).rank for p in range(n + 1)] == [comb(n, p) for p in range(n + 1)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cotangent_rule_matches_pattern_difference(n):
    roots = relative_cotangent_roots(n)
    assert len(roots) == n
    assert decompose(G(n), Counter(roots)) == relative_cotangent(n)


def test_patterns_are_parabolic_and_nested():
    for n in (2, 3, 4):
        small, big = correspondence_pattern(n), twistor_pattern_swapped(n)
        assert small.contains_diagonal() and big.contains_diagonal()
        assert small.entries < big.entries
        assert len(big.entries - small.entries) == n


def test_pattern_render():
    assert ParabolicPattern.standard(M(2)).render() == "* * *\n0 * *\n0 * *"


def test_relative_forms_range():
    with pytest.raises(PenroseError):
        relative_forms(3, 4)
    with pytest.raises(PenroseError):
        relative_cotangent(1)


@pytest.mark.parametrize("src,dst", [
    ((0, 0, 0), (0, 0, 0)),
    ((1, 0, 1), (-1, 1, 1)),
    ((2, -1, 0), (-2, 1, 0)),
    ((-1, 1, 1), (1, 0, 1)),
    ((-2, 3, 0), (2, 1, 0)),
])
def test_pullback(src, dst):
    assert pullback(validate_bundle(F(3), W(*src))).label == W(*dst)


def test_pullback_is_involutive_on_labels():
    for c in [(1, 0, 1), (2, -1, 0), (-3, 2, 4)]:
        b = validate_bundle(F(3), W(*c))
        back = pullback(validate_bundle(F(3), pullback(b).label))
        assert back.label == b.label


def test_pullback_requires_f():
    with pytest.raises(PenroseError):
        pullback(validate_bundle(G(3), W(0, 0, 0)))
    s = pullback_sum(BundleSum.of(F(3), W(1, 0, 1), W(2, -1, 0)))
    assert s.space == G(3)


def test_tangent_series_of_f():
    grades = tangent_series(F(3))
    assert grades == [BundleSum.of(F(3), W(-1, 1, 1), W(2, -1, 0)), BundleSum.of(F(3), W(1, 0, 1))]


@pytest.mark.parametrize("space", [F(2), F(3), F(4), M(3), G(3)])
def test_tangent_rank_is_dimension(space):
    assert sum(g.rank for g in tangent_series(space)) == space.dimension()


def test_tangent_of_projective_space():
    assert tangent_series(M(3)) == [BundleSum.of(M(3), W(1, 0, 1))]
