import json

import pytest
from hypothesis import given

from penrose_cpn.errors import BundleSyntaxError, NodeOutOfRange, NotLeviDominant, PenroseError, RankMismatch
from penrose_cpn.flagspace import (
    Bundle,
    BundleSum,
    F,
    FlagSpace,
    G,
    M,
    bundle_from_json,
    bundle_to_json,
    format_bundle,
    label_rank,
    parse_bundle,
    validate_bundle,
)
from penrose_cpn.rootsys import Weight

from .strategies import space_and_label


def test_named_spaces():
    assert F(3).crossed == G(3).crossed == frozenset({1, 2})
    assert F(3) != G(3)
    assert M(3).crossed == frozenset({1})
    assert F(3).uncrossed == [3]
    assert [list(s) for s in M(3).segments()] == [[0], [1, 2, 3]]


@pytest.mark.parametrize("space,dim", [(F(3), 5), (G(3), 5), (M(3), 3), (M(2), 2), (F(2), 3)])
def test_dimensions(space, dim):
    assert space.dimension() == dim


def test_crossed_node_range():
    with pytest.raises(NodeOutOfRange):
        FlagSpace(3, frozenset({4}))
    with pytest.raises(PenroseError):
        FlagSpace(3, frozenset())


def test_levi_dominance():
    assert validate_bundle(M(3), Weight.of(-2, 1, 0)).rank == 3
    with pytest.raises(NotLeviDominant) as exc:
        validate_bundle(F(3), Weight.of(0, 0, -1))
    assert exc.value.node == 3
    assert str(exc.value).startswith("NotLeviDominant(3)")
    with pytest.raises(RankMismatch):
        validate_bundle(F(3), Weight.of(0, 0))


@pytest.mark.parametrize(
    "space,label,rank",
    [(M(3), (1, 0, 1), 3), (M(3), (-1, 1, 1), 8), (M(3), (0, 2, 0), 6), (M(3), (-2, 2, 2), 27), (F(3), (0, 0, 1), 2)],
)
def test_ranks(space, label, rank):
    assert label_rank(space, Weight(3, label)) == rank


def test_parse_bundle_reports_position():
    assert parse_bundle("F:3:1,0,1") == Bundle(F(3), Weight.of(1, 0, 1))
    with pytest.raises(BundleSyntaxError) as exc:
        parse_bundle("F:3:1,x,1")
    assert exc.value.position == 6
    with pytest.raises(BundleSyntaxError):
        parse_bundle("Q:3:1,0,1")
    with pytest.raises(BundleSyntaxError):
        parse_bundle("F:3:1,0")


@given(space_and_label())
def test_bundle_text_and_json_round_trip(sl):
    space, label = sl
    b = validate_bundle(space, label)
    if space.name in ("F", "G", "M"):
        assert parse_bundle(format_bundle(b)) == b
    assert bundle_from_json(json.dumps(bundle_to_json(b))) == b


def test_bundle_sum_algebra():
    x = BundleSum.of(M(3), Weight.of(1, 0, 1), Weight.of(-2, 1, 0), Weight.of(1, 0, 1))
    assert x.multiplicity(Weight.of(1, 0, 1)) == 2
    assert x.rank == 9
    assert str(x) == "2(1,0,1) ⊕ (-2,1,0)"
    y = x - BundleSum.of(M(3), Weight.of(1, 0, 1))
    assert y == BundleSum.of(M(3), Weight.of(1, 0, 1), Weight.of(-2, 1, 0))
    assert (y + y).rank == 12
    assert not BundleSum(M(3))
    with pytest.raises(PenroseError):
        y - BundleSum.of(M(3), Weight.of(0, 0, 0))


def test_bundle_sum_canonical_order():
    x = BundleSum.of(M(3), Weight.of(-4, 2, 0), Weight.of(2, 0, 2), Weight.of(-1, 1, 1))
    assert x.labels() == [Weight.of(2, 0, 2), Weight.of(-1, 1, 1), Weight.of(-4, 2, 0)]
