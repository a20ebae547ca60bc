import itertools

import pytest
from hypothesis import given, strategies as st

from pantslab.dyadic import (
    ROOT,
    CurveId,
    PantsId,
    adjacent_curves,
    children,
    curve,
    from_address,
    incident_pants,
    mirror_below,
    parent,
    parse_curve,
    span_curves,
    span_pants,
    sibling,
    Subsurface,
)


def all_curves(max_level):
    for n in range(1, max_level + 1):
        for k in range(2 ** n):
            if n == 1 and k == 1:
                continue
            yield CurveId(n, k)


def all_pants(max_level):
    for n in range(1, max_level + 1):
        for k in range(2 ** n):
            yield PantsId(n, k)


curves_st = st.integers(1, 7).flatmap(
    lambda n: st.integers(0, 2 ** n - 1).map(lambda k: curve(n, k))
)


def test_children_examples():
    assert children(curve(1, 0)) == (curve(2, 0), curve(2, 1))
    assert children(curve(2, 1)) == (curve(3, 2), curve(3, 3))
    assert children(curve(3, 3)) == (curve(4, 6), curve(4, 7))


def test_parent_examples():
    assert parent(curve(2, 2)) == ROOT  # (1,1) canonicalised to (1,0)
    assert parent(curve(1, 0)) is None
    assert parent(curve(3, 5)) == curve(2, 2)


def test_root_alias():
    assert curve(1, 1) == ROOT
    assert parse_curve("1/1") == ROOT
    with pytest.raises(ValueError):
        CurveId(1, 1)
    with pytest.raises(ValueError):
        CurveId(0, 0)


def test_serialization_roundtrip():
    for c in all_curves(5):
        assert parse_curve(str(c)) == c
        assert from_address(c.address) == c


@given(curves_st)
def test_parent_of_children(c):
    l, r = children(c)
    assert parent(l) == c
    assert parent(r) == c
    assert sibling(l) == r


def brute_pants_incidences(max_level):
    """Independent derivation: enumerate all pants triples from the doubling
    rule and read adjacency off shared-pants membership."""
    incid = {}
    for p in all_pants(max_level):
        for c in p.curves():
            incid.setdefault(c, set()).add(p)
    return incid


def test_adjacent_curves_from_pants_enumeration():
    incid = brute_pants_incidences(7)
    for c in all_curves(5):
        expected = set()
        for p in incid[c]:
            expected.update(p.curves())
        expected.discard(c)
        assert adjacent_curves(c) == frozenset(expected)


def test_adjacent_examples():
    assert adjacent_curves(curve(2, 0)) == frozenset(
        {curve(3, 0), curve(3, 1), curve(2, 1), ROOT}
    )
    assert adjacent_curves(ROOT) == frozenset(
        {curve(2, 0), curve(2, 1), curve(2, 2), curve(2, 3)}
    )
    for c in all_curves(5):
        assert len(adjacent_curves(c)) == 4


def test_incident_pants():
    for c in all_curves(5):
        below, above = incident_pants(c)
        assert below != above
        assert c in below.curves() and c in above.curves()


def test_span_examples():
    s = span_curves([ROOT])
    assert len(s.pants) == 2
    assert s.level == 4
    assert s.boundary == frozenset({curve(2, 0), curve(2, 1), curve(2, 2), curve(2, 3)})

    s = span_curves([curve(2, 0)])
    assert s.level == 4
    assert s.boundary == frozenset({curve(3, 0), curve(3, 1), curve(2, 1), ROOT})

    s = span_curves([ROOT, curve(2, 0)])
    assert len(s.pants) == 3
    assert s.level == 5


def test_span_rejects_empty():
    with pytest.raises(ValueError):
        span_curves([])


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        Subsurface({PantsId(2, 0), PantsId(2, 3)})


@given(st.sets(curves_st, min_size=1, max_size=4))
def test_span_level_invariant(cs):
    s = span_curves(cs)
    assert s.level == len(s.pants) + 2
    assert s.interior >= frozenset(cs)
    # leaf edges of the span's dual tree are exactly the boundary curves
    for c in s.boundary:
        inside = [p for p in incident_pants(c) if p in s]
        assert len(inside) == 1
    for c in s.interior:
        inside = [p for p in incident_pants(c) if p in s]
        assert len(inside) == 2


@given(st.sets(curves_st, min_size=1, max_size=3), st.sets(curves_st, max_size=2))
def test_span_monotone(cs, extra):
    s1 = span_curves(cs)
    s2 = span_curves(cs | extra)
    assert s1.pants <= s2.pants


def test_mirror_below():
    # half-twist along the root swaps the two level-2 subtrees under [0,1/2]
    assert mirror_below(ROOT, curve(2, 0)) == curve(2, 1)
    assert mirror_below(ROOT, curve(2, 1)) == curve(2, 0)
    assert mirror_below(ROOT, curve(2, 2)) == curve(2, 2)
    # deeper curves get the order-reversing (bit-complemented) suffix
    assert mirror_below(ROOT, curve(3, 0)) == curve(3, 3)
    assert mirror_below(ROOT, curve(3, 1)) == curve(3, 2)
    assert mirror_below(curve(2, 0), curve(3, 0)) == curve(3, 1)
    assert mirror_below(curve(2, 0), ROOT) == ROOT


@given(curves_st, curves_st)
def test_mirror_is_involution(top, c):
    assert mirror_below(top, mirror_below(top, c)) == c


def test_pants_path_through_root():
    s = span_pants([PantsId(2, 0), PantsId(2, 3)] + list(PantsId(1, i) for i in (0, 1)))
    assert PantsId(1, 0) in s and PantsId(1, 1) in s
    s2 = span_pants([PantsId(2, 0), PantsId(2, 3)])
    assert s2.pants == s.pants
