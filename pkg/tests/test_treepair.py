from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pantslab.dyadic import curve, ROOT
from pantslab.treepair import (
    IDENTITY,
    LEAF,
    TreePair,
    apply_to_interval,
    compose,
    invert,
    is_in_T,
    make_alpha,
    make_beta,
    make_pair,
    power,
    subtree_swap,
    tree_from_string,
    tree_to_string,
)

trees = st.recursive(st.just(LEAF), lambda kids: st.tuples(kids, kids), max_leaves=6)


@st.composite
def pairs(draw):
    import math

    d = draw(trees)
    from pantslab.treepair import num_leaves

    n = num_leaves(d)
    r = draw(trees.filter(lambda t: num_leaves(t) == n))
    perm = draw(st.permutations(range(n)))
    return make_pair(d, r, tuple(perm))


def level_curves(n):
    return [curve(n, k) for k in range(2 ** n)]


def test_identity_and_inverse():
    g = make_pair((LEAF, (LEAF, LEAF)), ((LEAF, LEAF), LEAF), (2, 0, 1))
    assert compose(g, invert(g)) == IDENTITY
    assert compose(invert(g), g) == IDENTITY
    assert compose(IDENTITY, g) == g
    assert compose(g, IDENTITY) == g


def test_generator_membership_and_orders():
    a, b = make_alpha(), make_beta()
    assert is_in_T(a)
    assert is_in_T(b)
    assert power(a, 4) == IDENTITY
    assert power(a, 2) != IDENTITY
    assert power(b, 3) == IDENTITY
    assert power(b, 2) != IDENTITY


def test_transposition_not_in_T():
    t = (LEAF, (LEAF, LEAF))
    swap = make_pair(t, t, (0, 2, 1))
    assert not is_in_T(swap)
    assert not is_in_T(subtree_swap(curve(2, 0)))


def test_apply_to_interval_examples():
    assert apply_to_interval(IDENTITY, curve(3, 3)) == curve(3, 3)
    # map with domain leaf [0,1/2] -> [0,1/4]: I_1^3 = [1/8,1/4] -> [1/16,1/8]
    f = make_pair(
        (LEAF, (LEAF, LEAF)), ((LEAF, LEAF), LEAF), (0, 1, 2)
    )
    assert apply_to_interval(f, curve(3, 1)) == curve(4, 1)
    # domain leaf strictly inside the interval of c -> not standard
    assert apply_to_interval(make_alpha(), ROOT) is None


def test_alpha_is_quarter_rotation():
    a = make_alpha()
    for c in level_curves(3):
        img = apply_to_interval(a, c)
        lo, hi = c.interval
        assert img is not None
        assert img.interval[0] == (lo + Fraction(1, 4)) % 1


def test_beta_action_total_on_E():
    b = make_beta()
    for n in range(1, 6):
        for c in level_curves(n):
            assert apply_to_interval(b, c) is not None
            assert apply_to_interval(invert(b), c) is not None


def test_compose_agrees_with_interval_action():
    a, b = make_alpha(), make_beta()
    for f, g in [(a, a), (a, b), (b, a), (invert(a), b)]:
        fg = compose(f, g)
        for c in level_curves(6):
            two_step = apply_to_interval(g, c)
            if two_step is not None:
                two_step = apply_to_interval(f, two_step)
            one_step = apply_to_interval(fg, c)
            if two_step is not None and one_step is not None:
                assert one_step == two_step


@given(pairs())
@settings(max_examples=60, deadline=None)
def test_reduction_confluence(p):
    # expanding anywhere and re-reducing returns the same reduced pair
    from pantslab.treepair import leaf_addresses, tree_from_leaves

    dl, rl = leaf_addresses(p.domain), leaf_addresses(p.range)
    for i in range(len(dl)):
        dl2 = list(dl)
        rl2 = list(rl)
        j = p.perm[i]
        dl2[i:i + 1] = [dl[i] + "0", dl[i] + "1"]
        rl2[j:j + 1] = [rl[j] + "0", rl[j] + "1"]
        perm2 = []
        for ii, jj in enumerate(p.perm):
            jj2 = jj if jj <= j else jj + 1
            if ii == i:
                perm2.extend([jj2, jj2 + 1])
            else:
                perm2.append(jj2)
        expanded = make_pair(
            tree_from_leaves(sorted(dl2)), tree_from_leaves(sorted(rl2)), perm2
        )
        assert expanded == p


@given(pairs(), pairs())
@settings(max_examples=40, deadline=None)
def test_T_multiplicative(f, g):
    if is_in_T(f) and is_in_T(g):
        assert is_in_T(compose(f, g))


@given(pairs())
@settings(max_examples=40, deadline=None)
def test_interval_action_is_partial_bijection(f):
    seen = {}
    for k in range(2 ** 6):
        img = apply_to_interval(f, curve(6, k))
        if img is not None:
            assert img not in seen
            seen[img] = k


def test_cyclic_order_preserved_by_T_words():
    a, b = make_alpha(), make_beta()
    words = [a, b, compose(a, b), compose(b, a), compose(a, compose(b, a))]
    triples = [
        (curve(4, 1), curve(4, 6), curve(4, 12)),
        (curve(5, 3), curve(5, 17), curve(5, 29)),
    ]
    for f in words:
        assert is_in_T(f)
        for tri in triples:
            imgs = [apply_to_interval(f, c) for c in tri]
            assert all(i is not None for i in imgs)
            starts = [c.interval[0] for c in imgs]
            # cyclic order of three points preserved
            x, y, z = starts
            assert ((x < y < z) or (y < z < x) or (z < x < y))


def test_serialization_roundtrip():
    for p in [IDENTITY, make_alpha(), make_beta(), subtree_swap(curve(2, 1))]:
        assert TreePair.from_string(str(p)) == p
        assert tree_from_string(tree_to_string(p.domain)) == p.domain
