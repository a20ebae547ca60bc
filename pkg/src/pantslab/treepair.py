"""Thompson groups V and T as reduced tree-pair diagrams.

A finite rooted binary tree is a nested tuple: () is a leaf, (left, right) a
caret.  Leaves are indexed left to right; leaf i of the domain tree is mapped
affinely onto leaf perm[i] of the range tree.  T-membership means perm is a
cyclic rotation of the leaf indices.

The pinned generators of T:

  alpha: domain = range = the full depth-2 tree, perm = rotation by one.
         As a circle map this is x -> x + 1/4, of order 4.  It sends the
         root interval [0,1/2] to [1/4,3/4], which is not standard dyadic.
  beta:  domain = range = ((), ((), ())) with leaves [0,1/2],[1/2,3/4],
         [3/4,1], perm = rotation by one; order 3.  beta maps every standard
         dyadic interval to a standard dyadic interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dyadic import CurveId, from_address

LEAF = ()


def num_leaves(tree) -> int:
    if tree == LEAF:
        return 1
    return num_leaves(tree[0]) + num_leaves(tree[1])


def leaf_addresses(tree) -> list[str]:
    """Leaf addresses in left-to-right order ('' for the root leaf)."""
    if tree == LEAF:
        return [""]
    return ["0" + a for a in leaf_addresses(tree[0])] + [
        "1" + a for a in leaf_addresses(tree[1])
    ]


def tree_from_leaves(addresses: list[str]):
    """Rebuild a tree from its complete, in-order leaf address list."""
    if addresses == [""]:
        return LEAF
    left = [a[1:] for a in addresses if a[0] == "0"]
    right = [a[1:] for a in addresses if a[0] == "1"]
    if not left or not right:
        raise ValueError(f"incomplete address list: {addresses}")
    return (tree_from_leaves(left), tree_from_leaves(right))


def tree_union(t1, t2):
    if t1 == LEAF:
        return t2
    if t2 == LEAF:
        return t1
    return (tree_union(t1[0], t2[0]), tree_union(t1[1], t2[1]))


def tree_to_string(tree) -> str:
    if tree == LEAF:
        return "()"
    return "(" + tree_to_string(tree[0]) + tree_to_string(tree[1]) + ")"


def tree_from_string(text: str):
    pos = 0

    def rec():
        nonlocal pos
        if text[pos] != "(":
            raise ValueError(f"bad tree string at {pos}: {text}")
        pos += 1
        if text[pos] == ")":
            pos += 1
            return LEAF
        left = rec()
        right = rec()
        if text[pos] != ")":
            raise ValueError(f"bad tree string at {pos}: {text}")
        pos += 1
        return (left, right)

    out = rec()
    if pos != len(text):
        raise ValueError(f"trailing input in tree string: {text}")
    return out


@dataclass(frozen=True)
class TreePair:
    """An element of Thompson's V as a reduced (domain, range, perm) triple."""

    domain: tuple
    range: tuple
    perm: tuple[int, ...]

    def __post_init__(self):
        nd, nr = num_leaves(self.domain), num_leaves(self.range)
        if nd != nr or sorted(self.perm) != list(range(nd)):
            raise ValueError("leaf counts and permutation must agree")

    def __str__(self):
        return "{}|{}|{}".format(
            tree_to_string(self.domain),
            tree_to_string(self.range),
            ",".join(map(str, self.perm)),
        )

    @classmethod
    def from_string(cls, text: str) -> "TreePair":
        d, r, p = text.split("|")
        perm = tuple(int(x) for x in p.split(",")) if p else (0,)
        return make_pair(tree_from_string(d), tree_from_string(r), perm)


IDENTITY = TreePair(LEAF, LEAF, (0,))


def _reduce(domain, range_, perm):
    dl = leaf_addresses(domain)
    rl = leaf_addresses(range_)
    perm = list(perm)
    changed = True
    while changed:
        changed = False
        for i in range(len(dl) - 1):
            a, b = dl[i], dl[i + 1]
            if a[:-1] != b[:-1] or a[-1:] != "0" or b[-1:] != "1":
                continue
            j = perm[i]
            if perm[i + 1] != j + 1:
                continue
            c, d = rl[j], rl[j + 1]
            if c[:-1] != d[:-1] or c[-1:] != "0" or d[-1:] != "1":
                continue
            dl[i : i + 2] = [a[:-1]]
            rl[j : j + 2] = [c[:-1]]
            del perm[i + 1]
            perm = [q if q <= j else q - 1 for q in perm]
            changed = True
            break
    return tree_from_leaves(dl), tree_from_leaves(rl), tuple(perm)


def make_pair(domain, range_, perm) -> TreePair:
    return TreePair(*_reduce(domain, range_, tuple(perm)))


def _expand_range_to(pair: TreePair, target) -> tuple[list[str], list[str]]:
    """Leaf lists (domain', range') of the expansion of pair whose range tree
    is `target` (a refinement of pair.range); perm becomes the identity-shaped
    pairing dl'[i] -> rl'[i]."""
    rl = leaf_addresses(pair.range)
    dl = leaf_addresses(pair.domain)
    tl = leaf_addresses(target)
    new_dl, new_rl = [], []
    for i, da in enumerate(dl):
        ra = rl[pair.perm[i]]
        tails = sorted(t[len(ra):] for t in tl if t.startswith(ra))
        for tail in tails:
            new_dl.append(da + tail)
            new_rl.append(ra + tail)
    order = sorted(range(len(new_dl)), key=lambda idx: new_dl[idx])
    return [new_dl[i] for i in order], [new_rl[i] for i in order]


def compose(f: TreePair, g: TreePair) -> TreePair:
    """The composite f(g(x)) as a reduced tree pair."""
    middle = tree_union(g.range, f.domain)
    g_dl, g_rl = _expand_range_to(g, middle)
    # expand f so its domain is `middle`: use the inverse trick
    f_inv = TreePair(f.range, f.domain, _invert_perm(f.perm))
    f_rl_raw, f_dl_raw = _expand_range_to(f_inv, middle)
    # f maps f_dl_raw[i] (on middle) onto f_rl_raw[i]
    image = dict(zip(f_dl_raw, f_rl_raw))
    new_dl = g_dl
    new_rl_targets = [image[a] for a in g_rl]
    rl_sorted = sorted(new_rl_targets)
    perm = tuple(rl_sorted.index(t) for t in new_rl_targets)
    return make_pair(
        tree_from_leaves(new_dl), tree_from_leaves(rl_sorted), perm
    )


def _invert_perm(perm):
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[j] = i
    return tuple(out)


def invert(f: TreePair) -> TreePair:
    return TreePair(f.range, f.domain, _invert_perm(f.perm))


def power(f: TreePair, e: int) -> TreePair:
    if e < 0:
        return power(invert(f), -e)
    out = IDENTITY
    for _ in range(e):
        out = compose(out, f)
    return out


def is_in_T(f: TreePair) -> bool:
    """True when the leaf bijection preserves the cyclic order."""
    n = len(f.perm)
    r = f.perm[0]
    return all(f.perm[i] == (i + r) % n for i in range(n))


def make_alpha() -> TreePair:
    full2 = ((LEAF, LEAF), (LEAF, LEAF))
    return TreePair(full2, full2, (1, 2, 3, 0))


def make_beta() -> TreePair:
    t = (LEAF, (LEAF, LEAF))
    return TreePair(t, t, (1, 2, 0))


def apply_to_interval(f: TreePair, c: CurveId) -> Optional[CurveId]:
    """Image of a standard dyadic interval under f, or None when the interval
    does not refine a domain leaf (the image is then not standard)."""
    addr = c.address
    dl = leaf_addresses(f.domain)
    rl = leaf_addresses(f.range)
    for i, da in enumerate(dl):
        if addr.startswith(da):
            image = rl[f.perm[i]] + addr[len(da):]
            if not image:
                return c
            return from_address(image)
    return None


def subtree_swap(c: CurveId) -> TreePair:
    """The V-transposition exchanging the two blocks below the children of c
    (affine and increasing on each block)."""
    left, right = c.address + "0", c.address + "1"
    others = []
    node = c.address
    while node:
        others.append(node[:-1] + ("1" if node[-1] == "0" else "0"))
        node = node[:-1]
    addrs = sorted([left, right] + others)
    tree = tree_from_leaves(addrs)
    i, j = addrs.index(left), addrs.index(right)
    perm = list(range(len(addrs)))
    perm[i], perm[j] = perm[j], perm[i]
    return make_pair(tree, tree, tuple(perm))
