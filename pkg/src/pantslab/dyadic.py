"""Dyadic indexing of the standard pants decomposition.

The curves of the standard decomposition E are labelled by standard dyadic
intervals [k/2^n, (k+1)/2^n] with n >= 1 and 0 <= k <= 2^n - 1.  The two
level-1 intervals [0,1/2] and [1/2,1] label the same geodesic (their endpoint
pairs on the circle coincide under 0 = 1), so the canonical representative of
the root curve is (n=1, k=0).

Pairs of pants correspond to triples {I_k^n, I_{2k}^{n+1}, I_{2k+1}^{n+1}}
and are indexed by the *unnormalised* pair (n, k): the root curve bounds two
pants, P(1,0) on the [0,1/2] side and P(1,1) on the [1/2,1] side.  The dual
graph of E is the unrooted trivalent tree with one vertex per pants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional


@dataclass(frozen=True, order=True)
class CurveId:
    """A curve of E, canonically indexed: level n >= 1, position 0 <= k < 2^n.

    The pair (1, 1) is not a valid CurveId; use curve(1, 1) which normalises
    it to the root (1, 0).
    """

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"curve level must be >= 1, got {self.n}")
        if not (0 <= self.k < 2 ** self.n):
            raise ValueError(f"position {self.k} out of range for level {self.n}")
        if self.n == 1 and self.k == 1:
            raise ValueError("(1,1) is the root alias; use curve(1,1) to normalise")

    def __str__(self):
        return f"{self.n}/{self.k}"

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (Fraction(self.k, 2 ** self.n), Fraction(self.k + 1, 2 ** self.n))

    @property
    def address(self) -> str:
        """Binary address: the bits of k, padded to n digits ('0' for the root)."""
        return format(self.k, f"0{self.n}b")


ROOT = CurveId(1, 0)


def curve(n: int, k: int) -> CurveId:
    """CurveId constructor normalising the root alias (1,1) -> (1,0)."""
    if n == 1 and k == 1:
        return ROOT
    return CurveId(n, k)


def parse_curve(text: str) -> CurveId:
    n, _, k = text.partition("/")
    return curve(int(n), int(k))


def from_address(bits: str) -> CurveId:
    return curve(len(bits), int(bits, 2))


def children(c: CurveId) -> tuple[CurveId, CurveId]:
    """The two curves forming a pair of pants below c (doubling rule)."""
    return curve(c.n + 1, 2 * c.k), curve(c.n + 1, 2 * c.k + 1)


def parent(c: CurveId) -> Optional[CurveId]:
    """Inverse of the doubling rule; None marks the root."""
    if c.n == 1:
        return None
    return curve(c.n - 1, c.k // 2)


def sibling(c: CurveId) -> Optional[CurveId]:
    if c.n == 1:
        return None
    return curve(c.n, c.k ^ 1)


def is_below(c: CurveId, top: CurveId) -> bool:
    """True when the interval of c is strictly contained in a representative
    interval of top.  For the root the representative is [0,1/2]."""
    if c.n <= top.n:
        return False
    return c.address.startswith(top.address)


def mirror_below(top: CurveId, c: CurveId) -> CurveId:
    """Relabelling of E-curves induced by the half-twist along top.

    Swaps the subtrees below the two children of top, reversing the circular
    order inside each block: address top+b+w maps to top+(1-b)+~w where ~w is
    the bitwise complement of w.  Curves not strictly below top are fixed.
    """
    if not is_below(c, top):
        return c
    suffix = c.address[top.n :]
    b, w = suffix[0], suffix[1:]
    flipped = ("1" if b == "0" else "0") + "".join("1" if x == "0" else "0" for x in w)
    return from_address(c.address[: top.n] + flipped)


def adjacent_curves(c: CurveId) -> frozenset[CurveId]:
    """The four curves bounding a common pair of pants with c."""
    if c.n == 1:
        return frozenset({curve(2, 0), curve(2, 1), curve(2, 2), curve(2, 3)})
    out = set(children(c))
    out.add(sibling(c))
    out.add(parent(c))
    return frozenset(out)


@dataclass(frozen=True, order=True)
class PantsId:
    """A pair of pants of E: the triple {I_k^n, I_{2k}^{n+1}, I_{2k+1}^{n+1}}.

    Indexed by the unnormalised (n, k); both (1, 0) and (1, 1) are valid and
    distinct (the two pants incident to the root curve).
    """

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or not (0 <= self.k < 2 ** self.n):
            raise ValueError(f"bad pants index ({self.n},{self.k})")

    def __str__(self):
        return f"P({self.n}/{self.k})"

    def curves(self) -> tuple[CurveId, CurveId, CurveId]:
        """Boundary triple (top, left child, right child)."""
        return (
            curve(self.n, self.k),
            curve(self.n + 1, 2 * self.k),
            curve(self.n + 1, 2 * self.k + 1),
        )

    def neighbors(self) -> tuple[PantsId, PantsId, PantsId]:
        """The three adjacent pants in the dual trivalent tree."""
        up = PantsId(1, 1 - self.k) if self.n == 1 else PantsId(self.n - 1, self.k // 2)
        return (up, PantsId(self.n + 1, 2 * self.k), PantsId(self.n + 1, 2 * self.k + 1))


def incident_pants(c: CurveId) -> tuple[PantsId, PantsId]:
    """The two pants bounded by c: (side below c, side above c).

    For the root, "below" is the [0,1/2] side P(1,0) and "above" is P(1,1).
    """
    if c.n == 1:
        return PantsId(1, 0), PantsId(1, 1)
    return PantsId(c.n, c.k), PantsId(c.n - 1, c.k // 2)


def curve_between(p: PantsId, q: PantsId) -> Optional[CurveId]:
    """The E-curve shared by two adjacent pants, or None."""
    shared = set(p.curves()) & set(q.curves())
    if len(shared) == 1:
        return shared.pop()
    return None


def _pants_path(p: PantsId, q: PantsId) -> list[PantsId]:
    """The geodesic between two vertices of the dual tree, inclusive."""
    left, right = [p], [q]
    a, b = p, q
    while a != b:
        if a.n > b.n:
            a = a.neighbors()[0]
            left.append(a)
        elif b.n > a.n:
            b = b.neighbors()[0]
            right.append(b)
        else:
            if a.n == 1:
                # distinct level-1 pants are adjacent through the root curve
                left.extend(reversed(right))
                return left
            a = a.neighbors()[0]
            left.append(a)
            b = b.neighbors()[0]
            right.append(b)
    right.pop()
    left.extend(reversed(right))
    return left


class Subsurface:
    """An admissible subsurface: a finite connected set of pants of E.

    level = number of boundary curves = number of pants + 2.
    """

    __slots__ = ("pants", "_boundary", "_interior")

    def __init__(self, pants: Iterable[PantsId]):
        pset = frozenset(pants)
        if not pset:
            raise ValueError("a subsurface needs at least one pair of pants")
        self._check_connected(pset)
        object.__setattr__(self, "pants", pset)
        counts: dict[CurveId, int] = {}
        for p in pset:
            for c in p.curves():
                counts[c] = counts.get(c, 0) + 1
        object.__setattr__(
            self, "_boundary", frozenset(c for c, m in counts.items() if m == 1)
        )
        object.__setattr__(
            self, "_interior", frozenset(c for c, m in counts.items() if m == 2)
        )

    @staticmethod
    def _check_connected(pset: frozenset[PantsId]):
        seen = {next(iter(sorted(pset)))}
        frontier = list(seen)
        while frontier:
            p = frontier.pop()
            for q in p.neighbors():
                if q in pset and q not in seen:
                    seen.add(q)
                    frontier.append(q)
        if seen != pset:
            raise ValueError("pants set is not connected in the dual tree")

    def __eq__(self, other):
        return isinstance(other, Subsurface) and self.pants == other.pants

    def __hash__(self):
        return hash(self.pants)

    def __repr__(self):
        return f"Subsurface({sorted(self.pants)})"

    @property
    def boundary(self) -> frozenset[CurveId]:
        return self._boundary

    @property
    def interior(self) -> frozenset[CurveId]:
        return self._interior

    @property
    def level(self) -> int:
        return len(self._boundary)

    def __contains__(self, p: PantsId) -> bool:
        return p in self.pants

    def union(self, other: "Subsurface") -> "Subsurface":
        return span_pants(self.pants | other.pants)


def span_pants(pants: Iterable[PantsId]) -> Subsurface:
    """Smallest subsurface containing the given pants (Steiner span in the tree)."""
    pl = sorted(set(pants))
    if not pl:
        raise ValueError("empty pants set")
    total = set(pl)
    base = pl[0]
    for p in pl[1:]:
        total.update(_pants_path(base, p))
    return Subsurface(total)


def span_curves(curves_: Iterable[CurveId]) -> Subsurface:
    """Smallest admissible subsurface with all given curves in its interior."""
    cl = sorted(set(curves_))
    if not cl:
        raise ValueError("empty curve set")
    pants: set[PantsId] = set()
    for c in cl:
        pants.update(incident_pants(c))
    return span_pants(pants)
