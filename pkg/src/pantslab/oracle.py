"""Word-based ground truth for curves in an admissible subsurface.

An admissible subsurface of level b is a sphere with b holes.  Choosing one
boundary curve as the outer one gives a planar model: a disc with h = b - 1
holes in a row, in the circular order of the arcs the boundary curves cut off
on the circle at infinity.  The model carries the radial arc system (one arc
from each hole to the outer boundary); an essential curve crosses the arcs in
a cyclic pattern, and after bigon reduction the crossing word is a cyclically
reduced word in the free group on the hole loops x_1 .. x_h.  Isotopy classes
of unoriented essential curves correspond to reduced cyclic words up to
rotation and inversion.

Geometric intersection numbers are computed from the planar tree at infinity:
the universal cover of the once-fattened rose is a tree whose ends are
ordered by the fixed cyclic order (+1, -1, +2, -2, ...) of edge germs at each
vertex.  Two curve lifts cross exactly when their endpoint pairs link on the
circle of ends; each crossing of the closed curves is counted at the unique
position where the backward direction of the first axis leaves the shared
segment of the two axes.

Interior curves of the standard decomposition have crossing weight 0 by
convention (they are the marked classes the model is anchored to); the weight
of any other class is its reduced cyclic word length.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .dyadic import (
    CurveId,
    Subsurface,
    curve,
    incident_pants,
    span_curves,
)


class OracleBoundExceeded(Exception):
    """A computation needs a larger subsurface or weight window than allowed."""


# ---------------------------------------------------------------------------
# cyclic words over the letters +-1 .. +-h

Word = tuple[int, ...]


def freely_reduce(seq) -> Word:
    out: list[int] = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclically_reduce(w) -> Word:
    w = freely_reduce(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def inverse_word(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def canonical_cyclic(w) -> Word:
    """Canonical representative of the unoriented free homotopy class."""
    w = cyclically_reduce(w)
    if not w:
        return w
    cands = []
    for base in (w, inverse_word(w)):
        cands.extend(base[i:] + base[:i] for i in range(len(base)))
    return min(cands)


def is_primitive(w: Word) -> bool:
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w == w[d:] + w[:d]:
            return False
    return True


# ---------------------------------------------------------------------------
# circular order of ends of the planar tree

_CAP_SLACK = 8


def _germ_pos(letter: int) -> int:
    return (abs(letter) - 1) * 2 + (0 if letter > 0 else 1)


def _cyclic_sign(pa: int, pb: int, pc: int, size: int) -> int:
    return 1 if (pb - pa) % size < (pc - pa) % size else -1


class _End:
    """An infinite reduced periodic word from the base vertex."""

    __slots__ = ("word", "start", "back")

    def __init__(self, word: Word, start: int, back: bool):
        self.word = word
        self.start = start
        self.back = back

    def letter(self, t: int) -> int:
        m = len(self.word)
        if self.back:
            return -self.word[(self.start - 1 - t) % m]
        return self.word[(self.start + t) % m]


def _lcp(a: _End, b: _End, cap: int) -> int:
    for t in range(cap):
        if a.letter(t) != b.letter(t):
            return t
    return cap


def _orient(a: _End, b: _End, c: _End, size: int, cap: int) -> int:
    lab, lac, lbc = _lcp(a, b, cap), _lcp(a, c, cap), _lcp(b, c, cap)
    m = max(lab, lac, lbc)
    if m >= cap:
        raise OracleBoundExceeded("ends did not diverge within the comparison cap")
    if lab == lac == lbc:
        d = lab
        return _cyclic_sign(
            _germ_pos(a.letter(d)), _germ_pos(b.letter(d)), _germ_pos(c.letter(d)), size
        )
    if lab == m:
        inc = _germ_pos(-a.letter(lab - 1))
        return _cyclic_sign(_germ_pos(a.letter(lab)), _germ_pos(b.letter(lab)), inc, size)
    if lac == m:
        inc = _germ_pos(-a.letter(lac - 1))
        return _cyclic_sign(_germ_pos(a.letter(lac)), inc, _germ_pos(c.letter(lac)), size)
    inc = _germ_pos(-b.letter(lbc - 1))
    return _cyclic_sign(inc, _germ_pos(b.letter(lbc)), _germ_pos(c.letter(lbc)), size)


def _axes_linked(u: Word, i: int, v: Word, j: int, size: int) -> bool:
    cap = 2 * (len(u) + len(v)) + _CAP_SLACK
    a_fwd, a_bwd = _End(u, i, False), _End(u, i, True)
    b_fwd, b_bwd = _End(v, j, False), _End(v, j, True)
    for x in (b_fwd, b_bwd):
        if _lcp(a_fwd, x, cap) >= cap or _lcp(a_bwd, x, cap) >= cap:
            return False
    sa = _orient(a_fwd, b_fwd, a_bwd, size, cap)
    sb = _orient(a_fwd, b_bwd, a_bwd, size, cap)
    return sa != sb


def _count_crossings(u: Word, v: Word, h: int) -> int:
    size = 2 * h
    total = 0
    for i in range(len(u)):
        back = -u[i - 1]
        for j in range(len(v)):
            # count each crossing once: at the backward-most shared vertex
            if back == v[j] or back == -v[j - 1]:
                continue
            if _axes_linked(u, i, v, j, size):
                total += 1
    return total


def _self_crossing_free(u: Word, h: int) -> bool:
    size = 2 * h
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if _axes_linked(u, i, u, j, size):
                return False
    return True


# ---------------------------------------------------------------------------
# the planar model of an admissible subsurface


def _facing_arc(sub: Subsurface, c: CurveId) -> tuple[Fraction, Fraction]:
    """Arc of the circle cut off by the boundary curve c away from sub.

    Returned as (start, end) with end <= start + 1; wraps when end > 1.
    """
    lo, hi = c.interval
    below, above = incident_pants(c)
    if below in sub:
        return (hi, lo + 1)
    return (lo, hi)


def _arc_in_interval(arc, iv) -> bool:
    s, e = arc
    lo, hi = iv
    if e > 1:
        return False
    return lo <= s and e <= hi


class Model:
    """Planar disc-with-holes model of an admissible subsurface."""

    def __init__(self, sub: Subsurface, outer: CurveId | None = None):
        self.sub = sub
        arcs = {c: _facing_arc(sub, c) for c in sub.boundary}
        if outer is None:
            outer = max(arcs, key=lambda c: arcs[c][0])
        elif outer not in arcs:
            raise ValueError(f"{outer} is not a boundary curve of the subsurface")
        self.outer = outer
        self.holes: tuple[CurveId, ...] = tuple(
            sorted((c for c in arcs if c != outer), key=lambda c: arcs[c][0])
        )
        self.arcs = arcs
        self.h = len(self.holes)
        self.index = {c: i + 1 for i, c in enumerate(self.holes)}
        self._intersection_cache: dict[tuple[Word, Word], int] = {}
        self._slope_cache: dict[tuple[CurveId, int, int], Word] = {}
        self._diag_cache: dict[CurveId, dict[int, Word]] = {}
        self._enum_cache: dict[int, frozenset[Word]] = {}

    # -- hole blocks ------------------------------------------------------

    def _raw_block(self, iv) -> list[int]:
        return [self.index[c] for c in self.holes if _arc_in_interval(self.arcs[c], iv)]

    def hole_block(self, c: CurveId) -> tuple[int, ...]:
        """Indices of the holes on the far side of c, as a word-ready block.

        When the outer boundary sits on the far side, the complementary block
        describes the same curve of the sphere.
        """
        raw = self._raw_block(c.interval)
        outer_arc = self.arcs[self.outer]
        if _arc_in_interval(outer_arc, c.interval):
            raw = [i for i in range(1, self.h + 1) if i not in raw]
        if raw != list(range(raw[0], raw[0] + len(raw))):
            raise OracleBoundExceeded(f"holes of {c} are not consecutive in the model")
        return tuple(raw)

    def word_round(self, block) -> Word:
        return tuple(block)

    def word_ecurve(self, c: CurveId) -> Word:
        if c == self.outer:
            return tuple(range(1, self.h + 1))
        if c in self.index:
            return (self.index[c],)
        if c not in self.sub.interior:
            raise ValueError(f"{c} is not a curve of the modelled subsurface")
        return self.word_round(self.hole_block(c))

    # -- the quad of a curve and its distinguished replacement -------------

    def quad_sides(self, c: CurveId) -> tuple[CurveId, CurveId, CurveId, CurveId]:
        """Boundary of the 4-holed sphere around c, in circular order starting
        with the two curves below c."""
        q = span_curves([c])
        sides = sorted(q.boundary, key=lambda s: _facing_arc(q, s)[0])
        inside = [s for s in sides if _arc_in_interval(_facing_arc(q, s), c.interval)]
        while not (
            sides[0] in inside and sides[1] in inside
        ):
            sides = sides[1:] + sides[:1]
        return tuple(sides)

    def side_block(self, c: CurveId, side: CurveId) -> tuple[int, ...]:
        """Holes of the model beyond one side of the quad of c."""
        q = span_curves([c])
        arc = _facing_arc(q, side)
        if arc[1] > 1:
            raw = [
                i + 1
                for i, hc in enumerate(self.holes)
                if not _arc_in_interval(self.arcs[hc], (arc[1] - 1, arc[0]))
            ]
        else:
            raw = self._raw_block(arc)
        return tuple(raw)

    def flip_word(self, c: CurveId) -> Word:
        """The replacement curve with a single visible-side component: the
        other diagonal of the quad around c."""
        s1, s2, s3, s4 = self.quad_sides(c)
        block = self.side_block(c, s2) + self.side_block(c, s3)
        block = tuple(sorted(block))
        if len(block) == self.h:
            raise OracleBoundExceeded(f"flip of {c} is boundary parallel in the model")
        if 1 in block and self.h in block and len(block) < self.h:
            block = tuple(i for i in range(1, self.h + 1) if i not in block)
        if block != tuple(range(block[0], block[0] + len(block))):
            raise OracleBoundExceeded(f"flip of {c} is not round in the model")
        return self.word_round(block)

    # -- automorphisms ----------------------------------------------------

    def conj_twist(self, w: Word, block, e: int) -> Word:
        """Dehn twist power along the round curve enclosing `block`."""
        g = self.word_round(block)
        ge = g * abs(e) if e > 0 else inverse_word(g) * abs(e)
        gi = inverse_word(ge)
        bset = set(block)
        out: list[int] = []
        for x in w:
            if abs(x) in bset:
                out.extend(ge + (x,) + gi)
            else:
                out.append(x)
        return freely_reduce(out)

    # -- intersections ------------------------------------------------------

    def intersection(self, u: Word, v: Word) -> int:
        cu, cv = canonical_cyclic(u), canonical_cyclic(v)
        if not cu or not cv:
            return 0
        if cu == cv:
            return 0
        key = (cu, cv) if cu <= cv else (cv, cu)
        hit = self._intersection_cache.get(key)
        if hit is None:
            hit = _count_crossings(key[0], key[1], self.h)
            self._intersection_cache[key] = hit
        return hit

    def is_simple(self, w: Word) -> bool:
        w = canonical_cyclic(w)
        if not w:
            return False
        return is_primitive(w) and _self_crossing_free(w, self.h)

    def is_essential(self, w: Word) -> bool:
        """Not null-homotopic and not parallel to a boundary curve."""
        w = canonical_cyclic(w)
        if not w:
            return False
        boundary = {canonical_cyclic((i,)) for i in range(1, self.h + 1)}
        boundary.add(canonical_cyclic(tuple(range(1, self.h + 1))))
        return w not in boundary

    # -- slope curves -------------------------------------------------------

    @staticmethod
    def _is_run(block) -> bool:
        return bool(block) and tuple(block) == tuple(range(block[0], block[0] + len(block)))

    def _diagonals(self, c: CurveId) -> dict[int, Word]:
        """Words of the slope +-1 curves in the quad of c, keyed by slope."""
        hit = self._diag_cache.get(c)
        if hit is not None:
            return hit
        sides = self.quad_sides(c)
        blocks = [self.side_block(c, s) for s in sides]
        # rotate so the three blocks used are genuine consecutive runs
        order = list(range(4))
        for _ in range(4):
            b1, b2, b3 = blocks[order[0]], blocks[order[1]], blocks[order[2]]
            if self._is_run(b1) and self._is_run(b2) and self._is_run(b3):
                break
            order = order[1:] + order[:1]
        else:
            raise OracleBoundExceeded(f"no usable quad rotation for {c}")
        x1, x2, x3 = (self.word_round(b) for b in (b1, b2, b3))
        first = freely_reduce(x1 + x2 + x3 + inverse_word(x2))
        m, t = self.measure_at(first, c)
        if m != 2 or t not in (1, -1):
            raise OracleBoundExceeded(f"diagonal calibration failed at {c}")
        other = self.conj_twist(first, self.hole_block(c), -t)
        m2, t2 = self.measure_at(other, c)
        if (m2, t2) != (2, -t):
            raise OracleBoundExceeded(f"diagonal calibration degenerate at {c}")
        out = {t: canonical_cyclic(first), -t: canonical_cyclic(other)}
        self._diag_cache[c] = out
        return out

    def slope_word(self, c: CurveId, p: int, q: int) -> Word:
        """Word of the single-support curve of slope p/q at the interior curve
        c: crossing c exactly 2q times with twist p (c itself is q = 0)."""
        if q < 0:
            p, q = -p, -q
        if q == 0:
            if p == 0:
                raise ValueError("slope 0/0")
            return self.word_ecurve(c)
        g = gcd(abs(p), q)
        p, q = p // g, q // g
        key = (c, p, q)
        hit = self._slope_cache.get(key)
        if hit is not None:
            return hit
        word = self._build_slope(c, p, q)
        self._slope_cache[key] = word
        return word

    def _twist_ops(self, c: CurveId):
        cblock = self.hole_block(c)
        fblock = tuple(sorted(set(abs(x) for x in self.flip_word(c))))
        return cblock, fblock

    def _flip_twist_sign(self, c: CurveId) -> int:
        """Direction of the twist along the flip curve on slopes: the twist
        power e maps (p, q) to (p, q + 2*sign*e*p)."""
        key = (c, 0, 0)
        hit = self._slope_cache.get(key)
        if hit is not None:
            return hit[0]
        _, fblock = self._twist_ops(c)
        w = self.conj_twist(self._diagonals(c)[1], fblock, 1)
        m, t = self.measure_at(w, c)
        if (m, t) == (6, 1):
            sign = 1  # (1,1) -> (1,3)
        elif (m, t) == (2, -1):
            sign = -1  # (1,1) -> (1,-1) = (-1,1)
        else:
            raise OracleBoundExceeded(f"flip twist calibration failed at {c}")
        self._slope_cache[key] = (sign,)
        return sign

    @staticmethod
    def _iround(a: int, b: int) -> int:
        """Nearest integer to a/b (b > 0), ties toward +inf."""
        return (2 * a + b) // (2 * b)

    def _build_slope(self, c: CurveId, p: int, q: int) -> Word:
        cblock, fblock = self._twist_ops(c)
        sigma = self._flip_twist_sign(c)
        ops: list[tuple[str, int]] = []
        pp, qq = p, q
        while (pp, qq) not in ((0, 1), (1, 1), (-1, 1), (1, 0), (-1, 0)):
            if abs(pp) >= qq:
                m = self._iround(pp, 2 * qq)
                if m == 0:
                    m = 1 if pp > 0 else -1
                ops.append(("c", m))
                pp -= 2 * m * qq
            else:
                m = self._iround(qq, 2 * pp) if pp > 0 else -self._iround(qq, -2 * pp)
                if m == 0:
                    m = 1 if pp > 0 else -1
                ops.append(("f", m))
                qq -= 2 * m * pp
                if qq < 0:
                    pp, qq = -pp, -qq
            if len(ops) > 64:
                raise OracleBoundExceeded(f"slope {p}/{q} reduction did not terminate")
        if (pp, qq) == (0, 1):
            word = self.flip_word(c)
        elif qq == 0:
            word = self.word_ecurve(c)
        else:
            word = self._diagonals(c)[pp]
        for kind, m in reversed(ops):
            if kind == "c":
                word = self.conj_twist(word, cblock, m)
            else:
                word = self.conj_twist(word, fblock, sigma * m)
        word = canonical_cyclic(word)
        m_chk, t_chk = self.measure_at(word, c)
        if (m_chk, t_chk) != (2 * q, p):
            raise OracleBoundExceeded(
                f"slope construction failed at {c}: wanted {p}/{q}, got {t_chk}/{m_chk//2}"
            )
        return word

    # -- coordinate measurement --------------------------------------------

    def measure_at(self, w: Word, c: CurveId) -> tuple[int, int]:
        """The (crossing, twist) pair of a curve word at the interior curve c.

        Twist is read off the asymptotics of the intersection numbers with the
        twist orbit of the distinguished replacement curve of c.
        """
        m = self.intersection(w, self.word_ecurve(c))
        if m == 0:
            return 0, 0
        cblock, _ = self._twist_ops(c)
        flip = self.flip_word(c)
        vals: dict[int, int] = {}

        def probe(j: int) -> int:
            if j not in vals:
                vals[j] = self.intersection(w, self.conj_twist(flip, cblock, j))
            return vals[j]

        n = 2
        while n < 64:
            right = probe(n + 1) - probe(n)
            right2 = probe(n) - probe(n - 1)
            left = probe(-n - 1) - probe(-n)
            left2 = probe(-n) - probe(-n + 1)
            if right == right2 == left == left2 and right > 0:
                raw = probe(-n) - probe(n)
                if raw % 4 != 0:
                    raise OracleBoundExceeded(f"twist at {c} not on the integer lattice")
                return m, raw // 4
            n += 1
        raise OracleBoundExceeded(f"twist tails at {c} did not stabilise")

    def measure(self, w: Word) -> dict[CurveId, tuple[int, int]]:
        """Coordinates of a curve word at every interior curve it crosses."""
        out = {}
        for c in sorted(self.sub.interior):
            m, t = self.measure_at(w, c)
            if m:
                out[c] = (m, t)
        return out

    # -- enumeration ---------------------------------------------------------

    _ENUM_FLOOR = 32

    def enumerate_words(self, weight: int) -> frozenset[Word]:
        """Canonical words of the essential simple classes with reduced length
        at most `weight` (closure under round twists, deterministic)."""
        internal = max(weight, self._ENUM_FLOOR)
        have = self._enum_cache.get(internal)
        if have is None:
            have = self._enumerate(internal)
            self._enum_cache[internal] = have
        return frozenset(w for w in have if len(w) <= weight)

    def _round_blocks(self):
        for size in range(2, self.h):
            for start in range(1, self.h - size + 2):
                yield tuple(range(start, start + size))

    def _enumerate(self, cap: int) -> frozenset[Word]:
        seeds: set[Word] = set()
        for block in self._round_blocks():
            seeds.add(canonical_cyclic(self.word_round(block)))
        # one curve behind each middle run: consecutive runs B1, B2, B3 give
        # the class of X_B1 (X_B2 X_B3 X_B2^-1), covering every split pairing
        for i in range(1, self.h + 1):
            for j in range(i, self.h + 1):
                for k in range(j + 1, self.h + 1):
                    for m in range(k + 1, self.h + 1):
                        b1 = tuple(range(i, j + 1))
                        b2 = tuple(range(j + 1, k + 1))
                        b3 = tuple(range(k + 1, m + 1))
                        w = freely_reduce(
                            self.word_round(b1)
                            + self.word_round(b2)
                            + self.word_round(b3)
                            + inverse_word(self.word_round(b2))
                        )
                        seeds.add(canonical_cyclic(w))
        seeds = {
            w
            for w in seeds
            if w and len(w) <= cap and self.is_essential(w) and self.is_simple(w)
        }
        frontier = sorted(seeds)
        found = set(seeds)
        blocks = list(self._round_blocks())
        while frontier:
            nxt = []
            for w in frontier:
                for block in blocks:
                    for e in (1, -1):
                        img = canonical_cyclic(self.conj_twist(w, block, e))
                        if img and len(img) <= cap and img not in found:
                            if self.is_essential(img) and self.is_simple(img):
                                found.add(img)
                                nxt.append(img)
            frontier = sorted(nxt)
        return frozenset(found)


_model_cache: dict[tuple[Subsurface, CurveId | None], Model] = {}


def get_model(sub: Subsurface, outer: CurveId | None = None, level_cap: int = 6) -> Model:
    if sub.level > level_cap:
        raise OracleBoundExceeded(
            f"subsurface level {sub.level} exceeds the cap {level_cap}"
        )
    key = (sub, outer)
    hit = _model_cache.get(key)
    if hit is None:
        hit = Model(sub, outer)
        _model_cache[key] = hit
    return hit
