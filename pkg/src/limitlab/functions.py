"""Compactly supported step functions and piecewise-linear functions.

Both kinds carry exact rational data: step functions are weighted finite
unions of rational intervals (closedness respected pointwise), piecewise
linear functions are continuous with rational vertices.  Integrals, L1
norms, and pointwise evaluations at rational arguments are exact; floats
only enter downstream, in kernel integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .intervals import IntervalUnion, RationalInterval, frac, frac_str, normalize


def _atoms(points: list[Fraction]):
    """Point atoms and open gap atoms over a sorted breakpoint list."""
    for i, x in enumerate(points):
        yield RationalInterval(x, x)
        if i + 1 < len(points):
            yield RationalInterval(x, points[i + 1], False, False)


@dataclass(frozen=True)
class StepFunction:
    """Finitely many constant pieces on disjoint rational intervals, 0 elsewhere.

    pieces: tuple of (RationalInterval, Fraction value), sorted, disjoint,
    values nonzero.  Adjacent pieces with equal value that would fuse into a
    single interval are fused, so the representation is canonical.
    """

    pieces: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))

    # ------------------------------------------------------------------
    # construction

    @staticmethod
    def zero() -> "StepFunction":
        return StepFunction(())

    @staticmethod
    def indicator(region: IntervalUnion, weight=1) -> "StepFunction":
        return StepFunction.from_weighted_regions([(frac(weight), region)])

    @staticmethod
    def from_weighted_regions(terms: Iterable[tuple]) -> "StepFunction":
        """Exact linear combination sum_k w_k * indicator(U_k).

        Pointwise-correct including at region boundaries: the real line is
        split into atoms at every region endpoint, each atom scores the sum
        of weights of the regions containing it.
        """
        terms = [(frac(w), u) for w, u in terms]
        points = sorted({
            x for _, u in terms for p in u.parts for x in (p.lo, p.hi)
        })
        if not points:
            return StepFunction.zero()
        pieces = []
        for atom in _atoms(points):
            probe = atom.lo if atom.is_point else atom.midpoint
            value = sum((w for w, u in terms if u.contains(probe)), Fraction(0))
            if value:
                pieces.append((atom, value))
        return StepFunction(tuple(_fuse(pieces)))

    # ------------------------------------------------------------------
    # pointwise and exact aggregates

    def eval(self, t) -> Fraction:
        t = frac(t) if not isinstance(t, float) else Fraction(t)
        for iv, v in self.pieces:
            if iv.contains(t):
                return v
        return Fraction(0)

    __call__ = eval

    def integral(self) -> Fraction:
        return sum((v * iv.length for iv, v in self.pieces), Fraction(0))

    def l1_norm(self) -> Fraction:
        return sum((abs(v) * iv.length for iv, v in self.pieces), Fraction(0))

    def sup_norm(self) -> Fraction:
        return max((abs(v) for _, v in self.pieces), default=Fraction(0))

    def window_integral(self, lo, hi) -> Fraction:
        """Exact integral over [lo, hi] (closedness is measure-irrelevant)."""
        lo, hi = frac(lo) if not isinstance(lo, float) else Fraction(lo), \
                 frac(hi) if not isinstance(hi, float) else Fraction(hi)
        total = Fraction(0)
        for iv, v in self.pieces:
            a, b = max(iv.lo, lo), min(iv.hi, hi)
            if a < b:
                total += v * (b - a)
        return total

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self.pieces)

    def support_bounds(self) -> tuple[Fraction, Fraction] | None:
        if not self.pieces:
            return None
        return self.pieces[0][0].lo, self.pieces[-1][0].hi

    def breakpoints(self) -> list[Fraction]:
        return sorted({x for iv, _ in self.pieces for x in (iv.lo, iv.hi)})

    # ------------------------------------------------------------------
    # algebra

    def _combine(self, other: "StepFunction", op: Callable) -> "StepFunction":
        points = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        if not points:
            return StepFunction.zero()
        pieces = []
        for atom in _atoms(points):
            probe = atom.lo if atom.is_point else atom.midpoint
            value = op(self.eval(probe), other.eval(probe))
            if value:
                pieces.append((atom, value))
        return StepFunction(tuple(_fuse(pieces)))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def scale(self, w) -> "StepFunction":
        w = frac(w)
        if w == 0:
            return StepFunction.zero()
        return StepFunction(tuple((iv, w * v) for iv, v in self.pieces))

    def abs(self) -> "StepFunction":
        return StepFunction(tuple(_fuse([(iv, abs(v)) for iv, v in self.pieces])))

    def restrict(self, region: IntervalUnion) -> "StepFunction":
        """The function times the exact indicator of `region`."""
        return self._combine(StepFunction.indicator(region),
                             lambda a, ind: a if ind else Fraction(0))

    def pointwise_le(self, other: "StepFunction") -> bool:
        """Exact check that self <= other everywhere."""
        points = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        for atom in _atoms(points):
            probe = atom.lo if atom.is_point else atom.midpoint
            if self.eval(probe) > other.eval(probe):
                return False
        return True

    def exceedance_region(self, threshold_sq: Fraction) -> IntervalUnion:
        """Exact region where value^2 > threshold_sq (i.e. |value| > sqrt)."""
        return normalize(iv for iv, v in self.pieces if v * v > threshold_sq)

    def to_json(self) -> list:
        return [
            {"lo": frac_str(iv.lo), "hi": frac_str(iv.hi),
             "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed,
             "value": frac_str(v)}
            for iv, v in self.pieces
        ]


def _fuse(pieces):
    """Fuse runs of adjacent pieces with equal value into single intervals."""
    fused = []
    for iv, v in pieces:
        if fused:
            last_iv, last_v = fused[-1]
            if last_v == v and iv._start() <= (last_iv._end()[0], last_iv._end()[1] + 1):
                fused[-1] = (
                    RationalInterval(last_iv.lo, iv.hi, last_iv.lo_closed, iv.hi_closed),
                    v,
                )
                continue
        fused.append((iv, v))
    return fused


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous, compactly supported, piecewise linear, rational vertices.

    vertices: tuple of (x, y) Fraction pairs with x strictly increasing and
    the first and last y equal to 0.  The empty tuple is the zero function.
    """

    vertices: tuple = ()

    def __post_init__(self):
        verts = tuple((frac(x), frac(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if verts:
            xs = [x for x, _ in verts]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise ValueError("vertex x coordinates must be strictly increasing")
            if verts[0][1] != 0 or verts[-1][1] != 0:
                raise ValueError("first and last vertex values must be 0")

    @staticmethod
    def zero() -> "PiecewiseLinear":
        return PiecewiseLinear(())

    def eval(self, t) -> Fraction:
        t = frac(t) if not isinstance(t, float) else Fraction(t)
        verts = self.vertices
        if not verts or t <= verts[0][0] or t >= verts[-1][0]:
            # endpoints carry y == 0, so <=/>= is exact here
            return Fraction(0)
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            if x0 <= t <= x1:
                return y0 + (y1 - y0) * (t - x0) / (x1 - x0)
        return Fraction(0)

    __call__ = eval

    @property
    def is_zero(self) -> bool:
        return all(y == 0 for _, y in self.vertices)

    def segments(self):
        """(x0, y0, x1, y1) per linear piece, zero-valued runs included."""
        return list(zip(self.vertices, self.vertices[1:]))

    def integral(self) -> Fraction:
        total = Fraction(0)
        for (x0, y0), (x1, y1) in self.segments():
            total += (y0 + y1) * (x1 - x0) / 2
        return total

    def l1_norm(self) -> Fraction:
        return self.abs().integral()

    def sup_norm(self) -> Fraction:
        return max((abs(y) for _, y in self.vertices), default=Fraction(0))

    def is_nonnegative(self) -> bool:
        return all(y >= 0 for _, y in self.vertices)

    def support_bounds(self) -> tuple[Fraction, Fraction] | None:
        if not self.vertices or self.is_zero:
            return None
        return self.vertices[0][0], self.vertices[-1][0]

    def breakpoints(self) -> list[Fraction]:
        return [x for x, _ in self.vertices]

    def abs(self) -> "PiecewiseLinear":
        """Exact |f|: rational zero crossings become new vertices."""
        if not self.vertices:
            return self
        verts: list[tuple[Fraction, Fraction]] = []
        for (x0, y0), (x1, y1) in self.segments():
            verts.append((x0, abs(y0)))
            if (y0 < 0 < y1) or (y1 < 0 < y0):
                root = x0 + (x1 - x0) * (-y0) / (y1 - y0)
                verts.append((root, Fraction(0)))
        verts.append((self.vertices[-1][0], abs(self.vertices[-1][1])))
        return PiecewiseLinear(tuple(verts))

    def _resampled(self, xs: list[Fraction]) -> list[tuple[Fraction, Fraction]]:
        return [(x, self.eval(x)) for x in xs]

    def _combine(self, other: "PiecewiseLinear", sign: int) -> "PiecewiseLinear":
        xs = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        if not xs:
            return PiecewiseLinear.zero()
        verts = [(x, self.eval(x) + sign * other.eval(x)) for x in xs]
        return PiecewiseLinear(tuple(verts)).trimmed()

    def __add__(self, other):
        return self._combine(other, +1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, w) -> "PiecewiseLinear":
        w = frac(w)
        if w == 0 or not self.vertices:
            return PiecewiseLinear.zero()
        return PiecewiseLinear(tuple((x, w * y) for x, y in self.vertices))

    def trimmed(self) -> "PiecewiseLinear":
        """Drop redundant zero vertices at the ends (keep one per side)."""
        verts = list(self.vertices)
        while len(verts) > 2 and verts[0][1] == 0 and verts[1][1] == 0:
            verts.pop(0)
        while len(verts) > 2 and verts[-1][1] == 0 and verts[-2][1] == 0:
            verts.pop()
        if len(verts) <= 1 or all(y == 0 for _, y in verts):
            return PiecewiseLinear.zero()
        return PiecewiseLinear(tuple(verts))

    def window_integral(self, lo, hi) -> Fraction:
        lo, hi = (frac(lo) if not isinstance(lo, float) else Fraction(lo),
                  frac(hi) if not isinstance(hi, float) else Fraction(hi))
        if not self.vertices or hi <= lo:
            return Fraction(0)
        total = Fraction(0)
        for (x0, y0), (x1, y1) in self.segments():
            a, b = max(x0, lo), min(x1, hi)
            if a < b:
                ya = y0 + (y1 - y0) * (a - x0) / (x1 - x0)
                yb = y0 + (y1 - y0) * (b - x0) / (x1 - x0)
                total += (ya + yb) * (b - a) / 2
        return total

    def to_json(self) -> list:
        return [[frac_str(x), frac_str(y)] for x, y in self.vertices]
