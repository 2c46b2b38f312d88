"""Exact continuous piecewise-linear functions of the log-radius ``s = log_p r``.

A :class:`PLFunction` lives on a closed interval ``[lo, hi]`` whose ends may
be infinite (``None``).  It is stored in canonical form: interior
breakpoints where the slope genuinely changes, one slope per segment
(unbounded end segments included), and the value at a canonical reference
point.  Two functions are equal iff their canonical forms are equal, so the
dataclass ``==`` is mathematical equality.

Every Nevanlinna quantity in this package (Gauss norms, ``T``, ``N``, ``m``)
is such a function with rational data, so all arithmetic here is exact.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import DomainError
from .valuation import as_fraction

__all__ = [
    "PLFunction",
    "plf_add",
    "plf_scale",
    "plf_sub",
    "plf_max",
    "plf_eventual_slope",
    "plf_is_constant_on",
]

Bound = Fraction | None


def _fmt_bound(b: Bound, side: str) -> str:
    if b is None:
        return "-inf" if side == "lo" else "+inf"
    return str(b)


@dataclass(frozen=True)
class PLFunction:
    lo: Bound
    hi: Bound
    breaks: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    ref: Fraction
    ref_value: Fraction
    _bvals: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.slopes) != len(self.breaks) + 1:
            raise ValueError("need exactly one slope per segment")
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise DomainError(f"empty domain [{self.lo}, {self.hi}]")
        for a, b in zip(self.breaks, self.breaks[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        if self.breaks:
            if (self.lo is not None and self.breaks[0] <= self.lo) or (
                    self.hi is not None and self.breaks[-1] >= self.hi):
                raise ValueError("breakpoints must lie strictly inside the domain")
        # values at breakpoints, walked out from the reference point
        bvals: list[Fraction] = []
        if self.breaks:
            if self.ref != self.breaks[0]:
                raise ValueError("reference point must be the first breakpoint")
            bvals.append(self.ref_value)
            for i in range(1, len(self.breaks)):
                bvals.append(bvals[-1] + self.slopes[i] * (self.breaks[i] - self.breaks[i - 1]))
        object.__setattr__(self, "_bvals", tuple(bvals))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_knots(cls, lo: Bound, hi: Bound, knots: Sequence[tuple[Fraction, Fraction]],
                   left_slope: Fraction | None = None,
                   right_slope: Fraction | None = None) -> "PLFunction":
        """Build the function interpolating ``knots`` on ``[lo, hi]``.

        ``knots`` are ``(s, value)`` pairs with strictly increasing ``s``,
        covering any finite endpoint.  Unbounded ends extend with the given
        end slopes.  The result is canonicalized.
        """
        if not knots:
            raise ValueError("need at least one knot")
        xs = [as_fraction(s) for s, _ in knots]
        vs = [as_fraction(v) for _, v in knots]
        if lo is not None and xs[0] != lo:
            raise ValueError("first knot must sit on the finite lower end")
        if hi is not None and xs[-1] != hi:
            raise ValueError("last knot must sit on the finite upper end")
        seg_slopes: list[Fraction] = []
        seg_starts: list[Fraction] = []  # left end of each segment after the first
        if lo is None:
            if left_slope is None:
                raise ValueError("left_slope needed for a domain unbounded below")
            seg_slopes.append(as_fraction(left_slope))
        for (x0, v0), (x1, v1) in zip(zip(xs, vs), zip(xs[1:], vs[1:])):
            if not x0 < x1:
                raise ValueError("knots must be strictly increasing")
            if seg_slopes:
                seg_starts.append(x0)
            seg_slopes.append((v1 - v0) / (x1 - x0))
        if hi is None:
            if right_slope is None:
                raise ValueError("right_slope needed for a domain unbounded above")
            if seg_slopes:
                seg_starts.append(xs[-1])
            seg_slopes.append(as_fraction(right_slope))
        if not seg_slopes:
            raise ValueError("degenerate domain")
        # merge equal-slope neighbours
        breaks: list[Fraction] = []
        slopes: list[Fraction] = [seg_slopes[0]]
        for start, sl in zip(seg_starts, seg_slopes[1:]):
            if sl != slopes[-1]:
                breaks.append(start)
                slopes.append(sl)
        anchor_x, anchor_v = xs[0], vs[0]
        if breaks:
            ref = breaks[0]
        elif lo is not None:
            ref = lo
        elif hi is not None:
            ref = hi
        else:
            ref = Fraction(0)
        # the first knot lies on the first segment, which reaches up to ref
        ref_value = anchor_v + slopes[0] * (ref - anchor_x)
        return cls(lo, hi, tuple(breaks), tuple(slopes), ref, ref_value)

    @classmethod
    def affine(cls, slope, intercept, lo=None, hi=None) -> "PLFunction":
        """``s -> slope*s + intercept`` on ``[lo, hi]``."""
        slope, intercept = as_fraction(slope), as_fraction(intercept)
        lo = None if lo is None else as_fraction(lo)
        hi = None if hi is None else as_fraction(hi)
        knots = []
        for x in (lo, hi):
            if x is not None:
                knots.append((x, slope * x + intercept))
        if not knots:
            knots = [(Fraction(0), intercept)]
        return cls.from_knots(lo, hi, knots, slope, slope)

    @classmethod
    def constant(cls, value, lo=None, hi=None) -> "PLFunction":
        return cls.affine(0, value, lo, hi)

    # -- evaluation -----------------------------------------------------------

    def contains(self, s) -> bool:
        s = as_fraction(s)
        return (self.lo is None or s >= self.lo) and (self.hi is None or s <= self.hi)

    def _value(self, s: Fraction) -> Fraction:
        if not self.breaks:
            return self.ref_value + self.slopes[0] * (s - self.ref)
        i = bisect_left(self.breaks, s)
        if i == 0:
            return self._bvals[0] + self.slopes[0] * (s - self.breaks[0])
        return self._bvals[i - 1] + self.slopes[i] * (s - self.breaks[i - 1])

    def __call__(self, s) -> Fraction:
        s = as_fraction(s)
        if not self.contains(s):
            raise DomainError(f"s = {s} outside domain [{_fmt_bound(self.lo, 'lo')}, "
                              f"{_fmt_bound(self.hi, 'hi')}]")
        return self._value(s)

    def slope_right(self, s) -> Fraction:
        """Slope of the segment immediately to the right of ``s``."""
        return self.slopes[bisect_right(self.breaks, as_fraction(s))]

    def slope_left(self, s) -> Fraction:
        """Slope of the segment immediately to the left of ``s``."""
        return self.slopes[bisect_left(self.breaks, as_fraction(s))]

    @property
    def domain(self) -> tuple[Bound, Bound]:
        return (self.lo, self.hi)

    @property
    def is_convex(self) -> bool:
        return all(a < b for a, b in zip(self.slopes, self.slopes[1:]))

    # -- algebra --------------------------------------------------------------

    def restrict(self, lo: Bound = None, hi: Bound = None) -> "PLFunction":
        """Restrict to ``[lo, hi]`` intersected with the current domain."""
        new_lo = _max_lo(self.lo, None if lo is None else as_fraction(lo))
        new_hi = _min_hi(self.hi, None if hi is None else as_fraction(hi))
        return _combine([self], lambda v: v[0], extra=(), lo=new_lo, hi=new_hi)

    def __add__(self, other):
        if isinstance(other, PLFunction):
            return plf_add(self, other)
        return plf_add(self, PLFunction.constant(as_fraction(other)))

    __radd__ = __add__

    def __neg__(self):
        return plf_scale(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        return plf_scale(self, c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return plf_scale(self, 1 / as_fraction(c))

    # -- queries --------------------------------------------------------------

    def infimum(self, lo: Bound = None, hi: Bound = None) -> Fraction | None:
        """Infimum on ``[lo, hi]`` (within the domain); ``None`` means ``-inf``."""
        g = self.restrict(lo, hi)
        if g.lo is None and g.slopes[0] > 0:
            return None
        if g.hi is None and g.slopes[-1] < 0:
            return None
        candidates = [g._value(b) for b in g.breaks]
        for end in (g.lo, g.hi):
            if end is not None:
                candidates.append(g._value(end))
        if not candidates:  # constant on the whole line
            return g.ref_value
        return min(candidates)

    def to_dict(self) -> dict:
        """Canonical serialization with exact fraction strings."""
        return {
            "domain": [_fmt_bound(self.lo, "lo"), _fmt_bound(self.hi, "hi")],
            "breakpoints": [str(b) for b in self.breaks],
            "slopes": [str(s) for s in self.slopes],
            "reference": [str(self.ref), str(self.ref_value)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PLFunction":
        lo_s, hi_s = d["domain"]
        lo = None if lo_s == "-inf" else as_fraction(lo_s)
        hi = None if hi_s == "+inf" else as_fraction(hi_s)
        ref, ref_value = (as_fraction(x) for x in d["reference"])
        return cls(lo, hi, tuple(as_fraction(b) for b in d["breakpoints"]),
                   tuple(as_fraction(s) for s in d["slopes"]), ref, ref_value)

    def __str__(self) -> str:
        pieces = []
        edges = [self.lo, *self.breaks, self.hi]
        for k, sl in enumerate(self.slopes):
            a, b = edges[k], edges[k + 1]
            pt = a if a is not None else (b if b is not None else Fraction(0))
            c = self._value(pt) - sl * pt
            pieces.append(f"[{_fmt_bound(a, 'lo')}, {_fmt_bound(b, 'hi')}]: {sl}*s + {c}")
        return "; ".join(pieces)


def _max_lo(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_hi(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _combine(fs: Sequence[PLFunction], op: Callable[[list[Fraction]], Fraction],
             extra: Iterable[Fraction], lo: Bound = None, hi: Bound = None,
             intersect: bool = True) -> PLFunction:
    """Apply a pointwise ``op`` that is affine between the candidate knots.

    Candidate knots are all breakpoints of ``fs`` plus ``extra``; the caller
    guarantees ``op(f_1(s), ..., f_k(s))`` has no kinks elsewhere.
    """
    if intersect:
        for f in fs:
            lo = _max_lo(lo, f.lo)
            hi = _min_hi(hi, f.hi)
    if lo is not None and hi is not None and not lo < hi:
        raise DomainError("domains do not intersect in a nonempty interval")
    pts = set(extra)
    for f in fs:
        pts.update(f.breaks)
    xs = sorted(x for x in pts
                if (lo is None or x > lo) and (hi is None or x < hi))
    if lo is not None:
        xs.insert(0, lo)
    if hi is not None:
        xs.append(hi)
    if not xs:
        xs = [Fraction(0)]

    def at(s: Fraction) -> Fraction:
        return op([f._value(s) for f in fs])

    knots = [(x, at(x)) for x in xs]
    left = right = None
    if lo is None:
        left = knots[0][1] - at(xs[0] - 1)
    if hi is None:
        right = at(xs[-1] + 1) - knots[-1][1]
    return PLFunction.from_knots(lo, hi, knots, left, right)


def plf_add(f: PLFunction, g: PLFunction) -> PLFunction:
    """Exact pointwise sum on the intersection of the domains."""
    return _combine([f, g], lambda v: v[0] + v[1], extra=())


def plf_scale(f: PLFunction, c) -> PLFunction:
    c = as_fraction(c)
    if c == 0:
        return PLFunction.constant(0, f.lo, f.hi)
    return PLFunction(f.lo, f.hi, f.breaks, tuple(c * s for s in f.slopes), f.ref, c * f.ref_value)


def plf_sub(f: PLFunction, g: PLFunction) -> PLFunction:
    return plf_add(f, plf_scale(g, -1))


def _elementary_intervals(breaks: Sequence[Fraction], lo: Bound, hi: Bound):
    edges: list[Bound] = [lo, *breaks, hi]
    for a, b in zip(edges, edges[1:]):
        if a is None and b is None:
            yield a, b, Fraction(0)
        elif a is None:
            yield a, b, b - 1
        elif b is None:
            yield a, b, a + 1
        else:
            yield a, b, (a + b) / 2


def plf_max(fs: Sequence[PLFunction]) -> PLFunction:
    """Exact pointwise maximum (the tropical sum) of a nonempty list."""
    fs = list(fs)
    if not fs:
        raise ValueError("plf_max of an empty list")
    if len(fs) == 1:
        return fs[0]
    lo = hi = None
    for f in fs:
        lo = _max_lo(lo, f.lo)
        hi = _min_hi(hi, f.hi)
    if lo is not None and hi is not None and not lo < hi:
        raise DomainError("common domain is empty")
    union = sorted({b for f in fs for b in f.breaks
                    if (lo is None or b > lo) and (hi is None or b < hi)})
    crossings: set[Fraction] = set()
    for a, b, t in _elementary_intervals(union, lo, hi):
        lines = {(f.slope_right(t), f._value(t)) for f in fs}
        for (s1, v1), (s2, v2) in combinations(lines, 2):
            if s1 == s2:
                continue
            x = t + (v2 - v1) / (s1 - s2)
            if (a is None or x > a) and (b is None or x < b):
                crossings.add(x)
    return _combine(fs, max, extra=crossings, lo=lo, hi=hi)


def plf_eventual_slope(f: PLFunction) -> Fraction:
    """Slope of the final (unbounded) segment."""
    if f.hi is not None:
        raise DomainError("domain is bounded above; no eventual slope")
    return f.slopes[-1]


def plf_is_constant_on(f: PLFunction, lo: Bound = None, hi: Bound = None
                       ) -> tuple[bool, Fraction | None]:
    """Whether ``f`` is constant on ``[lo, hi]``, and the constant if so."""
    lo = None if lo is None else as_fraction(lo)
    hi = None if hi is None else as_fraction(hi)
    if (lo is None and f.lo is not None) or (lo is not None and f.lo is not None and lo < f.lo) \
            or (hi is None and f.hi is not None) or (hi is not None and f.hi is not None and hi > f.hi):
        raise DomainError("window not contained in the domain")
    g = f.restrict(lo, hi)
    if len(g.slopes) == 1 and g.slopes[0] == 0:
        return True, g.ref_value
    return False, None
