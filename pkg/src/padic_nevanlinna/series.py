"""Truncated entire functions: Gauss norms, Newton polygons, zero counts.

An :class:`EntireSeries` is either an exact polynomial (no certificate) or
a head ``a_0 .. a_T`` together with a tail certificate ``(c, b)`` promising
``v_p(a_i) >= c*i + b`` for every ``i > T``.  For certified series every
derived function is restricted to the window of ``s`` on which the head
provably dominates the tail; nothing is ever evaluated outside it.

Two independent routes describe the same data: :func:`gauss_norm` takes
the tropical maximum of the lines ``log|a_i| + i*s``, while
:func:`newton_polygon` builds the lower convex hull of ``(i, v_p(a_i))``.
Zero counts and the counting function come from the polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, ZeroSeriesError
from .plf import PLFunction, plf_max
from .valuation import PrimeConfig, as_fraction, log_abs, valuation

__all__ = [
    "EntireSeries",
    "NewtonPolygon",
    "validity_window",
    "gauss_norm",
    "newton_polygon",
    "zero_count",
    "counting_plf",
    "series_add",
    "series_mul",
    "series_scale",
    "series_pow",
]


@dataclass(frozen=True)
class EntireSeries:
    coeffs: tuple[Fraction, ...]
    certificate: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        coeffs = tuple(as_fraction(a) for a in self.coeffs)
        cert = self.certificate
        if cert is not None:
            cert = (as_fraction(cert[0]), as_fraction(cert[1]))
            if not coeffs:
                raise ValueError("a certified series needs at least one head coefficient")
        else:
            # exact polynomial: drop trailing zeros
            n = len(coeffs)
            while n and coeffs[n - 1] == 0:
                n -= 1
            coeffs = coeffs[:n]
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "certificate", cert)

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "EntireSeries":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, k: int, c=1) -> "EntireSeries":
        return cls((0,) * k + (c,))

    @classmethod
    def constant(cls, c) -> "EntireSeries":
        return cls((c,))

    @property
    def is_polynomial(self) -> bool:
        return self.certificate is None

    @property
    def truncation(self) -> int:
        """Index of the last stored coefficient (``-1`` for the zero polynomial)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        """True for the zero polynomial, or a certified series whose head vanishes."""
        return all(a == 0 for a in self.coeffs)

    @property
    def order(self) -> int:
        """Order of vanishing at the origin."""
        for i, a in enumerate(self.coeffs):
            if a != 0:
                return i
        raise ZeroSeriesError("zero series has no order at 0")

    @property
    def lowest_coefficient(self) -> Fraction:
        return self.coeffs[self.order]

    @property
    def degree(self) -> int:
        if not self.is_polynomial:
            raise ValueError("degree is only defined in polynomial mode")
        if self.is_zero():
            raise ZeroSeriesError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return self.is_polynomial and len(self.coeffs) <= 1

    def to_literal(self):
        """Scenario-file literal: a coefficient list, or a mapping with a certificate."""
        coeffs = [str(a) for a in self.coeffs] or ["0"]
        if self.certificate is None:
            return coeffs
        return {"coefficients": coeffs, "certificate": [str(x) for x in self.certificate]}


def _require_nonzero(f: EntireSeries):
    if f.is_zero():
        raise ZeroSeriesError("series is identically zero (to its truncation order)")


def _head_lines(f: EntireSeries, cfg: PrimeConfig) -> list[PLFunction]:
    return [PLFunction.affine(i, log_abs(a, cfg).value)
            for i, a in enumerate(f.coeffs) if a != 0]


def _head_gauss(f: EntireSeries, cfg: PrimeConfig) -> PLFunction:
    return plf_max(_head_lines(f, cfg))


def _tail_bound(f: EntireSeries) -> PLFunction:
    """Upper bound ``(T+1)(s - c) - b`` for the tail terms, valid for ``s <= c``."""
    c, b = f.certificate
    k = f.truncation + 1
    return PLFunction.affine(k, -(k * c) - b)


def validity_window(f: EntireSeries, cfg: PrimeConfig) -> Fraction | None:
    """Upper end of the certified window ``(-inf, hi]``; ``None`` for polynomials.

    On the window the head's Gauss norm dominates every tail term, so it
    equals the Gauss norm of the full series.
    """
    _require_nonzero(f)
    if f.certificate is None:
        return None
    c, _ = f.certificate
    gap = _head_gauss(f, cfg) - _tail_bound(f)
    # head slopes are <= T, the bound has slope T+1: gap is strictly decreasing
    return min(_decreasing_root(gap), c)


def _decreasing_root(g: PLFunction) -> Fraction:
    """Unique zero of a strictly decreasing PL function on the whole line."""
    for k, sl in enumerate(g.slopes):
        if k < len(g.breaks):
            b = g.breaks[k]
            if g._value(b) <= 0:
                return b - g._value(b) / sl
        else:
            a = g.breaks[-1] if g.breaks else g.ref
            return a - g._value(a) / sl
    raise AssertionError("unreachable")


def gauss_norm(f: EntireSeries, cfg: PrimeConfig) -> PLFunction:
    """``s -> log_p |f|_{p^s} = max_i (log|a_i| + i*s)`` on the validity window."""
    _require_nonzero(f)
    g = _head_gauss(f, cfg)
    hi = validity_window(f, cfg)
    return g if hi is None else g.restrict(None, hi)


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[tuple[int, Fraction], ...]

    def segments(self) -> list[tuple[int, Fraction]]:
        """``(width, slope)`` for each edge; slope is the log-radius of its roots."""
        out = []
        for (i0, v0), (i1, v1) in zip(self.vertices, self.vertices[1:]):
            out.append((i1 - i0, (v1 - v0) / (i1 - i0)))
        return out

    def to_literal(self) -> list[list]:
        return [[i, str(v)] for i, v in self.vertices]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: EntireSeries, cfg: PrimeConfig) -> NewtonPolygon:
    """Lower convex hull of ``{(i, v_p(a_i))}`` over the stored coefficients."""
    _require_nonzero(f)
    pts = [(i, Fraction(valuation(a, cfg.p))) for i, a in enumerate(f.coeffs) if a != 0]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(tuple(hull))


def _check_in_window(f: EntireSeries, s: Fraction, cfg: PrimeConfig):
    if f.certificate is None:
        return
    hi = validity_window(f, cfg)
    if s > hi:
        raise DomainError(f"s = {s} outside the certified window (-inf, {hi}]")
    if _head_gauss(f, cfg)(s) == _tail_bound(f)(s):
        # a tail term may tie the maximum here; the count is not certified
        raise DomainError(f"s = {s} is on the window boundary; zero count not certified")


def zero_count(f: EntireSeries, s, cfg: PrimeConfig) -> int:
    """Number of zeros (with multiplicity) in the closed disk of radius ``p^s``."""
    s = as_fraction(s)
    _require_nonzero(f)
    _check_in_window(f, s, cfg)
    poly = newton_polygon(f, cfg)
    return f.order + sum(w for w, sl in poly.segments() if sl <= s)


def counting_plf(f: EntireSeries, cfg: PrimeConfig) -> PLFunction:
    """``N(s) = sum over roots w with log|w| <= s of (s - log|w|)``; roots at 0 give ``s``.

    Built straight from the polygon edges; its slope at ``s`` is the zero count.
    """
    _require_nonzero(f)
    k = f.order
    edges = newton_polygon(f, cfg).segments()
    radii = sorted({sl for _, sl in edges})
    if radii:
        knots = []
        for x in radii:
            knots.append((x, k * x + sum(w * (x - sl) for w, sl in edges if sl <= x)))
        total = k + sum(w for w, _ in edges)
        N = PLFunction.from_knots(None, None, knots, k, total)
    else:
        N = PLFunction.affine(k, 0)
    hi = validity_window(f, cfg)
    return N if hi is None else N.restrict(None, hi)


# -- arithmetic -------------------------------------------------------------------
#
# A certificate (c, b) only bounds the tail.  To combine certificates we first
# widen it to a bound valid for *every* index, v(a_i) >= c*i + b', by lowering
# b to cover the head.  Sums and products of such uniform bounds are again
# uniform bounds, which is what the result's certificate records.


def _uniform_offset(f: EntireSeries, c: Fraction, p: int, start: int = 0) -> Fraction | None:
    """Largest ``b'`` with ``v(a_i) >= c*i + b'`` for all stored nonzero ``a_i``
    with ``i >= start`` and (if certified) the tail; ``None`` if there is
    nothing to bound."""
    cands = [Fraction(valuation(a, p)) - c * i
             for i, a in enumerate(f.coeffs) if a != 0 and i >= start]
    if f.certificate is not None:
        cf, bf = f.certificate
        if c > cf:
            raise ValueError("cannot bound a tail with a steeper slope than certified")
        # for i > T: v >= cf*i + bf >= c*i + (cf - c)*(T+1) + bf
        cands.append(bf + (cf - c) * (f.truncation + 1))
    return min(cands) if cands else None


def _result_shape(fs: Sequence[EntireSeries], natural_len: int, cfg: PrimeConfig | None):
    certified = [f for f in fs if f.certificate is not None]
    if not certified:
        return natural_len, None
    if cfg is None:
        raise ValueError("certificate propagation needs a PrimeConfig")
    length = min(f.truncation for f in certified) + 1
    c = min(f.certificate[0] for f in certified)
    return length, c


def series_add(f: EntireSeries, g: EntireSeries, cfg: PrimeConfig | None = None) -> EntireSeries:
    length, c = _result_shape([f, g], max(len(f.coeffs), len(g.coeffs)), cfg)
    coeffs = [Fraction(0)] * length
    for h in (f, g):
        for i, a in enumerate(h.coeffs[:length]):
            coeffs[i] += a
    if c is None:
        return EntireSeries(tuple(coeffs))
    # the result's tail only sees indices >= length
    offs = [o for o in (_uniform_offset(h, c, cfg.p, length) for h in (f, g)) if o is not None]
    return EntireSeries(tuple(coeffs), (c, min(offs, default=Fraction(0))))


def series_mul(f: EntireSeries, g: EntireSeries, cfg: PrimeConfig | None = None) -> EntireSeries:
    """Cauchy product; certificates propagate as uniform bounds (needs ``cfg``)."""
    if f.is_polynomial and g.is_polynomial and (f.is_zero() or g.is_zero()):
        return EntireSeries(())
    natural = len(f.coeffs) + len(g.coeffs) - 1
    length, c = _result_shape([f, g], natural, cfg)
    coeffs = [Fraction(0)] * length
    for i, a in enumerate(f.coeffs[:length]):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs[:length - i]):
            coeffs[i + j] += a * b
    if c is None:
        return EntireSeries(tuple(coeffs))
    # a tail index k >= length pairs f_i with g_j, i + j = k; a polynomial
    # factor of degree e forces the other index to be >= length - e
    start_f = length - (len(g.coeffs) - 1) if g.certificate is None else 0
    start_g = length - (len(f.coeffs) - 1) if f.certificate is None else 0
    of, og = _uniform_offset(f, c, cfg.p, start_f), _uniform_offset(g, c, cfg.p, start_g)
    if of is None or og is None:  # a zero factor
        return EntireSeries(tuple(coeffs), (c, Fraction(0)))
    return EntireSeries(tuple(coeffs), (c, of + og))


def series_scale(f: EntireSeries, lam, cfg: PrimeConfig | None = None) -> EntireSeries:
    lam = as_fraction(lam)
    coeffs = tuple(lam * a for a in f.coeffs)
    if f.certificate is None:
        return EntireSeries(coeffs)
    if lam == 0:
        return EntireSeries(coeffs, f.certificate)
    if cfg is None:
        raise ValueError("certificate propagation needs a PrimeConfig")
    c, b = f.certificate
    return EntireSeries(coeffs, (c, b + valuation(lam, cfg.p)))


def series_pow(f: EntireSeries, k: int, cfg: PrimeConfig | None = None) -> EntireSeries:
    if k < 0:
        raise ValueError("negative power")
    result = EntireSeries.constant(1)
    for _ in range(k):
        result = series_mul(result, f, cfg)
    return result
