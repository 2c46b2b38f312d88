"""Projective maps, hypersurface pullbacks and the Nevanlinna functions.

Everything is a :class:`~padic_nevanlinna.plf.PLFunction` of ``s = log_p r``:

* ``T(s)``  the characteristic, max of coordinate Gauss norms;
* ``N(s)``  the counting function of the pullback ``Q o f``;
* ``m(s)``  the proximity function, ``d*T - log|Q o f|``.

``m + N - d*T`` is then a constant function (Jensen), and the Second Main
Theorem bound ``(n - 1 + max_i M/deg D_i) * T`` can be compared against
``sum_i m_i/deg D_i`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import FMTResidualError, ImageContainedError
from .plf import PLFunction, plf_eventual_slope, plf_is_constant_on, plf_max
from .poly import Poly
from .series import (EntireSeries, counting_plf, gauss_norm, series_add, series_mul,
                     series_scale)
from .valuation import PrimeConfig, log_abs

__all__ = [
    "ProjectiveMap",
    "Hypersurface",
    "VarietySpec",
    "NevanlinnaReport",
    "BoundednessReport",
    "pullback",
    "characteristic",
    "proximity",
    "counting",
    "fmt_residual",
    "defect",
    "smt_coefficient",
    "smt_report",
    "verify_image_in_variety",
    "sorted_proximity_boundedness",
]


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of two univariate polynomials given as coefficient lists (low first)."""
    def trim(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b):
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bc in enumerate(b):
                r[shift + i] -= q * bc
            r = trim(r)
            if not r:
                break
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def _rank(rows: list[list[Fraction]]) -> int:
    from .geometry import matrix_rank
    return matrix_rank(rows)


@dataclass(frozen=True)
class ProjectiveMap:
    """``f = (f_0, ..., f_N)`` with entire coordinates.

    In polynomial mode the constructor checks that the coordinates have no
    common zero (gcd 1).  In series mode that cannot be decided from a
    truncation, so ``no_common_zero_asserted`` records the caller's claim.
    Constant maps are rejected.
    """

    coords: tuple[EntireSeries, ...]
    no_common_zero_asserted: bool = field(default=False, compare=False)

    def __post_init__(self):
        coords = tuple(c if isinstance(c, EntireSeries) else EntireSeries.polynomial(c)
                       for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) < 2:
            raise ValueError("a map to P^N needs at least two coordinates")
        if all(c.is_zero() for c in coords):
            raise ValueError("all coordinates are zero")
        if self.polynomial_mode:
            g: list[Fraction] = []
            for c in coords:
                g = _poly_gcd(g, list(c.coeffs)) if g else _poly_gcd(list(c.coeffs), [])
            if len(g) > 1:
                raise ValueError("coordinates have a common zero (gcd is nonconstant)")
        width = max(len(c.coeffs) for c in coords)
        rows = [list(c.coeffs) + [Fraction(0)] * (width - len(c.coeffs)) for c in coords]
        if _rank(rows) < 2:
            raise ValueError("map is constant")

    @classmethod
    def from_polys(cls, *coords: Sequence) -> "ProjectiveMap":
        return cls(tuple(EntireSeries.polynomial(c) for c in coords))

    @property
    def N(self) -> int:
        return len(self.coords) - 1

    @property
    def polynomial_mode(self) -> bool:
        return all(c.is_polynomial for c in self.coords)

    def rescale(self, c, cfg: PrimeConfig | None = None) -> "ProjectiveMap":
        """``(c*f_0, ..., c*f_N)``; ``cfg`` is needed only for certified coordinates."""
        return ProjectiveMap(tuple(series_scale(x, c, cfg) for x in self.coords),
                             self.no_common_zero_asserted)

    def permute(self, perm: Sequence[int]) -> "ProjectiveMap":
        """Coordinate ``i`` moves to position ``perm[i]``."""
        out = [None] * len(self.coords)
        for i, c in enumerate(self.coords):
            out[perm[i]] = c
        return ProjectiveMap(tuple(out), self.no_common_zero_asserted)

    def to_literal(self) -> list:
        return [c.to_literal() for c in self.coords]


@dataclass(frozen=True)
class Hypersurface:
    poly: Poly
    degree: int
    name: str = ""

    def __post_init__(self):
        if self.poly.is_zero():
            raise ValueError("hypersurface polynomial is zero")
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if not self.poly.is_homogeneous():
            raise ValueError(f"polynomial {self.poly} is not homogeneous")
        actual = self.poly.total_degree
        if actual != self.degree:
            raise ValueError(f"degree mismatch: declared {self.degree}, actual {actual}")

    @classmethod
    def of(cls, poly: Poly, name: str = "") -> "Hypersurface":
        return cls(poly, poly.total_degree, name)

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def power(self, k: int) -> "Hypersurface":
        return Hypersurface(self.poly ** k, self.degree * k, self.name)

    def permute(self, perm: Sequence[int]) -> "Hypersurface":
        return Hypersurface(self.poly.permute(perm), self.degree, self.name)


@dataclass(frozen=True)
class VarietySpec:
    """Projective variety ``X`` by its equations; no equations means ``X = P^N``."""

    equations: tuple[Poly, ...] = ()
    dim: int | None = None

    def __post_init__(self):
        for q in self.equations:
            if q.is_zero() or not q.is_homogeneous():
                raise ValueError(f"variety equation {q} is not a nonzero homogeneous polynomial")
        if self.equations and self.dim is None:
            raise ValueError("a variety with equations needs its dimension")
        if self.dim is not None and self.dim < 1:
            raise ValueError("variety dimension must be >= 1")

    def dimension(self, N: int) -> int:
        return N if self.dim is None else self.dim


# -- the three functions --------------------------------------------------------


def pullback(Q: Hypersurface, f: ProjectiveMap, cfg: PrimeConfig | None = None,
             allow_zero: bool = False) -> EntireSeries:
    """``Q o f`` as an entire series (certificates propagate; needs ``cfg`` then)."""
    if Q.nvars != len(f.coords):
        raise ValueError(f"hypersurface has {Q.nvars} variables, map has {len(f.coords)} coordinates")
    powers: dict[tuple[int, int], EntireSeries] = {}

    def power(i: int, k: int) -> EntireSeries:
        if (i, k) not in powers:
            powers[(i, k)] = (f.coords[i] if k == 1
                              else series_mul(power(i, k - 1), f.coords[i], cfg))
        return powers[(i, k)]

    total = None
    for exp, c in Q.poly.terms:
        term = EntireSeries.constant(c)
        for i, k in enumerate(exp):
            if k:
                term = series_mul(term, power(i, k), cfg)
        total = term if total is None else series_add(total, term, cfg)
    if total.is_zero() and not allow_zero:
        raise ImageContainedError(
            f"pullback of {Q.name or Q.poly} is identically zero: image contained in the hypersurface",
            Q.name or str(Q.poly))
    return total


def characteristic(f: ProjectiveMap, cfg: PrimeConfig) -> PLFunction:
    """``T(s) = max_j log_p |f_j|_{p^s}``."""
    norms = [gauss_norm(c, cfg) for c in f.coords if not c.is_zero()]
    return plf_max(norms)


def proximity(f: ProjectiveMap, D: Hypersurface, cfg: PrimeConfig,
              T: PLFunction | None = None) -> PLFunction:
    """``m(s) = d*T(s) - log_p |Q o f|_{p^s}``."""
    if T is None:
        T = characteristic(f, cfg)
    return D.degree * T - gauss_norm(pullback(D, f, cfg), cfg)


def counting(f: ProjectiveMap, D: Hypersurface, cfg: PrimeConfig) -> PLFunction:
    """Counting function ``N(s)`` of the zeros of ``Q o f``."""
    return counting_plf(pullback(D, f, cfg), cfg)


def fmt_residual(f: ProjectiveMap, D: Hypersurface, cfg: PrimeConfig) -> Fraction:
    """The constant ``m + N - d*T``; raises if it is not constant.

    The value is also checked against ``-log_p|a_k|`` for the lowest
    nonzero coefficient of the pullback.
    """
    g = pullback(D, f, cfg)
    T = characteristic(f, cfg)
    m = D.degree * T - gauss_norm(g, cfg)
    N = counting_plf(g, cfg)
    residual = m + N - D.degree * T
    ok, const = plf_is_constant_on(residual, residual.lo, residual.hi)
    if not ok:
        raise FMTResidualError(f"m + N - d*T is not constant: {residual}")
    expected = -log_abs(g.lowest_coefficient, cfg).value
    if const != expected:
        raise FMTResidualError(f"residual {const} differs from -log|a_k| = {expected}")
    return const


def defect(f: ProjectiveMap, D: Hypersurface, cfg: PrimeConfig) -> Fraction:
    """``liminf m/(d*T)`` as a ratio of eventual slopes (polynomial mode only)."""
    T = characteristic(f, cfg)
    m = proximity(f, D, cfg, T)
    if T.hi is not None or m.hi is not None:
        raise ValueError("defect needs an unbounded window (polynomial mode); "
                         "use window-restricted slopes for certified series")
    t_slope = plf_eventual_slope(T)
    if t_slope <= 0:
        raise ValueError("map is constant: characteristic has no growth")
    return plf_eventual_slope(m) / (D.degree * t_slope)


def smt_coefficient(degrees: Sequence[int], n: int, M: int = 1) -> Fraction:
    """``n - 1 + max_i M/deg D_i``."""
    return n - 1 + max(Fraction(M, d) for d in degrees)


# -- reports --------------------------------------------------------------------


@dataclass(frozen=True)
class NevanlinnaReport:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    T: PLFunction
    m: tuple[PLFunction, ...]
    N: tuple[PLFunction, ...]
    residuals: tuple[Fraction, ...]
    weighted_sum: PLFunction
    coefficient: Fraction
    bound: PLFunction
    margin: PLFunction
    n: int
    M: int
    margin_eventual_slope: Fraction | None  # None when the window is bounded
    margin_infimum: Fraction | None         # over s >= 0; None means -inf
    verdict: bool
    window_restricted: bool
    image_in_variety: bool
    preconditions: dict = field(default_factory=dict, compare=False)

    def functions(self) -> dict[str, PLFunction]:
        out = {"T": self.T}
        for name, m, N in zip(self.names, self.m, self.N):
            out[f"m_{name}"] = m
            out[f"N_{name}"] = N
        out["sum"] = self.weighted_sum
        out["bound"] = self.bound
        out["margin"] = self.margin
        return out


def _names(Ds: Sequence[Hypersurface]) -> tuple[str, ...]:
    return tuple(D.name or f"D{i + 1}" for i, D in enumerate(Ds))


def smt_report(f: ProjectiveMap, Ds: Sequence[Hypersurface], X: VarietySpec | None = None,
               M: int = 1, cfg: PrimeConfig | None = None,
               preconditions: dict | None = None) -> NevanlinnaReport:
    """Assemble ``sum m_i/deg D_i`` against ``(n-1+max_i M/deg D_i) * T``.

    The verdict looks at ``s >= 0`` only.  With an unbounded window it
    passes iff the margin has nonnegative eventual slope (then its infimum
    over ``s >= 0`` is finite and reported).  On a bounded certified window
    the infimum is always finite; the report is marked window-restricted.
    """
    if cfg is None:
        raise ValueError("a PrimeConfig is required")
    if not Ds:
        raise ValueError("need at least one hypersurface")
    if M < 1:
        raise ValueError("M must be a positive integer")
    X = X or VarietySpec()
    n = X.dimension(f.N)
    T = characteristic(f, cfg)
    pulls = [pullback(D, f, cfg) for D in Ds]
    ms, Ns, residuals = [], [], []
    for D, g in zip(Ds, pulls):
        m = D.degree * T - gauss_norm(g, cfg)
        N = counting_plf(g, cfg)
        res = m + N - D.degree * T
        ok, const = plf_is_constant_on(res, res.lo, res.hi)
        if not ok:
            raise FMTResidualError(f"m + N - d*T is not constant for {D.name}: {res}")
        ms.append(m)
        Ns.append(N)
        residuals.append(const)
    weighted = ms[0] / Ds[0].degree
    for D, m in zip(Ds[1:], ms[1:]):
        weighted = weighted + m / D.degree
    coef = smt_coefficient([D.degree for D in Ds], n, M)
    bound = coef * T
    margin = bound - weighted
    window_restricted = margin.hi is not None
    inf = margin.infimum(0, None)
    if window_restricted:
        eventual = None
        verdict = inf is not None
    else:
        eventual = plf_eventual_slope(margin)
        verdict = eventual >= 0 and inf is not None
    pre = {"general_position": "asserted", "common_zero": (
        "checked (gcd)" if f.polynomial_mode else
        ("asserted" if f.no_common_zero_asserted else "unchecked"))}
    pre.update(preconditions or {})
    return NevanlinnaReport(
        names=_names(Ds), degrees=tuple(D.degree for D in Ds), T=T, m=tuple(ms), N=tuple(Ns),
        residuals=tuple(residuals), weighted_sum=weighted, coefficient=coef, bound=bound,
        margin=margin, n=n, M=M, margin_eventual_slope=eventual, margin_infimum=inf,
        verdict=verdict, window_restricted=window_restricted,
        image_in_variety=verify_image_in_variety(f, X, cfg), preconditions=pre)


def verify_image_in_variety(f: ProjectiveMap, X: VarietySpec | None,
                            cfg: PrimeConfig | None = None) -> bool:
    """True iff every equation of ``X`` pulls back to zero (to truncation order in series mode)."""
    if X is None:
        return True
    for q in X.equations:
        g = pullback(Hypersurface.of(q), f, cfg, allow_zero=True)
        if not g.is_zero():
            return False
    return True


@dataclass(frozen=True)
class BoundednessReport:
    order: tuple[int, ...]            # hypersurface indices, largest slope first
    slopes: tuple[Fraction, ...]      # eventual slopes of m_i in that order
    n: int
    bounded: bool                     # all slopes past position n vanish

    @property
    def unbounded_beyond_n(self) -> tuple[int, ...]:
        return tuple(i for i, s in zip(self.order[self.n:], self.slopes[self.n:]) if s != 0)


def sorted_proximity_boundedness(f: ProjectiveMap, Ds: Sequence[Hypersurface],
                                 X: VarietySpec | None, cfg: PrimeConfig) -> BoundednessReport:
    """Check that all but the ``n`` largest proximity functions stay bounded."""
    X = X or VarietySpec()
    n = X.dimension(f.N)
    if len(Ds) <= n:
        raise ValueError(f"need more than n = {n} hypersurfaces, got {len(Ds)}")
    if not f.polynomial_mode:
        raise ValueError("boundedness check needs polynomial mode")
    T = characteristic(f, cfg)
    slopes = [plf_eventual_slope(proximity(f, D, cfg, T)) for D in Ds]
    order = sorted(range(len(Ds)), key=lambda i: (-slopes[i], i))
    sorted_slopes = tuple(slopes[i] for i in order)
    return BoundednessReport(tuple(order), sorted_slopes, n,
                             all(s == 0 for s in sorted_slopes[n:]))
