"""Exact projective geometry at witness points, and the sharpness family.

Transversality is never decided globally here.  It is certified at given
points by the rank of the Jacobian of the defining equations, computed with
fraction-free (Bareiss) elimination over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from sympy import divisors

from .errors import GeometryError
from .nevanlinna import Hypersurface, ProjectiveMap, VarietySpec, pullback
from .poly import Poly
from .series import EntireSeries
from .valuation import as_fraction

__all__ = [
    "matrix_rank",
    "ProjectivePoint",
    "ProjectiveLine",
    "IntersectionProfile",
    "SharpnessConfig",
    "jacobian_rank_at",
    "transversality_check",
    "restrict_to_line",
    "line_intersection_profile",
    "sharpness_family",
]


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Bareiss fraction-free elimination."""
    mat: list[list[int]] = []
    for row in rows:
        row = [as_fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        mat.append([int(x * scale) for x in row])
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                # exact division is guaranteed by Sylvester's identity
                mat[r][c] = (pv * mat[r][c] - mat[r][col] * mat[rank][c]) // prev
            mat[r][col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_fraction(x) for x in self.coords)
        lead = next((x for x in coords if x != 0), None)
        if lead is None:
            raise ValueError("all homogeneous coordinates are zero")
        object.__setattr__(self, "coords", tuple(x / lead for x in coords))

    def __len__(self):
        return len(self.coords)

    def to_literal(self) -> list[str]:
        return [str(x) for x in self.coords]


@dataclass(frozen=True)
class ProjectiveLine:
    """The line ``(u, v) -> u*A + v*B`` through the points ``A`` and ``B``."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(as_fraction(x) for x in self.a)
        b = tuple(as_fraction(x) for x in self.b)
        if len(a) != len(b):
            raise ValueError("points of different dimensions")
        if matrix_rank([a, b]) != 2:
            raise ValueError("line needs two independent points")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def coordinate_line(cls, N: int) -> "ProjectiveLine":
        """``x_2 = ... = x_N = 0``, parametrized as ``(u, v, 0, ..., 0)``."""
        e = [[int(i == j) for j in range(N + 1)] for i in (0, 1)]
        return cls(tuple(e[0]), tuple(e[1]))


def jacobian_rank_at(polys: Sequence[Poly], P: ProjectivePoint) -> int:
    """Rank of the gradient matrix of ``polys`` at ``P`` (all must vanish there)."""
    for q in polys:
        if q(P.coords) != 0:
            raise GeometryError(f"{q} does not vanish at {P.to_literal()}")
    rows = [[g(P.coords) for g in q.gradient()] for q in polys]
    return matrix_rank(rows)


def transversality_check(Ds: Sequence[Hypersurface], X: VarietySpec | None,
                         P: ProjectivePoint) -> bool:
    """Whether ``Ds`` and ``X`` meet transversally at ``P``.

    Full rank means rank equal to ``len(Ds) + codim X``.
    """
    N = len(P) - 1
    X = X or VarietySpec()
    polys = [D.poly for D in Ds] + list(X.equations)
    codim = N - X.dimension(N)
    return jacobian_rank_at(polys, P) == len(Ds) + codim


def restrict_to_line(Q: Hypersurface | Poly, L: ProjectiveLine) -> Poly:
    """Binary form ``Q(u*A + v*B)`` in the variables ``(u, v)``; zero when ``L`` lies in ``Q``."""
    poly = Q.poly if isinstance(Q, Hypersurface) else Q
    images = [Poly.linear([a, b]) for a, b in zip(L.a, L.b)]
    return poly.substitute(images)


@dataclass(frozen=True)
class IntersectionProfile:
    roots: tuple[tuple[ProjectivePoint, int], ...]
    residual_degree: int

    def multiplicity(self, P: ProjectivePoint) -> int:
        return next((k for Q, k in self.roots if Q == P), 0)


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Candidate-tested rational roots of a polynomial (coefficients low first)."""
    scale = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        raise ValueError("strip the root at 0 first")
    roots = set()
    for num in divisors(abs(a0)):
        for den in divisors(abs(an)):
            for sign in (1, -1):
                t = Fraction(sign * num, den)
                if sum(c * t ** i for i, c in enumerate(ints)) == 0:
                    roots.add(t)
    return sorted(roots)


def _divide_linear(coeffs: list[Fraction], t: Fraction) -> list[Fraction] | None:
    """Divide by ``(x - t)``; ``None`` if the remainder is nonzero."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[i] + acc * t
        out[i - 1] = acc
    if coeffs[0] + acc * t != 0:
        return None
    return out


def line_intersection_profile(form: Poly) -> IntersectionProfile:
    """Rational roots of a binary form in ``P^1`` with multiplicities.

    Points are ``(u : v)`` in canonical form.  Whatever has no rational
    root is reported only by its degree.
    """
    if form.nvars != 2:
        raise ValueError("expected a binary form")
    if form.is_zero():
        raise GeometryError("zero form: the line lies in the hypersurface")
    if not form.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    d = form.total_degree
    # coefficient of u^(d-k) v^k
    by_v = [Fraction(0)] * (d + 1)
    for (eu, ev), c in form.terms:
        by_v[ev] = c
    roots: list[tuple[ProjectivePoint, int]] = []
    low = next(k for k, c in enumerate(by_v) if c != 0)
    high = max(k for k, c in enumerate(by_v) if c != 0)
    if low:
        roots.append((ProjectivePoint((1, 0)), low))        # v^low divides the form
    if d - high:
        roots.append((ProjectivePoint((0, 1)), d - high))   # u^(d-high) divides the form
    g = by_v[low:high + 1]   # g(t) = form(1, t) / t^low, nonzero constant term
    if len(g) > 1:
        for t in _rational_roots(g):
            k = 0
            while len(g) > 1:
                q = _divide_linear(g, t)
                if q is None:
                    break
                g, k = q, k + 1
            if k:
                roots.append((ProjectivePoint((1, t)), k))
    return IntersectionProfile(tuple(roots), len(g) - 1)


# -- the sharpness family ----------------------------------------------------------


@dataclass(frozen=True)
class SharpnessConfig:
    n: int
    d: int
    p: int
    hypersurfaces: tuple[Hypersurface, ...]
    map: ProjectiveMap
    point: ProjectivePoint
    line: ProjectiveLine


def _mono(nvars: int, **powers) -> tuple[int, ...]:
    exp = [0] * nvars
    for key, k in powers.items():
        exp[int(key[1:])] += k
    return tuple(exp)


def _family_polys(n: int, d: int, p: int) -> list[Poly]:
    nv = n + 1
    if n == 1:
        # x_1 * prod_{j<d} (x_1 - (1 + j*p) x_0): all other roots on |z| = 1
        q = Poly.var(2, 1)
        for j in range(1, d):
            q = q * (Poly.var(2, 1) - Poly.var(2, 0) * (1 + j * p))
        return [q]
    polys = []
    for i in range(1, n):
        if d == 1:
            terms = {_mono(nv, x1=1): 1, _mono(nv, **{f"x{i + 1}": 1}): 1}
        else:
            terms = {_mono(nv, x1=d): 1, _mono(nv, x0=d - 1, **{f"x{i + 1}": 1}): 1}
        polys.append(Poly.from_dict(nv, terms))
    if d == 1:
        # x_0^0 x_1 + x_2 would repeat the first hyperplane; keep the x_1 part
        polys.append(Poly.var(nv, 1))
    else:
        polys.append(Poly.from_dict(nv, {_mono(nv, x0=d - 1, x1=1): 1, _mono(nv, x2=d): 1}))
    return polys


def sharpness_family(n: int, d: int, p: int = 3) -> SharpnessConfig:
    """Degree-``d`` hypersurfaces in ``P^n`` meeting the line ``x_2=...=x_n=0``
    only at ``P = (1, 0, ..., 0)``, with the map ``f = (z, 1, 0, ..., 0)``.

    The construction is verified before it is returned: ``P`` lies on every
    ``D_i`` and they meet transversally there, ``D_1..D_{n-1}`` restrict to
    ``c*v^d`` on the line, and ``D_n`` has a simple root at ``P`` on it.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive integers")
    polys = _family_polys(n, d, p)
    Ds = tuple(Hypersurface(q, d, f"D{i + 1}") for i, q in enumerate(polys))
    coords = [EntireSeries.monomial(1), EntireSeries.constant(1)] + \
             [EntireSeries(())] * (n - 1)
    f = ProjectiveMap(tuple(coords))
    P = ProjectivePoint((1,) + (0,) * n)
    L = ProjectiveLine.coordinate_line(n)

    if not transversality_check(Ds, None, P):
        raise GeometryError(f"generated family (n={n}, d={d}) is not transverse at P")
    on_line = ProjectivePoint((1, 0))  # P in the (u : v) coordinates of L
    for D in Ds[:-1]:
        prof = line_intersection_profile(restrict_to_line(D, L))
        if prof.roots != ((on_line, d),) or prof.residual_degree:
            raise GeometryError(f"{D.name} meets L outside P")
    last = line_intersection_profile(restrict_to_line(Ds[-1], L))
    if last.multiplicity(on_line) != 1:
        raise GeometryError(f"{Ds[-1].name} does not meet L simply at P")
    for D in Ds:
        pullback(D, f)  # rejects image-contained cases
    return SharpnessConfig(n, d, p, Ds, f, P, L)
