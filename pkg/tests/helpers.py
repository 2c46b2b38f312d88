"""Random instance generators and brute-force oracles shared by the tests.

The oracles here deliberately avoid the package's Newton-polygon and
tropical-max code paths: they work from explicit root lists, direct
coefficient scans, or sympy.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from padic_nevanlinna import (EntireSeries, Hypersurface, Poly, PrimeConfig, ProjectiveMap,
                              log_abs)


def rand_fraction(rng: random.Random, lo: int = -20, hi: int = 20, nonzero: bool = False) -> Fraction:
    while True:
        num = rng.randint(lo, hi)
        den = rng.choice([d for d in range(lo, hi + 1) if d != 0])
        x = Fraction(num, den)
        if x != 0 or not nonzero:
            return x


def rand_poly_coeffs(rng: random.Random, max_deg: int = 4, zero_prob: float = 0.3) -> list[Fraction]:
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(0) if rng.random() < zero_prob else rand_fraction(rng) for _ in range(deg)]
    coeffs.append(rand_fraction(rng, nonzero=True))
    return coeffs


def rand_map(rng: random.Random, N: int, max_deg: int = 4) -> ProjectiveMap:
    while True:
        coords = [rand_poly_coeffs(rng, max_deg) if rng.random() > 0.15 else []
                  for _ in range(N + 1)]
        try:
            return ProjectiveMap.from_polys(*coords)
        except ValueError:
            continue


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def rand_form(rng: random.Random, nvars: int, d: int, density: float = 0.6) -> Poly:
    while True:
        terms = {e: rand_fraction(rng, nonzero=True) for e in monomials(nvars, d)
                 if rng.random() < density}
        q = Poly.from_dict(nvars, terms)
        if not q.is_zero():
            return q


def rand_hypersurface(rng: random.Random, nvars: int, max_deg: int = 4, name: str = "D") -> Hypersurface:
    d = rng.randint(1, max_deg)
    return Hypersurface(rand_form(rng, nvars, d), d, name)


def root_product(roots) -> EntireSeries:
    """Coefficients of prod (z - c) for the given roots."""
    coeffs = [Fraction(1)]
    for c in roots:
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i + 1] += a
            nxt[i] -= c * a
        coeffs = nxt
    return EntireSeries.polynomial(coeffs)


def brute_zero_count(roots, s, cfg: PrimeConfig) -> int:
    """#{j : log_p|c_j| <= s}, with the root 0 always counted."""
    return sum(1 for c in roots if log_abs(c, cfg) <= Fraction(s))


def brute_counting(roots, s, cfg: PrimeConfig) -> Fraction:
    """N(s) from its integral definition, integrating the step function n(u) exactly.

    With ``u = log_p t``, ``N(s) = int_{-inf}^{s} (n(u) - n(-inf)) du + n(-inf) * s``
    where ``n(-inf)`` is the number of roots at the origin.
    """
    s = Fraction(s)
    at_zero = sum(1 for c in roots if c == 0)
    radii = sorted(log_abs(c, cfg).value for c in roots if c != 0)
    total = Fraction(at_zero) * s
    # n(u) - n(-inf) jumps by one at each radius; integrate piece by piece up to s
    for k, rho in enumerate(radii):
        if rho >= s:
            break
        nxt = radii[k + 1] if k + 1 < len(radii) else s
        total += (k + 1) * (min(nxt, s) - rho)
    return total


def brute_gauss(coeffs, s, cfg: PrimeConfig) -> Fraction:
    """max_i (log|a_i| + i*s) by a direct scan."""
    return max(log_abs(a, cfg).value + i * Fraction(s) for i, a in enumerate(coeffs) if a != 0)


def sympy_rank(rows) -> int:
    import sympy
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                         for row in rows]).rank()
