import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_fraction, rand_form, sympy_rank
from padic_nevanlinna import (GeometryError, Hypersurface, Poly, ProjectiveLine, ProjectivePoint,
                              VarietySpec, jacobian_rank_at, line_intersection_profile,
                              matrix_rank, pullback, restrict_to_line, sharpness_family,
                              transversality_check)

Q1 = Poly.from_dict(3, {(0, 2, 0): 1, (1, 0, 1): 1})   # x1^2 + x0 x2
Q2 = Poly.from_dict(3, {(1, 1, 0): 1, (0, 0, 2): 1})   # x0 x1 + x2^2
P = ProjectivePoint((1, 0, 0))
L = ProjectiveLine.coordinate_line(2)
u, v = Poly.var(2, 0), Poly.var(2, 1)


def test_point_canonical_form():
    assert ProjectivePoint((0, 3, 6)).coords == (0, 1, 2)
    assert ProjectivePoint((2, 4)) == ProjectivePoint((1, 2))
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0))


def test_line_needs_rank_two():
    with pytest.raises(ValueError):
        ProjectiveLine((1, 0, 0), (2, 0, 0))


def test_jacobian_examples():
    assert jacobian_rank_at([Q1, Q2], P) == 2
    assert jacobian_rank_at([Poly.var(2, 0)], ProjectivePoint((0, 1))) == 1
    x1, x2 = Poly.var(3, 1), Poly.var(3, 2)
    assert jacobian_rank_at([x1 ** 2, x1 * x2], P) == 0
    with pytest.raises(GeometryError):
        jacobian_rank_at([Poly.var(3, 0)], P)


def test_transversality_examples():
    cfg = sharpness_family(2, 2)
    assert transversality_check(cfg.hypersurfaces, None, P)
    x1, x2 = Poly.var(3, 1), Poly.var(3, 2)
    assert not transversality_check([Hypersurface.of(x1 ** 2), Hypersurface.of(x2)], None, P)
    for N in (1, 2, 4):
        pt = ProjectivePoint((1,) + (0,) * N)
        assert transversality_check([Hypersurface.of(Poly.var(N + 1, 1))], VarietySpec(), pt)


def test_transversality_with_variety():
    # X: x3 = 0 in P^3 (dim 2), D: x1 = 0; at (1,0,0,0) rank 2 = 1 + codim 1
    X = VarietySpec((Poly.var(4, 3),), dim=2)
    assert transversality_check([Hypersurface.of(Poly.var(4, 1))], X,
                                ProjectivePoint((1, 0, 0, 0)))
    # D: x3 = 0 coincides with X, not transverse
    assert not transversality_check([Hypersurface.of(Poly.var(4, 3))], X,
                                    ProjectivePoint((1, 0, 0, 0)))


def test_restrict_examples():
    assert restrict_to_line(Q1, L) == v ** 2
    assert restrict_to_line(Q2, L) == u * v
    assert restrict_to_line(Poly.var(3, 2), L).is_zero()


def test_profile_examples():
    one_zero, zero_one = ProjectivePoint((1, 0)), ProjectivePoint((0, 1))
    assert line_intersection_profile(v ** 2).roots == ((one_zero, 2),)
    prof = line_intersection_profile(u * v)
    assert set(prof.roots) == {(one_zero, 1), (zero_one, 1)} and prof.residual_degree == 0
    prof = line_intersection_profile(u ** 2 + v ** 2)
    assert prof.roots == () and prof.residual_degree == 2
    with pytest.raises(GeometryError):
        line_intersection_profile(Poly.zero(2))


def test_profile_repeated_rational_roots():
    # (2u - 3v)^3 (u + v) (u^2 + 2 v^2)
    form = (u * 2 - v * 3) ** 3 * (u + v) * (u ** 2 + v ** 2 * 2)
    prof = line_intersection_profile(form)
    assert prof.multiplicity(ProjectivePoint((1, Fraction(2, 3)))) == 3
    assert prof.multiplicity(ProjectivePoint((1, -1))) == 1
    assert prof.residual_degree == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_matrix_rank_matches_sympy(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    rows = [[rand_fraction(rng) if rng.random() < 0.6 else Fraction(0) for _ in range(c)]
            for _ in range(r)]
    if rng.random() < 0.3 and r > 1:
        rows[-1] = [x * 3 - y for x, y in zip(rows[0], rows[1 % r])]
    assert matrix_rank(rows) == sympy_rank(rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_profile_degree_sum(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 5)
    factors = []
    form = Poly.const(2, 1)
    while sum(factors) < d:
        k = rng.randint(1, d - sum(factors))
        if rng.random() < 0.7 or k == 1:
            lin = u * rand_fraction(rng, -5, 5) + v * rand_fraction(rng, -5, 5)
            if lin.is_zero():
                continue
            form = form * lin
            factors.append(1)
        else:
            form = form * rand_form(rng, 2, k)
            factors.append(k)
    prof = line_intersection_profile(form)
    assert sum(k for _, k in prof.roots) + prof.residual_degree == d
    for pt, k in prof.roots:
        assert form(pt.coords) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_jacobian_rank_invariances(seed):
    rng = random.Random(seed)
    cfg = sharpness_family(rng.randint(2, 4), rng.randint(1, 4), rng.choice([2, 3, 5]))
    polys = [D.poly for D in cfg.hypersurfaces]
    base = jacobian_rank_at(polys, cfg.point)
    c = rand_fraction(rng, nonzero=True)
    scaled = ProjectivePoint(tuple(c * x for x in cfg.point.coords))
    assert jacobian_rank_at(polys, scaled) == base
    # invertible (unitriangular) recombination of the list
    mixed = [polys[0]] + [q + polys[0] * rand_fraction(rng) for q in polys[1:]]
    assert jacobian_rank_at(mixed, cfg.point) == base


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_sharpness_family_pullbacks(n, d):
    cfg = sharpness_family(n, d, 5)
    pulls = [pullback(D, cfg.map) for D in cfg.hypersurfaces]
    assert all(D.degree == d for D in cfg.hypersurfaces)
    if n >= 2:
        assert all(g.is_constant for g in pulls[:-1])
        assert pulls[-1].order == d - 1 and pulls[-1].degree == d - 1
    for D in cfg.hypersurfaces:
        assert D.poly(cfg.point.coords) == 0


def test_sharpness_family_small_cases():
    cfg = sharpness_family(2, 2)
    assert [D.poly for D in cfg.hypersurfaces] == [Q1, Q2]
    with pytest.raises(ValueError):
        sharpness_family(0, 2)
