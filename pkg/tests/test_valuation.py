from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_nevanlinna import NEG_INF, ExtLog, PrimeConfig, log_abs, valuation


@pytest.mark.parametrize("x, p, expected", [
    (0, 3, NEG_INF),
    (1, 3, ExtLog(0)),
    (12, 2, ExtLog(-2)),             # 12 = 2^2 * 3
    (Fraction(1, 5), 5, ExtLog(1)),  # v_5(1/5) = -1
    (Fraction(-18, 35), 3, ExtLog(-2)),
    (Fraction(-18, 35), 5, ExtLog(1)),
])
def test_log_abs_examples(x, p, expected):
    assert log_abs(x, PrimeConfig(p)) == expected


def test_zero_is_the_only_neg_inf():
    cfg = PrimeConfig(7)
    assert log_abs(0, cfg).is_neg_inf
    assert not log_abs(Fraction(1, 49), cfg).is_neg_inf


@pytest.mark.parametrize("p", [0, 1, 4, 9, 91, -3])
def test_prime_config_rejects_non_primes(p):
    with pytest.raises(ValueError, match="prime"):
        PrimeConfig(p)


def test_prime_config_rejects_floats():
    with pytest.raises(TypeError):
        PrimeConfig(3.0)


def test_extlog_algebra():
    x = ExtLog(Fraction(3, 2))
    assert NEG_INF + x == NEG_INF
    assert x + NEG_INF == NEG_INF
    assert max(NEG_INF, x) == x
    assert max(x, NEG_INF) == x
    assert NEG_INF < ExtLog(-10**9)
    assert not NEG_INF < NEG_INF
    assert ExtLog(1) + 2 == ExtLog(3)
    assert str(NEG_INF) == "-inf"


def test_floats_refused():
    with pytest.raises(TypeError):
        log_abs(0.5, PrimeConfig(2))


rationals = st.fractions(max_denominator=10**4).filter(lambda q: abs(q.numerator) < 10**8)
primes = st.sampled_from([2, 3, 5, 7, 11])


@given(rationals, rationals, primes)
def test_log_abs_multiplicative(x, y, p):
    cfg = PrimeConfig(p)
    assert log_abs(x * y, cfg) == log_abs(x, cfg) + log_abs(y, cfg)


@given(rationals, rationals, primes)
def test_ultrametric_law(x, y, p):
    cfg = PrimeConfig(p)
    a, b, s = log_abs(x, cfg), log_abs(y, cfg), log_abs(x + y, cfg)
    assert s <= max(a, b)
    if a != b:
        assert s == max(a, b)


@given(st.integers(min_value=-10**6, max_value=10**6).filter(bool), primes)
def test_valuation_matches_trial_division(n, p):
    v, m = 0, abs(n)
    while m % p == 0:
        m //= p
        v += 1
    assert valuation(n, p) == v
