import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from charsum.errors import DomainError
from charsum.padic import (
    PrimePower, discrete_decompose, gauss_direct, gauss_legendre, gauss_value, ilog, is_prime,
    legendre, log_terms, padic_log, primitive_root, unit_log_data, vp,
)


def small_primes(n):
    return [k for k in range(2, n) if all(k % d for d in range(2, int(k ** 0.5) + 1))]


def test_is_prime_matches_trial_division():
    ps = set(small_primes(3000))
    assert all(is_prime(n) == (n in ps) for n in range(3000))
    assert is_prime(2 ** 31 - 1)
    assert not is_prime(2 ** 31 + 1)


def test_prime_power_checks():
    assert PrimePower(5, 3).q == 125
    assert PrimePower(5, 3).phi == 100
    with pytest.raises(DomainError):
        PrimePower(6, 2)
    with pytest.raises(DomainError):
        PrimePower(5, 0)


def test_vp():
    assert vp(250, 5) == 3
    assert vp(-18, 3) == 2
    assert vp(7, 5) == 0
    assert vp(0, 5) == math.inf


def test_padic_log_examples():
    assert padic_log(1, 5, 3) == 0
    assert padic_log(6, 5, 3) == 55
    assert padic_log(36, 5, 3) == 110 == 2 * padic_log(6, 5, 3) % 125


def test_padic_log_truncated_series_by_hand():
    # log(1 + 5) = 5 - 25/2 + 125/3 - ... ; mod 125 only the first two terms survive
    assert padic_log(6, 5, 3) == (5 - 25 * pow(2, -1, 125)) % 125


def test_padic_log_rejects_non_one_units():
    with pytest.raises(DomainError):
        padic_log(2, 5, 3)
    with pytest.raises(DomainError):
        padic_log(3, 2, 5)


def test_log_terms_rule():
    # n kept iff n v - ord_p(n) < N
    for p in (2, 3, 5):
        for v in (1, 2, 3):
            for N in (1, 4, 9):
                want = [n for n in range(1, 200) if n * v - vp(n, p) < N]
                assert log_terms(v, p, N) == want


@pytest.mark.parametrize("p,N", [(3, 5), (5, 3), (7, 2), (2, 7)])
def test_log_homomorphism_exhaustive(p, N):
    q = p ** N
    step = 4 if p == 2 else p
    ones = list(range(1, q, step))
    for u in ones:
        for v in ones[:: max(1, len(ones) // 30)]:
            assert padic_log(u * v % q, p, N) == (padic_log(u, p, N) + padic_log(v, p, N)) % q


@pytest.mark.parametrize("p,N", [(3, 4), (5, 3), (7, 3)])
def test_log_depends_on_y_mod_p_to_the_n_minus_1(p, N):
    q = p ** N
    for y in range(p ** (N - 1)):
        a = padic_log((1 + p * y) % q, p, N)
        b = padic_log((1 + p * (y + p ** (N - 1))) % q, p, N)
        assert a == b


def test_primitive_root_is_smallest_mod_p_squared():
    for p in small_primes(60)[1:]:
        w = primitive_root(p)
        order = next(k for k in range(1, p * p) if pow(w, k, p * p) == 1)
        assert order == p * (p - 1)
        for v in range(2, w):
            if v % p:
                assert next(k for k in range(1, p * p) if pow(v, k, p * p) == 1) != p * (p - 1)


def test_unit_log_data_examples():
    d = unit_log_data(3, 3)
    assert (d.omega, d.r, d.R % 9, d.Rbar % 9) == (2, 1, 7, 4)
    d = unit_log_data(5, 2)
    assert (d.omega, d.r) == (2, 3)
    assert unit_log_data(2, 6).R2 % 16 == 15


def test_unit_log_data_invariants():
    for p in (3, 5, 7, 11):
        for m in (2, 3, 4):
            d = unit_log_data(p, m)
            mod = p ** (m - 1)
            assert d.r % p
            assert d.R * d.Rbar % mod == 1 % mod
            assert pow(d.omega, p - 1, p * p) == (1 + d.r * p) % (p * p)


def test_unit_log_data_domain():
    with pytest.raises(DomainError):
        unit_log_data(2, 2)
    with pytest.raises(DomainError):
        unit_log_data(5, 1)


def test_discrete_decompose_examples():
    assert discrete_decompose(1, 3, 2) == 0
    assert discrete_decompose(1, 2, 4) == (0, 0)
    assert discrete_decompose(4, 3, 2) == 2
    assert discrete_decompose(3, 2, 4) == (1, 3)
    with pytest.raises(DomainError):
        discrete_decompose(9, 3, 3)


@pytest.mark.parametrize("p,m", [(3, 5), (5, 3), (7, 2), (2, 8), (2, 3)])
def test_decompose_round_trip_exhaustive(p, m):
    q = p ** m
    for x in range(1, q):
        if x % p == 0:
            continue
        if p == 2:
            a, k = discrete_decompose(x, 2, m)
            assert (-1) ** a * pow(5, k, q) % q == x
        else:
            k = discrete_decompose(x, p, m)
            assert pow(primitive_root(p), k, q) == x


def test_decompose_large_modulus_uses_pohlig_hellman():
    p, m = 5, 8
    q = p ** m
    w = primitive_root(p)
    for k in (0, 1, 12345, q // p * 4 - 1):
        assert discrete_decompose(pow(w, k, q), p, m) == k


@given(st.integers(min_value=0, max_value=2 ** 18 - 1), st.integers(0, 1))
def test_decompose_p2_property(k, a):
    m = 20
    q = 2 ** m
    x = (-1) ** a * pow(5, k, q) % q
    assert discrete_decompose(x, 2, m) == (a, k)


def test_gauss_examples():
    assert legendre(2, 5) == -1
    assert gauss_legendre(2, 5) == (-1, gauss_value(5))
    assert abs(gauss_value(5) - math.sqrt(5)) < 1e-12
    assert abs(gauss_value(7) - 1j * math.sqrt(7)) < 1e-12


def test_gauss_value_matches_direct_summation():
    for p in small_primes(98)[1:]:
        direct = sum(cmath.exp(2j * math.pi * x * x / p) for x in range(p))
        assert abs(gauss_value(p) - direct) < 1e-12
        assert abs(gauss_direct(p) - direct) < 1e-12


def test_legendre_euler_criterion():
    for p in (3, 5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)
        assert legendre(0, p) == 0


@settings(max_examples=50)
@given(st.integers(min_value=1, max_value=10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_ilog_is_floor_log(n, p):
    k = ilog(n, p)
    assert p ** k <= n < p ** (k + 1)
