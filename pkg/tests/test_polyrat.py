import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from charsum.errors import DomainError
from charsum.polyrat import (
    POLE, ParseError, RatFunc, distinct_zeros, eval_mod, fp_radical_degree, fp_root_mult,
    fp_sqfree, measures, padd, pgcd, pmul, ppow, rth_power_test, series_log1p, taylor_series, trim,
)

X = RatFunc.x()

small_poly = st.lists(st.integers(-4, 4), min_size=1, max_size=5).map(trim)
nonzero_poly = small_poly.filter(lambda a: len(a) > 0)


ratfuncs = st.builds(RatFunc, nonzero_poly, nonzero_poly)


def test_normalize_examples():
    assert RatFunc((-1, 0, 1), (-1, 1)) == RatFunc((1, 1))
    r = RatFunc((0,), (5,))
    assert (r.num, r.den) == ((), (1,))
    r = RatFunc((0, 2, 2), (0, 2))
    assert (r.num, r.den) == ((1, 1), (1,))
    with pytest.raises((DomainError, ZeroDivisionError)):
        RatFunc((1,), (0,))


def test_derivative_examples():
    assert (X ** 3).derivative() == 3 * X ** 2
    assert (1 / X).derivative() == -1 / X ** 2
    assert (X / (X + 1)).derivative() == 1 / (X + 1) ** 2


def test_measures_examples():
    assert measures(1 / X, 7)[0] == 1
    assert (5 * X ** 3 + X).deg_p(5) == 1
    assert (10 * X ** 2 + 25 * X).ord_p(5) == 1
    assert RatFunc.const(1).scale_p(5, -1).deg_p(5) is None


def test_distinct_zeros_examples():
    assert distinct_zeros((0, -1, 0, 1)) == 3
    assert distinct_zeros(ppow((1, 0, 1), 2)) == 2
    assert distinct_zeros((0, 0, 1)) == 1
    with pytest.raises(DomainError):
        distinct_zeros(())


def test_eval_mod_examples():
    assert eval_mod(X ** 2, 3, 5, 2) == 9
    assert eval_mod(1 / X, 5, 5, 1) is POLE
    assert eval_mod(X / (X + 1), 1, 3, 2) == 5
    with pytest.raises(DomainError):
        eval_mod(RatFunc.const(Fraction(1, 5)), 1, 5, 2)


def test_taylor_examples():
    assert taylor_series(2 * X, 0, 5, 2, 3).coeffs[:2] == (0, 2)
    assert taylor_series(1 / (1 - X), 0, 3, 2, 4).coeffs == (1, 1, 1, 1)
    assert taylor_series(X ** 2, 1, 7, 2, 3).coeffs == (1, 2, 1)
    with pytest.raises(DomainError):
        taylor_series(1 / X, 0, 5, 2, 3)


def test_log1p_examples():
    assert series_log1p([0, 0, 0], 5, 3).coeffs == (0, 0, 0)
    assert series_log1p([0, 5, 0], 5, 2).coeffs == (0, 5, 0)
    assert series_log1p([0, 5, 0], 5, 3).coeffs == (0, 5, 50)
    with pytest.raises(DomainError):
        series_log1p([0, 1], 5, 3)
    with pytest.raises(DomainError):
        series_log1p([0, 2], 2, 3)


def test_rth_power_examples():
    b, hn, hd = rth_power_test(X ** 2, 2, 7)
    assert (hn, hd) == ((0, 1), (1,))
    b, hn, hd = rth_power_test(X ** 3 / (X - 1) ** 3, 3, 7)
    assert (hn, hd) == ((0, 1), (6, 1))
    assert rth_power_test(X ** 2 * (X - 1), 2, 7) is None


def test_parse_forms():
    assert RatFunc.parse("x^3 - 2x + 1") == X ** 3 - 2 * X + 1
    assert RatFunc.parse("(x+1)(x-1)/x^2") == (X + 1) * (X - 1) / X ** 2
    assert RatFunc.parse("x^-2 + 3") == X ** (-2) + 3
    assert RatFunc.parse("2/3*x") == Fraction(2, 3) * X
    f = X ** 2 / (X + 7)
    assert RatFunc.parse(f.serialize()) == f
    assert RatFunc.deserialize(f.serialize()) == f


@pytest.mark.parametrize("text,pos", [("x^^2", 2), ("(x+1", 4), ("x + $", 4), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as ei:
        RatFunc.parse(text)
    assert ei.value.pos == pos
    assert ei.value.annotated().splitlines()[-1].index("^") == pos + 2


@given(ratfuncs, nonzero_poly)
def test_normalize_idempotent_and_inflation_invariant(f, h):
    assert RatFunc(f.num, f.den) == f
    assert RatFunc(pmul(f.num, h), pmul(f.den, h)) == f


@settings(max_examples=60)
@given(nonzero_poly, nonzero_poly)
def test_distinct_zeros_multiplicative(h, k):
    assume(len(h) > 1 and len(k) > 1 and len(pgcd(h, k)) == 1)
    assert distinct_zeros(pmul(h, k)) == distinct_zeros(h) + distinct_zeros(k)
    assert distinct_zeros(ppow(h, 3)) == distinct_zeros(h)


def test_derivative_degree_formula():
    # deg q' = max(deg q_+ + Z - 1, deg q_- + Z) with Z the distinct zeros of q_-
    rng = random.Random(7)
    checked = 0
    while checked < 300:
        num = trim([rng.randint(-3, 3) for _ in range(rng.randint(1, 5))])
        den = trim([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        if not num or not den:
            continue
        q = RatFunc(num, den)
        if q.is_constant():
            continue
        Z = distinct_zeros(q.den) if len(q.den) > 1 else 0
        dq = q.derivative()
        want = max(len(q.num) - 1 + Z - 1, len(q.den) - 1 + Z)
        assert dq.degree() == want
        assert len(dq.den) - 1 == len(q.den) - 1 + Z
        checked += 1


@settings(max_examples=60)
@given(ratfuncs, st.sampled_from([3, 5, 7]), st.integers(0, 6), st.integers(0, 40))
def test_taylor_reconstruction(f, p, alpha, y):
    assume(f.ord_p(p) >= 0)
    assume(eval_mod(f, alpha, p, 1) is not POLE)
    N = 4
    T = N + 2
    cs = taylor_series(f, alpha, p, N, T, scale=p).coeffs
    q = p ** N
    # terms j >= T carry p^j and vanish mod p^N
    assert sum(c * y ** j for j, c in enumerate(cs)) % q == eval_mod(f, alpha + p * y, p, N)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 10 ** 6), min_size=2, max_size=5), st.sampled_from([3, 5, 7]))
def test_log1p_additive(coeffs, p):
    # log((1+u)(1+v)) = log(1+u) + log(1+v) as series
    N, T = 4, 5
    u = [0] + [p * c for c in coeffs[:T - 1]]
    u += [0] * (T - len(u))
    v = [0] + [p * c * 3 for c in coeffs[:T - 1]]
    v += [0] * (T - len(v))
    E = 3
    big = p ** (N + E)
    uv = [0] * T
    for i in range(T):
        for j in range(T - i):
            uv[i + j] += u[i] * v[j]
    w = [(a + b + c) % big for a, b, c in zip(u, v, uv)]
    lhs = series_log1p(w, p, N).coeffs
    a, b = series_log1p(u, p, N).coeffs, series_log1p(v, p, N).coeffs
    assert list(lhs) == [(x + y) % p ** N for x, y in zip(a, b)]


def test_fp_sqfree_and_roots():
    # (X - 1)^2 (X - 2)^3 over F_7
    a = pmul(ppow((-1, 1), 2), ppow((-2, 1), 3))
    parts = fp_sqfree([c % 7 for c in a], 7)
    assert set(parts) == {2, 3}
    assert fp_radical_degree([c % 7 for c in a], 7) == 2
    assert fp_root_mult([c % 7 for c in a], 1, 7) == 2
    assert fp_root_mult([c % 7 for c in a], 2, 7) == 3
    # X^p - X has p simple roots; X^p is a p-th power
    xp = [0] * 5 + [1]
    assert set(fp_sqfree(xp, 5)) == {5}
    assert fp_radical_degree(padd(xp, (0, -1)), 5) == 5


def test_laurent_terms_and_degree():
    f = X ** 3 + 2 * X ** (-2)
    assert f.is_laurent()
    assert f.laurent_terms() == {3: 1, -2: 2}
    assert f.degree() == 5
    assert not (1 / (X + 1)).is_laurent()


def test_arithmetic_round_trip():
    f = (X ** 2 + 1) / (X - 3)
    g = X / (X + 2)
    assert (f * g) / g == f
    assert (f + g) - g == f
    assert f ** -2 == 1 / (f * f)
    with pytest.raises(ZeroDivisionError):
        f / RatFunc.const(0)
