import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from charsum.charmod import all_chars, make_char, principal
from charsum.critical import (
    F_from_C, critical_set, default_precision, expansion, local_data, series_length, t_and_C,
)
from charsum.errors import ConstantPhase, DomainError
from charsum.polyrat import RatFunc, eval_mod

X = RatFunc.x()
ONE = RatFunc.const(1)


def test_t_and_C_examples():
    assert t_and_C(X ** 2, ONE, 1, 5) == (0, 2 * X)
    assert t_and_C(X ** 3 + 3 * X, ONE, 1, 3) == (1, X ** 2 + 1)
    assert t_and_C(X, X, 5, 5) == (0, (X + 5) / X)
    with pytest.raises(ConstantPhase):
        t_and_C(RatFunc.const(3), ONE, 1, 5)


def test_critical_set_examples():
    assert critical_set(2 * X, 5) == [(0, 1)]
    assert critical_set(X ** 2 + 1, 3) == []
    assert critical_set(X ** 2, 5) == [(0, 2)]
    # (X + 5)/X reduces to 1 mod 5 once X cancels
    assert critical_set((X + 5) / X, 5) == []


def test_local_data_examples():
    ld = local_data(X ** 2, ONE, principal(5, 4), 0)
    assert (ld.sigma, ld.tau) == (2, 0)
    assert ld.G.coeffs[:3] == (0, 0, 1)
    assert ld.deg_G == 2 and ld.H.coeffs[:2] == (0, 2) and ld.deg_H == 1
    ld = local_data(X ** 3, ONE, principal(3, 4), 0)
    assert (ld.sigma, ld.tau) == (3, 1)
    assert ld.G.coeffs[:4] == (0, 0, 0, 1)
    assert ld.H.coeffs[:3] == (0, 0, 1)
    with pytest.raises(DomainError):
        local_data(X ** 2, ONE, principal(5, 4), 1)


def test_F_is_the_local_phase():
    # F_alpha(Y) = c_chi log(g(a + pY)/g(a)) + f(a + pY) - f(a), so
    # chi(g(a + p y)) e(f(a + p y)) = chi(g(a)) e(f(a)) e_{p^m}(F(y))
    f, g = X ** 3 + 2 * X, X ** 2 + 1
    for ch in all_chars(5, 3)[::9]:
        for a in (0, 1, 4):
            P = 3
            F = expansion(f, g, ch.c_chi, a, 5, P, 5).coeffs
            base = ch.value(eval_mod(g, a, 5, 3))
            fa = eval_mod(f, a, 5, 3)
            for y in range(25):
                x = a + 5 * y
                lhs = ch.value(eval_mod(g, x, 5, 3)) * _e(eval_mod(f, x, 5, 3), 125)
                Fy = sum(c * y ** j for j, c in enumerate(F)) % 125
                assert abs(lhs - base * _e(fa + Fy, 125)) < 1e-9


def _e(k, q):
    return cmath.exp(2j * math.pi * k / q)


@pytest.mark.parametrize("f,g,p", [
    (X ** 2, ONE, 5), (X ** 3, ONE, 3), (X ** 3 + 3 * X, ONE, 3),
    (X ** 2 + X, X + 1, 7), (1 / X + X ** 2, X, 5),
])
def test_F_from_C_matches_direct_expansion(f, g, p):
    # integrate the Taylor series of C versus expand f and log g directly
    for ch in all_chars(p, 3)[:: max(1, p - 1)]:
        c = ch.c_chi
        try:
            t, C = t_and_C(f, g, c, p)
        except ConstantPhase:
            continue
        for alpha, nu in critical_set(C, p):
            P = t + 2 * nu + 4
            T = series_length(p, P)
            want = expansion(f, g, c, alpha, p, P, p).coeffs
            got = F_from_C(C, t, alpha, p, P, T)
            assert tuple(got[:T]) == tuple(want[:T])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=5), st.sampled_from([3, 5, 7]), st.integers(1, 200))
def test_sigma_stable_under_doubled_precision(coeffs, p, c):
    f = RatFunc(coeffs)
    g = X + 1
    ch = all_chars(p, 4)[c % (p ** 3 * (p - 1))]
    try:
        t, C = t_and_C(f, g, ch.c_chi, p)
    except ConstantPhase:
        return
    for alpha, nu in critical_set(C, p):
        if alpha == p - 1:
            continue
        P = default_precision(p, 4, t, nu)
        a = local_data(f, g, ch, alpha, t, C, prec=P)
        b = local_data(f, g, ch, alpha, t, C, prec=2 * P)
        assert (a.sigma, a.tau, a.deg_G, a.deg_H) == (b.sigma, b.tau, b.deg_G, b.deg_H)


def test_p2_two_branches():
    ld = local_data(X ** 2, ONE, principal(2, 6), 0)
    assert [br.base for br in ld.branches] == [0, 2]
    assert all(br.step == 4 for br in ld.branches)
    with pytest.raises(DomainError):
        local_data(X ** 2, ONE, make_char(2, 2, 1, 1), 0)
