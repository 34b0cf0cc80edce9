import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from charsum.charmod import (
    Character, all_chars, c_chi_for_root, chi_eval, chi_index_table, make_char, principal,
)
from charsum.errors import DomainError
from charsum.padic import padic_log
from conftest import oracle_char


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def test_make_char_examples():
    ch = make_char(3, 3, 1)
    assert ch.t_chi == 0 and ch.primitive and ch.c_chi == 4
    ch = make_char(3, 3, 18)
    assert ch.t_chi == 2 and ch.order == 1 and ch.principal
    ch = make_char(2, 4, 1, 0)
    assert close(ch.value(5), 1j)


def test_make_char_range_errors():
    with pytest.raises(DomainError):
        make_char(5, 2, 0)
    with pytest.raises(DomainError):
        make_char(5, 2, 21)
    with pytest.raises(DomainError):
        make_char(5, 2, 1, kappa=1)
    with pytest.raises(DomainError):
        make_char(2, 1, 1, kappa=1)


def test_chi_eval_examples():
    chi0 = principal(7, 2)
    assert all(chi_eval(chi0, x) == 0 for x in range(1, 49) if x % 7)
    assert chi_eval(chi0, 14) is None
    ch = make_char(3, 2, 1)
    assert close(ch.value(2), cmath.exp(2j * math.pi / 6))
    assert close(ch.value(4), cmath.exp(2j * math.pi / 3))
    # the log route: e_9(c_chi log 4) with c_chi = 1
    assert ch.c_chi == 1
    assert close(ch.value(4), cmath.exp(2j * math.pi * ch.c_chi * padic_log(4, 3, 2) / 9))


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 4), (5, 2), (7, 2), (2, 1), (2, 2), (2, 3), (2, 6)])
def test_values_match_generator_walk_oracle(p, m):
    for ch in all_chars(p, m):
        table = oracle_char(p, m, ch.c, ch.kappa)
        for x, v in table.items():
            assert close(ch.value(x), v)


@pytest.mark.parametrize("p,m", [(3, 4), (2, 6), (5, 2)])
def test_multiplicative_exhaustive(p, m):
    q = p ** m
    units = [x for x in range(1, q) if x % p]
    for ch in all_chars(p, m)[::3]:
        N = ch.N
        for x in units[::2]:
            for y in units[::5]:
                assert chi_eval(ch, x * y % q) == (chi_eval(ch, x) + chi_eval(ch, y)) % N


@pytest.mark.parametrize("p,m", [(3, 2), (3, 4), (5, 3), (7, 2), (2, 3), (2, 5), (2, 7)])
def test_log_form_on_one_units(p, m):
    # chi(1 + p y) = e_{p^m}(c_chi log(1 + p y)); for p = 2 on 1 + 4y
    q = p ** m
    step = 4 if p == 2 else p
    for ch in all_chars(p, m):
        if ch.p == 2 and ch.kappa:
            continue
        for x in range(1, q, step):
            want = cmath.exp(2j * math.pi * ch.c_chi * padic_log(x, p, m) / q)
            assert close(ch.value(x), want)


def test_c_chi_independent_of_primitive_root():
    for p, m in [(3, 3), (5, 2), (7, 3)]:
        q = p ** m
        phi = q // p * (p - 1)
        roots = [w for w in range(2, q) if w % p and
                 all(pow(w, phi // r, q) != 1 for r in {d for d in range(2, phi + 1) if phi % d == 0 and
                                                         all(d % e for e in range(2, d))})]
        for ch in all_chars(p, m)[::7]:
            for w in roots[:6]:
                assert c_chi_for_root(ch, w) % p ** (m - 1) == ch.c_chi % p ** (m - 1)


@settings(max_examples=80)
@given(st.sampled_from([(3, 3), (5, 3), (7, 2), (2, 5), (2, 7)]), st.integers(1, 10 ** 6))
def test_primitive_iff_t_chi_zero(pm, c):
    p, m = pm
    ch = all_chars(p, m)[c % len(all_chars(p, m))]
    # conductor from the values: smallest k with chi trivial on 1 + p^k
    q = p ** m
    low = 2 if p == 2 else 1
    cond = m
    for k in range(m - 1, low - 1, -1):
        if all(chi_eval(ch, x) == 0 for x in range(1, q, p ** k) if x % p):
            cond = k
        else:
            break
    if ch.principal:
        return
    assert ch.primitive == (cond == m)
    assert ch.conductor_exp == cond


def test_reduce_to_induces_same_values():
    ch = make_char(5, 3, 10)
    low = ch.reduce_to(2)
    assert low.c == 2
    for x in range(1, 125):
        if x % 5:
            assert close(ch.value(x), low.value(x % 25))
    with pytest.raises(DomainError):
        make_char(5, 3, 3).reduce_to(2)


def test_index_table_matches_pointwise():
    for ch in (make_char(7, 2, 5), make_char(2, 5, 3, 1), make_char(3, 4, 6)):
        tab = chi_index_table(ch)
        for x in range(ch.q):
            v = chi_eval(ch, x)
            assert tab[x] == (-1 if v is None else v)


def test_all_chars_counts():
    assert len(all_chars(5, 3)) == 100
    assert len(all_chars(2, 5)) == 16
    assert len({Character(2, 2, 1, k) for k in (0, 1)}) == 2
    assert sum(ch.principal for ch in all_chars(7, 2)) == 1
