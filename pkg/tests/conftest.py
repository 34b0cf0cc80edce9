import cmath
import math
import sys

import pytest


def _primes(n):
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return sorted(set(out))


def oracle_char(p, m, c, kappa=0):
    """chi as a dict unit -> complex, built by walking powers of generators.

    Independent of the library's discrete logs: odd p uses the smallest
    primitive root mod p^2 found by brute force, p = 2 uses -1 and 5.
    """
    q = p ** m
    table = {}
    if p == 2:
        half = 2 ** (m - 2) if m >= 3 else 1
        cc = c if m >= 3 else 0
        x = 1
        for k in range(half):
            v = cmath.exp(2j * math.pi * cc * k / half)
            table[x % q] = v
            table[(-x) % q] = v * (-1) ** kappa
            x = x * 5 % q
        return table
    phi = q // p * (p - 1)
    w = next(w for w in range(2, p * p) if w % p and
             all(pow(w, (p * p - p) // r, p * p) != 1 for r in _primes(p * p - p)))
    x = 1
    for k in range(phi):
        table[x] = cmath.exp(2j * math.pi * c * k / phi)
        x = x * w % q
    return table


def _ev(coeffs, x, q):
    return sum(c * pow(x, i, q) for i, c in enumerate(coeffs)) % q


def oracle_sum(fn, fd, gn, gd, p, m, c, kappa=0, alpha=None):
    """sum chi(g(x)) e_q(f(x)) over x mod p^m with p not dividing fd(x) gn(x) gd(x).

    f = fn/fd and g = gn/gd are coefficient tuples, lowest degree first.
    """
    q = p ** m
    chi = oracle_char(p, m, c, kappa)
    total = 0j
    for x in range(q):
        if alpha is not None and x % p != alpha:
            continue
        a, b, u, v = _ev(fn, x, q), _ev(fd, x, q), _ev(gn, x, q), _ev(gd, x, q)
        if b % p == 0 or u % p == 0 or v % p == 0:
            continue
        fv = a * pow(b, -1, q) % q
        gv = u * pow(v, -1, q) % q
        total += chi[gv] * cmath.exp(2j * math.pi * fv / q)
    return total


@pytest.fixture
def osum():
    return oracle_sum


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
