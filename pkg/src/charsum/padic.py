"""p-adic helpers: valuations, truncated logarithms, discrete logs, Gauss sums."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePower:
    p: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p) or self.m < 1:
            raise DomainError(f"not a prime power: p={self.p}, m={self.m}")

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def phi(self) -> int:
        return self.p ** (self.m - 1) * (self.p - 1)


def vp(n: int, p: int) -> float | int:
    """p-adic valuation of an integer; math.inf for zero."""
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ilog(n: int, p: int) -> int:
    """floor(log_p n) for n >= 1."""
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def log_terms(v: int, p: int, N: int) -> list[int]:
    """Indices n kept by the truncation rule n*v - ord_p(n) < N.

    n*v - floor(log_p n) is non-decreasing in n, so the loop stops once it reaches N.
    """
    out = []
    n = 1
    while n * v - ilog(n, p) < N:
        if n * v - vp(n, p) < N:
            out.append(n)
        n += 1
    return out


def padic_log(x: int, p: int, N: int) -> int:
    """log(x) mod p^N for x = 1 mod p (x = 1 mod 4 when p = 2)."""
    unit = 4 if p == 2 else p
    if (x - 1) % unit:
        raise DomainError(f"{x} is not 1 mod {unit}")
    mod = p ** N
    z = x - 1
    v = vp(z, p)
    if v >= N:
        return 0
    u = z // p ** v
    total = 0
    for n in log_terms(v, p, N):
        e = vp(n, p)
        n1 = n // p ** e
        term = p ** (n * v - e) * pow(u, n, mod) * pow(n1, -1, mod)
        total += term if n % 2 else -term
    return total % mod


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest primitive root mod p^2 (hence mod every p^m), p odd."""
    if p == 2:
        raise DomainError("no primitive root mod 4")
    fac = _factor(p - 1)
    q2 = p * p
    for w in range(2, q2):
        if w % p == 0:
            continue
        if all(pow(w, (p - 1) // ell, p) != 1 for ell in fac):
            if pow(w, p - 1, q2) != 1:
                return w
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class UnitLogData:
    """Data linking the cyclic generator to the p-adic log.

    For odd p, omega^(p-1) = 1 + r p and R = log(omega^(p-1))/p mod p^(m-1).
    For p = 2, omega = 5, r = 1 and R = log(5)/4 mod 2^(m-2).
    """
    p: int
    m: int
    omega: int
    r: int
    R: int
    Rbar: int

    @property
    def R2(self) -> int:
        return self.R


@lru_cache(maxsize=None)
def unit_log_data(p: int, m: int) -> UnitLogData:
    if p == 2:
        if m < 3:
            raise DomainError("p = 2 needs m >= 3")
        mod = 2 ** (m - 2)
        R = (padic_log(5, 2, m) // 4) % mod
        return UnitLogData(2, m, 5, 1, R, pow(R, -1, mod) if mod > 1 else 0)
    if m < 2:
        raise DomainError("odd p needs m >= 2")
    w = primitive_root(p)
    wp = pow(w, p - 1)
    r = (wp - 1) // p
    mod = p ** (m - 1)
    R = (padic_log(wp % p ** m, p, m) // p) % mod
    return UnitLogData(p, m, w, r, R, pow(R, -1, mod))


def _bsgs(g: int, h: int, order: int, mod: int) -> int:
    """Solve g^k = h in a cyclic group of the given order."""
    s = math.isqrt(order) + 1
    table = {}
    cur = 1
    for j in range(s):
        table.setdefault(cur, j)
        cur = cur * g % mod
    step = pow(g, -s, mod)
    cur = h % mod
    for i in range(s + 1):
        if cur in table:
            return (i * s + table[cur]) % order
        cur = cur * step % mod
    raise DomainError(f"{h} is not a power of {g} mod {mod}")


def _pohlig_hellman(g: int, h: int, order: int, mod: int) -> int:
    residues, moduli = [], []
    for ell, e in _factor(order).items():
        pe = ell ** e
        g0 = pow(g, order // pe, mod)
        h0 = pow(h, order // pe, mod)
        gamma = pow(g0, ell ** (e - 1), mod)
        x = 0
        for k in range(e):
            hk = pow(pow(g0, -x, mod) * h0 % mod, ell ** (e - 1 - k), mod)
            d = _bsgs(gamma, hk, ell, mod)
            x += d * ell ** k
        residues.append(x)
        moduli.append(pe)
    k, M = 0, 1
    for r_, m_ in zip(residues, moduli):
        # combine by CRT
        t = ((r_ - k) * pow(M, -1, m_)) % m_
        k += M * t
        M *= m_
    return k % order


def _brute_dlog(g: int, h: int, order: int, mod: int) -> int:
    cur = 1
    for k in range(order):
        if cur == h % mod:
            return k
        cur = cur * g % mod
    raise DomainError(f"{h} is not a power of {g} mod {mod}")


def discrete_decompose(x: int, p: int, m: int):
    """Exponents of a unit x mod p^m.

    Odd p: k with omega^k = x, 0 <= k < phi.
    p = 2: (a, k) with x = (-1)^a 5^k mod 2^m, 0 <= k < 2^(m-2) (k = 0 when m < 3).
    """
    q = p ** m
    if x % p == 0:
        raise DomainError(f"{x} is not a unit mod {q}")
    x %= q
    if p == 2:
        a = 0 if x % 4 == 1 else 1
        if m < 3:
            return a, 0
        y = x if a == 0 else (-x) % q
        order = 2 ** (m - 2)
        solve = _brute_dlog if q <= 10 ** 4 else _pohlig_hellman
        return a, solve(5, y, order, q)
    order = p ** (m - 1) * (p - 1)
    w = primitive_root(p)
    solve = _brute_dlog if q <= 10 ** 4 else _pohlig_hellman
    return solve(w, x, order, q)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def gauss_value(p: int) -> complex:
    """sum_x e_p(x^2): sqrt(p) for p = 1 mod 4, i sqrt(p) for p = 3 mod 4."""
    s = math.sqrt(p)
    return complex(s, 0) if p % 4 == 1 else complex(0, s)


def gauss_legendre(a: int, p: int) -> tuple[int, complex]:
    return legendre(a, p), gauss_value(p)


def gauss_direct(p: int) -> complex:
    return sum(cmath.exp(2j * math.pi * (x * x % p) / p) for x in range(p))
