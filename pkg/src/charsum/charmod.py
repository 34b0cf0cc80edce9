"""Multiplicative characters mod p^m and their logarithmic constant c_chi."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .padic import PrimePower, discrete_decompose, padic_log, primitive_root, unit_log_data, vp


def root_order(p: int, m: int) -> int:
    """Order N of the roots of unity used for exact sum values mod p^m."""
    return 2 ** m if p == 2 else p ** m * (p - 1)


@dataclass(frozen=True)
class Character:
    """chi mod p^m.

    Odd p: chi(omega^k) = e(c k / phi), 1 <= c <= phi.
    p = 2, m >= 3: chi(5) = e(c / 2^(m-2)), chi(-1) = (-1)^kappa, 1 <= c <= 2^(m-2).
    p = 2, m <= 2: only kappa matters; c is stored as 1.
    """
    p: int
    m: int
    c: int
    kappa: int = 0

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def N(self) -> int:
        return root_order(self.p, self.m)

    @property
    def cyc(self) -> int:
        """Order of the cyclic factor carrying c."""
        if self.p == 2:
            return 2 ** (self.m - 2) if self.m >= 3 else 1
        return self.p ** (self.m - 1) * (self.p - 1)

    @property
    def has_log_form(self) -> bool:
        """Whether chi(1 + p y) = e(c_chi log(1 + p y)/p^m) is available."""
        return self.p != 2 or self.m >= 3

    @property
    def c_chi(self) -> int:
        """Rbar c mod p^(m-1) as a representative in [1, p^(m-1)] (mod 2^(m-2) for p = 2)."""
        p, m = self.p, self.m
        if p == 2:
            if m < 3:
                return 1
            mod = 2 ** (m - 2)
            d = unit_log_data(2, m)
        else:
            if m < 2:
                return 1
            mod = p ** (m - 1)
            d = unit_log_data(p, m)
        v = d.Rbar * self.c % mod
        return v if v else mod

    @property
    def t_chi(self) -> int:
        p, m = self.p, self.m
        if p == 2:
            if m == 1:
                return 0
            if m == 2:
                return 1 if self.kappa == 0 else 0
            return vp(self.c, 2) if self.c % 2 ** (m - 2) else m - 2
        if m == 1:
            return 0
        return min(vp(self.c, p), m - 1)

    @property
    def order(self) -> int:
        r = self.cyc // math.gcd(self.c, self.cyc)
        if self.p == 2 and self.kappa:
            r = r * 2 // math.gcd(r, 2)
        return r

    @property
    def principal(self) -> bool:
        return self.order == 1

    @property
    def primitive(self) -> bool:
        """Conductor p^m. For m = 1 every nonprincipal character counts as primitive."""
        if self.m == 1:
            return not self.principal
        return self.t_chi == 0

    @property
    def conductor_exp(self) -> int:
        """m - t_chi; for the principal character this is a formula value, see `principal`."""
        return self.m - self.t_chi

    def reduce_to(self, m2: int) -> "Character":
        """The character mod p^m2 inducing this one; needs p^(m - m2) | c."""
        p, m = self.p, self.m
        if m2 == m:
            return self
        if p == 2:
            if m2 < 3:
                if self.m >= 3 and self.c % 2 ** (m - 2):
                    raise DomainError("character does not factor mod 2^m2")
                if m2 == 1 and self.kappa:
                    raise DomainError("character does not factor mod 2")
                return Character(2, m2, 1, self.kappa)
            k = 2 ** (m - m2)
            if self.c % k:
                raise DomainError("character does not factor mod 2^m2")
            return Character(2, m2, self.c // k, self.kappa)
        k = p ** (m - m2)
        if self.c % k:
            raise DomainError("character does not factor mod p^m2")
        return Character(p, m2, self.c // k)

    def __call__(self, x: int):
        return chi_eval(self, x)

    def value(self, x: int) -> complex:
        k = chi_eval(self, x)
        return 0j if k is None else complex(np.exp(2j * np.pi * k / self.N))


def make_char(p: int, m: int, c: int = 1, kappa: int = 0) -> Character:
    PrimePower(p, m)
    if p == 2 and m <= 2:
        if m == 1 and kappa:
            raise DomainError("mod 2 has only the principal character")
        if kappa not in (0, 1):
            raise DomainError("kappa must be 0 or 1")
        return Character(2, m, 1, kappa)
    ch = Character(p, m, c, kappa)
    if not 1 <= c <= ch.cyc:
        raise DomainError(f"c must lie in [1, {ch.cyc}]")
    if kappa not in (0, 1) or (p != 2 and kappa):
        raise DomainError("kappa is only used for p = 2, and must be 0 or 1")
    return ch


def principal(p: int, m: int) -> Character:
    ch = Character(p, m, 1, 0)
    return make_char(p, m, ch.cyc, 0)


def all_chars(p: int, m: int) -> list[Character]:
    if p == 2:
        if m == 1:
            return [Character(2, 1, 1, 0)]
        if m == 2:
            return [Character(2, 2, 1, 0), Character(2, 2, 1, 1)]
        return [Character(2, m, c, k) for k in (0, 1) for c in range(1, 2 ** (m - 2) + 1)]
    phi = p ** (m - 1) * (p - 1)
    return [Character(p, m, c) for c in range(1, phi + 1)]


def chi_eval(chi: Character, x: int):
    """Index j with chi(x) = exp(2 pi i j / N), or None when p | x."""
    p, m = chi.p, chi.m
    if x % p == 0:
        return None
    if chi.principal:
        return 0
    N = chi.N
    if p == 2:
        a, k = discrete_decompose(x, 2, m)
        if m < 3:
            return chi.kappa * a * (N // 2)
        return (chi.kappa * a * (N // 2) + 4 * chi.c * k) % N
    k = discrete_decompose(x, p, m)
    return chi.c * k * p % N


@lru_cache(maxsize=64)
def dlog_table(p: int, m: int) -> np.ndarray:
    """Discrete logs of all residues mod p^m, -1 at non-units.

    Odd p: the exponent k of omega. p = 2: a * 2^(m-2) + k for x = (-1)^a 5^k.
    """
    q = p ** m
    tab = np.full(q, -1, dtype=np.int64)
    if p == 2:
        if m == 1:
            tab[1] = 0
            return tab
        half = 2 ** (m - 2) if m >= 3 else 1
        cur = 1
        for k in range(half):
            tab[cur] = k
            tab[(-cur) % q] = half + k
            cur = cur * 5 % q
        return tab
    w = primitive_root(p)
    cur = 1
    for k in range(q // p * (p - 1)):
        tab[cur] = k
        cur = cur * w % q
    return tab


def chi_index_table(chi: Character) -> np.ndarray:
    """chi_eval over all residues mod q as an array (-1 where p | x)."""
    p, m, N = chi.p, chi.m, chi.N
    L = dlog_table(p, m)
    out = np.full(chi.q, -1, dtype=np.int64)
    units = L >= 0
    if p == 2:
        half = 2 ** (m - 2) if m >= 3 else 1
        a, k = L[units] // half, L[units] % half
        c = chi.c if m >= 3 else 0
        out[units] = (chi.kappa * a * (N // 2) + 4 * c * k) % N
        return out
    out[units] = (chi.c * L[units] * p) % N
    return out


def c_chi_for_root(chi: Character, omega: int) -> int:
    """c_chi recomputed with another primitive root omega (odd p, m >= 2)."""
    p, m = chi.p, chi.m
    phi = p ** (m - 1) * (p - 1)
    # chi(omega^k) = e(c' k / phi) with c' = c * log_{omega0}(omega)
    c2 = chi.c * discrete_decompose(omega, p, m) % phi
    wp = pow(omega, p - 1, p ** m)
    mod = p ** (m - 1)
    R = (padic_log(wp, p, m) // p) % mod
    return pow(R, -1, mod) * c2 % mod
