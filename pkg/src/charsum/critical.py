"""Critical points of a mixed sum and the local expansion around each one."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .charmod import Character
from .errors import ConstantPhase, DomainError
from .padic import ilog, vp
from .polyrat import (
    PSeries, RatFunc, deg, fp_root_mult, log1p_precision, peval, peval_mod, pmul,
    series_log1p, taylor_series, trim,
)


def phase_derivative(f: RatFunc, g: RatFunc, c_chi: int) -> RatFunc:
    """f' + c_chi g'/g as an exact rational function."""
    out = f.derivative()
    if not g.is_constant():
        out = out + c_chi * (g.derivative() / g)
    return out


def t_and_C(f: RatFunc, g: RatFunc, c_chi: int, p: int):
    """t = ord_p(f' + c_chi g'/g) and C = p^-t (f' + c_chi g'/g)."""
    phi = phase_derivative(f, g, c_chi)
    if phi.is_zero():
        raise ConstantPhase("f' + c_chi g'/g vanishes identically")
    t = phi.ord_p(p)
    return t, phi.scale_p(p, -t)


def critical_set(C: RatFunc, p: int) -> list[tuple[int, int]]:
    """Zeros alpha of C mod p with multiplicities nu.

    C is reduced mod p and common factors of numerator and denominator are
    cancelled before the zeros are read off.
    """
    return list(_critical_set(C, p))


@lru_cache(maxsize=4096)
def _critical_set(C: RatFunc, p: int) -> tuple:
    n, d = C.reduce_mod_p(p)
    out = []
    for a in range(p):
        if n and peval_mod(n, a, p) == 0:
            out.append((a, fp_root_mult(n, a, p)))
    return tuple(out)


def exclusion_poly(f: RatFunc, g: RatFunc):
    """f_- g_+ g_-: the sum runs over x with this polynomial a unit mod p."""
    return pmul(pmul(f.den, g.num), g.den)


def domain_residues(f: RatFunc, g: RatFunc, p: int, extra=(1,)) -> list[int]:
    w = pmul(exclusion_poly(f, g), extra)
    return [s for s in range(p) if peval_mod(w, s, p)]


def _min_ord(coeffs, p, cap):
    vals = [vp(c, p) for c in coeffs if c % p ** cap]
    return min(vals) if vals else cap


def _deg_mod_p(coeffs, p) -> int:
    nz = [j for j, c in enumerate(coeffs) if c % p]
    return nz[-1] if nz else 0


@dataclass
class Branch:
    """Expansion of the sum over x = base + step*Y.

    F is F_alpha(Y) for odd p (step p) and F_alpha(2Y) for p = 2 (step 4),
    known mod p^prec. sigma is capped at prec when F vanishes to that precision.
    """
    base: int
    step: int
    prec: int
    F: PSeries
    sigma: int
    G: PSeries
    tau: int
    H: PSeries

    @property
    def deg_G(self) -> int:
        return _deg_mod_p(self.G.coeffs, self.G.p)

    @property
    def deg_H(self) -> int:
        return _deg_mod_p(self.H.coeffs, self.H.p)


@dataclass
class LocalData:
    alpha: int
    nu: int
    t: int
    branches: list[Branch] = field(default_factory=list)

    def __getattr__(self, name):
        # sigma, G, tau, H, F of the first branch
        if name in ("sigma", "G", "tau", "H", "F", "deg_G", "deg_H", "prec"):
            return getattr(self.branches[0], name)
        raise AttributeError(name)


def series_length(p: int, P: int) -> int:
    """T such that every coefficient j >= T has order >= j - log_p j >= P."""
    T = P + 1
    while T - ilog(T, p) < P:
        T += 1
    j = T
    while j < T + P + 8:
        if j - ilog(j, p) < P:
            T = j + 1
        j += 1
    return T


def expansion(f: RatFunc, g: RatFunc, c_chi: int, base: int, p: int, P: int, step: int) -> PSeries:
    """c_chi log(g(base + step Y)/g(base)) + f(base + step Y) - f(base) mod p^P."""
    T = series_length(p, P)
    mod = p ** P
    fs = taylor_series(f, base, p, P, T, scale=step).coeffs
    out = [0] + [c % mod for c in fs[1:]]
    if not g.is_constant():
        E = log1p_precision(p, P) + 1
        big = p ** (P + E)
        gs = taylor_series(g, base, p, P + E, T, scale=step).coeffs
        inv = pow(gs[0], -1, big)
        u = [0] + [c * inv % big for c in gs[1:]]
        L = series_log1p(u, p, P).coeffs
        out = [(a + c_chi * b) % mod for a, b in zip(out, L)]
    return PSeries(p, P, tuple(out))


def _branch(F: PSeries, base: int, step: int) -> Branch:
    p, P = F.p, F.N
    sigma = _min_ord(F.coeffs, p, P)
    rest = P - sigma
    if rest <= 0:
        G = PSeries(p, 1, (0,) * len(F.coeffs))
        return Branch(base, step, P, F, sigma, G, 0, G)
    G = PSeries(p, rest, tuple((c // p ** sigma) % p ** rest for c in F.coeffs))
    Gd = [j * G.coeffs[j] for j in range(1, len(G.coeffs))]
    tau = _min_ord(Gd, p, rest)
    hp = max(rest - tau, 1)
    H = PSeries(p, hp, tuple((c // p ** tau) % p ** hp for c in Gd))
    return Branch(base, step, P, F, sigma, G, tau, H)


def default_precision(p: int, m: int, t: int, nu: int) -> int:
    """Enough digits that sigma, tau and deg_p H are exact, and at least m."""
    return max(m, t + 2 * nu + 6 + 2 * ilog(4 * nu + 8, p))


def local_data(f: RatFunc, g: RatFunc, chi: Character, alpha: int, t: int | None = None,
               C: RatFunc | None = None, prec: int | None = None) -> LocalData:
    """sigma, G, tau, H at a critical point alpha.

    For p = 2 two branches are returned, for x = alpha mod 4 and x = alpha + 2 mod 4.
    """
    p, m = chi.p, chi.m
    if not chi.has_log_form:
        raise DomainError("local data needs chi in logarithmic form")
    c = chi.c_chi
    if t is None or C is None:
        t, C = t_and_C(f, g, c, p)
    crit = dict(critical_set(C, p))
    if alpha % p not in crit:
        raise DomainError(f"{alpha} is not a critical point mod {p}")
    nu = crit[alpha % p]
    P = prec if prec is not None else default_precision(p, m, t, nu)
    data = LocalData(alpha % p, nu, t)
    bases = [alpha % p] if p != 2 else [alpha % 2, alpha % 2 + 2]
    step = p if p != 2 else 4
    for b in bases:
        if peval(exclusion_poly(f, g), b) % p == 0:
            raise DomainError(f"{b} lies outside the summation domain")
        data.branches.append(_branch(expansion(f, g, c, b, p, P, step), b, step))
    return data


def C_taylor(C: RatFunc, alpha: int, p: int, N: int, T: int) -> PSeries:
    """Taylor coefficients of C at alpha, unscaled, mod p^N."""
    return taylor_series(C, alpha, p, N, T)


def F_from_C(C: RatFunc, t: int, alpha: int, p: int, P: int, T: int) -> tuple:
    """F_alpha(Y) = sum_j p^(t+1) c_j p^j Y^(j+1)/(j+1), mod p^P (odd p)."""
    extra = ilog(T + 1, p) + 1
    cs = taylor_series(C, alpha, p, P + extra, T).coeffs
    mod = p ** P
    out = [0] * T
    for j in range(T - 1):
        n = j + 1
        e = vp(n, p)
        num = p ** (t + 1 + j) * cs[j]
        assert num % p ** e == 0
        out[n] = (num // p ** e) * pow(n // p ** e, -1, mod) % mod
    return tuple(out)
