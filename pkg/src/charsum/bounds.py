"""Classification of mixed sums and the explicit upper bounds for |S|."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .charmod import Character
from .critical import critical_set, domain_residues, t_and_C
from .errors import ConstantPhase
from .evaluate import Classification, Decomposition, decompose
from .padic import vp
from .polyrat import (
    RatFunc, distinct_zeros, fp_radical_degree, fp_trim, padd, pmul, pscale, rth_power_test, trim,
)

C3 = 3.0
C2 = 2 ** (5 / 3)

BOUND_NAMES = (
    "weil", "weil_175", "main_f", "main_g", "clean_f", "clean_g",
    "cor_m2", "cor_maincor1", "local", "local_exact1", "pure", "pure_175",
    "degen_i", "degen_ii", "degenprop_f", "degenprop_g", "degenprop_f_delta", "degenprop_g_delta",
    "degenprop_ii", "laurent",
    "p2_local", "p2_local_exact1", "p2_maincorp21", "p2_uniform",
)


def dimension_params(f: RatFunc, g: RatFunc) -> tuple[int, int]:
    """D = deg f + number of distinct zeros of f_- g_+ g_-, and Delta."""
    w = pmul(pmul(f.den, g.num), g.den)
    Z = distinct_zeros(w) if len(w) > 1 else 0
    D = f.degree() + Z
    if f.is_polynomial() and g.is_polynomial():
        Delta = f.degree() + g.degree()
    else:
        Delta = 2 * f.degree() + 2 * g.degree()
    return D, Delta


def dimension_param_mod_p(f: RatFunc, g: RatFunc, p: int):
    """deg_p f plus distinct zeros of f_- g_+ g_- over F_p-bar; None if undefined."""
    dp = f.deg_p(p)
    w = fp_trim(pmul(pmul(f.den, g.num), g.den), p)
    if dp is None or not w:
        return None
    return dp + (fp_radical_degree(w, p) if len(w) > 1 else 0)


def _pw(p: int, e: float) -> float:
    return float(p) ** e


def classify(f: RatFunc, g: RatFunc, chi: Character):
    """(Classification, Decomposition or None)."""
    p, m = chi.p, chi.m
    if not domain_residues(f, g, p) or f.ord_p(p) < 0 or g.ord_p(p) != 0:
        return Classification.EMPTY_SUM, None
    dpf, dpg = f.deg_p(p), g.deg_p(p)
    if m == 1:
        if dpf == 0 and rth_power_test(g, chi.order, p) is not None:
            return Classification.CONSTANT_ON_DOMAIN, None
        return Classification.NON_DEGENERATE, None
    if dpf >= 1 or (dpg >= 1 and chi.primitive):
        return Classification.NON_DEGENERATE, None
    dec = decompose(f, g, chi)
    return dec.kind, dec


def nondegen_bound(f, g, chi: Character, D: int, Delta: int) -> dict[str, float]:
    p, m = chi.p, chi.m
    out: dict[str, float] = {}
    if D < 1:
        return out
    dpf, dpg = f.deg_p(p), g.deg_p(p)
    e = m * (1 - 1 / D)
    if m == 1:
        out["weil"] = (D - 1) * math.sqrt(p)
        out["weil_175"] = 1.75 * _pw(p, 1 - 1 / D)
    k = C2 if p == 2 else C3
    clean = 2 ** (5 / 3) * 3 ** (1 / 3) if p == 2 else 3 ** (4 / 3)
    if dpf >= 1:
        out["main_f"] = k * dpf ** (1 / D) * _pw(p, e)
        out["clean_f"] = clean * _pw(p, e)
    if dpg >= 1 and chi.primitive:
        if p == 2:
            out["main_g"] = C2 * dpg ** (1 / D) * _pw(p, e)
        else:
            out["main_g"] = max(3 * dpg ** (1 / D), dpg ** (2 / D)) * _pw(p, e)
        if Delta >= 1:
            out["clean_g"] = clean * _pw(p, m * (1 - 1 / Delta))
    if p == 2:
        out["p2_uniform"] = C2 * D ** (1 / D) * _pw(2, e)
    return out


@dataclass
class CriticalProfile:
    """t, C and the critical points (inside the summation domain) for one c_chi."""
    p: int
    m: int
    t: float
    C: RatFunc | None
    crit: list = field(default_factory=list)
    d: int = 0

    @classmethod
    def build(cls, f, g, chi: Character) -> "CriticalProfile":
        p, m = chi.p, chi.m
        try:
            t, C = t_and_C(f, g, chi.c_chi, p)
        except ConstantPhase:
            return cls(p, m, math.inf, None)
        dom = set(domain_residues(f, g, p))
        crit = [(a, nu) for a, nu in critical_set(C, p) if a in dom]
        d = len(fp_trim(C.num, p)) - 1
        return cls(p, m, t, C, crit, max(d, 0))


class PhaseFamily:
    """f' + c g'/g = (P + c Q)/Den for a fixed pair, profiled for many c at once.

    Gives the same CriticalProfile as CriticalProfile.build, with one gcd per c.
    """

    def __init__(self, f: RatFunc, g: RatFunc, p: int):
        self.p = p
        fd = f.derivative()
        if g.is_constant():
            self.P, self.Q, self.Den = fd.num, (0,), fd.den
        else:
            lg = g.derivative() / g
            self.P, self.Q, self.Den = pmul(fd.num, lg.den), pmul(lg.num, fd.den), pmul(fd.den, lg.den)
        self.dom = set(domain_residues(f, g, p))
        self._cache: dict[int, tuple] = {}
        self.memo: dict = {}

    def _shape(self, c: int):
        if c in self._cache:
            return self._cache[c]
        p = self.p
        num = trim(padd(self.P, pscale(self.Q, c)))
        if not any(num):
            out = (math.inf, None, [], 0)
        else:
            t = min(vp(a, p) for a in num if a) - min(vp(a, p) for a in self.Den if a)
            C = RatFunc(num, self.Den).scale_p(p, -t)
            crit = [(a, nu) for a, nu in critical_set(C, p) if a in self.dom]
            out = (t, C, crit, max(len(fp_trim(C.num, p)) - 1, 0))
        self._cache[c] = out
        return out

    def profile(self, chi: Character) -> CriticalProfile:
        t, C, crit, d = self._shape(chi.c_chi)
        return CriticalProfile(chi.p, chi.m, t, C, list(crit), d)


def structured_bound(prof: CriticalProfile, D: int) -> dict[str, float]:
    p, m, t = prof.p, prof.m, prof.t
    out: dict[str, float] = {}
    if t == math.inf:
        return out
    if p != 2:
        if D >= 1:
            if m <= t + 1:
                out["cor_m2"] = _pw(p, (t + 1) / D + m * (1 - 1 / D))
            else:
                out["cor_m2"] = 3 * _pw(p, t / D + m * (1 - 1 / D))
        if m >= t + 2:
            d = prof.d
            out["cor_maincor1"] = 3 * _pw(p, t / (d + 1) + m * (1 - 1 / (d + 1)))
            loc = ex = 0.0
            for _, nu in prof.crit:
                b = 1.75 * _pw(p, t / (nu + 1) + m * (1 - 1 / (nu + 1)))
                loc += b
                ex += _pw(p, (m + t) / 2) if nu == 1 else b
            out["local"] = loc
            out["local_exact1"] = ex
        return out
    if m >= t + 3:
        d = prof.d
        out["p2_maincorp21"] = C2 * _pw(2, t / (d + 1) + m * (1 - 1 / (d + 1)))
        loc = ex = 0.0
        for _, nu in prof.crit:
            b = C2 * _pw(2, t / (nu + 1) + m * (1 - 1 / (nu + 1)))
            loc += b
            ex += min(b, _pw(2, (m + t + 1) / 2)) if nu == 1 else b
        out["p2_local"] = loc
        out["p2_local_exact1"] = ex
    return out


def lam(p: int) -> float:
    return _pw(p, 2 / (p + 1))


def beta(p: int) -> float:
    return _pw(p, 1 / (math.sqrt(p) + 1))


def beta_j(p: int, j: int) -> float:
    if j < math.sqrt(p):
        return beta(p)
    if j <= (p - 3) / 2:
        return _pw(p, 1 / (j + 1))
    return lam(p)


def pure_bound(p: int, m: int, t: int, d1: int) -> dict[str, float]:
    """Bounds for a pure polynomial sum with deg_p(p^-t f') = d1."""
    if d1 < 1 or m - t < (3 if p == 2 else 2):
        return {}
    tail = _pw(p, t / (d1 + 1) + m * (1 - 1 / (d1 + 1)))
    k = lam(p) if p <= 13 else beta_j(p, d1)
    return {"pure": k * tail, "pure_175": 1.75 * tail}


def laurent_condition(G: RatFunc, p: int) -> bool:
    if not G.is_laurent():
        return False
    terms = G.laurent_terms()
    terms.pop(0, None)
    if not terms:
        return False
    d1, d2 = min(terms), max(terms)
    a = terms[d2] if abs(d2) >= abs(d1) else terms[d1]
    return a.numerator % p != 0


def dp_estimate(dec: Decomposition, p: int) -> float | None:
    """deg F + ((ell - t_chi)/ell_g) (p/(p-1)) deg G."""
    if dec.ell_g <= 0:
        return None
    return dec.F.degree() + (dec.ell - dec.t_chi) / dec.ell_g * p / (p - 1) * dec.G.degree()


def degen_bound(dec: Decomposition, f, g, chi: Character, D: int, Delta: int) -> dict[str, float]:
    p, m = chi.p, chi.m
    out: dict[str, float] = {}
    ell = dec.ell
    k = C2 if p == 2 else C3
    nonpoly = not (f.is_polynomial() and g.is_polynomial())
    if dec.ell_g == 0:
        if Delta >= 1:
            c = 2 ** (5 / 3) * 3 ** (1 / 3) if p == 2 else 3 ** (4 / 3)
            out["degen_i"] = c * _pw(p, ell / Delta + m * (1 - 1 / Delta))
        for X in (D, Delta):
            if X < 1:
                continue
            tail = _pw(p, ell / X + m * (1 - 1 / X))
            tag = "" if X == D else "_delta"
            if ell == dec.ell_f:
                dF = max(dec.F.deg_p(p) or 0, 1)
                out["degenprop_f" + tag] = k * dF ** (1 / X) * tail
            if ell == dec.t_chi:
                dg = g.deg_p(p)
                out["degenprop_g" + tag] = max(k * dg ** (1 / X), dg ** (2 / X)) * tail
    else:
        dp = max(dec.d_p, 1)
        if Delta >= 1:
            out["degen_ii"] = max(k * dp ** (1 / Delta), dp ** (2 / Delta)) * _pw(p, ell / Delta + m * (1 - 1 / Delta))
        if D >= 1:
            out["degenprop_ii"] = max(k * dp ** (1 / D), dp ** (2 / D)) * _pw(p, ell / D + m * (1 - 1 / D))
    lau = laurent_condition(dec.G, p) and f.is_laurent() and g.is_laurent()
    remark = dec.ell_g == 0 or dec.ell_f != dec.ell_g + dec.t_chi or (dec.d_p is not None and p > dec.d_p)
    if (lau or remark) and Delta >= 1:
        if p == 2:
            c = 2 ** (5 / 3) * 3 ** (1 / 3) if nonpoly else 2 ** (8 / 3)
        else:
            c = 3 ** (4 / 3) if nonpoly else 6.0
        out["laurent"] = c * _pw(p, ell / Delta + m * (1 - 1 / Delta))
    return out


@dataclass
class BoundReport:
    classification: Classification
    p: int
    m: int
    D: int | None = None
    Delta: int | None = None
    t: float | None = None
    ell: int | None = None
    d_p: int | None = None
    d_p_estimate: float | None = None
    nus: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    trivial: float = 0.0

    @property
    def best(self) -> float:
        if self.classification is Classification.EMPTY_SUM:
            return 0.0
        return min([self.trivial, *self.bounds.values()])

    def as_record(self) -> dict:
        rec = {
            "classification": self.classification.value,
            "D": self.D, "Delta": self.Delta,
            "t": None if self.t in (None, math.inf) else self.t,
            "ell": self.ell, "d_p": self.d_p, "d_p_estimate": self.d_p_estimate,
            "nus": ";".join(f"{a}:{n}" for a, n in self.nus),
            "trivial": self.trivial, "best": self.best,
        }
        for name in BOUND_NAMES:
            rec[name] = self.bounds.get(name)
        for name, v in self.bounds.items():
            rec.setdefault(name, v)
        return rec


def best_bound(f: RatFunc, g: RatFunc, chi: Character, profile: CriticalProfile | None = None,
               classified=None) -> BoundReport:
    p, m = chi.p, chi.m
    kind, dec = classified if classified is not None else classify(f, g, chi)
    rep = BoundReport(kind, p, m, trivial=float(p ** m))
    if kind is Classification.EMPTY_SUM:
        rep.trivial = 0.0
        return rep
    if f.is_constant() and g.is_constant():
        return rep
    D, Delta = dimension_params(f, g)
    rep.D, rep.Delta = D, Delta
    if kind is Classification.CONSTANT_ON_DOMAIN:
        if dec is not None:
            rep.ell = dec.ell
        return rep
    if chi.has_log_form and m >= 2:
        prof = profile or CriticalProfile.build(f, g, chi)
        rep.t = prof.t
        rep.nus = prof.crit
        rep.bounds.update(structured_bound(prof, D))
        if g.is_constant() and f.is_polynomial() and f.deg_p(p) >= 1 and prof.t != math.inf:
            d1 = prof.C.deg_p(p)
            rep.bounds.update(pure_bound(p, m, prof.t, d1))
    if kind is Classification.NON_DEGENERATE:
        rep.bounds.update(nondegen_bound(f, g, chi, D, Delta))
    else:
        rep.ell, rep.d_p = dec.ell, dec.d_p
        rep.d_p_estimate = dp_estimate(dec, p)
        rep.bounds.update(degen_bound(dec, f, g, chi, D, Delta))
    return rep
