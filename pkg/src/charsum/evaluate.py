"""Evaluation of mixed sums: brute force, critical-point reduction, closed forms."""
from __future__ import annotations

import enum
import math
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .charmod import Character, chi_eval, chi_index_table, principal, root_order
from .critical import (
    critical_set, domain_residues, exclusion_poly, local_data, t_and_C,
)
from .errors import ConstantPhase, DomainError, NotApplicable
from .padic import gauss_value, legendre, vp
from .polyrat import (
    POLE, RatFunc, eval_mod, peval, peval_mod, pmul, rth_power_test, taylor_series, trim,
)


class SumValue:
    """An exact sum of roots of unity: sum_j counts[j] exp(2 pi i j / N).

    Stored sparsely as parallel arrays of indices and positive counts.
    """
    __slots__ = ("N", "idx", "cnt")

    def __init__(self, N: int, idx=None, cnt=None):
        self.N = N
        if idx is None:
            self.idx = np.zeros(0, dtype=np.int64)
            self.cnt = np.zeros(0, dtype=np.int64)
            return
        if len(idx) <= 32:
            # short vectors: a dict is much cheaper than np.unique
            acc: dict[int, int] = {}
            for i, c in zip(idx, cnt):
                k = int(i) % N
                acc[k] = acc.get(k, 0) + int(c)
            keys = sorted(k for k, c in acc.items() if c)
            self.idx = np.array(keys, dtype=np.int64)
            self.cnt = np.array([acc[k] for k in keys], dtype=np.int64)
            return
        idx = np.asarray(idx, dtype=np.int64) % N
        cnt = np.asarray(cnt, dtype=np.int64)
        u, inv = np.unique(idx, return_inverse=True)
        c = np.zeros(len(u), dtype=np.int64)
        np.add.at(c, inv.ravel(), cnt)
        keep = c != 0
        self.idx, self.cnt = u[keep], c[keep]

    @classmethod
    def _canonical(cls, N: int, idx: np.ndarray, cnt: np.ndarray) -> "SumValue":
        """Wrap indices that are already sorted, distinct and reduced mod N, with nonzero counts."""
        v = cls.__new__(cls)
        v.N, v.idx, v.cnt = N, idx, cnt
        return v

    @classmethod
    def single(cls, N: int, j: int, count: int = 1) -> "SumValue":
        return cls(N, [j], [count])

    def counts(self) -> dict[int, int]:
        return {int(i): int(c) for i, c in zip(self.idx, self.cnt)}

    @property
    def total(self) -> int:
        return int(self.cnt.sum())

    @property
    def approx(self) -> complex:
        if not len(self.idx):
            return 0j
        return complex(np.sum(self.cnt * np.exp(2j * np.pi * self.idx / self.N)))

    @property
    def magnitude(self) -> float:
        return abs(self.approx)

    def embed(self, N2: int) -> "SumValue":
        if N2 == self.N:
            return self
        if N2 % self.N:
            raise ValueError("cannot embed into a non-multiple order")
        return SumValue._canonical(N2, self.idx * (N2 // self.N), self.cnt)

    def __add__(self, other: "SumValue") -> "SumValue":
        N = math.lcm(self.N, other.N)
        a, b = self.embed(N), other.embed(N)
        return SumValue(N, np.concatenate([a.idx, b.idx]), np.concatenate([a.cnt, b.cnt]))

    def twist(self, j: int, scale: int = 1, N: int | None = None) -> "SumValue":
        """scale * exp(2 pi i j / N) * self, in order lcm(N, self.N)."""
        N = N or self.N
        M = math.lcm(N, self.N)
        s = self.embed(M)
        if scale == 0:
            return SumValue(M)
        # a shift mod M permutes indices, so only the order needs restoring
        idx = (s.idx + j * (M // N)) % M
        order = np.argsort(idx, kind="stable")
        return SumValue._canonical(M, idx[order], s.cnt[order] * scale)

    def close_to(self, other: "SumValue", tol: float) -> bool:
        return abs(self.approx - other.approx) <= tol

    def __eq__(self, other):
        if not isinstance(other, SumValue):
            return NotImplemented
        N = math.lcm(self.N, other.N)
        a, b = self.embed(N), other.embed(N)
        return np.array_equal(a.idx, b.idx) and np.array_equal(a.cnt, b.cnt)

    def __repr__(self):
        z = self.approx
        return f"SumValue(N={self.N}, terms={self.total}, ~{z.real:.6g}{z.imag:+.6g}i)"


def zero_value(p: int, m: int) -> SumValue:
    return SumValue(root_order(p, m))


# ------------------------------------------------------------------ brute force

def _horner(poly, x: np.ndarray, q: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(poly):
        acc = (acc * x + (c % q)) % q
    return acc


def _inv_mod_pow(a: np.ndarray, p: int, m: int) -> np.ndarray:
    q = p ** m
    e = p ** (m - 1) * (p - 1) - 1
    out = np.ones_like(a)
    base = a % q
    while e:
        if e & 1:
            out = out * base % q
        base = base * base % q
        e >>= 1
    return out


@lru_cache(maxsize=32)
def _inv_table(p: int, m: int) -> np.ndarray:
    """Inverses of all residues mod p^m (garbage at non-units, which callers mask out)."""
    return _inv_mod_pow(np.arange(p ** m, dtype=np.int64), p, m)


def _inv_mod(a: np.ndarray, p: int, m: int) -> np.ndarray:
    return _inv_table(p, m)[a % p ** m]


def summand_arrays(f: RatFunc, g: RatFunc, p: int, m: int, xs: np.ndarray, exclude=(1,)):
    """(mask, f(x) mod q, g(x) mod q) over the array xs."""
    q = p ** m
    if f.ord_p(p) < 0 or g.ord_p(p) != 0:
        return np.zeros(len(xs), dtype=bool), None, None
    w = pmul(exclusion_poly(f, g), exclude)
    mask = _horner(w, xs % p, p) != 0
    x = xs[mask] % q
    fv = _horner(f.num, x, q) * _inv_mod(_horner(f.den, x, q), p, m) % q
    gv = _horner(g.num, x, q) * _inv_mod(_horner(g.den, x, q), p, m) % q
    return mask, fv, gv


def _sum_over_small(f, g, chi: Character, xs, exclude) -> SumValue:
    """Scalar route for tiny domains, where array set-up dominates."""
    p = chi.p
    if f.ord_p(p) < 0 or g.ord_p(p) != 0:
        return SumValue(chi.N)
    w = pmul(exclusion_poly(f, g), exclude)
    acc: dict[int, int] = {}
    for x in xs:
        x = int(x)
        if peval_mod(w, x % p, p):
            j = phase_index(f, g, chi, x)
            acc[j] = acc.get(j, 0) + 1
    return SumValue(chi.N, list(acc), list(acc.values()))


def _sum_over(f, g, chi: Character, xs: np.ndarray, exclude=(1,)) -> SumValue:
    p, m = chi.p, chi.m
    q, N = chi.q, chi.N
    if len(xs) <= 16:
        return _sum_over_small(f, g, chi, xs, exclude)
    mask, fv, gv = summand_arrays(f, g, p, m, xs, exclude)
    if fv is None or not len(fv):
        return SumValue(N)
    ci = chi_index_table(chi)[gv]
    j = (ci + fv * (N // q)) % N
    u, c = np.unique(j, return_counts=True)
    return SumValue(N, u, c)


def local_sums(f: RatFunc, g: RatFunc, chi: Character, exclude=(1,)) -> dict[int, SumValue]:
    """S_alpha for every alpha mod p from a single pass over x mod p^m."""
    p, m = chi.p, chi.m
    q, N = chi.q, chi.N
    xs = np.arange(q, dtype=np.int64)
    mask, fv, gv = summand_arrays(f, g, p, m, xs, exclude)
    out = {a: SumValue(N) for a in range(p)}
    if fv is None or not len(fv):
        return out
    j = (chi_index_table(chi)[gv] + fv * (N // q)) % N
    res = xs[mask] % p
    for a in range(p):
        sel = j[res == a]
        if len(sel):
            u, c = np.unique(sel, return_counts=True)
            out[a] = SumValue(N, u, c)
    return out


def brute_sum(f: RatFunc, g: RatFunc, chi: Character, exclude=(1,)) -> SumValue:
    """Direct summation over x mod p^m with p not dividing f_- g_+ g_- (and `exclude`)."""
    return _sum_over(f, g, chi, np.arange(chi.q, dtype=np.int64), exclude)


def local_sum(f: RatFunc, g: RatFunc, chi: Character, alpha: int, exclude=(1,)) -> SumValue:
    """Direct summation restricted to x = alpha mod p."""
    p = chi.p
    xs = alpha % p + p * np.arange(chi.q // p, dtype=np.int64)
    return _sum_over(f, g, chi, xs, exclude)


def phase_index(f: RatFunc, g: RatFunc, chi: Character, x: int) -> int:
    """Index j with chi(g(x)) e_q(f(x)) = exp(2 pi i j / N); x must lie in the domain."""
    p, m = chi.p, chi.m
    fv = eval_mod(f, x, p, m)
    gv = eval_mod(g, x, p, m)
    if fv is POLE or gv is POLE or gv % p == 0:
        raise DomainError(f"{x} lies outside the summation domain")
    return (chi_eval(chi, gv) + fv * (chi.N // chi.q)) % chi.N


# -------------------------------------------------------------- reduction step

@dataclass
class LocalTerm:
    """scale * exp(2 pi i root / N) * S(G, p^msub), or scale * exp(...) when G is None."""
    alpha: int
    base: int
    sigma: int
    root: int
    scale: int
    G: RatFunc | None
    msub: int


@dataclass
class ReductionTrace:
    kind: str
    p: int
    m: int
    detail: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "m": self.m, **self.detail,
                "children": [c.as_dict() for c in self.children]}

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        info = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        lines = [f"{pad}{self.kind} mod {self.p}^{self.m}" + (f": {info}" if info else "")]
        lines += [c.render(indent + 1) for c in self.children]
        return "\n".join(lines)


def min_gap(p: int) -> int:
    """Reduction needs m >= t + min_gap(p)."""
    return 3 if p == 2 else 2


def reduce_step(f: RatFunc, g: RatFunc, chi: Character, exclude=(1,)) -> list[LocalTerm]:
    """Write S as a sum over critical points of scaled pure sums mod p^(m - sigma).

    Raises NotApplicable when m < t + 2 (t + 3 for p = 2) or chi has no log form,
    and ConstantPhase when f' + c_chi g'/g vanishes.
    """
    p, m = chi.p, chi.m
    if not chi.has_log_form or m < 2:
        raise NotApplicable("no logarithmic form for chi")
    t, C = t_and_C(f, g, chi.c_chi, p)
    if m < t + min_gap(p):
        raise NotApplicable(f"m = {m} < t + {min_gap(p)} with t = {t}")
    dom = set(domain_residues(f, g, p, exclude))
    terms = []
    for alpha, nu in critical_set(C, p):
        if alpha not in dom:
            continue
        # a higher precision than m is not needed to evaluate
        ld = local_data(f, g, chi, alpha, t, C, prec=m)
        for br in ld.branches:
            root = phase_index(f, g, chi, br.base)
            low = 1 if p != 2 else 2
            if m <= br.sigma:
                terms.append(LocalTerm(alpha, br.base, br.sigma, root, p ** (m - low), None, 0))
                continue
            msub = m - br.sigma
            G = RatFunc(trim([c % p ** msub for c in br.G.coeffs]))
            terms.append(LocalTerm(alpha, br.base, br.sigma, root, p ** (br.sigma - low), G, msub))
    return terms


# ----------------------------------------------------------------- degenerate

class Classification(enum.Enum):
    NON_DEGENERATE = "non-degenerate"
    DEGENERATE = "degenerate"
    CONSTANT_ON_DOMAIN = "constant-on-domain"
    EMPTY_SUM = "empty"


@dataclass
class Decomposition:
    """f = f(s) + p^ell_f F and g = g(s)(1 + p^ell_g G) around a base point s.

    F and G are kept in the original variable, so F(s) = G(s) = 0. When f
    (resp. g) is constant mod p^m, ell_f = m and F = X - s (resp. for g).
    """
    s: int
    f_s: Fraction
    g_s: Fraction
    ell_f: int
    F: RatFunc
    ell_g: int
    G: RatFunc
    ell: int
    kind: Classification
    H: RatFunc | None = None
    L: int | None = None
    d_p: int | None = None
    t_chi: int = 0


def _split(h: RatFunc, p: int, m: int, s: int):
    k = h.ord_p(p)
    if h.is_zero() or k >= m:
        return m, RatFunc((-s, 1))
    return k, h.scale_p(p, -k)


def log_cutoff(ell_g: int, p: int, m: int) -> int:
    """Least J with j ell_g - ord_p(j) >= m for every j > J."""
    J = 0
    j = 1
    while j < 4 * m + 4 * p + 8:
        if j * ell_g - vp(j, p) < m:
            J = j
        j += 1
    return J


def truncated_log(U: RatFunc, J: int) -> RatFunc:
    out = RatFunc.const(0)
    Uj = RatFunc.const(1)
    for j in range(1, J + 1):
        Uj = Uj * U
        out = out + Uj * Fraction((-1) ** (j - 1), j)
    return out


def decompose(f: RatFunc, g: RatFunc, chi: Character, exclude=(1,)) -> Decomposition | None:
    """Base point, valuations and the degenerate reduction data; None for an empty sum."""
    p, m = chi.p, chi.m
    dom = domain_residues(f, g, p, exclude)
    if not dom or f.ord_p(p) < 0 or g.ord_p(p) != 0:
        return None
    s = dom[0]
    fs, gs = f.eval_exact(s), g.eval_exact(s)
    ell_f, F = _split(f - fs, p, m, s)
    U = g / gs - 1
    ell_g, G = _split(U, p, m, s)
    t_chi = chi.t_chi
    if ell_g == 0:
        ell = min(ell_f, t_chi)
        kind = Classification.DEGENERATE
        if ell_f >= m and t_chi == m - 1 and rth_power_test(g, chi.order, p) is not None:
            ell = m
            kind = Classification.CONSTANT_ON_DOMAIN
        return Decomposition(s, fs, gs, ell_f, F, 0, G, ell, kind, t_chi=t_chi)
    J = log_cutoff(ell_g, p, m) if ell_g < m else 0
    H = (f - fs) + chi.c_chi * truncated_log(U, J) if J else (f - fs)
    ellH = H.ord_p(p)
    if H.is_zero() or ellH >= m:
        return Decomposition(s, fs, gs, ell_f, F, ell_g, G, m, Classification.CONSTANT_ON_DOMAIN,
                             H=H, t_chi=t_chi)
    dp = H.scale_p(p, -ellH).deg_p(p)
    L = None
    if ell_g < m:
        L = 1
        for j in range(1, 4 * m + 4 * p + 8):
            if not (j * ell_g + t_chi - vp(j, p) > ellH):
                L = j
    return Decomposition(s, fs, gs, ell_f, F, ell_g, G, ellH, Classification.DEGENERATE,
                         H=H, L=L, d_p=dp, t_chi=t_chi)


@dataclass
class DegenerateReduction:
    """S = scale * exp(2 pi i root / N) * S(sub_f, sub_g, sub_chi) over the sub domain.

    For EMPTY_SUM and CONSTANT_ON_DOMAIN only `kind` (and `decomposition`) are set.
    """
    kind: Classification
    decomposition: Decomposition | None = None
    scale: int = 0
    root: int = 0
    sub_f: RatFunc | None = None
    sub_g: RatFunc | None = None
    sub_chi: Character | None = None
    exclude: tuple = (1,)


def degenerate_reduce(f: RatFunc, g: RatFunc, chi: Character, exclude=(1,)) -> DegenerateReduction:
    """Reduce a degenerate sum to one mod p^(m - ell).

    Raises NotApplicable when ell = 0, i.e. the sum is not degenerate.
    """
    p, m = chi.p, chi.m
    dec = decompose(f, g, chi, exclude)
    if dec is None:
        return DegenerateReduction(Classification.EMPTY_SUM)
    if dec.kind is Classification.CONSTANT_ON_DOMAIN:
        return DegenerateReduction(Classification.CONSTANT_ON_DOMAIN, dec)
    ell = dec.ell
    if ell == 0:
        raise NotApplicable("sum is not degenerate")
    if p == 2 and dec.ell_g == 1:
        raise NotApplicable("g/g(s) is not 1 mod 4")
    N, q = chi.N, chi.q
    fs = eval_mod(f, dec.s, p, m)
    excl = pmul(exclusion_poly(f, g), exclude)
    m2 = m - ell
    if dec.ell_g == 0:
        sub_f = (f - dec.f_s).scale_p(p, -ell)
        root = fs * (N // q) % N
        return DegenerateReduction(Classification.DEGENERATE, dec, p ** ell, root, sub_f, g,
                                   chi.reduce_to(m2), excl)
    sub_f = dec.H.scale_p(p, -ell)
    root = phase_index(f, g, chi, dec.s)
    return DegenerateReduction(Classification.DEGENERATE, dec, p ** ell, root, sub_f,
                               RatFunc.const(1), principal(p, m2), excl)


def constant_value(f: RatFunc, g: RatFunc, chi: Character, dec: Decomposition, exclude=(1,)) -> SumValue:
    """Value of a sum whose summand is constant on its domain."""
    p, m = chi.p, chi.m
    dom = domain_residues(f, g, p, exclude)
    root = phase_index(f, g, chi, dec.s)
    return SumValue.single(chi.N, root, len(dom) * p ** (m - 1))


# ------------------------------------------------------------------ fast eval

def fast_eval(f: RatFunc, g: RatFunc, chi: Character, exclude=(1,), _depth: int = 0):
    """Evaluate S by critical-point and degenerate reductions, brute force at the leaves.

    Returns (SumValue, ReductionTrace).
    """
    p, m = chi.p, chi.m
    N = chi.N
    if _depth > m + 2:
        raise RecursionError("reduction did not shrink the modulus")
    if not domain_residues(f, g, p, exclude) or f.ord_p(p) < 0 or g.ord_p(p) != 0:
        return SumValue(N), ReductionTrace("empty", p, m)
    if m == 1 or not chi.has_log_form:
        return brute_sum(f, g, chi, exclude), ReductionTrace("brute", p, m)
    try:
        terms = reduce_step(f, g, chi, exclude)
    except ConstantPhase:
        return brute_sum(f, g, chi, exclude), ReductionTrace("brute", p, m, {"why": "constant phase"})
    except NotApplicable:
        return _degenerate_or_brute(f, g, chi, exclude, _depth)
    kind = "pure" if g.is_constant() else "mixed"
    trace = ReductionTrace(kind, p, m, {"critical": sorted({t.alpha for t in terms})})
    total = SumValue(N)
    for term in terms:
        if term.G is None:
            total = total + SumValue.single(N, term.root, term.scale)
            trace.children.append(ReductionTrace("closed", p, 0, {"alpha": term.base, "sigma": term.sigma}))
            continue
        sub, sub_trace = fast_eval(term.G, RatFunc.const(1), principal(p, term.msub), (1,), _depth + 1)
        sub_trace.detail = {"alpha": term.base, "sigma": term.sigma, **sub_trace.detail}
        trace.children.append(sub_trace)
        total = total + sub.twist(term.root, term.scale, N)
    return total.embed(N) if total.N != N else total, trace


def _degenerate_or_brute(f, g, chi, exclude, depth):
    p, m = chi.p, chi.m
    try:
        red = degenerate_reduce(f, g, chi, exclude)
    except NotApplicable:
        return brute_sum(f, g, chi, exclude), ReductionTrace("brute", p, m)
    if red.kind is Classification.EMPTY_SUM:
        return SumValue(chi.N), ReductionTrace("empty", p, m)
    if red.kind is Classification.CONSTANT_ON_DOMAIN:
        return constant_value(f, g, chi, red.decomposition, exclude), ReductionTrace("constant", p, m)
    sub, sub_trace = fast_eval(red.sub_f, red.sub_g, red.sub_chi, red.exclude, depth + 1)
    trace = ReductionTrace("degenerate", p, m, {"ell": red.decomposition.ell, "s": red.decomposition.s})
    trace.children.append(sub_trace)
    return sub.twist(red.root, red.scale, chi.N).embed(chi.N), trace


# ---------------------------------------------------------- multiplicity one

@dataclass
class MultOneValue:
    magnitude: float
    value: SumValue | None
    lift: int | None = None


def hensel_lift(poly, alpha: int, p: int, k: int) -> int:
    """Root of poly mod p^k above a simple root alpha mod p."""
    d = tuple(i * poly[i] for i in range(1, len(poly)))
    x = alpha % p
    for j in range(2, k + 1):
        q = p ** j
        x = (x - peval_mod(poly, x, q) * pow(peval_mod(d, x, q), -1, q)) % q
    return x


def eval_mult_one(f: RatFunc, g: RatFunc, chi: Character, alpha: int, t: int | None = None,
                  C: RatFunc | None = None) -> MultOneValue:
    """Closed form of S_alpha at a critical point of multiplicity one.

    Odd p with m >= t + 2: exact value. p = 2 with m >= t + 5: magnitude only.
    """
    p, m = chi.p, chi.m
    if t is None or C is None:
        t, C = t_and_C(f, g, chi.c_chi, p)
    crit = dict(critical_set(C, p))
    if crit.get(alpha % p) != 1:
        raise DomainError(f"{alpha} is not a critical point of multiplicity one")
    if p == 2:
        if m < t + 5:
            raise DomainError("p = 2 closed form needs m >= t + 5")
        return MultOneValue(2.0 ** ((m + t) / 2), None)
    if m < t + 2:
        raise DomainError("closed form needs m >= t + 2")
    N, q = chi.N, chi.q
    xs = hensel_lift(C.num, alpha, p, m)
    zeta = phase_index(f, g, chi, xs)
    k = m - t
    if k % 2 == 0:
        val = SumValue.single(N, zeta, p ** ((m + t) // 2))
        return MultOneValue(float(p) ** ((m + t) / 2), val, xs)
    cs = taylor_series(C, xs, p, 1, 3).coeffs
    a = cs[1] * pow(2, -1, p) % p
    if k == 3:
        # G = a Y^2 + b Y^3 mod p, and Y^3 = Y on F_3
        b = cs[2] if p == 3 else 0
        idx = [zeta + (a * y * y + b * y ** 3) % p * (N // p) for y in range(p)]
        val = SumValue(N, idx, [p ** (t + 1)] * p)
    else:
        A = 2 * cs[1] % p
        idx = [zeta + (A * y * y) % p * (N // p) for y in range(p)]
        val = SumValue(N, idx, [p ** ((m + t - 1) // 2)] * p)
    return MultOneValue(float(p) ** ((m + t) / 2), val, xs)
