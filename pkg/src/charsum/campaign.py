"""Exhaustive verification campaigns: corpus, all-character brute force, checks, reports."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field, fields, replace
from multiprocessing import get_context

import numpy as np

from .bounds import BOUND_NAMES, PhaseFamily, best_bound, classify, dimension_params
from .charmod import Character, all_chars, dlog_table
from .critical import domain_residues, local_data
from .errors import DomainError, NotApplicable
from .evaluate import (
    Classification, brute_sum, degenerate_reduce, eval_mult_one, fast_eval, local_sums,
    min_gap, summand_arrays,
)
from .padic import is_prime, vp
from .polyrat import RatFunc

FORMAT_VERSION = "charsum-campaign 1"


# ------------------------------------------------------------------ config

@dataclass
class CampaignConfig:
    """Flat campaign settings; every field can be set from a `key = value` file.

    Lists are comma separated. `families` picks corpus generators among
    monomial, dense, rational, laurent, scaled. `check_per_level` runs the full
    checks on the first k characters of each conductor level (-1: all, 0: none).
    `chars` restricts the characters to the listed c (or c:kappa) values.
    """
    primes: tuple = (3, 5, 7)
    m_min: int = 1
    m_max: int = 4
    families: tuple = ("monomial", "dense", "rational", "laurent", "scaled")
    coeff_min: int = -2
    coeff_max: int = 2
    monomial_max: int = 6
    dense_degree: int = 3
    dense_count: int = 1600
    rational_degree: int = 2
    rational_count: int = 300
    laurent_max: int = 4
    seed: int = 20240601
    char_stride: int = 1
    check_per_level: int = 0
    grain: str = "pair"
    tolerance: float = 1e-9
    slack: float = 1e-6
    jobs: int = 1
    out: str | None = None
    max_q: int = 5 ** 7
    limit: int = 0
    chars: tuple = ()

    def validate(self) -> "CampaignConfig":
        if not self.primes or not all(is_prime(p) for p in self.primes):
            raise ValueError("primes must be a nonempty list of primes")
        if not 1 <= self.m_min <= self.m_max:
            raise ValueError("m range must be nonempty with m_min >= 1")
        if self.coeff_min > self.coeff_max:
            raise ValueError("empty coefficient range")
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown families: {sorted(unknown)}")
        if self.char_stride < 1 or self.check_per_level < -1 or self.jobs < 1:
            raise ValueError("strides and jobs must be positive")
        if self.grain not in ("pair", "case"):
            raise ValueError("grain is 'pair' or 'case'")
        return self

    @classmethod
    def parse_value(cls, key: str, text: str):
        kinds = {f.name: f for f in fields(cls)}
        if key not in kinds:
            raise ValueError(f"unknown config key {key!r}")
        default = getattr(cls, key) if key != "out" else None
        text = text.strip()
        if key == "out":
            return text or None
        if isinstance(default, tuple):
            items = [s.strip() for s in text.split(",") if s.strip()]
            return tuple(int(s) for s in items) if key == "primes" else tuple(items)
        if isinstance(default, float):
            return float(text)
        if isinstance(default, int):
            return int(eval_int(text))
        return text

    @classmethod
    def from_text(cls, text: str, **overrides) -> "CampaignConfig":
        vals = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {n}: expected key = value")
            k, v = line.split("=", 1)
            vals[k.strip()] = cls.parse_value(k.strip(), v)
        vals.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**vals).validate()

    def to_text(self) -> str:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(map(str, v))
            out.append(f"{f.name} = {'' if v is None else v}")
        return "\n".join(out) + "\n"


def eval_int(text: str) -> int:
    """Integers, optionally written as a power such as 5^7."""
    if "^" in text:
        a, b = text.split("^", 1)
        return int(a) ** int(b)
    return int(text)


# ------------------------------------------------------------------ corpus

def _poly(coeffs) -> RatFunc:
    return RatFunc(tuple(coeffs))


def _monomials(cfg, rng):
    X = RatFunc.x()
    for d, e in itertools.product(range(cfg.monomial_max + 1), repeat=2):
        yield X ** d, X ** e


def _dense_pool(deg, lo, hi):
    return [c for c in itertools.product(range(lo, hi + 1), repeat=deg + 1) if any(c)]


def _dense(cfg, rng):
    pool = _dense_pool(cfg.dense_degree, cfg.coeff_min, cfg.coeff_max)
    gpool = [RatFunc.const(1)] * 3 + [_poly(c) for c in _dense_pool(min(cfg.dense_degree, 2), cfg.coeff_min, cfg.coeff_max)]
    for _ in range(cfg.dense_count):
        f = _poly(rng.choice(pool))
        g = rng.choice(gpool)
        yield f, g


def _rational(cfg, rng):
    pool = _dense_pool(cfg.rational_degree, cfg.coeff_min, cfg.coeff_max)
    for _ in range(cfg.rational_count):
        f = _poly(rng.choice(pool)) / _poly(rng.choice(pool))
        if rng.random() < 0.5:
            g = _poly(rng.choice(pool)) / _poly(rng.choice(pool))
        else:
            g = _poly(rng.choice(pool))
        if g.is_zero():
            g = RatFunc.const(1)
        yield f, g


def _laurent(cfg, rng):
    X = RatFunc.x()
    gs = [RatFunc.const(1), X, X ** 2 + 1, X - 1]
    for d in range(cfg.laurent_max + 1):
        for e in range(1, cfg.laurent_max + 1):
            for g in gs:
                yield X ** d + X ** (-e), g


def _scaled(cfg, rng):
    # multiples of 2^2 3 5 7 and its square: degenerate for every small prime
    X = RatFunc.x()
    hs = [X, X ** 2, X ** 3 + X, X ** 2 - X, 1 / X]
    ks = [X, X ** 2, X + 1, X ** 3 - 2]
    for M in (420, 420 * 210):
        for h in hs:
            for k in ks:
                yield M * h, 1 + M * k
                yield M * h + X ** 0, RatFunc.const(1)
                yield RatFunc.const(1), 1 + M * k


FAMILIES = {
    "monomial": _monomials,
    "dense": _dense,
    "rational": _rational,
    "laurent": _laurent,
    "scaled": _scaled,
}


def corpus(cfg: CampaignConfig) -> list[tuple[str, RatFunc, RatFunc]]:
    """(family, f, g) with duplicates removed, in a fixed order."""
    out, seen = [], set()
    for fam in cfg.families:
        rng = random.Random(f"{cfg.seed}:{fam}")
        for f, g in FAMILIES[fam](cfg, rng):
            key = (f, g)
            if key in seen:
                continue
            seen.add(key)
            out.append((fam, f, g))
    return out


# ---------------------------------------------------- all-character brute force

def char_sums(f: RatFunc, g: RatFunc, p: int, m: int) -> dict[Character, complex]:
    """S(chi, g, f, p^m) for every chi mod p^m, from one transform over the dlog classes."""
    q = p ** m
    xs = np.arange(q, dtype=np.int64)
    _, fv, gv = summand_arrays(f, g, p, m, xs)
    chars = all_chars(p, m)
    if fv is None or not len(fv):
        return {ch: 0j for ch in chars}
    L = dlog_table(p, m)[gv]
    w = np.exp(2j * np.pi * fv / q)
    if p != 2:
        phi = q // p * (p - 1)
        W = np.bincount(L, weights=w.real, minlength=phi) + 1j * np.bincount(L, weights=w.imag, minlength=phi)
        S = np.fft.ifft(W) * phi
        return {ch: complex(S[ch.c % phi]) for ch in chars}
    half = 2 ** (m - 2) if m >= 3 else 1
    W = np.bincount(L, weights=w.real, minlength=2 * half) + 1j * np.bincount(L, weights=w.imag, minlength=2 * half)
    W0, W1 = W[:half], W[half:2 * half]
    S = {0: np.fft.ifft(W0 + W1) * half, 1: np.fft.ifft(W0 - W1) * half}
    return {ch: complex(S[ch.kappa][ch.c % half]) for ch in chars}


def bound_key(chi: Character):
    """Characters with equal keys get identical bound reports for a fixed (f, g)."""
    top = chi.m - 1 if chi.p != 2 else chi.m - 2
    order = chi.order if chi.t_chi >= top else 0
    kappa = chi.kappa if not chi.has_log_form else 0
    return chi.c_chi, order, kappa


# ------------------------------------------------------------------ checks

def relation_failures(ld, p: int) -> list[str]:
    """Relations between sigma, tau, nu, t and the degrees of G, H at one critical point."""
    bad = []
    t, nu = ld.t, ld.nu
    for br in ld.branches:
        s, tau = br.sigma, br.tau
        dG, dH = br.deg_G, br.deg_H
        oG = vp(dG, p) if dG else math.inf
        if p != 2:
            ok = {
                "sigmalow": s >= t + 2,
                "sigmaup": s <= nu + 1 + t - tau,
                "dpg": dG <= s - t + oG,
                "dph": dH <= s + tau - t - 1 <= nu,
                "tauup": tau <= oG,
                "nu1": nu != 1 or (tau == 0 and s == t + 2),
            }
        else:
            ok = {
                "sigmalow2": s >= t + 3,
                "sigmaup2": s <= 2 * nu + 2 + t - tau,
                "dpg2": 2 * dG <= s - t + oG,
                "dph2": dH <= (s + tau - t) / 2 - 1 <= nu,
                "tauup2": tau <= oG,
            }
        bad += [f"{k}@{br.base}" for k, v in ok.items() if not v]
    return bad


def profile_failures(f, g, chi: Character, prof, D: int) -> list[str]:
    """Degree bound on C_+ and the p^t divisibility of deg_p f, c_chi deg_p g."""
    p = chi.p
    bad = []
    if prof.t == math.inf:
        return bad
    C = prof.C
    if len(C.num) - 1 > D - 1 or prof.d > D - 1:
        bad.append("CDub")
    if len(C.den) - 1 > D:
        bad.append("CDub_den")
    if sum(nu for _, nu in prof.crit) > max(D - 1, 0):
        bad.append("CDub_count")
    t = prof.t
    dpf, dpg = f.deg_p(p), g.deg_p(p)
    # the divisibility needs ord_p f >= 0 and ord_p g >= 0
    if t > 0 and dpf is not None and dpg is not None:
        pt = p ** t
        if dpf % pt or (chi.c_chi * dpg) % pt:
            bad.append("tboundcor")
    return bad


def degenerate_failures(dec, prof, p: int, D: int) -> list[str]:
    bad = []
    m = dec.ell if dec.kind is Classification.CONSTANT_ON_DOMAIN else None
    if dec.ell_f != dec.ell_g + dec.t_chi and m is None:
        if dec.ell != min(dec.ell_f, dec.ell_g + dec.t_chi):
            bad.append("ell_min")
    if dec.ell_g > 0 and dec.d_p is not None:
        t = prof.t if prof is not None else math.inf
        if t != math.inf and p ** max(t - dec.ell, 0) > dec.d_p:
            bad.append("dpHD_i")
        if p > dec.d_p and dec.d_p > D:
            bad.append("dpHD_ii")
        if dec.ell_f == dec.ell_g + dec.t_chi and dec.L is not None:
            r = (dec.ell - dec.t_chi) / dec.ell_g
            if not (r - 1 < dec.L <= r * p / (p - 1) + 1e-12):
                bad.append("Lsqueeze")
    return bad


def values_agree(a: complex, b: complex, q: int, tol: float) -> bool:
    """Magnitudes within tol relative (floor 1) and complex distance within tol q."""
    return abs(abs(a) - abs(b)) <= tol * max(abs(b), 1.0) and abs(a - b) <= tol * q


@dataclass
class CaseResult:
    chi: Character
    classification: str
    abs_brute: float
    abs_fast: float | None
    bounds: dict
    best: float
    flags: list = field(default_factory=list)
    reduced: bool = False
    checked: bool = False

    @property
    def ratio(self) -> float:
        if self.best == 0:
            return 0.0 if self.abs_brute < 1e-6 else math.inf
        return self.abs_brute / self.best


def full_checks(f, g, chi: Character, prof, rep, dec, brute, cfg, memo: dict) -> tuple[list[str], float, bool]:
    """Evaluator, local-sum, partition, structural and degenerate checks for one case."""
    p, m = chi.p, chi.m
    q = chi.q
    tol = cfg.tolerance
    bad = []
    val, _ = fast_eval(f, g, chi)
    # count vectors are not canonical (the p-th roots of unity sum to 0), so compare values
    if not values_agree(val.approx, brute.approx, q, tol):
        bad.append("fast_eval")
    dom = domain_residues(f, g, p)
    locals_ = local_sums(f, g, chi)
    total = locals_[0]
    for a in range(1, p):
        total = total + locals_[a]
    # the local sums split the same summands, so here equality is exact
    if total.embed(brute.N) != brute:
        bad.append("partition")
    reduced = prof is not None and prof.t != math.inf and m >= prof.t + min_gap(p) and chi.has_log_form
    if reduced and p != 2:
        crit = dict(prof.crit)
        t = prof.t
        for a in dom:
            s = locals_[a]
            if a not in crit:
                if s.magnitude > tol * q:
                    bad.append(f"noncritical@{a}")
            elif crit[a] == 1:
                target = float(p) ** ((m + t) / 2)
                if abs(s.magnitude - target) > tol * target:
                    bad.append(f"mult1_abs@{a}")
                mv = eval_mult_one(f, g, chi, a, t, prof.C)
                if mv.value is None or abs(mv.value.approx - s.approx) > tol * q:
                    bad.append(f"mult1_value@{a}")
    if prof is not None and prof.t != math.inf and chi.has_log_form and m >= 2:
        # neither check depends on m, only on c_chi
        key = ("struct", chi.c_chi)
        if key not in memo:
            rel = []
            for a, _ in prof.crit:
                rel += relation_failures(local_data(f, g, chi, a, prof.t, prof.C), p)
            memo[key] = rel + profile_failures(f, g, chi, prof, dimension_params(f, g)[0])
        bad += memo[key]
    if dec is not None and rep.classification is Classification.DEGENERATE:
        bad += degenerate_failures(dec, prof, p, dimension_params(f, g)[0])
        try:
            red = degenerate_reduce(f, g, chi)
        except NotApplicable:
            red = None
        if red is not None and red.kind is Classification.DEGENERATE:
            sub = brute_sum(red.sub_f, red.sub_g, red.sub_chi, red.exclude)
            got = sub.twist(red.root, red.scale, chi.N).embed(chi.N)
            if not values_agree(got.approx, brute.approx, q, tol):
                bad.append("degen_identity")
    return bad, val.magnitude, reduced


# ------------------------------------------------------------------ runner

def run_pair(args) -> list[dict]:
    """All (p, m, chi) cases for one (f, g); one row per pair-modulus or per case."""
    case_id, fam, f, g, cfg = args
    rows = []
    for p in cfg.primes:
        fam_p = None
        for m in range(cfg.m_min, cfg.m_max + 1):
            if p ** m > cfg.max_q:
                continue
            t0 = time.perf_counter()
            if fam_p is None:
                fam_p = PhaseFamily(f, g, p)
            results = run_modulus(f, g, p, m, fam_p, cfg)
            dt = time.perf_counter() - t0
            base = {"case_id": case_id, "family": fam, "f": f.serialize(), "g": g.serialize(),
                    "p": p, "m": m}
            if cfg.grain == "case":
                for r in results:
                    rows.append(case_row(base, r, dt / max(len(results), 1)))
            else:
                rows.append(pair_row(base, results, dt))
    return rows


def select_chars(chars: list[Character], spec: tuple) -> list[Character]:
    if not spec:
        return chars
    want = set()
    for item in spec:
        c, _, k = str(item).partition(":")
        want.add((int(c), int(k or 0)))
    # p = 2 with m <= 2 stores c as 1
    return [ch for ch in chars if (ch.c, ch.kappa) in want
            or (not ch.has_log_form and any(k == ch.kappa for _, k in want))]


def check_selection(chars: list[Character], k: int) -> set[int]:
    """Indices of the first k characters at each (t_chi, principal) level."""
    if k < 0:
        return set(range(len(chars)))
    seen: dict = {}
    out = set()
    for i, ch in enumerate(chars):
        lev = (ch.t_chi, ch.principal, ch.kappa)
        if seen.get(lev, 0) < k:
            seen[lev] = seen.get(lev, 0) + 1
            out.add(i)
    return out


def run_modulus(f, g, p: int, m: int, fam_p: PhaseFamily, cfg) -> list[CaseResult]:
    chars = select_chars(all_chars(p, m), cfg.chars)[::cfg.char_stride]
    chosen = check_selection(chars, cfg.check_per_level)
    sums = char_sums(f, g, p, m)
    reports: dict = {}
    out = []
    for i, chi in enumerate(chars):
        key = bound_key(chi)
        if key not in reports:
            cl = classify(f, g, chi)
            prof = fam_p.profile(chi) if chi.has_log_form and m >= 2 else None
            try:
                rep = best_bound(f, g, chi, profile=prof, classified=cl)
            except DomainError:
                rep = None
            reports[key] = (cl, prof, rep)
        cl, prof, rep = reports[key]
        S = abs(sums[chi])
        flags = []
        if rep is None:
            out.append(CaseResult(chi, "error", S, None, {}, math.inf, ["bound_error"]))
            continue
        for name, b in rep.bounds.items():
            if b < S - cfg.slack:
                flags.append(f"violates:{name}")
        if rep.best < S - cfg.slack:
            flags.append("violates:best")
        res = CaseResult(chi, rep.classification.value, S, None, rep.bounds, rep.best, flags)
        if i in chosen:
            brute = brute_sum(f, g, chi)
            if abs(abs(brute.approx) - S) > 1e-7 * max(1.0, p ** m):
                flags.append("transform")
            bad, fast_abs, reduced = full_checks(f, g, chi, prof, rep, cl[1], brute, cfg, fam_p.memo)
            flags += bad
            res.abs_fast, res.reduced, res.checked = fast_abs, reduced, True
        out.append(res)
    return out


CASE_COLUMNS = ["case_id", "family", "f", "g", "p", "m", "c", "kappa", "classification",
                "abs_brute", "abs_fast", *BOUND_NAMES, "best", "ratio", "reduced", "flags", "seconds"]
PAIR_COLUMNS = ["case_id", "family", "f", "g", "p", "m", "n_chars", "n_checked", "n_reduced",
                "classes", "max_abs", "max_ratio", *(f"ratio_{n}" for n in BOUND_NAMES),
                "violations", "flags", "seconds"]
TIMING = {"seconds"}


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.10g}"
    return str(x)


def case_row(base: dict, r: CaseResult, dt: float) -> dict:
    row = dict(base)
    row.update(c=r.chi.c, kappa=r.chi.kappa, classification=r.classification,
               abs_brute=r.abs_brute, abs_fast=r.abs_fast, best=r.best, ratio=r.ratio,
               reduced=int(r.reduced) if r.checked else None, flags=";".join(r.flags), seconds=dt)
    for n in BOUND_NAMES:
        row[n] = r.bounds.get(n)
    row["_violation"] = bool(r.flags)
    row["_checked"] = int(r.checked)
    row["_reduced"] = int(r.reduced)
    return row


def pair_row(base: dict, results: list[CaseResult], dt: float) -> dict:
    row = dict(base)
    classes: dict[str, int] = {}
    ratios = {n: 0.0 for n in BOUND_NAMES}
    flags = set()
    nviol = 0
    for r in results:
        classes[r.classification] = classes.get(r.classification, 0) + 1
        for n, b in r.bounds.items():
            if b > 0:
                ratios[n] = max(ratios[n], r.abs_brute / b)
        if r.flags:
            nviol += 1
            flags.update(r.flags)
    row.update(
        n_chars=len(results),
        n_checked=sum(r.checked for r in results),
        n_reduced=sum(r.reduced for r in results),
        classes=";".join(f"{k}:{v}" for k, v in sorted(classes.items())),
        max_abs=max((r.abs_brute for r in results), default=0.0),
        max_ratio=max((r.ratio for r in results), default=0.0),
        violations=nviol, flags=";".join(sorted(flags)), seconds=dt,
    )
    for n in BOUND_NAMES:
        row[f"ratio_{n}"] = ratios[n] if any(n in r.bounds for r in results) else None
    row["_violation"] = nviol
    row["_checked"] = row["n_checked"]
    row["_reduced"] = row["n_reduced"]
    return row


@dataclass
class CampaignSummary:
    cases: int = 0
    rows: int = 0
    violations: int = 0
    checked: int = 0
    reduced: int = 0
    max_ratio: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    seconds: float = 0.0

    def render(self) -> str:
        lines = [f"{FORMAT_VERSION}: {self.rows} rows, {self.cases} cases, "
                 f"{self.violations} violations, {self.seconds:.1f}s"]
        if self.checked:
            lines.append(f"full checks on {self.checked} cases, reduction applied on {self.reduced}")
        for n, v in self.max_ratio.items():
            lines.append(f"  max |S|/{n} = {v:.6f}")
        for k, v in sorted(self.flags.items()):
            lines.append(f"  flag {k}: {v}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"version": FORMAT_VERSION, "cases": self.cases, "rows": self.rows,
                "violations": self.violations, "checked": self.checked, "reduced": self.reduced,
                "max_ratio": self.max_ratio, "flags": self.flags, "seconds": self.seconds}


def run_campaign(cfg: CampaignConfig, pairs=None) -> tuple[CampaignSummary, list[dict]]:
    """Run every case of the grid; rows come back ordered by case id."""
    cfg.validate()
    t0 = time.perf_counter()
    pairs = corpus(cfg) if pairs is None else pairs
    if cfg.limit:
        pairs = pairs[:cfg.limit]
    jobs = [(i, fam, f, g, cfg) for i, (fam, f, g) in enumerate(pairs)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with get_context("fork").Pool(cfg.jobs) as pool:
            chunks = pool.map(run_pair, jobs, chunksize=4)
    else:
        chunks = [run_pair(j) for j in jobs]
    rows = [r for ch in chunks for r in ch]
    summ = CampaignSummary(rows=len(rows))
    ratio_cols = [c for c in (rows[0] if rows else {}) if c.startswith("ratio_")] or list(BOUND_NAMES)
    for r in rows:
        summ.cases += r.get("n_chars", 1)
        summ.violations += int(r["_violation"])
        summ.checked += r["_checked"]
        summ.reduced += r["_reduced"]
        for fl in filter(None, r["flags"].split(";")):
            summ.flags[fl] = summ.flags.get(fl, 0) + 1
        for c in ratio_cols:
            v = r.get(c)
            if v is not None:
                n = c.removeprefix("ratio_")
                if cfg.grain == "case":
                    v = r["abs_brute"] / v if v > 0 else 0.0
                summ.max_ratio[n] = max(summ.max_ratio.get(n, 0.0), v)
    summ.seconds = time.perf_counter() - t0
    if cfg.out:
        write_report(cfg, rows, summ)
    return summ, rows


def render_csv(cfg: CampaignConfig, rows: list[dict]) -> str:
    cols = CASE_COLUMNS if cfg.grain == "case" else PAIR_COLUMNS
    buf = io.StringIO()
    buf.write(f"# {FORMAT_VERSION} grain={cfg.grain} columns={len(cols)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in cols])
    return buf.getvalue()


def render_jsonl(cfg: CampaignConfig, rows: list[dict]) -> str:
    cols = CASE_COLUMNS if cfg.grain == "case" else PAIR_COLUMNS
    lines = [json.dumps({"version": FORMAT_VERSION, "grain": cfg.grain})]
    for r in rows:
        rec = {}
        for c in cols:
            v = r.get(c)
            rec[c] = None if isinstance(v, float) and math.isinf(v) else v
        lines.append(json.dumps(rec))
    return "\n".join(lines) + "\n"


def write_report(cfg: CampaignConfig, rows: list[dict], summ: CampaignSummary) -> None:
    """Write <out> as CSV, or JSONL when the path ends in .jsonl; plus <out>.summary.json."""
    path = cfg.out
    text = render_jsonl(cfg, rows) if path.endswith(".jsonl") else render_csv(cfg, rows)
    with open(path, "w") as fh:
        fh.write(text)
    with open(path + ".summary.json", "w") as fh:
        json.dump(summ.as_dict(), fh, indent=1, sort_keys=True)


def single_case_config(chi: Character, base: CampaignConfig | None = None) -> CampaignConfig:
    base = base or CampaignConfig()
    return replace(base, primes=(chi.p,), m_min=chi.m, m_max=chi.m, grain="case",
                   chars=(f"{chi.c}:{chi.kappa}",), check_per_level=-1, char_stride=1,
                   max_q=max(base.max_q, chi.q), out=None, jobs=1, limit=0)


def run_case(f: RatFunc, g: RatFunc, chi: Character, cfg: CampaignConfig | None = None) -> dict:
    """Brute value, fast value, bounds and checks for one case, as a campaign row."""
    rows = run_pair((0, "single", f, g, single_case_config(chi, cfg)))
    return rows[0]
