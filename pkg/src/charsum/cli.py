"""charsum command line: eval, bound, reduce, verify, selftest."""
from __future__ import annotations

import argparse
import json
import math
import re
import sys

from .bounds import BOUND_NAMES, best_bound, dimension_param_mod_p
from .campaign import (
    CASE_COLUMNS, CampaignConfig, render_jsonl, run_campaign, run_case,
)
from .charmod import make_char, principal
from .errors import DomainError
from .evaluate import Classification, brute_sum, fast_eval
from .polyrat import ParseError, RatFunc

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_OUTPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse(text: str, what: str) -> RatFunc:
    try:
        return RatFunc.parse(text)
    except ParseError as e:
        raise UsageError(f"cannot parse {what}: {e.annotated()}") from None


_CHI = re.compile(r"\s*chi\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def parse_chi(text: str | None, p: int | None, m: int | None, kappa: int):
    """(p, m, c, kappa) from an integer c or a spec 'chi(p,m,c[,kappa])'; c None means principal."""
    if text is None:
        return p, m, None, kappa
    mt = _CHI.match(text)
    if mt:
        p2, m2, c = int(mt[1]), int(mt[2]), int(mt[3])
        if (p is not None and p != p2) or (m is not None and m != m2):
            raise UsageError(f"{text} disagrees with --p/--m")
        return p2, m2, c, int(mt[4]) if mt[4] else kappa
    try:
        return p, m, int(text), kappa
    except ValueError:
        raise UsageError(f"bad character spec {text!r}; use c or chi(p,m,c[,kappa])") from None


def _case(args):
    p, m, c, kappa = parse_chi(args.chi, args.p, args.m, args.kappa)
    if p is None or m is None:
        raise UsageError("--p and --m are required")
    f, g = _parse(args.f, "f"), _parse(args.g, "g")
    try:
        c = principal(p, m).c if c is None else c
        chi = make_char(p, m, c, kappa)
    except (DomainError, ValueError) as e:
        raise UsageError(str(e)) from None
    if chi.q > args.max_q:
        raise UsageError(f"p^m = {chi.q} exceeds --max-q {args.max_q}")
    return f, g, chi


def _clean(row: dict) -> dict:
    out = {}
    for k in CASE_COLUMNS:
        v = row.get(k)
        out[k] = None if isinstance(v, float) and math.isinf(v) else v
    return out


def cmd_eval(args) -> int:
    f, g, chi = _case(args)
    row = run_case(f, g, chi)
    val = brute_sum(f, g, chi).approx
    if args.json:
        print(json.dumps(_clean(row)))
    else:
        print(f"S(chi_{chi.c}{'' if chi.p != 2 else f',{chi.kappa}'}, {g}, {f}, {chi.p}^{chi.m})")
        print(f"  classification  {row['classification']}")
        print(f"  value           {val.real:.10g}{val.imag:+.10g}i")
        print(f"  |S| brute       {row['abs_brute']:.10g}")
        print(f"  |S| fast        {row['abs_fast']:.10g}")
        print(f"  best bound      {row['best']:.10g}")
        if row["flags"]:
            print(f"  flags           {row['flags']}")
    if args.trace:
        _, tr = fast_eval(f, g, chi)
        print(json.dumps(tr.as_dict()) if args.json else tr.render())
    return EXIT_VIOLATION if row["flags"] else EXIT_OK


def cmd_bound(args) -> int:
    f, g, chi = _case(args)
    rep = best_bound(f, g, chi)
    S = brute_sum(f, g, chi).magnitude
    rec = rep.as_record()
    rec["abs_brute"] = S
    if args.weil_dp and chi.m == 1 and rep.classification is Classification.NON_DEGENERATE:
        # Weil with D_p: degree mod p plus distinct zeros over the algebraic closure of F_p
        Dp = dimension_param_mod_p(f, g, chi.p)
        if Dp is not None and Dp >= 1:
            rec["D_p"], rec["weil_dp"] = Dp, (Dp - 1) * math.sqrt(chi.p)
    if args.json:
        print(json.dumps({k: (None if isinstance(v, float) and math.isinf(v) else v) for k, v in rec.items()}))
    else:
        print(f"classification {rec['classification']}  D={rep.D} Delta={rep.Delta} t={rec['t']} ell={rep.ell}")
        for name in BOUND_NAMES:
            if name in rep.bounds:
                print(f"  {name:<20} {rep.bounds[name]:.10g}")
        if "weil_dp" in rec:
            print(f"  {'weil_dp':<20} {rec['weil_dp']:.10g}  (D_p = {rec['D_p']})")
        print(f"  {'trivial':<20} {rep.trivial:.10g}")
        print(f"  {'best':<20} {rep.best:.10g}")
        print(f"  |S| = {S:.10g}")
    return EXIT_VIOLATION if rep.best < S - 1e-6 else EXIT_OK


def cmd_reduce(args) -> int:
    f, g, chi = _case(args)
    val, tr = fast_eval(f, g, chi)
    if args.json:
        print(json.dumps({"value": [val.approx.real, val.approx.imag], "trace": tr.as_dict()}))
    else:
        print(tr.render())
        z = val.approx
        print(f"value {z.real:.10g}{z.imag:+.10g}i, |S| = {abs(z):.10g}")
    return EXIT_OK


def _int_list(text: str) -> tuple:
    return tuple(int(s) for s in text.split(",") if s.strip())


def _m_range(text: str) -> tuple[int, int]:
    a, _, b = text.partition("-")
    return int(a), int(b or a)


def campaign_config(args) -> CampaignConfig:
    text = ""
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read config: {e}") from None
    over = {"jobs": args.jobs, "out": args.out, "max_q": args.max_q_set}
    if args.p is not None:
        over["primes"] = _int_list(str(args.p))
    if args.m is not None:
        over["m_min"], over["m_max"] = _m_range(str(args.m))
    try:
        return CampaignConfig.from_text(text, **over)
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad campaign config: {e}") from None


def cmd_verify(args) -> int:
    cfg = campaign_config(args)
    if cfg.out:
        try:
            with open(cfg.out, "w"):
                pass
        except OSError as e:
            print(f"cannot write {cfg.out}: {e}", file=sys.stderr)
            return EXIT_OUTPUT
    summ, rows = run_campaign(cfg)
    if args.json:
        print(json.dumps(summ.as_dict()))
    else:
        print(summ.render())
    return EXIT_VIOLATION if summ.violations else EXIT_OK


def selftest_checks():
    """(name, ok) for exactly known values and a small campaign."""
    import cmath

    from .charmod import principal
    from .padic import gauss_direct

    X = RatFunc.x()
    out = []
    s25 = abs(sum(cmath.exp(2j * math.pi * (x * x % 25) / 25) for x in range(1, 26)))
    out.append(("sum e_25(x^2) = 5", abs(s25 - 5) < 1e-9))
    v, _ = fast_eval(X ** 3, RatFunc.const(1), principal(3, 3))
    out.append(("|S(x^3, 27)| = 9", abs(v.magnitude - 9) < 1e-9))
    for p, want in ((5, complex(math.sqrt(5), 0)), (7, complex(0, math.sqrt(7)))):
        out.append((f"quadratic Gauss sum mod {p}", abs(gauss_direct(p) - want) < 1e-12))
    summ, _ = run_campaign(CampaignConfig(primes=(3, 5), m_min=1, m_max=3, families=("monomial",),
                                          monomial_max=4, check_per_level=1))
    out.append((f"monomial campaign ({summ.cases} cases)", summ.violations == 0))
    return out


def cmd_selftest(args) -> int:
    results = selftest_checks()
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charsum", description="Mixed character sums mod p^m.")
    sub = ap.add_subparsers(dest="command", required=True)

    def case_flags(sp):
        sp.add_argument("--p", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--f", default="x", help="rational function in x, e.g. 'x^3+2/x'")
        sp.add_argument("--g", default="1")
        sp.add_argument("--chi", help="c, or chi(p,m,c[,kappa]); default principal")
        sp.add_argument("--kappa", type=int, default=0, help="chi(-1) = (-1)^kappa, p = 2 only")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--trace", action="store_true")
        sp.add_argument("--max-q", type=int, default=5 ** 8)

    for name, fn, hlp in (("eval", cmd_eval, "evaluate S by brute force and reduction"),
                          ("bound", cmd_bound, "all applicable upper bounds for |S|"),
                          ("reduce", cmd_reduce, "show the reduction trace")):
        sp = sub.add_parser(name, help=hlp)
        case_flags(sp)
        if name == "bound":
            sp.add_argument("--weil-dp", action="store_true",
                            help="for m = 1 also report the Weil bound with D_p in place of D")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("verify", help="run a verification campaign")
    sp.add_argument("--config")
    sp.add_argument("--p", help="comma separated primes")
    sp.add_argument("--m", help="m or m_min-m_max")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--out")
    sp.add_argument("--max-q", dest="max_q_set", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("selftest", help="check exactly known values")
    sp.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"charsum: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"charsum: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
