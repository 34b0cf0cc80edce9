"""Exact integer polynomials, rational functions, truncated p-adic series.

Polynomials are tuples of Python ints, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import DomainError
from .padic import ilog, log_terms, vp

IntPoly = tuple


# ---------------------------------------------------------------- integer polys

def trim(a: Sequence[int]) -> IntPoly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def deg(a: IntPoly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def padd(a, b) -> IntPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a) -> IntPoly:
    return tuple(-c for c in a)


def psub(a, b) -> IntPoly:
    return padd(a, pneg(b))


def pscale(a, c: int) -> IntPoly:
    return trim([c * x for x in a])


def pmul(a, b) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def ppow(a, n: int) -> IntPoly:
    out: IntPoly = (1,)
    for _ in range(n):
        out = pmul(out, a)
    return out


def pderiv(a) -> IntPoly:
    return trim([i * a[i] for i in range(1, len(a))])


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def peval_mod(a, x: int, q: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


def content(a) -> int:
    return reduce(math.gcd, a, 0)


def primitive(a) -> IntPoly:
    c = content(a)
    if c == 0:
        return ()
    if a[-1] < 0:
        c = -c
    return tuple(x // c for x in a)


def pshift(a, s) -> IntPoly:
    """a(X + s), by repeated synthetic division."""
    a = list(a)
    n = len(a)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] += s * a[j + 1]
    return trim(a)


def pcompose_linear(a, s: int, h: int) -> IntPoly:
    """a(s + h X)."""
    b = pshift(a, s)
    return trim([c * h ** i for i, c in enumerate(b)])


def pseudo_rem(a, b) -> IntPoly:
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [lb * x for x in a]
        for i, y in enumerate(b):
            a[i + shift] -= la * y
        a = list(trim(a))
    return tuple(a)


def pgcd(a, b) -> IntPoly:
    """Primitive gcd over Q[X] with positive leading coefficient."""
    a, b = primitive(a), primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    return a


def pexact_div(a, b) -> IntPoly:
    """a / b for b dividing a over Z[X]."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def distinct_zeros(h) -> int:
    """Number of distinct complex zeros of a nonzero integer polynomial."""
    h = trim(h)
    if not h:
        raise DomainError("zero polynomial has no finite zero count")
    return deg(h) - deg(pgcd(h, pderiv(h)))


# ------------------------------------------------------------------ mod p polys

def fp_trim(a, p) -> IntPoly:
    return trim([x % p for x in a])


def fp_mul(a, b, p) -> IntPoly:
    return fp_trim(pmul(a, b), p)


def fp_divmod(a, b, p):
    a = list(fp_trim(a, p))
    b = fp_trim(b, p)
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] = (a[k + i] - c * y) % p
    return trim(q), fp_trim(a, p)


def fp_monic(a, p) -> IntPoly:
    a = fp_trim(a, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def fp_gcd(a, b, p) -> IntPoly:
    a, b = fp_trim(a, p), fp_trim(b, p)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    return fp_monic(a, p)


def fp_deriv(a, p) -> IntPoly:
    return fp_trim(pderiv(a), p)


def fp_sqfree(a, p) -> dict[int, IntPoly]:
    """Squarefree decomposition of a nonzero poly over F_p: {i: A_i}, a ~ prod A_i^i.

    Each A_i is monic, squarefree, and the A_i are pairwise coprime.
    """
    f = fp_monic(a, p)
    out: dict[int, IntPoly] = {}
    if len(f) <= 1:
        return out

    def put(i, z):
        if len(z) > 1:
            out[i] = fp_monic(fp_mul(out.get(i, (1,)), z, p), p)

    c = fp_gcd(f, fp_deriv(f, p), p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = fp_gcd(w, c, p)
        put(i, fp_divmod(w, y, p)[0])
        c = fp_divmod(c, y, p)[0]
        w = y
        i += 1
    if len(c) > 1:
        # c is a p-th power: its nonzero coefficients sit at multiples of p
        root = trim([c[k] for k in range(0, len(c), p)])
        for k, v in fp_sqfree(root, p).items():
            put(k * p, v)
    return out


def fp_radical_degree(a, p) -> int:
    """Number of distinct zeros over the algebraic closure of F_p."""
    return sum(deg(v) for v in fp_sqfree(a, p).values())


def fp_root_mult(a, x: int, p: int) -> int:
    a = fp_trim(a, p)
    k = 0
    while a and peval_mod(a, x, p) == 0:
        a = fp_divmod(a, (-x % p, 1), p)[0]
        k += 1
    return k


# ---------------------------------------------------------- rational functions

class RatFunc:
    """A rational function num/den over Q, kept in a canonical reduced form.

    num and den are coprime integer polynomials, den has positive leading
    coefficient and gcd(content(num), content(den)) = 1.
    """
    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num, den = trim(num), trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        if len(den) > 1:
            g = pgcd(num, den)
            if len(g) > 1:
                num, den = pexact_div(num, g), pexact_div(den, g)
        c = math.gcd(content(num), content(den))
        if den[-1] < 0:
            c = -c
        self.num = tuple(x // c for x in num)
        self.den = tuple(x // c for x in den)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c.numerator,), (c.denominator,))

    @classmethod
    def x(cls) -> "RatFunc":
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        return parse_ratfunc(text)

    def __repr__(self):
        return f"RatFunc({self.serialize()})"

    def __str__(self):
        return self.pretty()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = _lift(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, o):
        o = _lift(o)
        return RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den)

    def __sub__(self, o):
        return self + (-_lift(o))

    def __rsub__(self, o):
        return _lift(o) - self

    def __mul__(self, o):
        o = _lift(o)
        return RatFunc(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _lift(o)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(pmul(self.num, o.den), pmul(self.den, o.num))

    def __rtruediv__(self, o):
        return _lift(o) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.const(1) / (self ** (-n))
        return RatFunc(ppow(self.num, n), ppow(self.den, n))

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_laurent(self) -> bool:
        """True when the denominator is a monomial c X^k."""
        return all(c == 0 for c in self.den[:-1])

    def laurent_terms(self) -> dict[int, Fraction]:
        if not self.is_laurent():
            raise DomainError("not a Laurent polynomial")
        k = deg(self.den)
        c = self.den[-1]
        return {i - k: Fraction(a, c) for i, a in enumerate(self.num) if a}

    def degree(self) -> int:
        return max(deg(self.num), deg(self.den), 0)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(psub(pmul(pderiv(n), d), pmul(n, pderiv(d))), pmul(d, d))

    def shift(self, s: int) -> "RatFunc":
        """f(X + s)."""
        return RatFunc(pshift(self.num, s), pshift(self.den, s))

    def ord_p(self, p: int):
        """Gauss valuation; math.inf for zero."""
        if not self.num:
            return math.inf
        return vp(content(self.num), p) - vp(content(self.den), p)

    def scale_p(self, p: int, k: int) -> "RatFunc":
        """p^k f for any integer k."""
        if k >= 0:
            return RatFunc(pscale(self.num, p ** k), self.den)
        return RatFunc(self.num, pscale(self.den, p ** (-k)))

    def reduce_mod_p(self, p: int):
        """(num, den) over F_p after cancelling their gcd; den is monic.

        Requires ord_p(f) >= 0 so that den does not vanish mod p.
        """
        n, d = fp_trim(self.num, p), fp_trim(self.den, p)
        if not d:
            raise DomainError("denominator vanishes mod p")
        if not n:
            return (), (1,)
        g = fp_gcd(n, d, p)
        n, d = fp_divmod(n, g, p)[0], fp_divmod(d, g, p)[0]
        inv = pow(d[-1], -1, p)
        return tuple(x * inv % p for x in n), tuple(x * inv % p for x in d)

    def deg_p(self, p: int):
        """Degree of f reduced mod p, or None when ord_p(f) < 0."""
        if vp(content(self.den), p) > 0:
            return None
        n, d = self.reduce_mod_p(p)
        return max(deg(n), deg(d), 0)

    def eval_exact(self, x) -> Fraction:
        d = peval(self.den, Fraction(x))
        if d == 0:
            raise ZeroDivisionError("pole")
        return peval(self.num, Fraction(x)) / d

    def eval_mod(self, x: int, p: int, N: int):
        return eval_mod(self, x, p, N)

    def serialize(self) -> str:
        return "(" + ",".join(map(str, self.num)) + ")/(" + ",".join(map(str, self.den)) + ")"

    @classmethod
    def deserialize(cls, text: str) -> "RatFunc":
        m = re.fullmatch(r"\s*\(([-0-9,\s]*)\)\s*/\s*\(([-0-9,\s]*)\)\s*", text)
        if not m:
            raise DomainError(f"bad serialized rational function: {text!r}")

        def coeffs(s):
            s = s.strip()
            return tuple(int(c) for c in s.split(",")) if s else ()
        return cls(coeffs(m.group(1)), coeffs(m.group(2)))

    def pretty(self) -> str:
        def show(a):
            if not a:
                return "0"
            parts = []
            for i in range(len(a) - 1, -1, -1):
                c = a[i]
                if c == 0:
                    continue
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                if mono and abs(c) == 1:
                    body = mono
                elif mono:
                    body = f"{abs(c)}*{mono}"
                else:
                    body = str(abs(c))
                sign = "-" if c < 0 else "+"
                parts.append((sign, body))
            s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            for sign, body in parts[1:]:
                s += f" {sign} {body}"
            return s
        if self.den == (1,):
            return show(self.num)
        n = show(self.num)
        if len([c for c in self.num if c]) > 1:
            n = f"({n})"
        return f"{n}/({show(self.den)})"


def _lift(o) -> RatFunc:
    if isinstance(o, RatFunc):
        return o
    if isinstance(o, (int, Fraction)):
        return RatFunc.const(o)
    raise TypeError(f"cannot treat {type(o).__name__} as a rational function")


class _Pole:
    def __repr__(self):
        return "POLE"


POLE = _Pole()


def eval_mod(f: RatFunc, x: int, p: int, N: int):
    """f(x) mod p^N, or POLE when the denominator vanishes at x mod p."""
    if f.ord_p(p) < 0:
        raise DomainError("ord_p(f) < 0: f has no values mod p")
    q = p ** N
    d = peval_mod(f.den, x, q)
    if d % p == 0:
        return POLE
    return peval_mod(f.num, x, q) * pow(d, -1, q) % q


def measures(f: RatFunc, p: int):
    """(deg f, deg_p f, ord_p f); deg_p is None when ord_p f < 0."""
    return f.degree(), f.deg_p(p), f.ord_p(p)


def rth_power_test(g: RatFunc, r: int, p: int):
    """Decide whether g = b h^r mod p. Returns (b, num_h, den_h) over F_p or None."""
    n, d = g.reduce_mod_p(p)
    if not n:
        raise DomainError("g vanishes identically mod p")
    b = n[-1]
    hn, hd = (1,), (1,)
    for poly, side in ((n, 0), (d, 1)):
        for i, a in fp_sqfree(poly, p).items():
            if i % r:
                return None
            piece = (1,)
            for _ in range(i // r):
                piece = fp_mul(piece, a, p)
            if side == 0:
                hn = fp_mul(hn, piece, p)
            else:
                hd = fp_mul(hd, piece, p)
    return b, hn, hd


# --------------------------------------------------------------- power series

@dataclass(frozen=True)
class PSeries:
    """Truncated power series sum a_j Y^j mod p^N, with a_0 first."""
    p: int
    N: int
    coeffs: tuple

    @property
    def mod(self) -> int:
        return self.p ** self.N

    def ord(self):
        """Minimum p-adic order of the coefficients, capped at N (math.inf if all vanish)."""
        vals = [vp(c, self.p) for c in self.coeffs if c % self.mod]
        return min(vals) if vals else math.inf

    def as_poly(self) -> IntPoly:
        return trim(self.coeffs)

    def derivative(self) -> "PSeries":
        return PSeries(self.p, self.N, tuple(j * self.coeffs[j] % self.mod for j in range(1, len(self.coeffs))))


def series_mul(a, b, mod: int, T: int) -> list:
    out = [0] * T
    for i, x in enumerate(a[:T]):
        if x:
            for j in range(min(len(b), T - i)):
                out[i + j] = (out[i + j] + x * b[j]) % mod
    return out


def series_inv(a, mod: int, T: int) -> list:
    """Inverse of a series whose constant term is a unit mod `mod`."""
    inv0 = pow(a[0], -1, mod)
    out = [0] * T
    out[0] = inv0
    for k in range(1, T):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s += a[j] * out[k - j]
        out[k] = (-s * inv0) % mod
    return out


def taylor_series(f: RatFunc, alpha: int, p: int, N: int, T: int, scale: int = 1) -> PSeries:
    """Coefficients of f(alpha + scale*Y) mod p^N, for j = 0..T-1."""
    mod = p ** N
    num = pcompose_linear(f.num, alpha, scale)
    den = pcompose_linear(f.den, alpha, scale)
    if peval(f.den, alpha) % p == 0:
        raise DomainError(f"{alpha} is a pole of f mod {p}")
    num = [c % mod for c in num[:T]] + [0] * max(0, T - len(num))
    den = [c % mod for c in den[:T]]
    return PSeries(p, N, tuple(series_mul(num, series_inv(den, mod, T), mod, T)))


def series_log1p(u: Sequence[int], p: int, N: int) -> PSeries:
    """log(1 + u) mod p^N for a series u with u_0 = 0 and p | u (4 | u when p = 2).

    The input coefficients must be correct modulo p^(N + E), where E is the
    largest p-adic order of a retained index n; log1p_precision gives it.
    """
    T = len(u)
    if u and u[0]:
        raise DomainError("log1p needs zero constant term")
    unit = 4 if p == 2 else p
    if any(c % unit for c in u):
        raise DomainError(f"log1p needs coefficients divisible by {unit}")
    mod = p ** N
    vals = [vp(c, p) for c in u if c]
    if not vals:
        return PSeries(p, N, (0,) * T)
    v = min(vals)
    terms = log_terms(v, p, N)
    if not terms:
        return PSeries(p, N, (0,) * T)
    E = max(vp(n, p) for n in terms)
    big = p ** (N + E)
    out = [0] * T
    power = [1] + [0] * (T - 1)
    k = 0
    for n in terms:
        while k < n:
            power = series_mul(power, u, big, T)
            k += 1
        e = vp(n, p)
        inv = pow(n // p ** e, -1, mod)
        sign = 1 if n % 2 else -1
        for j in range(T):
            if power[j]:
                assert power[j] % p ** e == 0
                out[j] = (out[j] + sign * (power[j] // p ** e) * inv) % mod
    return PSeries(p, N, tuple(out))


def log1p_precision(p: int, N: int) -> int:
    """Extra digits series_log1p may divide away when the input order is 1."""
    return ilog(N + ilog(N, p) + 1, p) + 1


# ------------------------------------------------------------------- parsing

class ParseError(DomainError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos

    def annotated(self) -> str:
        return f"{self.args[0]}\n  {self.text}\n  {' ' * self.pos}^"


_TOKEN = re.compile(r"\s*(?:(\d+)|([xX])|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1):
            toks.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("x", None, m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append((ch, None, m.start(3)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_ratfunc(text: str) -> RatFunc:
    """Parse an expression in x with integer literals and + - * / ^ ( )."""
    if re.fullmatch(r"\s*\([-0-9,\s]*\)\s*/\s*\([-0-9,\s]*\)\s*", text):
        return RatFunc.deserialize(text)
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i][0]

    def take(kind=None):
        nonlocal i
        t = toks[i]
        if kind and t[0] != kind:
            raise ParseError(f"expected {kind!r}", text, t[2])
        i += 1
        return t

    def expr():
        val = term()
        while peek() in "+-" and peek() != "end":
            op = take()[0]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in ("*", "/", "x", "int", "("):
            if peek() in ("*", "/"):
                op, _, pos = take()
            else:
                op, pos = "*", toks[i][2]
            rhs = unary()
            if op == "/":
                if rhs.is_zero():
                    raise ParseError("division by zero", text, pos)
                val = val / rhs
            else:
                val = val * rhs
        return val

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            t = take("int")
            e = sign * t[1]
            if e < 0 and base.is_zero():
                raise ParseError("zero to a negative power", text, t[2])
            base = base ** e
        return base

    def atom():
        t = toks[i]
        if t[0] == "int":
            take()
            return RatFunc.const(t[1])
        if t[0] == "x":
            take()
            return RatFunc.x()
        if t[0] == "(":
            take()
            v = expr()
            take(")")
            return v
        what = "end of input" if t[0] == "end" else repr(t[0])
        raise ParseError(f"unexpected {what}", text, t[2])

    val = expr()
    if peek() != "end":
        raise ParseError(f"unexpected {toks[i][0]!r}", text, toks[i][2])
    return val
