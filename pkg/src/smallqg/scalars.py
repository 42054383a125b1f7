"""Exact arithmetic in a cyclotomic field Q(zeta_m).

Elements are stored as integer numerators over a common positive
denominator, in the power basis 1, z, ..., z^(phi(m)-1) reduced modulo
the m-th cyclotomic polynomial.  The representation is canonical, so
equality and hashing are structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Union

from .errors import ContextMismatch, ZeroInput

Rational = Union[int, Fraction]


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (low degree first), den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class ScalarContext:
    """The field Q(zeta_m); immutable and shared by its elements."""

    __slots__ = ("m", "phi", "poly", "_red", "_mulcache", "_zeta", "_logs", "zero", "one", "__weakref__")

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.poly = cyclotomic_poly(m)
        self.phi = len(self.poly) - 1
        phi = self.phi
        # reduction of x^k for k < 2*phi, as sparse (index, value) lists
        red = []
        cur = [0] * phi
        cur[0] = 1
        for _k in range(2 * phi):
            red.append(tuple((i, c) for i, c in enumerate(cur) if c))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * self.poly[i]
        self._red = red
        self._mulcache: dict = {}
        self._zeta: dict[int, CycScalar] = {}
        self._logs: Optional[dict] = None
        self.zero = CycScalar._raw(self, (0,) * phi, 1)
        self.one = CycScalar._raw(self, (1,) + (0,) * (phi - 1), 1)

    def __repr__(self) -> str:
        return f"ScalarContext({self.m})"

    def __reduce__(self):
        return (make_context, (self.m,))

    @property
    def unit_order(self) -> int:
        """Order of the group of roots of unity inside Q(zeta_m)."""
        return self.m if self.m % 2 == 0 else 2 * self.m

    def zeta(self, k: int = 1) -> CycScalar:
        k %= self.m
        z = self._zeta.get(k)
        if z is None:
            if k < 2 * self.phi:
                num = [0] * self.phi
                for i, c in self._red[k]:
                    num[i] = c
                z = CycScalar._raw(self, tuple(num), 1)
            else:
                z = self.zeta(k - 1) * self.zeta(1)
            self._zeta[k] = z
        return z

    def __call__(self, value) -> CycScalar:
        return self.coerce(value)

    def coerce(self, value) -> CycScalar:
        if isinstance(value, CycScalar):
            if value.ctx is self:
                return value
            if value.ctx.m == self.m:
                return CycScalar._raw(self, value.num, value.den)
            if self.m % value.ctx.m == 0:
                return value.embed(self)
            raise ContextMismatch(f"cannot coerce element of Q(zeta_{value.ctx.m}) into Q(zeta_{self.m})")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return CycScalar._raw(self, (value,) + (0,) * (self.phi - 1), 1) if value else self.zero
        if isinstance(value, Fraction):
            return CycScalar.make(self, [value.numerator] + [0] * (self.phi - 1), value.denominator)
        if isinstance(value, str):
            return parse_scalar(self, value)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycScalar")

    def unit_generator(self) -> CycScalar:
        """A generator of the roots of unity in Q(zeta_m)."""
        if self.m % 2 == 0:
            return self.zeta(1)
        return -self.zeta((self.m + 1) // 2)

    def root_log(self, x: CycScalar) -> Optional[int]:
        """k with x = w^k for the unit generator w, or None."""
        if self._logs is None:
            logs = {}
            w = self.unit_generator()
            cur = self.one
            for k in range(self.unit_order):
                logs[(cur.num, cur.den)] = k
                cur = cur * w
            self._logs = logs
        return self._logs.get((x.num, x.den))


@lru_cache(maxsize=None)
def make_context(m: int) -> ScalarContext:
    return ScalarContext(m)


class CycScalar:
    """An element of Q(zeta_m) in canonical form."""

    __slots__ = ("ctx", "num", "den", "_hash")

    @classmethod
    def _raw(cls, ctx: ScalarContext, num: tuple, den: int) -> CycScalar:
        self = object.__new__(cls)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def make(cls, ctx: ScalarContext, num: Iterable[int], den: int = 1) -> CycScalar:
        num = list(num)
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = gcd(den, *num)
        if g == 0:
            return ctx.zero
        if g != 1:
            num = [c // g for c in num]
            den //= g
        return cls._raw(ctx, tuple(num), den)

    # structure
    def __repr__(self) -> str:
        return f"CycScalar({format_scalar(self)!r}, m={self.ctx.m})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash((self.ctx.m, self.num, self.den))
            self._hash = h
        return h

    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            if other.ctx.m != self.ctx.m:
                if self.is_rational() and other.is_rational():
                    return self.num[0] * other.den == other.num[0] * self.den
                return False
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __bool__(self) -> bool:
        return any(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def _other(self, other) -> Optional[CycScalar]:
        if isinstance(other, CycScalar):
            if other.ctx is self.ctx or other.ctx.m == self.ctx.m:
                return other
            raise ContextMismatch(f"Q(zeta_{self.ctx.m}) vs Q(zeta_{other.ctx.m})")
        if isinstance(other, (int, Fraction)):
            return self.ctx.coerce(other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycScalar.make(self.ctx, [a + b for a, b in zip(self.num, o.num)], self.den)
        d1, d2 = self.den, o.den
        return CycScalar.make(self.ctx, [a * d2 + b * d1 for a, b in zip(self.num, o.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        a, b = self.num, o.num
        ia = [(i, c) for i, c in enumerate(a) if c]
        if not ia:
            return ctx.zero
        ib = [(i, c) for i, c in enumerate(b) if c]
        if not ib:
            return ctx.zero
        phi = ctx.phi
        if len(ia) == 1 and ia[0][0] == 0:
            c0 = ia[0][1]
            return CycScalar.make(ctx, [c0 * x for x in b], self.den * o.den)
        if len(ib) == 1 and ib[0][0] == 0:
            c0 = ib[0][1]
            return CycScalar.make(ctx, [c0 * x for x in a], self.den * o.den)
        key = (a, self.den, b, o.den)
        cache = ctx._mulcache
        res = cache.get(key)
        if res is not None:
            return res
        prod = [0] * (2 * phi - 1)
        for i, x in ia:
            for j, y in ib:
                prod[i + j] += x * y
        low = prod[:phi]
        red = ctx._red
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, v in red[k]:
                    low[i] += c * v
        res = CycScalar.make(ctx, low, self.den * o.den)
        if len(cache) > 500000:
            cache.clear()
        cache[key] = res
        return res

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        if not any(self.num):
            raise ZeroInput("inverse of zero")
        ctx = self.ctx
        if self.is_rational():
            return CycScalar.make(ctx, [self.den] + [0] * (ctx.phi - 1), self.num[0])
        k = ctx.root_log(self) if ctx.unit_order <= 4096 else None
        if k is not None:
            w = ctx.unit_generator()
            return w ** ((-k) % ctx.unit_order)
        return _poly_inverse(self)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> CycScalar:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def embed(self, ctx2: ScalarContext) -> CycScalar:
        """Image under Q(zeta_m) -> Q(zeta_m2), zeta_m -> zeta_m2^(m2/m)."""
        m, m2 = self.ctx.m, ctx2.m
        if m2 % m:
            raise ContextMismatch(f"{m} does not divide {m2}")
        if m2 == m:
            return CycScalar._raw(ctx2, self.num, self.den)
        r = m2 // m
        acc = [0] * ctx2.phi
        for k, c in enumerate(self.num):
            if c:
                z = ctx2.zeta(k * r)
                for i, v in enumerate(z.num):
                    if v:
                        acc[i] += c * v
        return CycScalar.make(ctx2, acc, self.den)

    def galois(self, k: int) -> CycScalar:
        """Image under the automorphism zeta -> zeta^k, gcd(k, m) = 1."""
        ctx = self.ctx
        if gcd(k, ctx.m) != 1:
            raise ValueError("k must be a unit mod m")
        acc = [0] * ctx.phi
        for j, c in enumerate(self.num):
            if c:
                z = ctx.zeta(j * k)
                for i, v in enumerate(z.num):
                    if v:
                        acc[i] += c * v
        return CycScalar.make(ctx, acc, self.den)


def _poly_inverse(x: CycScalar) -> CycScalar:
    # extended Euclid in Q[t] for x(t) * u(t) = 1 mod Phi_m(t)
    ctx = x.ctx

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a = trim([Fraction(c, x.den) for c in x.num])
    b = [Fraction(c) for c in ctx.poly]
    s0, s1 = [Fraction(1)], []
    # invariant: s0 * x = a, s1 * x = b (mod Phi)
    while b:
        # divide a by b
        q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
        r = list(a)
        while len(r) >= len(b) and r:
            coef = r[-1] / b[-1]
            shift = len(r) - len(b)
            q[shift] = coef
            for i, v in enumerate(b):
                r[shift + i] -= coef * v
            trim(r)
        # s_new = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, u in enumerate(q):
            if u:
                for j, v in enumerate(s1):
                    prod[i + j] += u * v
        n = max(len(s0), len(prod))
        snew = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0) for i in range(n)]
        a, b = b, r
        s0, s1 = s1, trim(snew)
    # a is a nonzero constant
    c = a[0]
    coeffs = [v / c for v in s0]
    # reduce modulo Phi_m (s0 may exceed degree phi-1)
    phi = ctx.phi
    coeffs += [Fraction(0)] * max(0, phi - len(coeffs))
    for k in range(len(coeffs) - 1, phi - 1, -1):
        top = coeffs[k]
        if top:
            for i, v in enumerate(ctx.poly):
                coeffs[k - phi + i] -= top * v
    coeffs = coeffs[:phi]
    den = 1
    for v in coeffs:
        den = den * v.denominator // gcd(den, v.denominator)
    return CycScalar.make(ctx, [int(v * den) for v in coeffs], den)


def root_of_unity(ctx: ScalarContext, k: int) -> CycScalar:
    """zeta_m^k in canonical form."""
    return ctx.zeta(k)


def multiplicative_order(x: CycScalar) -> Optional[int]:
    """Least n >= 1 with x^n = 1, or None when x is not a root of unity."""
    if x.is_zero():
        raise ZeroInput("order of zero")
    ctx = x.ctx
    k = ctx.root_log(x)
    if k is None:
        return None
    M = ctx.unit_order
    return M // gcd(k, M)


# serialization

def _fmt_rational(num: int, den: int) -> str:
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(x: CycScalar) -> str:
    parts = []
    for k, c in enumerate(x.num):
        if not c:
            continue
        g = gcd(c, x.den)
        coef = _fmt_rational(c // g, x.den // g)
        if k == 0:
            parts.append(coef)
        elif k == 1:
            parts.append(f"{coef}*z")
        else:
            parts.append(f"{coef}*z^{k}")
    return " + ".join(parts) if parts else "0"


def context_header(ctx: ScalarContext) -> str:
    return f"zeta_order={ctx.m}"


def parse_header(text: str) -> ScalarContext:
    m = re.fullmatch(r"\s*zeta_order\s*=\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"bad scalar header {text!r}")
    return make_context(int(m.group(1)))


_TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?(?:\*?(z)(?:\^(-?\d+))?)?$")


def parse_scalar(ctx: ScalarContext, text: str) -> CycScalar:
    """Parse 'a0 + a1*z + a2*z^2 ...'; powers of z may exceed phi(m)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    s = re.sub(r"(?<=[^\^+*])-", "+-", s)
    total = ctx.zero
    for term in s.split("+"):
        if not term:
            continue
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"bad scalar term {term!r} in {text!r}")
        sign, coef, z, power = m.groups()
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        k = 0 if z is None else (1 if power is None else int(power))
        total = total + ctx.zeta(k) * ctx.coerce(c)
    return total
