"""Finite abelian groups in invariant-factor form, characters, group algebras.

Elements and characters are plain integer tuples with one entry per
invariant factor.  The character with exponents e pairs with g as
zeta_{n_r}^{sum_i e_i g_i (n_r / n_i)} where n_r is the exponent.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Iterator, Optional

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import GroupMismatch
from .scalars import CycScalar, ScalarContext, make_context

Elem = tuple


class AbelianGroup:
    """Z/n_1 x ... x Z/n_r with n_1 | n_2 | ... | n_r, each n_i >= 2."""

    __slots__ = ("invariants", "order", "exponent", "_weights", "_elements")

    def __init__(self, invariants: Iterable[int]):
        inv = tuple(int(n) for n in invariants)
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariants {inv} are not a divisor chain")
        if any(n < 2 for n in inv):
            raise ValueError("invariant factors must be >= 2")
        self.invariants = inv
        self.order = prod(inv)
        self.exponent = inv[-1] if inv else 1
        self._weights = tuple(self.exponent // n for n in inv)
        self._elements = None

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and other.invariants == self.invariants

    def __hash__(self) -> int:
        return hash(("AbelianGroup", self.invariants))

    def __repr__(self) -> str:
        return f"AbelianGroup({format_group(self)!r})"

    @property
    def rank(self) -> int:
        return len(self.invariants)

    # elements
    def elem(self, exps: Iterable[int]) -> Elem:
        exps = tuple(exps)
        if len(exps) != len(self.invariants):
            raise GroupMismatch(f"element {exps} does not fit {format_group(self)}")
        return tuple(e % n for e, n in zip(exps, self.invariants))

    def identity(self) -> Elem:
        return (0,) * len(self.invariants)

    def mul(self, g: Elem, h: Elem) -> Elem:
        if len(g) != len(self.invariants) or len(h) != len(self.invariants):
            raise GroupMismatch("elements from different groups")
        return tuple((a + b) % n for a, b, n in zip(g, h, self.invariants))

    def inv(self, g: Elem) -> Elem:
        if len(g) != len(self.invariants):
            raise GroupMismatch("element from a different group")
        return tuple((-a) % n for a, n in zip(g, self.invariants))

    def pow(self, g: Elem, k: int) -> Elem:
        return tuple((a * k) % n for a, n in zip(g, self.invariants))

    def element_op(self, g: Elem, h: Optional[Elem], op: str) -> Elem:
        if op == "mul":
            return self.mul(g, h)
        if op == "inv":
            return self.inv(g)
        raise ValueError(f"unknown op {op!r}")

    def prod(self, elems: Iterable[Elem]) -> Elem:
        out = [0] * len(self.invariants)
        for g in elems:
            for i, a in enumerate(g):
                out[i] += a
        return tuple(a % n for a, n in zip(out, self.invariants))

    def element_order(self, g: Elem) -> int:
        o = 1
        for a, n in zip(g, self.invariants):
            k = n // gcd(a, n)
            o = o * k // gcd(o, k)
        return o

    def elements(self) -> list[Elem]:
        if self._elements is None:
            self._elements = list(itertools.product(*(range(n) for n in self.invariants)))
        return self._elements

    # characters
    def pairing(self, chi: Elem, g: Elem) -> int:
        """Exponent k with chi(g) = zeta_{exponent}^k, reduced mod the exponent."""
        if len(chi) != len(self.invariants) or len(g) != len(self.invariants):
            raise GroupMismatch("character and element do not fit the group")
        return sum(e * a * w for e, a, w in zip(chi, g, self._weights)) % self.exponent

    def char_eval(self, chi: Elem, g: Elem, ctx: Optional[ScalarContext] = None) -> CycScalar:
        if ctx is None:
            ctx = make_context(self.exponent)
        if ctx.m % self.exponent:
            raise GroupMismatch(f"context Q(zeta_{ctx.m}) cannot hold values of {format_group(self)}")
        return ctx.zeta(self.pairing(chi, g) * (ctx.m // self.exponent))

    def char_mul(self, chi: Elem, psi: Elem) -> Elem:
        return self.mul(chi, psi)

    def char_is_trivial(self, chi: Elem) -> bool:
        return not any(chi)

    def pullback(self, chi: Elem, images: tuple) -> Elem:
        """The character chi o phi, for phi given by generator images into self."""
        out = []
        for img, n in zip(images, self.invariants):
            k = self.pairing(chi, img)
            w = self.exponent // n
            if k % w:
                raise GroupMismatch("images do not define a homomorphism")
            out.append((k // w) % n)
        return tuple(out)


def apply_hom(target: AbelianGroup, images: tuple, g: Elem) -> Elem:
    """phi(g) for phi determined by the images of the source generators."""
    out = [0] * target.rank
    for a, img in zip(g, images):
        if a:
            for i, v in enumerate(img):
                out[i] += a * v
    return tuple(x % n for x, n in zip(out, target.invariants))


def enumerate_isomorphisms(G1: AbelianGroup, G2: AbelianGroup, constraint=None) -> Iterator[tuple]:
    """Yield every isomorphism G1 -> G2 as a tuple of generator images.

    `constraint(k, image, previous)` may veto the image of generator k
    given the images already chosen for generators 0..k-1.
    """
    if G1.invariants != G2.invariants:
        return
    inv = G1.invariants
    r = len(inv)
    elems = G2.elements()
    by_order: dict[int, list] = {}
    for g in elems:
        by_order.setdefault(G2.element_order(g), []).append(g)

    def rec(k, images, span):
        if k == r:
            yield tuple(images)
            return
        n = inv[k]
        for g in by_order.get(n, []):
            if constraint is not None and not constraint(k, g, images):
                continue
            # <g> must meet the span trivially
            multiples = [G2.pow(g, t) for t in range(1, n)]
            if any(h in span for h in multiples):
                continue
            new_span = {G2.mul(s, G2.pow(g, t)) for s in span for t in range(n)}
            images.append(g)
            yield from rec(k + 1, images, new_span)
            images.pop()

    yield from rec(0, [], {G2.identity()})


# normalization of arbitrary cyclic products

class Normalization:
    """Coordinate change from Z/m_1 x ... x Z/m_k to invariant-factor form."""

    def __init__(self, moduli: Iterable[int]):
        moduli = [int(m) for m in moduli]
        if any(m < 1 for m in moduli):
            raise ValueError("moduli must be positive")
        self.moduli = tuple(moduli)
        k = len(moduli)
        if k == 0:
            self.group = AbelianGroup(())
            self._rows = []
            self._crows = []
            return
        D = Matrix.diag(*moduli) if k > 1 else Matrix([[moduli[0]]])
        S, U, V = smith_normal_decomp(D, domain=ZZ)
        diag = [abs(int(S[i, i])) for i in range(k)]
        Uinv = U.inv()
        keep = [j for j in range(k) if diag[j] != 1]
        keep.sort(key=lambda j: diag[j])
        self.group = AbelianGroup([diag[j] for j in keep])
        # y_j = sum_i U[j, i] x_i
        self._rows = [[int(U[j, i]) for i in range(k)] for j in keep]
        # f_j = s_j * sum_i e_i Uinv[i, j] / m_i
        self._crows = [(diag[j], [Uinv[i, j] for i in range(k)]) for j in keep]

    def elem(self, x: Iterable[int]) -> Elem:
        x = list(x)
        if len(x) != len(self.moduli):
            raise GroupMismatch(f"element {x} does not fit moduli {self.moduli}")
        return self.group.elem(sum(r * v for r, v in zip(row, x)) for row in self._rows)

    def char(self, e: Iterable[int]) -> Elem:
        from fractions import Fraction

        e = list(e)
        if len(e) != len(self.moduli):
            raise GroupMismatch(f"character {e} does not fit moduli {self.moduli}")
        out = []
        for s, col in self._crows:
            c = sum(Fraction(int(ei) * int(u), m) for ei, u, m in zip(e, col, self.moduli)) * s
            if c.denominator != 1:
                raise GroupMismatch("character is not well defined")
            out.append(int(c))
        return self.group.elem(out)


_GROUP_RE = re.compile(r"^Z/(\d+)$")


def parse_moduli(text: str) -> list[int]:
    s = text.strip()
    if s in ("1", "Z/1", "trivial"):
        return []
    out = []
    for part in re.split(r"\s*[x×*]\s*", s):
        m = _GROUP_RE.match(part.strip())
        if not m:
            raise ValueError(f"bad group factor {part!r} in {text!r}")
        out.append(int(m.group(1)))
    return out


def parse_group(text: str) -> Normalization:
    return Normalization(parse_moduli(text))


def format_group(G: AbelianGroup) -> str:
    if not G.invariants:
        return "1"
    return " x ".join(f"Z/{n}" for n in G.invariants)


def format_char(chi: Elem) -> str:
    return "char:" + ",".join(str(e) for e in chi)


def parse_char(text) -> Elem:
    if isinstance(text, str):
        s = text.strip()
        if s.startswith("char:"):
            s = s[5:]
        return tuple(int(v) for v in s.split(",") if v.strip())
    return tuple(int(v) for v in text)


@lru_cache(maxsize=None)
def cyclic(n: int) -> AbelianGroup:
    return AbelianGroup([n]) if n > 1 else AbelianGroup(())


# group algebra

class GroupAlgElem:
    """A finite linear combination of group elements."""

    __slots__ = ("group", "ctx", "terms")

    def __init__(self, group: AbelianGroup, ctx: ScalarContext, terms=None):
        self.group = group
        self.ctx = ctx
        t = {}
        if terms:
            for g, c in (terms.items() if isinstance(terms, dict) else terms):
                c = ctx.coerce(c)
                if c:
                    g = group.elem(g)
                    v = t.get(g)
                    v = c if v is None else v + c
                    if v:
                        t[g] = v
                    else:
                        t.pop(g, None)
        self.terms = t

    @classmethod
    def basis(cls, group: AbelianGroup, ctx: ScalarContext, g: Elem, coeff=1) -> GroupAlgElem:
        return cls(group, ctx, {g: coeff})

    @classmethod
    def one(cls, group: AbelianGroup, ctx: ScalarContext) -> GroupAlgElem:
        return cls(group, ctx, {group.identity(): 1})

    @classmethod
    def zero(cls, group: AbelianGroup, ctx: ScalarContext) -> GroupAlgElem:
        return cls(group, ctx)

    def _check(self, other: GroupAlgElem):
        if other.group != self.group:
            raise GroupMismatch("group algebra elements over different groups")

    def _new(self, terms: dict) -> GroupAlgElem:
        out = object.__new__(GroupAlgElem)
        out.group, out.ctx = self.group, self.ctx
        out.terms = {g: c for g, c in terms.items() if c}
        return out

    def __add__(self, other: GroupAlgElem) -> GroupAlgElem:
        self._check(other)
        t = dict(self.terms)
        for g, c in other.terms.items():
            t[g] = t[g] + c if g in t else c
        return self._new(t)

    def __neg__(self) -> GroupAlgElem:
        return self._new({g: -c for g, c in self.terms.items()})

    def __sub__(self, other: GroupAlgElem) -> GroupAlgElem:
        return self + (-other)

    def __mul__(self, other) -> GroupAlgElem:
        if isinstance(other, GroupAlgElem):
            self._check(other)
            t: dict = {}
            G = self.group
            for g, c in self.terms.items():
                for h, d in other.terms.items():
                    k = G.mul(g, h)
                    t[k] = t[k] + c * d if k in t else c * d
            return self._new(t)
        c = self.ctx.coerce(other)
        return self._new({g: v * c for g, v in self.terms.items()})

    def __rmul__(self, other) -> GroupAlgElem:
        return self * other

    def __pow__(self, n: int) -> GroupAlgElem:
        out = GroupAlgElem.one(self.group, self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgElem):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"GroupAlgElem({self.terms!r})"

    def epsilon(self) -> CycScalar:
        total = self.ctx.zero
        for c in self.terms.values():
            total = total + c
        return total

    def support(self) -> list[Elem]:
        return sorted(self.terms)

    def coeff(self, g: Elem) -> CycScalar:
        return self.terms.get(g, self.ctx.zero)

    def map_group(self, images: tuple, target: AbelianGroup) -> GroupAlgElem:
        out = GroupAlgElem(target, self.ctx)
        t: dict = {}
        for g, c in self.terms.items():
            h = apply_hom(target, images, g)
            t[h] = t[h] + c if h in t else c
        return out._new(t)

    def coproduct(self) -> dict:
        """Delta(g) = g (x) g, as a map (g, h) -> scalar."""
        return {(g, g): c for g, c in self.terms.items()}


def group_like_check(u: GroupAlgElem) -> bool:
    if len(u.terms) != 1:
        return False
    (c,) = u.terms.values()
    return c.is_one()
