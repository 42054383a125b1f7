"""The braided Hopf algebra T(V) of a diagonal braiding.

Polynomials are maps from words (tuples of 0-based letters, leftmost
letter first) to scalars.  All scalars live in the field generated by
the braiding values, Q(zeta_m) with m the lcm of the orders of q_ij.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterable, Optional

from .errors import AmbientMismatch, BraidingMismatch, NoDecomposition
from .scalars import CycScalar, ScalarContext, make_context


class Braiding:
    """q_ij = zeta_m^E[i][j]; extended bilinearly to Z[I] x Z[I]."""

    def __init__(self, E, m: int, roots=None, cartan=None):
        self.m = m
        self.E = tuple(tuple(int(v) % m for v in row) for row in E)
        self.theta = len(self.E)
        self.ctx: ScalarContext = make_context(m)
        self.roots = roots
        self.cartan = cartan
        self._rv: dict[int, BraidedPoly] = {}

    @classmethod
    def from_datum(cls, d, m: Optional[int] = None) -> Braiding:
        m0 = d.braid_m
        if m is None:
            m = m0
        if m % m0:
            raise AmbientMismatch(f"{m} is not a multiple of {m0}")
        r = m // m0
        E = [[d.bq_exp(i, j) * r for j in range(d.theta)] for i in range(d.theta)]
        return cls(E, m, d.roots, d.cartan)

    @classmethod
    def symmetric(cls, cartan, m: int, k: int = 1) -> Braiding:
        """q_ij = q^(d_i a_ij) with q = zeta_m^k, per component."""
        from .roots import build_root_system, symmetrizer

        n = cartan.rank
        E = [[0] * n for _ in range(n)]
        for comp in cartan.components:
            d = symmetrizer(cartan.a, comp)
            scale = 1
            for v in d:
                scale = scale * v.denominator // gcd(scale, v.denominator)
            d = [int(v * scale) for v in d]
            for x, i in enumerate(comp):
                for j in comp:
                    E[i][j] = k * d[x] * cartan.a[i][j]
        return cls(E, m, build_root_system(cartan), cartan)

    def lift(self, m: int) -> Braiding:
        if m % self.m:
            raise AmbientMismatch(f"{m} is not a multiple of {self.m}")
        r = m // self.m
        return Braiding([[v * r for v in row] for row in self.E], m, self.roots, self.cartan)

    def __eq__(self, other) -> bool:
        return isinstance(other, Braiding) and self.m == other.m and self.E == other.E

    def __hash__(self) -> int:
        return hash((self.m, self.E))

    def __repr__(self) -> str:
        return f"Braiding(m={self.m}, E={self.E})"

    def q(self, i: int, j: int) -> CycScalar:
        return self.ctx.zeta(self.E[i][j])

    def exp(self, alpha, beta) -> int:
        s = 0
        for i, n in enumerate(alpha):
            if n:
                row = self.E[i]
                for j, k in enumerate(beta):
                    if k:
                        s += n * k * row[j]
        return s % self.m

    def qab(self, alpha, beta) -> CycScalar:
        return self.ctx.zeta(self.exp(alpha, beta))

    def degree(self, word) -> tuple:
        out = [0] * self.theta
        for i in word:
            out[i] += 1
        return tuple(out)

    def word_exp(self, u, v) -> int:
        """Exponent of q_{deg u, deg v} for words u, v."""
        E = self.E
        s = 0
        for i in u:
            row = E[i]
            for j in v:
                s += row[j]
        return s % self.m

    # root vectors and Serre elements
    def root_vector(self, l: int) -> BraidedPoly:
        if self.roots is None:
            raise AmbientMismatch("braiding carries no root system")
        rv = self._rv.get(l)
        if rv is None:
            R = self.roots
            if R.is_simple(l):
                rv = BraidedPoly.gen(self, R.simple_index(l))
            else:
                dec = R.decomposition(l)
                if dec is None:
                    raise NoDecomposition(f"root {R.order[l]} has no convex decomposition")
                k, m = dec
                rv = commutator(self.root_vector(k), self.root_vector(m))
            self._rv[l] = rv
        return rv

    def serre_element(self, i: int, j: int) -> BraidedPoly:
        if self.cartan is None:
            raise AmbientMismatch("braiding carries no Cartan matrix")
        if i == j:
            raise ValueError("Serre element needs i != j")
        y = BraidedPoly.gen(self, j)
        for _ in range(1 - self.cartan.a[i][j]):
            y = ad_c(i, y)
        return y


class BraidedPoly:
    """An element of T(V)."""

    __slots__ = ("br", "terms")

    def __init__(self, br: Braiding, terms: Optional[dict] = None):
        self.br = br
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def gen(cls, br: Braiding, i: int) -> BraidedPoly:
        return cls(br, {(i,): br.ctx.one})

    @classmethod
    def one(cls, br: Braiding) -> BraidedPoly:
        return cls(br, {(): br.ctx.one})

    @classmethod
    def word(cls, br: Braiding, w: Iterable[int], coeff=1) -> BraidedPoly:
        return cls(br, {tuple(w): br.ctx.coerce(coeff)})

    def _check(self, other: BraidedPoly):
        if other.br != self.br:
            raise AmbientMismatch("polynomials over different braidings")

    def __add__(self, other: BraidedPoly) -> BraidedPoly:
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t[w] + c if w in t else c
        return BraidedPoly(self.br, t)

    def __neg__(self) -> BraidedPoly:
        return BraidedPoly(self.br, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: BraidedPoly) -> BraidedPoly:
        return self + (-other)

    def scale(self, c) -> BraidedPoly:
        c = self.br.ctx.coerce(c)
        return BraidedPoly(self.br, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> BraidedPoly:
        if not isinstance(other, BraidedPoly):
            return self.scale(other)
        self._check(other)
        t: dict = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = u + v
                t[w] = t[w] + c * d if w in t else c * d
        return BraidedPoly(self.br, t)

    def __rmul__(self, other) -> BraidedPoly:
        return self.scale(other)

    def __pow__(self, n: int) -> BraidedPoly:
        out = BraidedPoly.one(self.br)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BraidedPoly) and self.br == other.br and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"BraidedPoly({format_poly(self)})"

    def degrees(self) -> set:
        return {self.br.degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> tuple:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is not homogeneous")
        return next(iter(ds))

    def homogeneous_parts(self) -> dict:
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(self.br.degree(w), {})[w] = c
        return {d: BraidedPoly(self.br, t) for d, t in out.items()}

    def epsilon(self) -> CycScalar:
        return self.terms.get((), self.br.ctx.zero)


def commutator(x: BraidedPoly, y: BraidedPoly) -> BraidedPoly:
    """[x, y]_c = xy - q_{deg x, deg y} yx, extended bilinearly over degrees."""
    x._check(y)
    br = x.br
    out = BraidedPoly(br)
    for a, xa in x.homogeneous_parts().items():
        for b, yb in y.homogeneous_parts().items():
            out = out + xa * yb - (yb * xa).scale(br.qab(a, b))
    return out


def ad_c(i: int, y: BraidedPoly) -> BraidedPoly:
    return commutator(BraidedPoly.gen(y.br, i), y)


def serre_element(br: Braiding, i: int, j: int) -> BraidedPoly:
    return br.serre_element(i, j)


def root_vector(br: Braiding, l: int) -> BraidedPoly:
    return br.root_vector(l)


# tensor square

class TensorPoly:
    """An element of T(V) (x) T(V), as a map (word, word) -> scalar."""

    __slots__ = ("br", "terms")

    def __init__(self, br: Braiding, terms: Optional[dict] = None):
        self.br = br
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def pure(cls, x: BraidedPoly, y: BraidedPoly) -> TensorPoly:
        x._check(y)
        t: dict = {}
        for u, c in x.terms.items():
            for v, d in y.terms.items():
                t[(u, v)] = c * d
        return cls(x.br, t)

    def __add__(self, other: TensorPoly) -> TensorPoly:
        if other.br != self.br:
            raise AmbientMismatch("tensors over different braidings")
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return TensorPoly(self.br, t)

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + TensorPoly(other.br, {k: -c for k, c in other.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorPoly) and self.br == other.br and self.terms == other.terms

    def __repr__(self) -> str:
        parts = [f"({format_scalar_short(c)}) {_wstr(u)}|{_wstr(v)}" for (u, v), c in sorted(self.terms.items())]
        return "TensorPoly(" + " + ".join(parts) + ")"

    def scale(self, c) -> TensorPoly:
        c = self.br.ctx.coerce(c)
        return TensorPoly(self.br, {k: v * c for k, v in self.terms.items()})


def braided_mul(t1: TensorPoly, t2: TensorPoly) -> TensorPoly:
    """(x (x) y)(x' (x) y') = q_{deg y, deg x'} xx' (x) yy'."""
    if t1.br != t2.br:
        raise AmbientMismatch("tensors over different braidings")
    br = t1.br
    ctx = br.ctx
    t: dict = {}
    for (x, y), c in t1.terms.items():
        for (x2, y2), d in t2.terms.items():
            k = (x + x2, y + y2)
            v = c * d * ctx.zeta(br.word_exp(y, x2))
            t[k] = t[k] + v if k in t else v
    return TensorPoly(br, t)


@lru_cache(maxsize=4096)
def _word_coproduct(br: Braiding, w: tuple) -> tuple:
    n = len(w)
    E = br.E
    out = []
    for size in range(n + 1):
        for S in combinations(range(n), size):
            Sset = set(S)
            e = 0
            for s in S:
                for r in range(s):
                    if r not in Sset:
                        e += E[w[r]][w[s]]
            left = tuple(w[s] for s in S)
            right = tuple(w[r] for r in range(n) if r not in Sset)
            out.append((left, right, e % br.m))
    return tuple(out)


def coproduct(x: BraidedPoly) -> TensorPoly:
    """Delta of T(V) via the quantum shuffle formula."""
    br = x.br
    ctx = br.ctx
    t: dict = {}
    for w, c in x.terms.items():
        for left, right, e in _word_coproduct(br, w):
            k = (left, right)
            v = c * ctx.zeta(e)
            t[k] = t[k] + v if k in t else v
    return TensorPoly(br, t)


def coproduct_via_generators(x: BraidedPoly) -> TensorPoly:
    """Delta as the braided algebra map extending x_i -> x_i(x)1 + 1(x)x_i."""
    br = x.br
    one = br.ctx.one
    total = TensorPoly(br)
    for w, c in x.terms.items():
        acc = TensorPoly(br, {((), ()): one})
        for i in w:
            acc = braided_mul(acc, TensorPoly(br, {((i,), ()): one, ((), (i,)): one}))
        total = total + acc.scale(c)
    return total


def counit_left(t: TensorPoly) -> BraidedPoly:
    out: dict = {}
    for (u, v), c in t.terms.items():
        if not u:
            out[v] = out[v] + c if v in out else c
    return BraidedPoly(t.br, out)


def counit_right(t: TensorPoly) -> BraidedPoly:
    out: dict = {}
    for (u, v), c in t.terms.items():
        if not v:
            out[u] = out[u] + c if u in out else c
    return BraidedPoly(t.br, out)


def coassociativity_sides(x: BraidedPoly) -> tuple[dict, dict]:
    """((Delta (x) id) Delta x, (id (x) Delta) Delta x) as maps on word triples."""
    br = x.br
    d = coproduct(x)
    left: dict = {}
    right: dict = {}
    for (u, v), c in d.terms.items():
        for (a, b), e in coproduct(BraidedPoly(br, {u: br.ctx.one})).terms.items():
            k = (a, b, v)
            left[k] = left[k] + c * e if k in left else c * e
        for (a, b), e in coproduct(BraidedPoly(br, {v: br.ctx.one})).terms.items():
            k = (u, a, b)
            right[k] = right[k] + c * e if k in right else c * e
    return ({k: v for k, v in left.items() if v}, {k: v for k, v in right.items() if v})


# twisting

class Cocycle2:
    """Bilinear sigma on Z[I] with sigma(alpha_i, alpha_j) = zeta_m^S[i][j]."""

    def __init__(self, S, m: int):
        self.m = m
        self.S = tuple(tuple(int(v) % m for v in row) for row in S)
        self.ctx = make_context(m)

    def exp(self, alpha, beta) -> int:
        s = 0
        for i, n in enumerate(alpha):
            if n:
                for j, k in enumerate(beta):
                    if k:
                        s += n * k * self.S[i][j]
        return s % self.m

    def __call__(self, alpha, beta) -> CycScalar:
        return self.ctx.zeta(self.exp(alpha, beta))

    def inverse(self) -> Cocycle2:
        return Cocycle2([[-v for v in row] for row in self.S], self.m)

    def word_exp(self, w) -> int:
        S = self.S
        e = 0
        for s in range(len(w)):
            ws = w[s]
            for r in range(s):
                e += S[w[r]][ws]
        return e % self.m


def _common(b1: Braiding, b2: Braiding) -> tuple[Braiding, Braiding]:
    if b1.theta != b2.theta:
        raise BraidingMismatch("braidings of different rank")
    m = b1.m * b2.m // gcd(b1.m, b2.m)
    return b1.lift(m), b2.lift(m)


def twist_cocycle(b: Braiding, b2: Braiding) -> Cocycle2:
    """sigma(alpha_i, alpha_j) = q_ij / q'_ij for i <= j and 1 otherwise."""
    b, b2 = _common(b, b2)
    n = b.theta
    for i in range(n):
        if b.E[i][i] != b2.E[i][i]:
            raise BraidingMismatch(f"q_{i + 1}{i + 1} != q'_{i + 1}{i + 1}")
        for j in range(n):
            if (b.E[i][j] + b.E[j][i] - b2.E[i][j] - b2.E[j][i]) % b.m:
                raise BraidingMismatch(f"q_ij q_ji != q'_ij q'_ji at ({i + 1},{j + 1})")
    S = [[(b.E[i][j] - b2.E[i][j]) if i <= j else 0 for j in range(n)] for i in range(n)]
    return Cocycle2(S, b.m)


def twist_map(x: BraidedPoly, sigma: Cocycle2, target: Braiding) -> BraidedPoly:
    """x_{i_1}...x_{i_n} -> prod_{r<s} sigma(alpha_{i_r}, alpha_{i_s}) x'_{i_1}...x'_{i_n}."""
    m = target.m * sigma.m // gcd(target.m, sigma.m)
    tgt = target.lift(m) if m != target.m else target
    ctx = tgt.ctx
    r = m // sigma.m
    out: dict = {}
    for w, c in x.terms.items():
        c2 = c.embed(ctx) if c.ctx.m != m else c
        out[w] = c2 * ctx.zeta(sigma.word_exp(w) * r)
    return BraidedPoly(tgt, out)


def twist_tensor(t: TensorPoly, sigma: Cocycle2) -> TensorPoly:
    """(u (x) v) <- sigma = sigma(deg u, deg v) u (x) v."""
    br = t.br
    if br.m % sigma.m:
        raise AmbientMismatch("tensor field does not contain the cocycle values")
    r = br.m // sigma.m
    out = {}
    for (u, v), c in t.terms.items():
        out[(u, v)] = c * br.ctx.zeta(sigma.exp(br.degree(u), br.degree(v)) * r)
    return TensorPoly(br, out)


def mapphi_check(b: Braiding, b2: Braiding, degree: int = 4) -> list[str]:
    """Check the twist map T(V) -> T(V') against its three identities on
    all monomials (pairs of monomials) of total degree <= degree, and the
    round trip through the inverse cocycle.  Returns the failures."""
    b, b2 = _common(b, b2)
    sig = twist_cocycle(b, b2)
    inv = sig.inverse()
    n = b.theta
    words = [w for k in range(degree + 1) for w in product(range(n), repeat=k)]
    bad = []

    def phi(x):
        return twist_map(x, sig, b2)

    ctx = b2.ctx
    for w in words:
        if not w:
            continue
        x = BraidedPoly.word(b, w)
        px = phi(x)
        if twist_map(px, inv, b) != x:
            bad.append(f"round trip fails on {_wstr(w)}")
        lhs = coproduct(px)
        t = {}
        for (u, v), c in coproduct(x).terms.items():
            e = sig.word_exp(u) + sig.word_exp(v) + sig.exp(b.degree(u), b.degree(v))
            t[(u, v)] = c * ctx.zeta(e)
        if lhs != TensorPoly(b2, t):
            bad.append(f"coproduct identity fails on {_wstr(w)}")
    for u in words:
        for v in words:
            if not u or not v or len(u) + len(v) > degree:
                continue
            x, y = BraidedPoly.word(b, u), BraidedPoly.word(b, v)
            s = sig(b.degree(u), b.degree(v))
            if phi(x * y) != (phi(x) * phi(y)).scale(s):
                bad.append(f"product identity fails on {_wstr(u)}, {_wstr(v)}")
            if phi(commutator(x, y)) != commutator(phi(x), phi(y)).scale(s):
                bad.append(f"commutator identity fails on {_wstr(u)}, {_wstr(v)}")
    return bad


# serialization

def _wstr(w) -> str:
    return "".join(str(i + 1) for i in w) if w else "1"


def format_scalar_short(c) -> str:
    from .scalars import format_scalar

    return format_scalar(c)


def format_poly(x: BraidedPoly) -> str:
    if not x.terms:
        return "0"
    return " + ".join(f"({format_scalar_short(c)})*{_wstr(w)}" for w, c in sorted(x.terms.items(), key=lambda t: (len(t[0]), t[0])))


def poly_to_json(x: BraidedPoly) -> list:
    """[[word, scalar], ...] with words as digit strings and "" for the empty word."""
    items = sorted(x.terms.items(), key=lambda t: (len(t[0]), t[0]))
    return [["".join(str(i + 1) for i in w), format_scalar_short(c)] for w, c in items]


def poly_from_json(br: Braiding, obj: list) -> BraidedPoly:
    from .scalars import parse_scalar

    t = {}
    for w, c in obj:
        t[tuple(int(ch) - 1 for ch in str(w).strip())] = parse_scalar(br.ctx, str(c))
    return BraidedPoly(br, t)
