"""Normal forms in R(D) = T(V)/(Serre relations).

Two routes are implemented.  The word-space route row-reduces each
graded component of T(V) modulo the span of the two-sided multiples of
the Serre elements; it is exact but only feasible in small degrees.  It
supplies the commutation rules x_{beta_m} x_{beta_k} (k < m) in PBW
coordinates.  The straightening route then multiplies PBW monomials of
any degree by recursive application of those rules.
"""

from __future__ import annotations

import sys
from typing import Callable, Iterable, Optional

from .braided import Braiding, BraidedPoly
from .errors import DegreeCapExceeded, PBWFailure
from .linalg import EchelonBasis, inverse_matrix
from .scalars import CycScalar, ScalarContext

RElem = dict  # exponent tuple -> scalar


def words_of_degree(deg: Iterable[int]) -> list[tuple]:
    """All words with the given letter counts, in lexicographic order."""
    deg = tuple(deg)
    n = sum(deg)
    out: list[tuple] = []
    counts = list(deg)
    cur: list[int] = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                cur.append(i)
                rec()
                cur.pop()
                counts[i] += 1

    rec()
    return out


def kostant(order: list[tuple], deg: Iterable[int]) -> list[tuple]:
    """All a in N^p with sum a_l beta_l = deg."""
    deg = tuple(deg)
    p = len(order)
    out = []
    a = [0] * p

    def rec(l, rest):
        if l == p:
            if not any(rest):
                out.append(tuple(a))
            return
        beta = order[l]
        k = 0
        cur = rest
        while all(x >= 0 for x in cur):
            a[l] = k
            rec(l + 1, cur)
            k += 1
            cur = tuple(x - y for x, y in zip(cur, beta))
        a[l] = 0

    rec(0, deg)
    return sorted(out)


def default_cap(br: Braiding) -> int:
    orders = [br.m // _gcd(br.E[i][i], br.m) for i in range(br.theta)]
    return 2 * max(orders) + 10


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class GradedComponentBasis:
    """Word-space data of R(D) in one Z[I]-degree."""

    def __init__(self, degree, monomial_list, ideal, normal_monomials, pbw_monomials, change_of_basis, inverse):
        self.degree = degree
        self.monomial_list = monomial_list
        self.ideal = ideal
        self.normal_monomials = normal_monomials
        self.pbw_monomials = pbw_monomials
        self.change_of_basis = change_of_basis  # rows: normal monomials, cols: pbw monomials
        self._inverse = inverse

    @property
    def ideal_rows(self) -> list[dict]:
        return [self.ideal.rows[p] for p in self.ideal.pivots()]

    @property
    def ideal_dim(self) -> int:
        return len(self.ideal)

    def dump(self) -> str:
        lines = [f"degree {self.degree}", f"words {len(self.monomial_list)}, ideal rank {self.ideal_dim}"]
        for p in self.ideal.pivots():
            row = self.ideal.rows[p]
            lines.append("  " + " + ".join(f"({c})*{''.join(str(i + 1) for i in w)}" for w, c in sorted(row.items())))
        return "\n".join(lines)


class RAlgebra:
    """R(D) for a braiding carrying a Cartan matrix and root system."""

    def __init__(self, br: Braiding, cap: Optional[int] = None):
        if br.cartan is None or br.roots is None:
            raise ValueError("braiding must carry a Cartan matrix and a root system")
        self.br = br
        self.ctx: ScalarContext = br.ctx
        self.roots = br.roots
        self.p = br.roots.p
        self.cap = cap if cap is not None else default_cap(br)
        n = br.theta
        self.serre = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    s = br.serre_element(i, j)
                    self.serre.append((s.degree(), s))
        self._components: dict = {}
        self._rules: dict = {}
        self._pbw_poly: dict = {}
        self.simple_pos = [self.roots.index[tuple(1 if k == i else 0 for k in range(n))] for i in range(n)]
        self._engine: Optional[Straightener] = None

    def check_cap(self, total: int):
        if total > self.cap:
            raise DegreeCapExceeded(self.cap, total)

    # word-space route
    def ideal_component(self, deg) -> EchelonBasis:
        deg = tuple(deg)
        self.check_cap(sum(deg))
        comp = self._components.get(deg)
        if comp is not None:
            return comp.ideal
        eb = EchelonBasis(self.ctx, colkey=lambda w: tuple(-x for x in w))
        for sdeg, s in self.serre:
            rest = tuple(x - y for x, y in zip(deg, sdeg))
            if any(x < 0 for x in rest):
                continue
            for udeg in _sub_degrees(rest):
                vdeg = tuple(x - y for x, y in zip(rest, udeg))
                us = words_of_degree(udeg)
                vs = words_of_degree(vdeg)
                for u in us:
                    for v in vs:
                        eb.add({u + w + v: c for w, c in s.terms.items()})
        return eb

    def pbw_poly(self, a) -> BraidedPoly:
        a = tuple(a)
        x = self._pbw_poly.get(a)
        if x is None:
            x = BraidedPoly.one(self.br)
            for l, k in enumerate(a):
                for _ in range(k):
                    x = x * self.br.root_vector(l)
            self._pbw_poly[a] = x
        return x

    def component(self, deg) -> GradedComponentBasis:
        deg = tuple(deg)
        comp = self._components.get(deg)
        if comp is not None:
            return comp
        ideal = self.ideal_component(deg)
        words = words_of_degree(deg)
        normal = [w for w in words if w not in ideal.rows]
        pbw = kostant(self.roots.order, deg)
        if len(pbw) != len(normal):
            raise PBWFailure(f"degree {deg}: {len(pbw)} PBW monomials but quotient dimension {len(normal)}")
        nidx = {w: i for i, w in enumerate(normal)}
        M = [[self.ctx.zero] * len(pbw) for _ in normal]
        for j, a in enumerate(pbw):
            r = ideal.reduce(dict(self.pbw_poly(a).terms))
            for w, c in r.items():
                M[nidx[w]][j] = c
        inv = inverse_matrix(M, self.ctx) if normal else []
        if inv is None:
            raise PBWFailure(f"degree {deg}: PBW monomials are linearly dependent modulo the Serre ideal")
        comp = GradedComponentBasis(deg, words, ideal, normal, pbw, M, inv)
        self._components[deg] = comp
        return comp

    def normal_form_wordspace(self, x: BraidedPoly) -> RElem:
        out: RElem = {}
        for deg, part in x.homogeneous_parts().items():
            comp = self.component(deg)
            r = comp.ideal.reduce(dict(part.terms))
            vec = [r.get(w, self.ctx.zero) for w in comp.normal_monomials]
            for j, a in enumerate(comp.pbw_monomials):
                c = self.ctx.zero
                for i, v in enumerate(vec):
                    if v:
                        c = c + comp._inverse[j][i] * v
                if c:
                    out[a] = c
        return out

    def rule(self, m: int, k: int) -> list[tuple[tuple, CycScalar]]:
        """x_{beta_m} x_{beta_k} (k < m) in PBW coordinates."""
        key = (m, k)
        r = self._rules.get(key)
        if r is None:
            x = self.br.root_vector(m) * self.br.root_vector(k)
            nf = self.normal_form_wordspace(x)
            lead = tuple(1 if l in (k, m) else 0 for l in range(self.p))
            for a in nf:
                if a != lead and any(a[l] for l in range(self.p) if l <= k or l >= m):
                    raise PBWFailure(f"commutation rule for roots {k + 1},{m + 1} leaves the interval")
            r = sorted(nf.items())
            self._rules[key] = r
        return r

    # straightening route
    @property
    def engine(self) -> Straightener:
        if self._engine is None:
            self._engine = Straightener(self)
        return self._engine

    def normal_form(self, x: BraidedPoly) -> RElem:
        """PBW coordinates of x in R(D); any degree up to the cap."""
        for w in x.terms:
            self.check_cap(len(w))
        return self.engine.from_words(x.terms)

    def mul(self, u: RElem, v: RElem) -> RElem:
        for a in u:
            for b in v:
                self.check_cap(self.height(a) + self.height(b))
        return self.engine.mul(u, v)

    def height(self, a) -> int:
        return sum(k * sum(beta) for k, beta in zip(a, self.roots.order))

    def to_poly(self, u: RElem) -> BraidedPoly:
        out = BraidedPoly(self.br)
        for a, c in u.items():
            out = out + self.pbw_poly(a).scale(c)
        return out


def _sub_degrees(deg: tuple) -> list[tuple]:
    out = [()]
    for d in deg:
        out = [t + (k,) for t in out for k in range(d + 1)]
    return out


class Straightener:
    """PBW multiplication by recursive commutation.

    Elements are dicts keyed by (a, h): a PBW exponent vector and a
    group element h of a central group-algebra factor ("()" when there
    is none).  With truncation, x_{beta_l}^{N_l} is replaced by the
    central element central[l] (a dict h -> scalar).
    """

    def __init__(self, ralg: RAlgebra, ctx: Optional[ScalarContext] = None, trunc=None, central=None, gmul: Optional[Callable] = None, one_h=()):
        self.ralg = ralg
        self.p = ralg.p
        self.ctx = ctx or ralg.ctx
        self.trunc = trunc
        self.central = central
        self.gmul = gmul or (lambda g, h: ())
        self.one_h = one_h
        self._memo: dict = {}
        self._mono_memo: dict = {}
        self._rules: dict = {}
        if sys.getrecursionlimit() < 20000:
            sys.setrecursionlimit(20000)

    def rule(self, m: int, k: int):
        r = self._rules.get((m, k))
        if r is None:
            raw = self.ralg.rule(m, k)
            if self.ctx is self.ralg.ctx:
                r = raw
            else:
                r = [(a, c.embed(self.ctx)) for a, c in raw]
            self._rules[(m, k)] = r
        return r

    def mono_root(self, a: tuple, k: int) -> dict:
        key = (a, k)
        res = self._memo.get(key)
        if res is not None:
            return res
        last = -1
        for idx in range(self.p - 1, -1, -1):
            if a[idx]:
                last = idx
                break
        if last <= k:
            b = list(a)
            b[k] += 1
            if self.trunc is not None and b[k] >= self.trunc[k]:
                b[k] -= self.trunc[k]
                tb = tuple(b)
                res = {(tb, h): c for h, c in self.central[k].items()}
            else:
                res = {(tuple(b), self.one_h): self.ctx.one}
        else:
            a1 = list(a)
            a1[last] -= 1
            a1 = tuple(a1)
            res = {}
            for r, c in self.rule(last, k):
                part = self.mono_mono(a1, r)
                for key2, v in part.items():
                    nv = res.get(key2)
                    nv = v * c if nv is None else nv + v * c
                    if nv:
                        res[key2] = nv
                    else:
                        res.pop(key2, None)
        self._memo[key] = res
        return res

    def mono_mono(self, a: tuple, r: tuple) -> dict:
        cur = {(a, self.one_h): self.ctx.one}
        for j, n in enumerate(r):
            for _ in range(n):
                cur = self.elem_root(cur, j)
        return cur

    def elem_root(self, x: dict, j: int) -> dict:
        out: dict = {}
        gmul = self.gmul
        for (b, h), c in x.items():
            for (b2, h2), c2 in self.mono_root(b, j).items():
                key = (b2, gmul(h, h2))
                v = c * c2
                nv = out.get(key)
                nv = v if nv is None else nv + v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def mono_mul(self, a: tuple, b: tuple) -> dict:
        """x^a x^b, memoized, keyed by (c, h)."""
        key = (a, b)
        res = self._mono_memo.get(key)
        if res is None:
            res = self.mono_mono(a, b)
            self._mono_memo[key] = res
        return res

    def mul_full(self, x: dict, y: dict) -> dict:
        """Product of two elements keyed by (a, h)."""
        out: dict = {}
        gmul = self.gmul
        for (b, h), c in y.items():
            cur = x
            for j, n in enumerate(b):
                for _ in range(n):
                    cur = self.elem_root(cur, j)
            for (b2, h2), c2 in cur.items():
                key = (b2, gmul(h2, h))
                v = c2 * c
                nv = out.get(key)
                nv = v if nv is None else nv + v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def mul(self, u: RElem, v: RElem) -> RElem:
        x = {(a, self.one_h): c for a, c in u.items()}
        y = {(a, self.one_h): c for a, c in v.items()}
        return {a: c for (a, _h), c in self.mul_full(x, y).items()}

    def from_words(self, terms: dict) -> RElem:
        out: RElem = {}
        zero = tuple([0] * self.p)
        sp = self.ralg.simple_pos
        for w, c in terms.items():
            cur = {(zero, self.one_h): self.ctx.one}
            for i in w:
                cur = self.elem_root(cur, sp[i])
            for (a, _h), v in cur.items():
                nv = out.get(a)
                nv = v * c if nv is None else nv + v * c
                if nv:
                    out[a] = nv
                else:
                    out.pop(a, None)
        return out


def ideal_component(ralg: RAlgebra, degree) -> GradedComponentBasis:
    return ralg.component(degree)


def normal_form(ralg: RAlgebra, x: BraidedPoly) -> RElem:
    return ralg.normal_form(x)


def mul_relems(ralg: RAlgebra, u: RElem, v: RElem) -> RElem:
    return ralg.mul(u, v)


def root_power(p: int, l: int, n: int) -> tuple:
    return tuple(n if k == l else 0 for k in range(p))


def nichols_graded_dims(ralg: RAlgebra, N: list[int], up_to: Optional[int] = None) -> list[int]:
    """Graded dimensions of R(D)/(x_beta^{N_beta}) by total degree.

    N lists the truncation order per convex-order position.  The two-sided
    ideal equals the left ideal spanned by x^a x_beta^N because each
    x_beta^N q-commutes with every root vector.
    """
    R = ralg.roots
    p = ralg.p
    heights = [sum(b) for b in R.order]
    top = sum((N[l] - 1) * heights[l] for l in range(p))
    if up_to is None:
        up_to = top
    ralg.check_cap(up_to)
    # all monomials of total degree <= up_to, grouped by Z[I]-degree
    by_deg: dict = {}
    a = [0] * p

    def rec(l, h):
        if l == p:
            by_deg.setdefault(R.underline(a), []).append(tuple(a))
            return
        k = 0
        while h + k * heights[l] <= up_to:
            a[l] = k
            rec(l + 1, h + k * heights[l])
            k += 1
        a[l] = 0

    rec(0, 0)
    eng = ralg.engine
    dims = [0] * (up_to + 1)
    for deg, monos in by_deg.items():
        eb = EchelonBasis(ralg.ctx)
        for l in range(p):
            rest = tuple(x - N[l] * y for x, y in zip(deg, R.order[l]))
            if any(x < 0 for x in rest):
                continue
            for b in by_deg.get(rest, []):
                prod = eng.mul({b: ralg.ctx.one}, {root_power(p, l, N[l]): ralg.ctx.one})
                eb.add(prod)
        dims[sum(deg)] += len(monos) - len(eb)
    return dims
