"""The subalgebra K(D) of N-th powers of root vectors, its coproduct
constants t^a_{b,c}, and the group-algebra elements u^a and u_alpha(mu).

Everything here works on a single connected component J of the datum.
Exponent vectors a are indexed by the positions of the convex order
restricted to J.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from .braided import Braiding, coproduct
from .datum import Datum
from .errors import ConsistencyFailure, NotInK
from .groups import GroupAlgElem
from .quotients import RAlgebra, default_cap
from .scalars import CycScalar

Tensor = dict  # (a, b) -> scalar, both legs PBW exponent vectors


def _acc(out: dict, key, v):
    nv = out.get(key)
    nv = v if nv is None else nv + v
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


class KAlgebra:
    """K(D_J) inside R(D_J) for the component J = d.components[c]."""

    def __init__(self, d: Datum, c: int, cap: Optional[int] = None):
        self.d = d
        self.c = c
        self.J = list(d.components[c])
        self.sub = d.restrict(self.J)
        self.br = Braiding.from_datum(self.sub)
        if cap is None:
            # enough for z^a with a = e_l on every root
            cap = max(default_cap(self.br), d.N_component[c] * max(sum(b) for b in self.sub.roots.order))
        self.R = RAlgebra(self.br, cap)
        self.roots = self.sub.roots
        self.p = self.roots.p
        self.N = d.N_component[c]
        self.global_pos = list(d.roots.component_positions[c])
        for l, gl in enumerate(self.global_pos):
            glob = d.roots.order[gl]
            if tuple(glob[i] for i in self.J) != self.roots.order[l]:
                raise AssertionError("convex order of the component differs from the global one")
        G = d.group
        self.G = G
        self.ctx = d.ctx
        self.h = []
        self.eta = []
        for beta in self.roots.order:
            g, chi = self.sub.g_chi_alpha(beta)
            self.h.append(G.pow(g, self.N))
            self.eta.append(G.pow(chi, self.N))
        self.zero = tuple([0] * self.p)
        self._droot: dict = {}
        self._dz: dict = {}
        self._t: dict = {}

    # degrees and characters
    def e(self, l: int) -> tuple:
        return tuple(1 if k == l else 0 for k in range(self.p))

    def underline(self, a) -> tuple:
        return self.roots.underline(a)

    def height(self, a) -> int:
        return sum(self.underline(a))

    def h_of(self, a) -> tuple:
        G = self.G
        return G.prod(G.pow(self.h[l], k) for l, k in enumerate(a) if k)

    def eta_of(self, a) -> tuple:
        G = self.G
        return G.prod(G.pow(self.eta[l], k) for l, k in enumerate(a) if k)

    def gamma(self, b, c) -> CycScalar:
        """z^b z^c = gamma_{b,c} z^{b+c}."""
        G = self.G
        s = 0
        for k in range(self.p):
            if not b[k]:
                continue
            for l in range(k):
                if c[l]:
                    s += b[k] * c[l] * G.pairing(self.eta[l], self.h[k])
        return self.ctx.zeta((s % G.exponent) * (self.ctx.m // G.exponent))

    def exponents_up_to(self, height: int) -> list[tuple]:
        """Nonzero a with ht(underline(a)) <= height, sorted by height then a."""
        hts = [sum(b) for b in self.roots.order]
        out = []
        for a in product(*(range(height // h + 1) for h in hts)):
            ht = sum(x * y for x, y in zip(a, hts))
            if 0 < ht <= height:
                out.append((ht, a))
        out.sort()
        return [a for _, a in out]

    @property
    def max_height(self) -> int:
        return max(sum(b) for b in self.roots.order)

    # coproducts in R (x) R
    def tensor_mul(self, t1: Tensor, t2: Tensor) -> Tensor:
        """Product in the braided tensor product R (x) R."""
        br = self.br
        eng = self.R.engine
        zeta = br.ctx.zeta
        ul = self.underline
        out: Tensor = {}
        for (a, b), c in t1.items():
            db = ul(b)
            for (a2, b2), c2 in t2.items():
                f = c * c2 * zeta(br.exp(db, ul(a2)))
                left = eng.mono_mul(a, a2)
                right = eng.mono_mul(b, b2)
                for (x, _), v in left.items():
                    fv = f * v
                    for (y, _), w in right.items():
                        _acc(out, (x, y), fv * w)
        return out

    def delta_root(self, l: int) -> Tensor:
        """Delta(x_{beta_l}) in PBW coordinates on both legs."""
        t = self._droot.get(l)
        if t is None:
            eng = self.R.engine
            one = self.br.ctx.one
            raw = coproduct(self.br.root_vector(l))
            t = {}
            for (u, v), c in raw.terms.items():
                for x, cx in eng.from_words({u: one}).items():
                    for y, cy in eng.from_words({v: one}).items():
                        _acc(t, (x, y), c * cx * cy)
            self._droot[l] = t
        return t

    def delta_z(self, a) -> Tensor:
        """Delta(z^a), built as Delta(z^r) Delta(z_l) with l the last index of a."""
        a = tuple(a)
        t = self._dz.get(a)
        if t is not None:
            return t
        self.R.check_cap(self.N * self.height(a))
        l = max(k for k in range(self.p) if a[k])
        r = list(a)
        r[l] -= 1
        r = tuple(r)
        if any(r):
            t = self.tensor_mul(self.delta_z(r), self.delta_z(self.e(l)))
        else:
            t = {(self.zero, self.zero): self.br.ctx.one}
            dl = self.delta_root(l)
            for _ in range(self.N):
                t = self.tensor_mul(t, dl)
        self._dz[a] = t
        return t

    def coproduct_constants(self, a) -> dict:
        """t^a_{b,c} for b, c != 0, as a map (b, c) -> scalar."""
        a = tuple(a)
        t = self._t.get(a)
        if t is not None:
            return t
        N = self.N
        full = self.delta_z(a)
        Na = tuple(N * x for x in a)
        one = self.br.ctx.one
        t = {}
        for (x, y), c in full.items():
            if any(v % N for v in x) or any(v % N for v in y):
                raise NotInK(f"Delta(z^{a}) has the term x^{x} (x) x^{y}")
            b = tuple(v // N for v in x)
            cc = tuple(v // N for v in y)
            if not any(b) or not any(cc):
                if (x, y) not in ((Na, self.zero), (self.zero, Na)) or c != one:
                    raise NotInK(f"Delta(z^{a}) has a wrong primitive part at {b} (x) {cc}")
                continue
            t[(b, cc)] = c
        if full.get((Na, self.zero)) != one or full.get((self.zero, Na)) != one:
            raise NotInK(f"Delta(z^{a}) misses z^a (x) 1 or 1 (x) z^a")
        self._t[a] = t
        return t

    def coassociativity_sides(self, a) -> tuple[dict, dict]:
        """Both sides of the identity
        sum t^a_{b,c} t^c_{f,g} z^b z^f z^g = sum t^a_{b,c} t^b_{d,e} z^d z^e z^c
        restricted to triples with all legs nonzero."""
        ta = self.coproduct_constants(a)
        left: dict = {}
        right: dict = {}
        for (b, c), v in ta.items():
            for (f, g), w in self.coproduct_constants(c).items():
                _acc(left, (b, f, g), v * w)
            for (dd, ee), w in self.coproduct_constants(b).items():
                _acc(right, (dd, ee, c), v * w)
        return left, right


class UFamily:
    """The elements u^a in k[Gamma] and the scalars mu_a for one component."""

    def __init__(self, K: KAlgebra, mu_pos: list, u: dict, mu: dict, height: int):
        self.K = K
        self.mu_pos = mu_pos  # mu_l per local position
        self.u = u
        self.mu = mu
        self.height = height

    def u_root(self, l: int) -> GroupAlgElem:
        return self.u[self.K.e(l)]

    def check_delta(self, a) -> bool:
        """Delta(u^a) = h^a (x) u^a + u^a (x) 1 + sum t^a_{b,c} u^b h^c (x) u^c."""
        K = self.K
        G = K.G
        ua = self.u[a]
        lhs = ua.coproduct()
        rhs: dict = {}
        ha = K.h_of(a)
        one = G.identity()
        for g, c in ua.terms.items():
            _acc(rhs, (ha, g), c)
            _acc(rhs, (g, one), c)
        for (b, cc), t in K.coproduct_constants(a).items():
            tt = t.embed(K.ctx)
            hc = K.h_of(cc)
            for g1, v1 in self.u[b].terms.items():
                g1h = G.mul(g1, hc)
                for g2, v2 in self.u[cc].terms.items():
                    _acc(rhs, (g1h, g2), tt * v1 * v2)
        return lhs == rhs

    def check_all(self) -> list[str]:
        """Invariants of the family; returns a list of failures."""
        K = self.K
        G = K.G
        bad = []
        for a, ua in self.u.items():
            if ua.epsilon():
                bad.append(f"epsilon(u^{a}) != 0")
            if K.h_of(a) == G.identity() and self.mu.get(a):
                bad.append(f"mu_{a} != 0 although h^a = 1")
            if any(K.eta_of(a)) and (ua or self.mu.get(a)):
                bad.append(f"u^{a} != 0 although eta^a != epsilon")
            prod = GroupAlgElem.one(G, K.ctx)
            for l, k in enumerate(a):
                for _ in range(k):
                    prod = prod * self.u[K.e(l)]
            if prod != ua:
                bad.append(f"u^{a} is not the product of the u_l")
            if self.height >= K.height(a) and not self.check_delta(a):
                bad.append(f"Delta(u^{a}) fails")
        return bad


def build_ufamily(d: Datum, c: int, mu: dict, cap: Optional[int] = None, height: Optional[int] = None, K: Optional[KAlgebra] = None, check: bool = True) -> UFamily:
    """Construct u^a for all a with ht(underline(a)) <= height.

    mu maps positive roots (global coordinates) to scalars and is assumed
    validated.  Remainders are matched exactly against mu_a (1 - h^a).
    """
    if K is None:
        K = KAlgebra(d, c, cap)
    G = K.G
    ctx = K.ctx
    if height is None:
        height = K.max_height
    mu_pos = []
    for gl in K.global_pos:
        v = mu.get(d.roots.order[gl])
        mu_pos.append(ctx.coerce(v) if v is not None else ctx.zero)
    exps = K.exponents_up_to(height)
    zero_el = GroupAlgElem.zero(G, ctx)
    one_el = GroupAlgElem.one(G, ctx)
    u: dict = {}
    mus: dict = {}
    if not any(mu_pos):
        # every u^a vanishes; no constants are needed
        for a in exps:
            u[a] = zero_el
            mus[a] = ctx.zero
        return UFamily(K, mu_pos, u, mus, height)
    for a in exps:
        s = zero_el
        for (b, cc), t in K.coproduct_constants(a).items():
            mb = mus[b]
            if mb and u[cc]:
                s = s + u[cc] * (t.embed(ctx) * mb)
        ha = GroupAlgElem.basis(G, ctx, K.h_of(a))
        if sum(a) == 1:
            l = a.index(1)
            m = mu_pos[l]
            ua = (one_el - ha) * m + s
            mus[a] = m
        else:
            l = max(k for k in range(K.p) if a[k])
            r = list(a)
            r[l] -= 1
            ua = u[tuple(r)] * u[K.e(l)]
            w = ua - s
            if K.h_of(a) == G.identity():
                if w:
                    raise ConsistencyFailure(f"remainder for a={a} is nonzero although h^a = 1")
                mus[a] = ctx.zero
            else:
                m = w.coeff(G.identity())
                if w != (one_el - ha) * m:
                    raise ConsistencyFailure(f"remainder for a={a} is not a multiple of 1 - h^a")
                mus[a] = m
        u[a] = ua
    fam = UFamily(K, mu_pos, u, mus, height)
    if check:
        bad = fam.check_all()
        if bad:
            raise ConsistencyFailure("; ".join(bad))
    return fam


class UCache:
    """Per-datum caches of K-algebras and u-families."""

    def __init__(self, d: Datum, cap: Optional[int] = None):
        self.d = d
        self.cap = cap
        self._K: dict = {}
        self._fam: dict = {}

    def kalgebra(self, c: int) -> KAlgebra:
        K = self._K.get(c)
        if K is None:
            K = KAlgebra(self.d, c, self.cap)
            self._K[c] = K
        return K

    def family(self, c: int, mu: dict) -> UFamily:
        d = self.d
        key = (c, tuple(sorted((r, v) for r, v in mu.items() if d.roots.position_component[d.roots.index[r]] == c)))
        fam = self._fam.get(key)
        if fam is None:
            fam = build_ufamily(d, c, mu, K=self.kalgebra(c))
            self._fam[key] = fam
        return fam


def u_alpha(d: Datum, mu: dict, alpha, cap: Optional[int] = None, cache: Optional[UCache] = None) -> GroupAlgElem:
    """u_alpha(mu) in k[Gamma]."""
    alpha = tuple(alpha)
    gl = d.roots.index.get(alpha)
    if gl is None:
        raise ValueError(f"{alpha} is not a positive root")
    c = d.roots.position_component[gl]
    fam = (cache or UCache(d, cap)).family(c, mu)
    l = fam.K.global_pos.index(gl)
    return fam.u_root(l)


def coproduct_constants(d: Datum, c: int, a, cap: Optional[int] = None) -> dict:
    return KAlgebra(d, c, cap).coproduct_constants(a)


def central_support_ok(d: Datum, u: GroupAlgElem) -> bool:
    """chi_i(h) = 1 for all i and every h in the support of u."""
    G = d.group
    return all(G.pairing(chi, h) == 0 for h in u.terms for chi in d.chi)
