"""The finite-dimensional Hopf algebras u(D, lambda, mu) in PBW coordinates.

An element is a dict mapping (a, g) to a scalar, where a is an exponent
vector over the global convex order (0 <= a_l < N_l) and g a group
element; the key stands for x_{beta_1}^{a_1} ... x_{beta_p}^{a_p} g.

Products are normalized in three layers.  Group elements move right
through g x_beta = chi_beta(g) x_beta g.  Inside a component the
straightening engine of `quotients` is used with x_beta^N replaced by the
central element u_beta(mu).  A factor of a later component is moved to
the right of a simple generator x_i of an earlier one through
y x_i = q_{deg y, i} x_i y + D_i(y), where D_i is the skew derivation
with D_i(x_j) = lambda_ji (1 - g_j g_i).
"""

from __future__ import annotations

import random
from itertools import product as iproduct
from math import prod
from typing import Optional

from .datum import Datum
from .errors import CentralityFailure
from .groups import AbelianGroup, GroupAlgElem, format_group
from .kalgebra import KAlgebra, UCache, central_support_ok
from .quotients import Straightener
from .scalars import CycScalar, format_scalar, parse_scalar

UElem = dict  # (a, g) -> scalar
UTensor = dict  # ((a, g), (b, h)) -> scalar


def _acc(out: dict, key, v):
    nv = out.get(key)
    nv = v if nv is None else nv + v
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


def _add_into(out: dict, x: dict, scale=None):
    for k, v in x.items():
        _acc(out, k, v if scale is None else v * scale)


class UAlgebra:
    """u(D, lambda, mu) with cached structure constants."""

    def __init__(self, d: Datum, lam: Optional[dict] = None, mu: Optional[dict] = None, cap: Optional[int] = None):
        self.d = d
        self.lam = d.validate_linking(lam)
        self.mu = d.validate_mu(mu)
        self.G: AbelianGroup = d.group
        self.ctx = d.ctx
        self.e = self.G.exponent
        self._scale = self.ctx.m // self.e
        R = d.roots
        self.roots = R
        self.p = R.p
        self.N = list(d.N_position)
        self.one_g = self.G.identity()
        self.zero_a = tuple([0] * self.p)
        self.slices = []
        for pos in R.component_positions:
            self.slices.append((pos[0], pos[-1] + 1))
        self.pos_comp = list(R.position_component)
        self.g_pos = []
        self.chi_pos = []
        for beta in R.order:
            g, chi = d.g_chi_alpha(beta)
            self.g_pos.append(g)
            self.chi_pos.append(chi)
        self.simple_pos = [R.index[tuple(1 if k == i else 0 for k in range(d.theta))] for i in range(d.theta)]
        self.ucache = UCache(d, cap)
        self.K: list[KAlgebra] = []
        self.engines: list[Straightener] = []
        self.u_pos: list[GroupAlgElem] = [None] * self.p
        for c in range(len(d.components)):
            K = self.ucache.kalgebra(c)
            fam = self.ucache.family(c, self.mu)
            central = []
            for l in range(K.p):
                ul = fam.u_root(l)
                gl = K.global_pos[l]
                self.u_pos[gl] = ul
                if ul and not central_support_ok(d, ul):
                    raise CentralityFailure(f"u for root {R.order[gl]} has a non-central group element in its support")
                if ul and any(self.G.pow(self.chi_pos[gl], self.N[gl])):
                    raise CentralityFailure(f"u for root {R.order[gl]} is nonzero although chi^N != epsilon")
                central.append(dict(ul.terms))
            eng = Straightener(K.R, ctx=self.ctx, trunc=[K.N] * K.p, central=central, gmul=self.G.mul, one_h=self.one_g)
            self.K.append(K)
            self.engines.append(eng)
        self._mono_root: dict = {}
        self._mono_mono: dict = {}
        self._kmul: dict = {}
        self._words: dict = {}
        self._Dmemo: dict = {}
        self._rv_words: dict = {}
        self._delta_root: dict = {}
        self._delta_mono: dict = {}
        self._S_root: dict = {}
        self._S_mono: dict = {}

    # sizes
    @property
    def dim(self) -> int:
        return prod(self.N) * self.G.order

    def dimension_formula(self) -> int:
        d = self.d
        out = self.G.order
        for c, pos in enumerate(self.roots.component_positions):
            out *= d.N_component[c] ** len(pos)
        return out

    def basis_exponents(self):
        return iproduct(*(range(n) for n in self.N))

    def height(self, a) -> int:
        return sum(k * sum(beta) for k, beta in zip(a, self.roots.order))

    # scalars
    def zeta_e(self, k: int) -> CycScalar:
        return self.ctx.zeta((k % self.e) * self._scale)

    def chi_exp(self, b, g) -> int:
        G = self.G
        s = 0
        for l, k in enumerate(b):
            if k:
                s += k * G.pairing(self.chi_pos[l], g)
        return s

    # elements
    def elem(self, a=None, g=None, coeff=1) -> UElem:
        a = self.zero_a if a is None else tuple(a)
        g = self.one_g if g is None else self.G.elem(g)
        c = self.ctx.coerce(coeff)
        return {(a, g): c} if c else {}

    def one(self) -> UElem:
        return self.elem()

    def x(self, i: int) -> UElem:
        return self.elem(self.root_power(self.simple_pos[i], 1))

    def root_power(self, l: int, k: int) -> tuple:
        return tuple(k if j == l else 0 for j in range(self.p))

    def group_elem(self, g) -> UElem:
        return self.elem(None, g)

    def from_group_algebra(self, u: GroupAlgElem) -> UElem:
        return {(self.zero_a, g): c.embed(self.ctx) if c.ctx is not self.ctx else c for g, c in u.terms.items()}

    # component helpers
    def _local(self, a, c: int) -> tuple:
        s, e = self.slices[c]
        return tuple(a[s:e])

    def _with_local(self, a, c: int, b) -> tuple:
        s, e = self.slices[c]
        return tuple(a[:s]) + tuple(b) + tuple(a[e:])

    def _norm_word(self, c: int, word: tuple) -> dict:
        """PBW form (local exponents, central h) of a word in the simple
        positions of component c."""
        key = (c, word)
        res = self._words.get(key)
        if res is None:
            eng = self.engines[c]
            K = self.K[c]
            cur = {(K.zero, self.one_g): self.ctx.one}
            for k in word:
                cur = eng.elem_root(cur, k)
            res = cur
            self._words[key] = res
        return res

    def root_words(self, l: int) -> list:
        """x_{beta_l} as a combination of words in global simple indices."""
        res = self._rv_words.get(l)
        if res is None:
            c = self.pos_comp[l]
            K = self.K[c]
            J = K.J
            local = l - self.slices[c][0]
            poly = K.br.root_vector(local)
            res = [(tuple(J[i] for i in w), v.embed(self.ctx)) for w, v in sorted(poly.terms.items())]
            self._rv_words[l] = res
        return res

    def _D(self, i: int, l: int) -> UElem:
        """D_i(x_{beta_l}) = x_{beta_l} x_i - q_{beta_l, i} x_i x_{beta_l}
        for a simple index i in an earlier component than beta_l."""
        key = (i, l)
        res = self._Dmemo.get(key)
        if res is not None:
            return res
        d = self.d
        G = self.G
        c = self.pos_comp[l]
        K = self.K[c]
        J = K.J
        loc = {j: k for k, j in enumerate(J)}
        res = {}
        for w, cw in self.root_words(l):
            for s, j in enumerate(w):
                lv = d.lam(self.lam, j, i)
                if not lv:
                    continue
                suffix = w[s + 1:]
                qs = sum(d.qexp[t][i] for t in suffix)
                g = G.mul(d.g[j], d.g[i])
                rest = tuple(K.R.simple_pos[loc[t]] for t in w[:s] + suffix)
                chi_suf = sum(G.pairing(d.chi[t], g) for t in suffix)
                coef = cw * lv * self.zeta_e(qs)
                coef2 = -coef * self.zeta_e(chi_suf)
                for (b, h), v in self._norm_word(c, rest).items():
                    a = self._with_local(self.zero_a, c, b)
                    _acc(res, (a, h), v * coef)
                    _acc(res, (a, G.mul(h, g)), v * coef2)
        self._Dmemo[key] = res
        return res

    def mono_root(self, a: tuple, l: int) -> UElem:
        """x^a x_{beta_l}."""
        key = (a, l)
        res = self._mono_root.get(key)
        if res is not None:
            return res
        c = self.pos_comp[l]
        s, e = self.slices[c]
        if not any(a[e:]):
            eng = self.engines[c]
            res = {}
            for (b, h), v in eng.mono_root(self._local(a, c), l - s).items():
                res[(self._with_local(a, c, b), h)] = v
        elif sum(self.roots.order[l]) == 1:
            i = self.roots.simple_index(l)
            last = max(k for k in range(self.p) if a[k])
            a1 = list(a)
            a1[last] -= 1
            a1 = tuple(a1)
            res = {}
            q = self.zeta_e(sum(self.d.qexp[t][i] * v for t, v in enumerate(self.roots.order[last])))
            first = self.elem_root(self.mono_root(a1, l), last)
            _add_into(res, first, q)
            for (f, g), v in self._D(i, last).items():
                part = self.mono_mono(a1, f)
                for (b, h), w in part.items():
                    _acc(res, (b, self.G.mul(h, g)), w * v)
        else:
            res = {}
            for w, cw in self.root_words(l):
                cur = {(a, self.one_g): self.ctx.one}
                for i in w:
                    cur = self.elem_root(cur, self.simple_pos[i])
                _add_into(res, cur, cw)
        self._mono_root[key] = res
        return res

    def elem_root(self, x: UElem, l: int) -> UElem:
        out: UElem = {}
        G = self.G
        chi = self.chi_pos[l]
        for (a, g), c in x.items():
            f = c * self.zeta_e(G.pairing(chi, g)) if any(g) else c
            for (b, h), v in self.mono_root(a, l).items():
                _acc(out, (b, G.mul(h, g)), v * f)
        return out

    def mono_mono(self, a: tuple, b: tuple) -> UElem:
        """x^a x^b."""
        key = (a, b)
        res = self._mono_mono.get(key)
        if res is None:
            if not any(b):
                res = {(a, self.one_g): self.ctx.one}
            else:
                last = max(k for k in range(self.p) if b[k])
                b1 = list(b)
                b1[last] -= 1
                res = self.elem_root(self.mono_mono(a, tuple(b1)), last)
            self._mono_mono[key] = res
        return res

    def mul(self, x: UElem, y: UElem) -> UElem:
        out: UElem = {}
        G = self.G
        for (b, h), d in y.items():
            for (a, g), c in x.items():
                f = c * d
                if any(g) and any(b):
                    f = f * self.zeta_e(self.chi_exp(b, g))
                gh = G.mul(g, h)
                for (a2, h2), v in self.mono_mono(a, b).items():
                    _acc(out, (a2, G.mul(h2, gh)), v * f)
        return out

    def mul_many(self, *xs: UElem) -> UElem:
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, x: UElem, n: int) -> UElem:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def add(self, x: UElem, y: UElem, scale=None) -> UElem:
        out = dict(x)
        _add_into(out, y, scale)
        return out

    def scale(self, x: UElem, c) -> UElem:
        c = self.ctx.coerce(c)
        return {k: v * c for k, v in x.items() if v * c}

    def root_vector(self, l: int) -> UElem:
        return self.elem(self.root_power(l, 1))

    def counit(self, x: UElem) -> CycScalar:
        out = self.ctx.zero
        for (a, _g), c in x.items():
            if not any(a):
                out = out + c
        return out

    # coproduct
    def key_mul(self, k1: tuple, k2: tuple) -> UElem:
        """Product of two basis elements x^a g and x^b h."""
        key = (k1, k2)
        res = self._kmul.get(key)
        if res is None:
            (a, g), (b, h) = k1, k2
            G = self.G
            f = self.zeta_e(self.chi_exp(b, g)) if any(g) and any(b) else self.ctx.one
            gh = G.mul(g, h)
            res = {}
            for (a2, h2), v in self.mono_mono(a, b).items():
                _acc(res, (a2, G.mul(h2, gh)), v * f)
            if len(self._kmul) > 200000:
                self._kmul.clear()
            self._kmul[key] = res
        return res

    def tensor_mul(self, s: UTensor, t: UTensor) -> UTensor:
        out: UTensor = {}
        for (x1, y1), c in s.items():
            for (x2, y2), d in t.items():
                left = self.key_mul(x1, x2)
                if not left:
                    continue
                right = self.key_mul(y1, y2)
                cd = c * d
                for k1, v1 in left.items():
                    f = v1 * cd
                    for k2, v2 in right.items():
                        _acc(out, (k1, k2), f * v2)
        return out

    def delta_root(self, l: int) -> UTensor:
        res = self._delta_root.get(l)
        if res is None:
            one = self.ctx.one
            res = {}
            for w, cw in self.root_words(l):
                cur = {((self.zero_a, self.one_g), (self.zero_a, self.one_g)): cw}
                for i in w:
                    e = self.root_power(self.simple_pos[i], 1)
                    gen = {((self.zero_a, self.d.g[i]), (e, self.one_g)): one, ((e, self.one_g), (self.zero_a, self.one_g)): one}
                    cur = self.tensor_mul(cur, gen)
                _add_into(res, cur)
            self._delta_root[l] = res
        return res

    def delta_mono(self, a: tuple) -> UTensor:
        res = self._delta_mono.get(a)
        if res is None:
            if not any(a):
                res = {((self.zero_a, self.one_g), (self.zero_a, self.one_g)): self.ctx.one}
            else:
                last = max(k for k in range(self.p) if a[k])
                a1 = list(a)
                a1[last] -= 1
                res = self.tensor_mul(self.delta_mono(tuple(a1)), self.delta_root(last))
            self._delta_mono[a] = res
        return res

    def coproduct(self, x: UElem) -> UTensor:
        out: UTensor = {}
        G = self.G
        for (a, g), c in x.items():
            for ((a1, g1), (a2, g2)), v in self.delta_mono(a).items():
                _acc(out, ((a1, G.mul(g1, g)), (a2, G.mul(g2, g))), v * c)
        return out

    # antipode
    def antipode_root(self, l: int) -> UElem:
        res = self._S_root.get(l)
        if res is None:
            res = {}
            for w, cw in self.root_words(l):
                cur = self.elem(coeff=cw)
                for i in reversed(w):
                    si = self.mul(self.group_elem(self.G.inv(self.d.g[i])), self.x(i))
                    cur = self.mul(cur, self.scale(si, -1))
                _add_into(res, cur)
            self._S_root[l] = res
        return res

    def antipode_mono(self, a: tuple) -> UElem:
        res = self._S_mono.get(a)
        if res is None:
            if not any(a):
                res = self.one()
            else:
                last = max(k for k in range(self.p) if a[k])
                a1 = list(a)
                a1[last] -= 1
                res = self.mul(self.antipode_root(last), self.antipode_mono(tuple(a1)))
            self._S_mono[a] = res
        return res

    def antipode(self, x: UElem) -> UElem:
        out: UElem = {}
        for (a, g), c in x.items():
            part = self.mul(self.group_elem(self.G.inv(g)), self.antipode_mono(a))
            _add_into(out, part, c)
        return out

    # tensor helpers
    def tensor_apply_left(self, t: UTensor, f) -> dict:
        """(f (x) id) on a tensor whose legs are basis keys; f maps a key to a dict."""
        out: dict = {}
        for (k1, k2), c in t.items():
            for k, v in f(k1).items():
                _acc(out, (k, k2), v * c)
        return out

    def multiply_legs(self, t: UTensor, left=None, right=None) -> UElem:
        """m((left (x) right) t) with left/right maps on elements."""
        out: UElem = {}
        for (k1, k2), c in t.items():
            x = {k1: c}
            y = {k2: self.ctx.one}
            if left:
                x = left(x)
            if right:
                y = right(y)
            _add_into(out, self.mul(x, y))
        return out


def build_u(d: Datum, lam: Optional[dict] = None, mu: Optional[dict] = None, cap: Optional[int] = None) -> UAlgebra:
    return UAlgebra(d, lam, mu, cap)


def multiply(A: UAlgebra, u: UElem, v: UElem) -> UElem:
    return A.mul(u, v)


def coproduct_u(A: UAlgebra, u: UElem) -> UTensor:
    return A.coproduct(u)


def antipode_u(A: UAlgebra, u: UElem) -> UElem:
    return A.antipode(u)


# verification

def _random_key(A: UAlgebra, rng: random.Random, max_height: Optional[int]) -> tuple:
    while True:
        a = tuple(rng.randrange(n) for n in A.N)
        if max_height is None or A.height(a) <= max_height:
            break
        # shrink towards low height instead of rejecting forever
        a = tuple(rng.randrange(n) if rng.random() < 0.3 else 0 for n in A.N)
        if A.height(a) <= max_height:
            break
    g = tuple(rng.randrange(n) for n in A.G.invariants)
    return a, g


def default_sample_height(A: UAlgebra) -> Optional[int]:
    """Height bound for random basis elements; None means unrestricted."""
    return None if A.dim <= 500 else 6


class Report:
    def __init__(self):
        self.checks: list[tuple[str, bool, str]] = []

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{n}: {d}" for n, ok, d in self.checks if not ok]

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {n}" + (f" ({d})" if d else "") for n, ok, d in self.checks]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}


def _tensor3_left(A: UAlgebra, t: UTensor) -> dict:
    out: dict = {}
    for (k1, k2), c in t.items():
        for (l1, l2), v in A.coproduct({k1: A.ctx.one}).items():
            _acc(out, (l1, l2, k2), v * c)
    return out


def _tensor3_right(A: UAlgebra, t: UTensor) -> dict:
    out: dict = {}
    for (k1, k2), c in t.items():
        for (l1, l2), v in A.coproduct({k2: A.ctx.one}).items():
            _acc(out, (k1, l1, l2), v * c)
    return out


def hopf_identities(A: UAlgebra, x: UElem) -> list[str]:
    """Counit, coassociativity and antipode identities on one element."""
    bad = []
    t = A.coproduct(x)
    left = {}
    right = {}
    for (k1, k2), c in t.items():
        if not any(k1[0]):
            _acc(right, k2, c)
        if not any(k2[0]):
            _acc(left, k1, c)
    if left != x or right != x:
        bad.append("counit")
    if _tensor3_left(A, t) != _tensor3_right(A, t):
        bad.append("coassociativity")
    eps = A.elem(coeff=A.counit(x))
    if A.multiply_legs(t, left=A.antipode) != eps:
        bad.append("S * id")
    if A.multiply_legs(t, right=A.antipode) != eps:
        bad.append("id * S")
    return bad


def verify_hopf(A: UAlgebra, samples: int = 200, seed: int = 0, max_height: Optional[int] = -1, census: bool = True) -> Report:
    """Exact checks of the Hopf algebra axioms on generators and samples.

    For algebras above 500 dimensions the random basis elements are
    drawn with bounded root height (max_height, default 6).
    """
    rng = random.Random(seed)
    if max_height == -1:
        max_height = default_sample_height(A)
    rep = Report()
    d = A.d
    G = A.G
    gens = [A.x(i) for i in range(d.theta)] + [A.group_elem(tuple(1 if k == j else 0 for k in range(G.rank))) for j in range(G.rank)]

    # dimension
    count = sum(1 for _ in A.basis_exponents()) * G.order
    rep.add("dimension", count == A.dimension_formula() == A.dim, f"basis {count}, formula {A.dimension_formula()}")

    # generators
    bad = []
    for i in range(d.theta):
        t = A.coproduct(A.x(i))
        want = {((A.zero_a, d.g[i]), (A.root_power(A.simple_pos[i], 1), A.one_g)): A.ctx.one, ((A.root_power(A.simple_pos[i], 1), A.one_g), (A.zero_a, A.one_g)): A.ctx.one}
        if t != want:
            bad.append(f"Delta(x_{i + 1})")
    for x in gens:
        bad += hopf_identities(A, x)
    rep.add("generator coproducts and identities", not bad, ", ".join(bad))

    # relations in u
    bad = []
    for i in range(d.theta):
        for j in range(d.theta):
            if i == j:
                continue
            if d.cartan.same_component(i, j):
                K = A.K[d.component_of(i)]
                J = K.J
                s = K.br.serre_element(J.index(i), J.index(j))
                val: UElem = {}
                for w, c in s.terms.items():
                    _add_into(val, A.mul_many(*[A.x(J[k]) for k in w]), c.embed(A.ctx))
                if val:
                    bad.append(f"Serre {i + 1},{j + 1}")
            elif i < j:
                lhs = A.add(A.mul(A.x(i), A.x(j)), A.mul(A.x(j), A.x(i)), -d.q(i, j))
                lv = d.lam(A.lam, i, j)
                rhs = A.add(A.elem(coeff=lv), A.group_elem(G.mul(d.g[i], d.g[j])), -lv) if lv else {}
                if lhs != rhs:
                    bad.append(f"linking {i + 1},{j + 1}")
    for l in range(A.p):
        val: UElem = {}
        for w, cw in A.root_words(l):
            _add_into(val, A.mul_many(*[A.x(k) for k in w]), cw)
        if val != A.root_vector(l):
            bad.append(f"root vector {l + 1} word form")
        xl = A.power(val, A.N[l])
        if xl != A.from_group_algebra(A.u_pos[l]):
            bad.append(f"root vector relation {l + 1}")
    for g in G.elements() if G.order <= 50 else [G.elem(tuple(rng.randrange(n) for n in G.invariants)) for _ in range(20)]:
        for i in range(d.theta):
            lhs = A.mul(A.group_elem(g), A.x(i))
            rhs = A.scale(A.mul(A.x(i), A.group_elem(g)), A.zeta_e(G.pairing(d.chi[i], g)))
            if lhs != rhs:
                bad.append(f"group action {g} on x_{i + 1}")
    rep.add("defining relations", not bad, ", ".join(bad[:5]))

    # q-commutation with N-th powers
    bad = []
    for l in range(A.p):
        for m in range(A.p):
            xm = A.power(A.root_vector(m), A.N[m])
            lhs = A.mul(A.root_vector(l), xm)
            q = d.q_form(A.roots.order[l], A.roots.order[m]) ** A.N[m]
            rhs = A.scale(A.mul(xm, A.root_vector(l)), q)
            if lhs != rhs:
                bad.append(f"{l + 1},{m + 1}")
    rep.add("q-commutation with N-th powers", not bad, ", ".join(bad[:5]))

    # sampled pairs: multiplicativity of Delta, counit, associativity
    bad_delta = []
    bad_assoc = []
    bad_eps = []
    pairs = [(x, y) for x in gens for y in gens]
    for _ in range(samples):
        k1 = _random_key(A, rng, max_height)
        k2 = _random_key(A, rng, max_height)
        pairs.append(({k1: A.ctx.one}, {k2: A.ctx.one}))
    for x, y in pairs:
        xy = A.mul(x, y)
        if A.coproduct(xy) != A.tensor_mul(A.coproduct(x), A.coproduct(y)):
            bad_delta.append(f"{list(x)} * {list(y)}")
        if A.counit(xy) != A.counit(x) * A.counit(y):
            bad_eps.append(f"{list(x)} * {list(y)}")
    for _ in range(samples):
        x, y, z = ({_random_key(A, rng, max_height): A.ctx.one} for _ in range(3))
        if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
            bad_assoc.append(f"{list(x)} {list(y)} {list(z)}")
    rep.add("Delta multiplicative", not bad_delta, "; ".join(bad_delta[:3]) or f"{len(pairs)} pairs")
    rep.add("counit multiplicative", not bad_eps, "; ".join(bad_eps[:3]))
    rep.add("associativity", not bad_assoc, "; ".join(bad_assoc[:3]) or f"{samples} triples")

    # sampled elements: coassociativity, counit, antipode
    bad = []
    for _ in range(max(1, samples // 4)):
        k = _random_key(A, rng, max_height)
        for name in hopf_identities(A, {k: A.ctx.one}):
            bad.append(f"{name} at {k}")
    rep.add("coassociativity, counit and antipode on samples", not bad, "; ".join(bad[:3]))

    # basis canonicality
    bad = []
    for x, y in pairs[: len(gens) ** 2 + 20]:
        for (a, g) in A.mul(x, y):
            if any(v >= n or v < 0 for v, n in zip(a, A.N)) or tuple(g) != G.elem(g):
                bad.append(f"{a},{g}")
    rep.add("basis canonicality", not bad, ", ".join(bad[:3]))

    if census:
        ok, detail = group_like_census(A, rng, max_height)
        rep.add("group-likes", ok, detail)
    return rep


def group_like_census(A: UAlgebra, rng: Optional[random.Random] = None, max_height: Optional[int] = None) -> tuple[bool, str]:
    """G(u) = Gamma.

    Every g in Gamma is group-like.  Conversely, if every term of
    Delta(x^a g) has left height plus right height at most ht(a), the top
    height part x_H of a group-like x satisfies x_H (x) x_H = 0 unless H = 0,
    so x lies in k[Gamma].  The height condition is checked on all basis
    monomials when dim <= 5000 and on a sample otherwise.
    """
    G = A.G
    rng = rng or random.Random(0)
    for g in (G.elements() if G.order <= 2000 else [G.elem(tuple(rng.randrange(n) for n in G.invariants)) for _ in range(50)]):
        x = A.group_elem(g)
        if A.coproduct(x) != {((A.zero_a, g), (A.zero_a, g)): A.ctx.one}:
            return False, f"{g} is not group-like"
    if A.dim <= 5000:
        monos = list(A.basis_exponents())
        scope = "all monomials"
    else:
        monos = [_random_key(A, rng, max_height)[0] for _ in range(100)]
        scope = "100 sampled monomials"
    for a in monos:
        ha = A.height(a)
        for ((a1, _), (a2, _)), _c in A.delta_mono(tuple(a)).items():
            if A.height(a1) + A.height(a2) > ha:
                return False, f"Delta(x^{a}) raises height"
    return True, f"Gamma group-like; height filtration respected on {scope}"


def top_degree_part(A: UAlgebra, x: UElem, h: int) -> UElem:
    return {k: v for k, v in x.items() if A.height(k[0]) == h}


# Cauchy

def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def element_of_order(G: AbelianGroup, p: int) -> Optional[tuple]:
    for k, n in enumerate(G.invariants):
        if n % p == 0:
            return tuple(n // p if j == k else 0 for j in range(G.rank))
    return None


def cauchy_check(A: UAlgebra) -> Report:
    rep = Report()
    dim = A.dim
    G = A.G
    for p in _prime_factors(dim):
        g = element_of_order(G, p)
        ok = G.order % p == 0 and g is not None and G.element_order(g) == p
        if ok:
            x = A.group_elem(g)
            ok = A.coproduct(x) == {((A.zero_a, g), (A.zero_a, g)): A.ctx.one}
        rep.add(f"prime {p}", ok, f"group-like {g} of order {p}" if ok else "no group-like of this order")
    return rep


# serialization

def uelem_to_json(A: UAlgebra, x: UElem) -> list:
    return [[list(a), list(g), format_scalar(c)] for (a, g), c in sorted(x.items())]


def uelem_from_json(A: UAlgebra, obj: list) -> UElem:
    out: UElem = {}
    for a, g, c in obj:
        _acc(out, (tuple(a), A.G.elem(g)), parse_scalar(A.ctx, c))
    return out


def format_uelem(A: UAlgebra, x: UElem) -> str:
    if not x:
        return "0"
    parts = []
    for (a, g), c in sorted(x.items()):
        mono = "*".join(f"x{l + 1}" + (f"^{k}" if k > 1 else "") for l, k in enumerate(a) if k)
        gs = "" if not any(g) else "g" + str(list(g))
        body = "*".join(s for s in (mono, gs) if s) or "1"
        parts.append(f"({format_scalar(c)})*{body}")
    return " + ".join(parts)


def describe(A: UAlgebra) -> dict:
    return {
        "group": format_group(A.G),
        "cartan": A.d.cartan.label(),
        "dim": A.dim,
        "N": A.N,
        "roots": [list(r) for r in A.roots.order],
    }
