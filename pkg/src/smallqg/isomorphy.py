"""Deciding isomorphism of u(D', lambda', mu') and u(D, lambda, mu).

A candidate is a triple (phi, sigma, (s_i)): a group isomorphism
phi: Gamma' -> Gamma, a permutation sigma of the indices and nonzero
scalars s_i.  phi and sigma are searched combinatorially (conditions
I1-I3); the scalars enter only through multiplicative equations
(conditions I4 and I5), which are decided with the Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .braided import Braiding
from .datum import Datum
from .errors import DegreeCapExceeded, InternalCheckError, NotInK, OrderHypothesisViolated, RankMismatch, ZeroConstant
from .groups import GroupAlgElem, apply_hom, enumerate_isomorphisms
from .kalgebra import KAlgebra, UCache
from .scalars import CycScalar, ScalarContext, make_context


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# monomial systems

@dataclass
class MonomialSolution:
    solvable: bool
    n: int
    rank: int = 0
    witness: Optional[list] = None  # CycScalars, when a cyclotomic witness exists
    certificate: Optional[list] = None  # kernel vector v with prod c^v != 1
    note: str = ""


def _int_root(n: int, d: int) -> Optional[int]:
    if n < 0:
        return None
    r = round(n ** (1.0 / d)) if n else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** d == n:
            return cand
    # exact fallback for large n
    lo, hi = 0, 1
    while hi ** d <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** d < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** d == n else None


def split_root_of_unity(c: CycScalar) -> Optional[tuple[Fraction, int, int]]:
    """Write c = rho * zeta_u^k with rho > 0 rational; None if impossible."""
    ctx = c.ctx
    u = ctx.unit_order
    w = ctx.unit_generator()
    winv = w.inverse()
    cur = c
    for k in range(u):
        if cur.is_rational():
            rho = cur.to_fraction()
            if rho > 0:
                return rho, k, u
        cur = cur * winv
    return None


class _Root:
    """rho * zeta_M^k, multiplied without fixing a field."""

    __slots__ = ("rho", "k", "M")

    def __init__(self, rho: Fraction, k: int, M: int):
        k %= M
        g = gcd(k, M)
        self.rho, self.k, self.M = rho, k // g, M // g

    def __mul__(self, other: _Root) -> _Root:
        M = _lcm(self.M, other.M)
        return _Root(self.rho * other.rho, self.k * (M // self.M) + other.k * (M // other.M), M)

    def __pow__(self, n: int) -> _Root:
        return _Root(self.rho ** n, self.k * n, self.M)

    def to_scalar(self, ctx: ScalarContext) -> CycScalar:
        return ctx.zeta(self.k * (ctx.m // self.M)) * ctx.coerce(self.rho)


def _root_of_root(rho: Fraction, k: int, u: int, d: int) -> _Root:
    """A d-th root of zeta_u^k (times rho), in Q(zeta_u) when the order allows."""
    r = _Root(Fraction(1), k, u)
    if gcd(d, r.M) == 1:
        return _Root(rho, r.k * pow(d, -1, r.M), r.M)
    return _Root(rho, r.k, r.M * d)


def solve_monomial(E: list, c: list, n: Optional[int] = None) -> MonomialSolution:
    """Decide prod_j s_j^E[r][j] = c[r] for all rows r, with s_j nonzero."""
    if n is None:
        n = len(E[0]) if E else 0
    if any(not x for x in c):
        raise ZeroConstant("a constant of the monomial system is zero")
    if not E:
        return MonomialSolution(True, n, 0, [make_context(1).one] * n)
    ctx = c[0].ctx
    for x in c:
        if x.ctx.m != ctx.m:
            raise ValueError("constants must share one cyclotomic field")
    S, U, V = smith_normal_decomp(Matrix(E), domain=ZZ)
    r = len(E)
    diag = [int(S[i, i]) for i in range(min(r, n))]
    rank = sum(1 for x in diag if x)
    U = [[int(U[i, k]) for k in range(r)] for i in range(r)]
    V = [[int(V[i, k]) for k in range(n)] for i in range(n)]
    cprime = []
    for i in range(r):
        x = ctx.one
        for k in range(r):
            if U[i][k]:
                x = x * c[k] ** U[i][k]
        cprime.append(x)
    for i in range(rank, r):
        if not cprime[i].is_one():
            v = U[i]
            if any(sum(v[k] * E[k][j] for k in range(r)) for j in range(n)):
                raise InternalCheckError("kernel certificate is not in the left kernel")
            return MonomialSolution(False, n, rank, certificate=v, note=f"kernel vector {v} gives {cprime[i]} != 1")
    # z_i^diag_i = c'_i for i < rank, z_i = 1 otherwise; s = V z
    z = []
    for i in range(n):
        if i < rank:
            sp = split_root_of_unity(cprime[i])
            d = diag[i]
            if sp is None:
                return MonomialSolution(True, n, rank, note="solvable over the algebraic closure; no cyclotomic witness")
            rho, k, u = sp
            num = _int_root(rho.numerator, d)
            den = _int_root(rho.denominator, d)
            if num is None or den is None:
                return MonomialSolution(True, n, rank, note="solvable over the algebraic closure; no cyclotomic witness")
            z.append(_root_of_root(Fraction(num, den), k, u, d))
        else:
            z.append(_Root(Fraction(1), 0, 1))
    s = []
    for j in range(n):
        x = _Root(Fraction(1), 0, 1)
        for i in range(n):
            if V[j][i]:
                x = x * z[i] ** V[j][i]
        s.append(x)
    M = ctx.m
    for x in s:
        M = _lcm(M, x.M)
    big = make_context(M)
    wit = [x.to_scalar(big) for x in s]
    for row, cr in zip(E, c):
        lhs = big.one
        for j, e in enumerate(row):
            if e:
                lhs = lhs * wit[j] ** e
        if lhs != cr.embed(big):
            raise InternalCheckError("monomial witness does not satisfy the system")
    return MonomialSolution(True, n, rank, wit)


# constants for diagram automorphisms

def permuted_braiding(K: KAlgebra, sigma: tuple) -> Braiding:
    E = K.br.E
    n = len(sigma)
    Es = [[E[sigma[k]][sigma[l]] for l in range(n)] for k in range(n)]
    return Braiding(Es, K.br.m, K.br.roots, K.br.cartan)


def iso_constants(d: Datum, c: int, sigma: tuple, alpha, cap: Optional[int] = None, K: Optional[KAlgebra] = None) -> dict:
    """t^a with F^sigma(x^sigma_alpha)^N = sum_a t^a z^a in R(D_J).

    alpha is given in the local coordinates of the component; sigma is a
    diagram automorphism on local indices.
    """
    if K is None:
        K = KAlgebra(d, c, cap)
    alpha = tuple(alpha)
    l = K.roots.index[alpha]
    N = K.N
    K.R.check_cap(N * sum(alpha))
    bs = permuted_braiding(K, tuple(sigma))
    x = bs.root_vector(l)
    terms = {tuple(sigma[k] for k in w): v for w, v in x.terms.items()}
    eng = K.R.engine
    base = eng.from_words(terms)
    acc = {K.zero: K.br.ctx.one}
    for _ in range(N):
        acc = eng.mul(acc, base)
    out = {}
    for a, v in acc.items():
        if any(k % N for k in a):
            raise NotInK(f"F^sigma(x_alpha)^N has the term x^{a}")
        out[tuple(k // N for k in a)] = v
    return out


# search

@dataclass
class IsoTriple:
    phi: tuple
    sigma: tuple
    s: Optional[list]
    solution: MonomialSolution
    rows: list = field(default_factory=list)
    consts: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    @property
    def has_witness(self) -> bool:
        return self.s is not None


@dataclass
class Undecided:
    phi: tuple
    sigma: tuple
    component: int
    reason: str


class _Side:
    def __init__(self, d: Datum, lam, mu, cap):
        self.d = d
        self.lam = d.validate_linking(lam)
        self.mu = d.validate_mu(mu)
        self.cache = UCache(d, cap)

    def u_root(self, alpha) -> GroupAlgElem:
        d = self.d
        gl = d.roots.index[tuple(alpha)]
        c = d.roots.position_component[gl]
        fam = self.cache.family(c, self.mu)
        return fam.u_root(fam.K.global_pos.index(gl))


def _proportional(L: dict, W: dict):
    """c with L = c W, 0 for L = W = 0, None if impossible (W = 0 != L)."""
    if not W:
        return 0 if not L else None
    g0 = next(iter(W))
    if g0 not in L:
        return None
    c = L[g0] / W[g0]
    if set(L) != set(W):
        return None
    for g, w in W.items():
        if L[g] != c * w:
            return None
    return c


def find_isomorphisms(src: tuple, dst: tuple, cap: Optional[int] = None, i5: str = "auto") -> Iterator:
    """Yield IsoTriple (and Undecided) objects for all candidate (phi, sigma).

    src and dst are (Datum, lambda, mu).  i5 = "auto" uses
    mu'_alpha = s_alpha^N mu_alpha on components where sigma_J is the
    identity and the constants t^a otherwise; i5 = "direct" always
    compares phi(u'_alpha) with s_alpha^N sum_a t^a u(mu)^a.
    """
    A = _Side(*src, cap)
    B = _Side(*dst, cap)
    d1, d2 = A.d, B.d
    if d1.theta != d2.theta:
        raise RankMismatch(f"ranks {d1.theta} and {d2.theta} differ")
    for i in range(d2.theta):
        if d2.N[i] <= 4:
            raise OrderHypothesisViolated(f"ord(q_{i + 1}{i + 1}) = {d2.N[i]} <= 4 on the target datum")
    G1, G2 = d1.group, d2.group
    if G1.invariants != G2.invariants:
        return
    theta = d2.theta
    ctx = make_context(_lcm(d1.ctx.m, d2.ctx.m))
    gset = set(d2.g)

    def constraint(k, img, prev):
        images = list(prev) + [img]
        for gi in d1.g:
            if all(x == 0 for x in gi[k + 1:]):
                h = apply_hom(G2, tuple(images) + tuple(G2.identity() for _ in range(G1.rank - k - 1)), gi)
                if h not in gset:
                    return False
        return True

    Wcache: dict = {}
    for phi in enumerate_isomorphisms(G1, G2, constraint):
        img_g = [apply_hom(G2, phi, g) for g in d1.g]
        cands = []
        for i in range(theta):
            cs = [j for j in range(theta) if d2.g[j] == img_g[i] and G2.pullback(d2.chi[j], phi) == d1.chi[i]]
            cands.append(cs)
        if any(not cs for cs in cands):
            continue
        for sigma in _permutations(cands):
            a1, a2 = d1.cartan.a, d2.cartan.a
            if any(a1[i][j] != a2[sigma[i]][sigma[j]] for i in range(theta) for j in range(theta)):
                raise InternalCheckError("I1 and I2 hold but I3 fails although ord(q_ii) > 4")
            res = _conditions(A, B, phi, sigma, ctx, cap, i5, Wcache)
            if res is None:
                continue
            if isinstance(res, Undecided):
                yield res
                continue
            rows, consts, labels = res
            sol = solve_monomial(rows, consts, theta)
            if sol.solvable:
                yield IsoTriple(phi, sigma, sol.witness, sol, rows, consts, labels)


def _permutations(cands: list) -> Iterator[tuple]:
    n = len(cands)
    used = set()
    cur: list = []

    def rec(i):
        if i == n:
            yield tuple(cur)
            return
        for j in cands[i]:
            if j not in used:
                used.add(j)
                cur.append(j)
                yield from rec(i + 1)
                cur.pop()
                used.discard(j)

    yield from rec(0)


def _conditions(A: _Side, B: _Side, phi, sigma, ctx, cap, i5, Wcache):
    """Monomial rows from I4 and I5, None when the candidate is rejected."""
    d1, d2 = A.d, B.d
    theta = d2.theta
    rows, consts, labels = [], [], []
    # I4
    for i in range(theta):
        for j in range(i + 1, theta):
            if d1.cartan.same_component(i, j):
                continue
            l1 = d1.lam(A.lam, i, j)
            l2 = d2.lam(B.lam, sigma[i], sigma[j])
            if not l1 and not l2:
                continue
            if not l1 or not l2:
                return None
            row = [0] * theta
            row[i] += 1
            row[j] += 1
            rows.append(row)
            consts.append(l1.embed(ctx) / l2.embed(ctx))
            labels.append(f"I4 {i + 1},{j + 1}")
    # I5, per target component
    for c, J in enumerate(d2.components):
        Jp = sorted(i for i in range(theta) if sigma[i] in J)
        sigma_J = tuple(J.index(sigma[i]) for i in Jp)
        K = B.cache.kalgebra(c)
        ident = sigma_J == tuple(range(len(J)))
        N = d2.N_component[c]
        for alpha in K.roots.order:
            a_src = [0] * theta
            a_dst = [0] * theta
            for k, n in enumerate(alpha):
                a_src[Jp[k]] = n
                a_dst[J[k]] = n
            a_src, a_dst = tuple(a_src), tuple(a_dst)
            row = [0] * theta
            for k, n in enumerate(alpha):
                row[Jp[k]] = N * n
            if ident and i5 == "auto":
                m1 = A.mu.get(a_src)
                m2 = B.mu.get(a_dst)
                if not m1 and not m2:
                    continue
                if not m1 or not m2:
                    return None
                rows.append(row)
                consts.append(m1.embed(ctx) / m2.embed(ctx))
                labels.append(f"I5 {a_src}")
                continue
            try:
                L = A.u_root(a_src).map_group(phi, d2.group)
            except DegreeCapExceeded as exc:
                return Undecided(phi, tuple(sigma), c, f"source root vector parameters exceed the degree cap ({exc})")
            L = {g: v.embed(ctx) for g, v in L.terms.items()}
            key = (c, sigma_J, alpha)
            W = Wcache.get(key)
            if W is None:
                try:
                    W = _i5_rhs(B, c, sigma_J, alpha, cap)
                except DegreeCapExceeded as exc:
                    return Undecided(phi, tuple(sigma), c, f"constants for sigma_J = {sigma_J} exceed the degree cap ({exc})")
                Wcache[key] = W
            W = {g: v.embed(ctx) for g, v in W.items()}
            coef = _proportional(L, W)
            if coef is None:
                return None
            if coef == 0:
                continue
            rows.append(row)
            consts.append(coef)
            labels.append(f"I5 {a_src}")
    return rows, consts, labels


def _i5_rhs(B: _Side, c: int, sigma_J: tuple, alpha, cap) -> dict:
    """sum_a t^a_{alpha, q_J, sigma_J} u(mu)^a as a map g -> scalar."""
    d = B.d
    K = B.cache.kalgebra(c)
    fam = B.cache.family(c, B.mu)
    if not any(fam.mu_pos):
        return {}
    if sigma_J == tuple(range(len(sigma_J))):
        l = K.roots.index[tuple(alpha)]
        return dict(fam.u_root(l).terms)
    t = iso_constants(d, c, sigma_J, alpha, cap, K=K)
    out = GroupAlgElem.zero(d.group, d.ctx)
    for a, v in t.items():
        ua = fam.u.get(a)
        if ua is None:
            ua = GroupAlgElem.one(d.group, d.ctx)
            for l, k in enumerate(a):
                for _ in range(k):
                    ua = ua * fam.u_root(l)
        out = out + ua * v.embed(d.ctx)
    return dict(out.terms)


def decide(src: tuple, dst: tuple, cap: Optional[int] = None, i5: str = "auto") -> tuple[str, list]:
    """("isomorphic" | "not isomorphic" | "undecided", results)."""
    try:
        res = list(find_isomorphisms(src, dst, cap, i5))
    except RankMismatch:
        return "not isomorphic", []
    if any(isinstance(r, IsoTriple) for r in res):
        return "isomorphic", res
    if res:
        return "undecided", res
    return "not isomorphic", res


# soundness

def soundness(src: tuple, dst: tuple, triple: IsoTriple, cap: Optional[int] = None) -> list[str]:
    """Check that x'_i -> s_i x_sigma(i), g' -> phi(g') respects every
    defining relation of u(D', lambda', mu') and the coproducts of the
    generators, computing in u(D, lambda, mu) over the witness field."""
    from .uqgroup import UAlgebra

    if triple.s is None:
        return ["no cyclotomic witness to check"]
    d1, lam1, mu1 = src
    d2, lam2, mu2 = dst
    A1 = _Side(d1, lam1, mu1, cap)
    M = _lcm(_lcm(d1.ctx.m, d2.ctx.m), triple.s[0].ctx.m)
    big = Datum(d2.group, d2.g, d2.chi, d2.cartan.a, M)
    ctx = big.ctx
    lam2 = {k: v.embed(ctx) if isinstance(v, CycScalar) else v for k, v in (d2.validate_linking(lam2)).items()}
    mu2 = {k: v.embed(ctx) if isinstance(v, CycScalar) else v for k, v in (d2.validate_mu(mu2)).items()}
    U = UAlgebra(big, lam2, mu2, cap)
    G1, G2 = d1.group, d2.group
    phi, sigma = triple.phi, triple.sigma
    s = [x.embed(ctx) for x in triple.s]
    theta = d1.theta
    F = [U.scale(U.x(sigma[i]), s[i]) for i in range(theta)]
    bad = []

    def Fword(w, coeff):
        out = U.elem(coeff=coeff)
        for k in w:
            out = U.mul(out, F[k])
        return out

    def emb(x):
        return x.embed(ctx)

    # group action
    for k in range(G1.rank):
        gen = tuple(1 if j == k else 0 for j in range(G1.rank))
        img = apply_hom(G2, phi, gen)
        for i in range(theta):
            lhs = U.mul(U.group_elem(img), F[i])
            rhs = U.scale(U.mul(F[i], U.group_elem(img)), emb(G1.char_eval(d1.chi[i], gen, d1.ctx)))
            if lhs != rhs:
                bad.append(f"group action of generator {k + 1} on x'_{i + 1}")
    # Serre and root vector relations, per source component
    for c, J in enumerate(d1.components):
        K = KAlgebra(d1, c, cap)
        for a in range(len(J)):
            for b in range(len(J)):
                if a != b:
                    se = K.br.serre_element(a, b)
                    val: dict = {}
                    for w, v in se.terms.items():
                        val = U.add(val, Fword([J[k] for k in w], emb(v)))
                    if val:
                        bad.append(f"Serre relation {J[a] + 1},{J[b] + 1}")
        for l, beta in enumerate(K.roots.order):
            xv: dict = {}
            for w, v in K.br.root_vector(l).terms.items():
                xv = U.add(xv, Fword([J[k] for k in w], emb(v)))
            lhs = U.power(xv, K.N)
            glob = [0] * theta
            for k, n in enumerate(beta):
                glob[J[k]] = n
            ur = A1.u_root(tuple(glob)).map_group(phi, G2)
            rhs = {(U.zero_a, g): emb(v) for g, v in ur.terms.items()}
            if lhs != rhs:
                bad.append(f"root vector relation for {tuple(glob)}")
    # linking relations
    for i in range(theta):
        for j in range(i + 1, theta):
            if d1.cartan.same_component(i, j):
                continue
            lhs = U.add(U.mul(F[i], F[j]), U.mul(F[j], F[i]), -emb(d1.q(i, j)))
            lv = d1.lam(A1.lam, i, j)
            rhs = {}
            if lv:
                gij = apply_hom(G2, phi, G1.mul(d1.g[i], d1.g[j]))
                rhs = U.add(U.elem(coeff=emb(lv)), U.group_elem(gij), -emb(lv))
            if lhs != rhs:
                bad.append(f"linking relation {i + 1},{j + 1}")
    # coproducts of generators
    for i in range(theta):
        gi = apply_hom(G2, phi, d1.g[i])
        e = U.root_power(U.simple_pos[sigma[i]], 1)
        want = {((U.zero_a, gi), (e, U.one_g)): s[i], ((e, U.one_g), (U.zero_a, U.one_g)): s[i]}
        if U.coproduct(F[i]) != want:
            bad.append(f"coproduct of x'_{i + 1}")
    return bad


# serialization

def triple_to_json(t) -> dict:
    from .scalars import format_scalar

    if isinstance(t, Undecided):
        return {"undecided": True, "phi": [list(x) for x in t.phi], "sigma": [i + 1 for i in t.sigma], "component": t.component + 1, "reason": t.reason}
    out = {"phi": [list(x) for x in t.phi], "sigma": [i + 1 for i in t.sigma]}
    if t.s is not None:
        out["s"] = [format_scalar(x) for x in t.s]
        out["field"] = f"zeta_order={t.s[0].ctx.m}" if t.s else ""
    else:
        out["s"] = "witness over the algebraic closure"
    return out
