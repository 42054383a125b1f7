"""Data of finite Cartan type, linking and root vector parameters.

Indices are 0-based in code and 1-based in every user-facing string.
A braiding value q_ij = chi_j(g_i) is kept as an exponent of zeta_e,
e the exponent of the group, so the Cartan condition is integer
arithmetic.
"""

from __future__ import annotations

import itertools
import json
import random
from math import gcd
from typing import Iterable, Iterator, Optional

from .errors import (
    AdmissibilityError,
    CartanConditionFailed,
    EvenOrder,
    G2OrderDivisibleBy3,
    IllegalLinking,
    IllegalMu,
    NotGeneralizedCartan,
    UnitDiagonal,
)
from .groups import AbelianGroup, Elem, Normalization, format_char, format_group, parse_char, parse_moduli
from .roots import (
    CartanMatrix,
    RootSystem,
    build_root_system,
    check_gcm,
    connected_components,
    is_finite_type_block,
    recognize,
    standardize,
)
from .scalars import CycScalar, ScalarContext, format_scalar, make_context, parse_scalar


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class Datum:
    """A validated datum D(Gamma, (g_i), (chi_i), (a_ij)) of finite Cartan type."""

    def __init__(self, group: AbelianGroup, g, chi, cartan, zeta_order: Optional[int] = None):
        self.group = group
        self.g = [group.elem(x) for x in g]
        self.chi = [group.elem(x) for x in chi]
        if not isinstance(cartan, CartanMatrix):
            cartan = recognize(cartan)
        self.cartan = cartan
        theta = len(self.g)
        if len(self.chi) != theta or cartan.rank != theta:
            raise AdmissibilityError("g, chi and the Cartan matrix have different sizes")
        self.theta = theta
        e = group.exponent
        self.e = e
        self.qexp = [[group.pairing(self.chi[j], self.g[i]) for j in range(theta)] for i in range(theta)]
        m = e if zeta_order is None else _lcm(e, int(zeta_order))
        self.ctx: ScalarContext = make_context(m)
        # smallest field containing every q_ij
        gq = e
        for row in self.qexp:
            for k in row:
                gq = gcd(gq, k)
        self.braid_m = e // gq if gq else 1
        self.bctx: ScalarContext = make_context(self.braid_m)
        self._validate()
        self.roots: RootSystem = build_root_system(self.cartan)
        self.N = [self.order_of_exp(self.qexp[i][i]) for i in range(theta)]
        self.N_component = [self.N[comp[0]] for comp in self.cartan.components]
        self.N_position = [self.N_component[self.roots.position_component[l]] for l in range(self.roots.p)]
        small = [p for p in _prime_factors(group.order) if p <= 7]
        self.warnings = []
        if small:
            self.warnings.append(f"group order has prime divisors {small} <= 7")

    # construction helpers
    def order_of_exp(self, k: int) -> int:
        return self.e // gcd(k, self.e)

    def _validate(self):
        a = self.cartan.a
        e = self.e
        for i in range(self.theta):
            if self.qexp[i][i] == 0:
                raise UnitDiagonal(i)
        for i in range(self.theta):
            for j in range(self.theta):
                lhs = (self.qexp[i][j] + self.qexp[j][i]) % e
                rhs = (a[i][j] * self.qexp[i][i]) % e
                if lhs != rhs:
                    raise CartanConditionFailed(i, j)
        for c, comp in enumerate(self.cartan.components):
            kind = self.cartan.types[c][0]
            for i in comp:
                o = self.order_of_exp(self.qexp[i][i])
                if o % 2 == 0:
                    raise EvenOrder(i, o)
                if kind == "G" and o % 3 == 0:
                    raise G2OrderDivisibleBy3(i, o)
            orders = {self.order_of_exp(self.qexp[i][i]) for i in comp}
            if len(orders) != 1:
                raise CartanConditionFailed(comp[0], comp[-1], "orders of q_ii differ on a component")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Datum)
            and self.group == other.group
            and self.g == other.g
            and self.chi == other.chi
            and self.cartan.a == other.cartan.a
        )

    def __hash__(self) -> int:
        return hash((self.group, tuple(self.g), tuple(self.chi), self.cartan.a))

    def __repr__(self) -> str:
        return f"Datum({format_group(self.group)}, {self.cartan.label()}, g={self.g}, chi={self.chi})"

    # braiding values
    def q(self, i: int, j: int) -> CycScalar:
        return self.ctx.zeta(self.qexp[i][j] * (self.ctx.m // self.e))

    def bq_exp(self, i: int, j: int) -> int:
        """Exponent of q_ij relative to zeta_{braid_m}."""
        return self.qexp[i][j] // (self.e // self.braid_m)

    def qmatrix(self) -> list[list[CycScalar]]:
        return [[self.q(i, j) for j in range(self.theta)] for i in range(self.theta)]

    def q_form_exp(self, alpha, beta) -> int:
        """Exponent (mod e) of q_{alpha beta} = chi_beta(g_alpha)."""
        s = 0
        for i, n in enumerate(alpha):
            if n:
                row = self.qexp[i]
                for j, m in enumerate(beta):
                    if m:
                        s += n * m * row[j]
        return s % self.e

    def q_form(self, alpha, beta) -> CycScalar:
        return self.ctx.zeta(self.q_form_exp(alpha, beta) * (self.ctx.m // self.e))

    def g_chi_alpha(self, alpha) -> tuple[Elem, Elem]:
        G = self.group
        g = G.prod(G.pow(self.g[i], n) for i, n in enumerate(alpha) if n)
        chi = G.prod(G.pow(self.chi[i], n) for i, n in enumerate(alpha) if n)
        return g, chi

    @property
    def components(self) -> list[list[int]]:
        return self.cartan.components

    def component_of(self, i: int) -> int:
        return self.cartan.component_of(i)

    def N_of_root(self, alpha) -> int:
        i = next(k for k, v in enumerate(alpha) if v)
        return self.N[i]

    # sub-data
    def restrict(self, comp: list[int]) -> Datum:
        sub = [[self.cartan.a[i][j] for j in comp] for i in comp]
        return Datum(self.group, [self.g[i] for i in comp], [self.chi[i] for i in comp], sub, self.ctx.m)

    def with_braiding_permuted(self, perm: Iterable[int]) -> Datum:
        perm = list(perm)
        return Datum(
            self.group,
            [self.g[p] for p in perm],
            [self.chi[p] for p in perm],
            [[self.cartan.a[p][r] for r in perm] for p in perm],
            self.ctx.m,
        )

    # linking and root vector parameters
    def linkable(self, i: int, j: int) -> bool:
        if i == j or self.cartan.same_component(i, j):
            return False
        G = self.group
        if G.mul(self.g[i], self.g[j]) == G.identity():
            return False
        if any(G.mul(self.chi[i], self.chi[j])):
            return False
        if self.N[i] > 3:
            assert (self.qexp[i][i] + self.qexp[j][j]) % self.e == 0, "linkable pair with q_ii q_jj != 1"
        return True

    def linking_clause(self, i: int, j: int) -> Optional[str]:
        """Why lambda_ij must vanish, or None if it may be nonzero."""
        if i >= j:
            return "indices must satisfy i < j"
        if self.cartan.same_component(i, j):
            return "i and j lie in the same component"
        G = self.group
        if G.mul(self.g[i], self.g[j]) == G.identity():
            return "g_i g_j = 1"
        if any(G.mul(self.chi[i], self.chi[j])):
            return "chi_i chi_j != epsilon"
        return None

    def validate_linking(self, raw: Optional[dict] = None) -> dict:
        out = {}
        for key, v in (raw or {}).items():
            i, j = key
            c = self.ctx.coerce(v)
            if not c:
                continue
            clause = self.linking_clause(i, j)
            if clause:
                raise IllegalLinking(i, j, clause)
            out[(i, j)] = c
        return out

    def lam(self, lam: dict, i: int, j: int) -> CycScalar:
        """lambda_ij for any ordered pair, with lambda_ji = -q_ji lambda_ij."""
        if i < j:
            return lam.get((i, j), self.ctx.zero)
        v = lam.get((j, i))
        if v is None:
            return self.ctx.zero
        return -self.q(i, j) * v

    def mu_clause(self, alpha) -> Optional[str]:
        N = self.N_of_root(alpha)
        g, chi = self.g_chi_alpha(alpha)
        G = self.group
        if G.pow(g, N) == G.identity():
            return "g_alpha^N = 1"
        if any(G.pow(chi, N)):
            return "chi_alpha^N != epsilon"
        return None

    def validate_mu(self, raw: Optional[dict] = None) -> dict:
        out = {}
        for alpha, v in (raw or {}).items():
            alpha = tuple(alpha)
            if alpha not in self.roots.index:
                raise IllegalMu(alpha, "not a positive root")
            c = self.ctx.coerce(v)
            if not c:
                continue
            clause = self.mu_clause(alpha)
            if clause:
                raise IllegalMu(alpha, clause)
            out[alpha] = c
        return out

    def free_mu_roots(self) -> list[tuple]:
        return [a for a in self.roots.order if self.mu_clause(a) is None]

    def free_linking_pairs(self) -> list[tuple]:
        return [(i, j) for i in range(self.theta) for j in range(i + 1, self.theta) if self.linking_clause(i, j) is None]


def validate_datum(raw) -> Datum:
    if isinstance(raw, Datum):
        return Datum(raw.group, raw.g, raw.chi, raw.cartan.a, raw.ctx.m)
    if isinstance(raw, dict):
        return datum_from_json(raw)
    group, g, chi, cartan = raw[:4]
    return Datum(group, g, chi, cartan)


# enumeration

def _finite_standardizable(a) -> bool:
    try:
        check_gcm(a)
    except NotGeneralizedCartan:
        return False
    return all(is_finite_type_block(a, comp) for comp in connected_components(a))


def _pairs(G: AbelianGroup) -> list[tuple]:
    """(g, chi, k, N) with q = chi(g) != 1 of odd order N."""
    e = G.exponent
    pairs = []
    for g in G.elements():
        for chi in G.elements():
            k = G.pairing(chi, g)
            if k == 0:
                continue
            N = e // gcd(k, e)
            if N % 2 == 0:
                continue
            pairs.append((g, chi, k, N))
    return pairs


def _combo_cartan(G: AbelianGroup, combo) -> Optional[list]:
    """The Cartan matrix forced by the chosen (g_i, chi_i), or None."""
    e = G.exponent
    theta = len(combo)
    a = [[2] * theta for _ in range(theta)]
    for i in range(theta):
        gi, _ci, ki, Ni = combo[i]
        for j in range(theta):
            if i == j:
                continue
            s = (G.pairing(combo[j][1], gi) + G.pairing(combo[i][1], combo[j][0])) % e
            found = None
            for c in (0, -1, -2, -3):
                if c <= -Ni:
                    break
                if (c * ki - s) % e == 0:
                    found = c
                    break
            if found is None:
                return None
            a[i][j] = found
    if not _finite_standardizable(a):
        return None
    # order conditions per component
    for comp in connected_components(a):
        orders = {combo[i][3] for i in comp}
        if len(orders) != 1:
            return None
        if len(comp) == 2 and {a[comp[0]][comp[1]], a[comp[1]][comp[0]]} == {-1, -3}:
            if orders.pop() % 3 == 0:
                return None
    return a


def raw_data(G: AbelianGroup, theta: int) -> Iterator[tuple]:
    """Every tuple ((g_i), (chi_i), (a_ij)) of size theta passing the defining conditions."""
    for combo in itertools.product(_pairs(G), repeat=theta):
        a = _combo_cartan(G, combo)
        if a is not None:
            yield [c[0] for c in combo], [c[1] for c in combo], a


def enumerate_data(G: AbelianGroup, theta_max: int, canonicalize: bool = False) -> Iterator[Datum]:
    """Every datum with 1 <= theta <= theta_max, re-indexed into standard form."""
    if theta_max < 1:
        raise ValueError("theta_max must be >= 1")
    for theta in range(1, theta_max + 1):
        seen = set()
        for g, chi, a in raw_data(G, theta):
            perm, cm = standardize(a)
            gs = [g[p] for p in perm]
            cs = [chi[p] for p in perm]
            if canonicalize:
                key = _canonical_key(cm, gs, cs)
                if key in seen:
                    continue
                seen.add(key)
            yield Datum(G, gs, cs, cm)


def sample_data(G: AbelianGroup, theta: int, count: int, seed: int = 0) -> list[Datum]:
    """count data of rank theta drawn uniformly (with repetition) from the
    enumeration, by rejection; for groups too large to enumerate fully."""
    rng = random.Random(seed)
    pairs = _pairs(G)
    out = []
    while len(out) < count:
        combo = [rng.choice(pairs) for _ in range(theta)]
        a = _combo_cartan(G, combo)
        if a is None:
            continue
        perm, cm = standardize(a)
        out.append(Datum(G, [combo[p][0] for p in perm], [combo[p][1] for p in perm], cm))
    return out


def _canonical_key(cm: CartanMatrix, g, chi):
    n = cm.rank
    best = None
    for p in itertools.permutations(range(n)):
        if all(cm.a[p[i]][p[j]] == cm.a[i][j] for i in range(n) for j in range(n)):
            key = tuple((g[p[i]], chi[p[i]]) for i in range(n))
            if best is None or key < best:
                best = key
    return (cm.a, best)


def count_data_bound(G: AbelianGroup) -> int:
    return 2 * G.order ** 2


# serialization

def _key_pair(s: str) -> tuple[int, int]:
    i, j = (int(t) for t in s.split(","))
    return i - 1, j - 1


def _key_root(s) -> tuple:
    if isinstance(s, str):
        return tuple(int(t) for t in s.split(","))
    return tuple(int(t) for t in s)


def datum_from_json(obj: dict) -> Datum:
    norm = Normalization(parse_moduli(obj["group"]))
    g = [norm.elem(_as_tuple(x)) for x in obj["g"]]
    chi = [norm.char(parse_char(x)) for x in obj["chi"]]
    zo = obj.get("zeta_order")
    if isinstance(zo, str):
        zo = int(zo.split("=")[-1])
    return Datum(norm.group, g, chi, obj["cartan"], zo)


def _as_tuple(x) -> tuple:
    if isinstance(x, int):
        return (x,)
    if isinstance(x, str):
        return tuple(int(t) for t in x.split(",") if t.strip())
    return tuple(int(t) for t in x)


def datum_to_json(d: Datum) -> dict:
    return {
        "zeta_order": d.ctx.m,
        "group": format_group(d.group),
        "g": [list(x) for x in d.g],
        "chi": [format_char(x) for x in d.chi],
        "cartan": d.cartan.rows(),
    }


def params_from_json(d: Datum, obj: dict) -> tuple[dict, dict]:
    lam_raw = {_key_pair(k): parse_scalar(d.ctx, str(v)) for k, v in (obj.get("lambda") or {}).items()}
    mu_raw = {_key_root(k): parse_scalar(d.ctx, str(v)) for k, v in (obj.get("mu") or {}).items()}
    return d.validate_linking(lam_raw), d.validate_mu(mu_raw)


def params_to_json(lam: dict, mu: dict) -> dict:
    return {
        "lambda": {f"{i + 1},{j + 1}": format_scalar(v) for (i, j), v in sorted(lam.items())},
        "mu": {",".join(map(str, a)): format_scalar(v) for a, v in sorted(mu.items())},
    }


def load_triple(obj: dict) -> tuple[Datum, dict, dict]:
    d = datum_from_json(obj)
    lam, mu = params_from_json(d, obj)
    return d, lam, mu


def dump_triple(d: Datum, lam: dict, mu: dict) -> dict:
    out = datum_to_json(d)
    out.update(params_to_json(lam, mu))
    return out


def load_triple_file(path: str) -> tuple[Datum, dict, dict]:
    with open(path, encoding="utf-8") as fh:
        return load_triple(json.load(fh))
