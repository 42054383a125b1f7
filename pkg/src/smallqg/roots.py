"""Finite-type Cartan matrices and root-system combinatorics.

Convention: s_i(alpha_j) = alpha_j - a_ij alpha_i, and the standard
matrices are the Bourbaki ones (so B_2 has a_12 = -2, a_21 = -1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import (
    Inconsistent,
    NotFiniteType,
    NotGeneralizedCartan,
    NotStandardForm,
    OrderViolation,
)
from .scalars import CycScalar, multiplicative_order

Matrix = tuple  # tuple of row tuples


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


@lru_cache(maxsize=None)
def standard_cartan(kind: str, n: int) -> Matrix:
    """Bourbaki Cartan matrix of type kind_n."""
    if kind == "A" and n >= 1:
        a = _chain(n)
    elif kind == "B" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif kind == "C" and n >= 3:
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif kind == "D" and n >= 4:
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif kind == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif kind == "F" and n == 4:
        a = _chain(4)
        a[1][2] = -2
    elif kind == "G" and n == 2:
        a = [[2, -1], [-3, 2]]
    else:
        raise ValueError(f"no standard Cartan matrix of type {kind}{n}")
    return tuple(tuple(r) for r in a)


def _candidate_types(n: int) -> list[tuple[str, int]]:
    out = [("A", n)]
    if n >= 2:
        out.append(("B", n))
    if n >= 3:
        out.append(("C", n))
    if n >= 4:
        out.append(("D", n))
    if n in (6, 7, 8):
        out.append(("E", n))
    if n == 4:
        out.append(("F", 4))
    if n == 2:
        out.append(("G", 2))
    return out


def positive_root_count(kind: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[kind]


def _as_matrix(a) -> Matrix:
    rows = tuple(tuple(int(v) for v in r) for r in a)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotGeneralizedCartan("matrix is not square")
    return rows


def check_gcm(a) -> Matrix:
    a = _as_matrix(a)
    n = len(a)
    for i in range(n):
        if a[i][i] != 2:
            raise NotGeneralizedCartan(f"a_{i + 1}{i + 1} = {a[i][i]} != 2")
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise NotGeneralizedCartan(f"a_{i + 1}{j + 1} = {a[i][j]} > 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise NotGeneralizedCartan(f"a_{i + 1}{j + 1} and a_{j + 1}{i + 1} vanish unequally")
    return a


def connected_components(a: Matrix) -> list[list[int]]:
    n = len(a)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and a[i][j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def symmetrizer(a: Matrix, comp: Iterable[int]) -> Optional[list[Fraction]]:
    """Positive d with d_i a_ij = d_j a_ji on a connected block, or None."""
    comp = list(comp)
    d = {comp[0]: Fraction(1)}
    stack = [comp[0]]
    while stack:
        i = stack.pop()
        for j in comp:
            if j != i and a[i][j]:
                v = d[i] * a[i][j] / a[j][i]
                if j not in d:
                    d[j] = v
                    stack.append(j)
                elif d[j] != v:
                    return None
    return [d[i] for i in comp]


def _positive_definite(m: list[list[Fraction]]) -> bool:
    # leading principal minors via exact Gaussian elimination
    n = len(m)
    m = [list(r) for r in m]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def is_finite_type_block(a: Matrix, comp: list[int]) -> bool:
    d = symmetrizer(a, comp)
    if d is None:
        return False
    sym = [[d[x] * a[i][j] for j in comp] for x, i in enumerate(comp)]
    return _positive_definite(sym)


def match_permutations(block: Matrix, target: Matrix, first_only: bool = False):
    """All p with block[p[i]][p[j]] == target[i][j] (backtracking)."""
    n = len(target)
    out = []
    used = [False] * n
    p: list[int] = []

    def rec(k):
        if k == n:
            out.append(tuple(p))
            return first_only
        for c in range(n):
            if used[c] or block[c][c] != target[k][k]:
                continue
            if all(block[p[t]][c] == target[t][k] and block[c][p[t]] == target[k][t] for t in range(k)):
                used[c] = True
                p.append(c)
                if rec(k + 1):
                    return True
                p.pop()
                used[c] = False
        return False

    rec(0)
    return out


def _sub(a: Matrix, comp: list[int]) -> Matrix:
    return tuple(tuple(a[i][j] for j in comp) for i in comp)


def identify_block(block: Matrix) -> tuple[str, int, tuple]:
    """(kind, n, p) with block[p[i]][p[j]] = standard[i][j]; raises if not finite."""
    n = len(block)
    if not is_finite_type_block(block, list(range(n))):
        raise NotFiniteType(f"block {block} is not of finite type")
    for kind, rank in _candidate_types(n):
        found = match_permutations(block, standard_cartan(kind, rank), first_only=True)
        if found:
            return kind, rank, found[0]
    # C_2 shaped blocks are B_2 after swapping
    if n == 2:
        return "B", 2, (1, 0)
    raise NotFiniteType(f"block {block} not recognised")  # pragma: no cover


class CartanMatrix:
    """A finite-type Cartan matrix in standard block form."""

    __slots__ = ("a", "components", "types")

    def __init__(self, a: Matrix, components: list[list[int]], types: list[tuple[str, int]]):
        self.a = a
        self.components = components
        self.types = types

    @property
    def rank(self) -> int:
        return len(self.a)

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanMatrix) and self.a == other.a

    def __hash__(self) -> int:
        return hash(self.a)

    def __repr__(self) -> str:
        return f"CartanMatrix({self.label()})"

    def label(self) -> str:
        return " x ".join(f"{k}_{n}" for k, n in self.types)

    def component_of(self, i: int) -> int:
        for c, comp in enumerate(self.components):
            if i in comp:
                return c
        raise IndexError(i)

    def same_component(self, i: int, j: int) -> bool:
        return self.component_of(i) == self.component_of(j)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.a]


def recognize(a) -> CartanMatrix:
    a = check_gcm(a)
    comps = connected_components(a)
    types = []
    for comp in comps:
        if comp != list(range(comp[0], comp[0] + len(comp))):
            if all(is_finite_type_block(a, c) for c in comps):
                raise NotStandardForm(f"component {[i + 1 for i in comp]} is not a contiguous block")
            raise NotFiniteType("matrix is not of finite type")
        block = _sub(a, comp)
        kind, n, _p = identify_block(block)
        if block != standard_cartan(kind, n):
            raise NotStandardForm(f"component {[i + 1 for i in comp]} is of type {kind}_{n} but not in standard numbering")
        types.append((kind, n))
    return CartanMatrix(a, comps, types)


def standardize(a) -> tuple[tuple, CartanMatrix]:
    """A permutation perm and the standard matrix b with b[i][j] = a[perm[i]][perm[j]]."""
    a = check_gcm(a)
    comps = connected_components(a)
    perm: list[int] = []
    for comp in comps:
        kind, n, p = identify_block(_sub(a, comp))
        perm.extend(comp[x] for x in p)
    b = tuple(tuple(a[i][j] for j in perm) for i in perm)
    return tuple(perm), recognize(b)


def diagram_automorphisms(c: CartanMatrix, comp: Optional[list[int]] = None) -> list[tuple]:
    """Permutations p of a component (as local indices) with a[p i][p j] = a[i][j]."""
    idx = list(range(c.rank)) if comp is None else comp
    block = _sub(c.a, idx)
    return match_permutations(block, block)


# root systems

def reflect(a: Matrix, i: int, v: tuple) -> tuple:
    s = sum(n * a[i][j] for j, n in enumerate(v))
    if not s:
        return v
    out = list(v)
    out[i] -= s
    return tuple(out)


def longest_word(a: Matrix, comp: list[int]) -> list[int]:
    """Greedy reduced word of w0 on one component (global 0-based indices)."""
    c = {i: 1 for i in comp}
    word = []
    while True:
        pick = next((i for i in comp if c[i] > 0), None)
        if pick is None:
            return word
        ci = c[pick]
        for j in comp:
            c[j] -= ci * a[j][pick]
        word.append(pick)


def positive_roots_closure(a: Matrix) -> list[tuple]:
    n = len(a)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        v = todo.pop()
        for i in range(n):
            w = reflect(a, i, v)
            if all(x >= 0 for x in w) and w not in seen:
                seen.add(w)
                todo.append(w)
    return sorted(seen, key=lambda v: (sum(v), tuple(-x for x in v)))


class RootSystem:
    """Positive roots with the convex order induced by the fixed word of w0."""

    def __init__(self, cartan: CartanMatrix):
        self.cartan = cartan
        a = cartan.a
        n = cartan.rank
        self.positive_roots = positive_roots_closure(a)
        self.w0_word: list[int] = []
        self.order: list[tuple] = []
        self.component_positions: list[list[int]] = []
        for comp in cartan.components:
            w = longest_word(a, comp)
            start = len(self.order)
            for l, i in enumerate(w):
                v = tuple(1 if k == i else 0 for k in range(n))
                for j in reversed(w[:l]):
                    v = reflect(a, j, v)
                self.order.append(v)
            self.w0_word.extend(w)
            self.component_positions.append(list(range(start, len(self.order))))
        if len(self.order) != len(self.positive_roots) or set(self.order) != set(self.positive_roots):
            raise AssertionError("convex order does not list the positive roots")
        self.index = {v: l for l, v in enumerate(self.order)}
        self.position_component = [0] * len(self.order)
        for c, pos in enumerate(self.component_positions):
            for l in pos:
                self.position_component[l] = c
        self._decomp = {}
        for l, v in enumerate(self.order):
            self._decomp[l] = self._find_decomposition(l)

    @property
    def p(self) -> int:
        return len(self.order)

    def height(self, v) -> int:
        return sum(v)

    def is_simple(self, l: int) -> bool:
        return sum(self.order[l]) == 1

    def simple_index(self, l: int) -> int:
        return self.order[l].index(1)

    def _find_decomposition(self, l: int) -> Optional[tuple[int, int]]:
        if self.is_simple(l):
            return None
        beta = self.order[l]
        for k in range(l - 1, -1, -1):
            rest = tuple(x - y for x, y in zip(beta, self.order[k]))
            m = self.index.get(rest)
            if m is not None and m > l:
                return k, m
        return None

    def decomposition(self, l: int) -> Optional[tuple[int, int]]:
        """(k, m) with beta_l = beta_k + beta_m, k < l < m, k maximal."""
        return self._decomp[l]

    def underline(self, a: Iterable[int]) -> tuple:
        n = self.cartan.rank
        out = [0] * n
        for l, x in enumerate(a):
            if x:
                for i, v in enumerate(self.order[l]):
                    out[i] += x * v
        return tuple(out)

    def is_convex(self) -> bool:
        for k in range(self.p):
            for m in range(k + 1, self.p):
                s = tuple(x + y for x, y in zip(self.order[k], self.order[m]))
                l = self.index.get(s)
                if l is not None and not (k < l < m):
                    return False
        return True


@lru_cache(maxsize=None)
def build_root_system(cartan: CartanMatrix) -> RootSystem:
    return RootSystem(cartan)


def symmetrize(c: CartanMatrix, q_diag: list[CycScalar], comp: Optional[list[int]] = None):
    """(d, q) with q_ii = q^(2 d_i) on a connected component and q of odd order."""
    if comp is None:
        if len(c.components) != 1:
            raise ValueError("matrix has several components; pass one")
        comp = c.components[0]
    a = c.a
    kind, _n = c.types[c.components.index(comp)]
    dfrac = symmetrizer(a, comp)
    scale = 1
    for v in dfrac:
        scale = scale * v.denominator // _gcd(scale, v.denominator)
    d = [int(v * scale) for v in dfrac]
    g = 0
    for v in d:
        g = _gcd(g, v)
    d = [v // g for v in d]
    for x, i in enumerate(comp):
        o = multiplicative_order(q_diag[i])
        if o is None or o % 2 == 0 or o == 1:
            raise OrderViolation(f"q_{i + 1}{i + 1} must have odd order > 1, got {o}")
        if kind == "G" and o % 3 == 0:
            raise OrderViolation(f"q_{i + 1}{i + 1} has order divisible by 3 on a G2 component")
    for i in comp:
        for j in comp:
            if q_diag[i] ** a[i][j] != q_diag[j] ** a[j][i]:
                raise Inconsistent(f"q_ii^a_ij != q_jj^a_ji at ({i + 1},{j + 1})")
    h = next(x for x, v in enumerate(d) if v == 1)
    qhh = q_diag[comp[h]]
    N = multiplicative_order(qhh)
    q = qhh ** ((N + 1) // 2)
    for x, i in enumerate(comp):
        if q ** (2 * d[x]) != q_diag[i]:
            raise Inconsistent(f"q_{i + 1}{i + 1} is not q^(2 d_i)")
    return d, q


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
