"""Independent reference computations used by the tests.

Nothing here calls into the package except where a test needs an
algebra to compute in (the brute-force isomorphism oracle multiplies in
u(D, lambda, mu) but derives its candidate maps itself).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import sympy
from sympy import Poly, Symbol, cyclotomic_poly

z = Symbol("z")


# cyclotomic arithmetic through sympy polynomials

def cyc_reduce(expr, m: int) -> Poly:
    return Poly(sympy.expand(expr), z).rem(Poly(cyclotomic_poly(m, z), z))


def cyc_coeffs(expr, m: int) -> list:
    """Coefficients (constant term first) of expr reduced mod Phi_m."""
    p = cyc_reduce(expr, m)
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
    n = sympy.totient(m)
    return cs + [Fraction(0)] * (int(n) - len(cs))


def scalar_coeffs(x) -> list:
    return list(x.coeffs())


# Gaussian binomials

def gauss_binomial(n: int, k: int) -> list:
    """[n choose k]_q as an integer coefficient list, by the Pascal recursion."""
    if k < 0 or k > n:
        return [0]
    rows = [[[1]]]
    for i in range(1, n + 1):
        prev = rows[-1]
        row = [[1]]
        for j in range(1, i):
            # [i, j] = [i-1, j-1] + q^j [i-1, j]
            a, b = prev[j - 1], [0] * j + prev[j]
            size = max(len(a), len(b))
            row.append([(a[t] if t < len(a) else 0) + (b[t] if t < len(b) else 0) for t in range(size)])
        row.append([1])
        rows.append(row)
    return rows[n][k]


def rank1_constant(N: int, a: int, b: int, qexp: int, m: int) -> list:
    """t^(a)_(b),(a-b) for rank one: [aN choose bN]_q with q = z^qexp in Q(zeta_m)."""
    cs = gauss_binomial(a * N, b * N)
    red = [0] * m
    for t, c in enumerate(cs):
        red[(t * qexp) % m] += c
    expr = sum(c * z ** t for t, c in enumerate(red) if c)
    return cyc_coeffs(expr, m)


# root systems and counts

def weyl_positive_roots(a: list) -> list:
    """Positive roots by brute-force orbit of the simple roots under W."""
    n = len(a)

    def refl(i, v):
        c = sum(a[i][j] * v[j] for j in range(n))
        w = list(v)
        w[i] -= c
        return tuple(w)

    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        v = todo.pop()
        for i in range(n):
            w = refl(i, v)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return sorted(v for v in seen if all(x >= 0 for x in v))


def basis_count(a: list, N_of_root, group_order: int) -> int:
    """Count PBW exponent vectors 0 <= a_l < N_l by enumeration, times |Gamma|."""
    roots = weyl_positive_roots(a)
    ranges = [range(N_of_root(r)) for r in roots]
    return sum(1 for _ in itertools.product(*ranges)) * group_order


def kostant_count(roots: list, deg: tuple) -> int:
    """Number of ways to write deg as an N-combination of the given roots."""
    memo = {}

    def rec(i, rest):
        if all(x == 0 for x in rest):
            return 1
        if i == len(roots):
            return 0
        key = (i, rest)
        if key in memo:
            return memo[key]
        total = 0
        r = roots[i]
        cur = rest
        while all(x >= 0 for x in cur):
            total += rec(i + 1, cur)
            cur = tuple(x - y for x, y in zip(cur, r))
        memo[key] = total
        return total

    return rec(0, tuple(deg))


# enumeration of data over Z/n

def _finite_2x2(a12: int, a21: int) -> bool:
    if (a12 == 0) != (a21 == 0):
        return False
    return a12 * a21 in (0, 1, 2, 3)


def _order(k: int, n: int) -> int:
    return n // gcd(k, n)


def enumerate_cyclic_count(n: int, theta: int) -> int:
    """Raw tuples ((g_i), (chi_i)) over Z/n satisfying the datum conditions.

    q_ij = zeta_n^(chi_j g_i).  Defining conditions: q_ii != 1 of odd
    order, q_ij q_ji = q_ii^a_ij with -ord(q_ii) < a_ij <= 0 giving a
    finite-type matrix, constant order on components, and order prime
    to 3 on G_2 components.  Only theta in {1, 2} is handled.
    """
    pairs = [(g, c) for g in range(n) for c in range(n) if (g * c) % n and _order(g * c, n) % 2]
    if theta == 1:
        return len(pairs)
    count = 0
    for (g1, c1), (g2, c2) in itertools.product(pairs, repeat=2):
        q11, q22 = (g1 * c1) % n, (g2 * c2) % n
        s = (g1 * c2 + g2 * c1) % n
        N1, N2 = _order(q11, n), _order(q22, n)
        a12 = [a for a in range(0, -N1, -1) if (a * q11 - s) % n == 0]
        a21 = [a for a in range(0, -N2, -1) if (a * q22 - s) % n == 0]
        if not a12 or not a21:
            continue
        x, y = a12[0], a21[0]
        if not _finite_2x2(x, y):
            continue
        if x != 0 and N1 != N2:
            continue
        if x * y == 3 and N1 % 3 == 0:
            continue
        count += 1
    return count


# brute-force isomorphism oracle

def group_automorphisms(invariants: tuple) -> list:
    """All automorphisms of Z/n1 x ... as tuples of generator images."""
    elems = list(itertools.product(*(range(n) for n in invariants)))
    r = len(invariants)
    out = []
    for imgs in itertools.product(elems, repeat=r):
        ok = True
        for k, n in enumerate(invariants):
            if any((n * v) % w for v, w in zip(imgs[k], invariants)):
                ok = False
                break
        if not ok:
            continue
        image = set()
        for g in elems:
            h = tuple(sum(g[k] * imgs[k][i] for k in range(r)) % invariants[i] for i in range(r))
            image.add(h)
        if len(image) == len(elems):
            out.append(imgs)
    return out


def brute_force_iso(src, dst, root_orders=(1,)) -> list:
    """All (phi, assignment, s) with x'_i -> s_i x_j, g' -> phi(g') respecting
    the defining relations of the source and the generator coproducts.

    s_i ranges over the roots of unity of the given orders (in a common
    field).  Returns the list of solutions found.
    """
    from smallqg.groups import apply_hom
    from smallqg.isomorphy import IsoTriple, soundness
    from smallqg.scalars import make_context

    d1, _, _ = src
    d2, _, _ = dst
    if d1.theta != d2.theta or d1.group.invariants != d2.group.invariants:
        return []
    M = 1
    for o in root_orders:
        M = M * o // gcd(M, o)
    M = M * d1.ctx.m // gcd(M, d1.ctx.m)
    M = M * d2.ctx.m // gcd(M, d2.ctx.m)
    ctx = make_context(M)
    cands = sorted({k * (M // o) % M for o in root_orders for k in range(o)})
    scalars = [ctx.zeta(k) for k in cands]
    G2 = d2.group
    theta = d1.theta
    sols = []
    for phi in group_automorphisms(tuple(d1.group.invariants)):
        # coproduct of x'_i forces the image to be skew-primitive of type phi(g'_i)
        imgs_g = [apply_hom(G2, phi, g) for g in d1.g]
        choices = [[j for j in range(theta) if d2.g[j] == imgs_g[i]] for i in range(theta)]
        for assign in itertools.product(*choices):
            if len(set(assign)) != theta:
                continue
            for s in itertools.product(scalars, repeat=theta):
                t = IsoTriple(phi, tuple(assign), list(s), None)
                try:
                    bad = soundness(src, dst, t)
                except Exception:
                    bad = ["error"]
                if not bad:
                    sols.append((phi, tuple(assign), tuple(s)))
    return sols
