from __future__ import annotations

import os
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import a2_121, sl2_type, taft, z121
from oracles import brute_force_iso
from smallqg.datum import Datum, load_triple_file
from smallqg.errors import OrderHypothesisViolated, RankMismatch, ZeroConstant
from smallqg.groups import AbelianGroup
from smallqg.isomorphy import (
    IsoTriple,
    Undecided,
    decide,
    find_isomorphisms,
    iso_constants,
    solve_monomial,
    soundness,
    split_root_of_unity,
    triple_to_json,
)
from smallqg.kalgebra import u_alpha
from smallqg.scalars import make_context


def load(data_dir, name):
    return load_triple_file(os.path.join(data_dir, name + ".json"))


def triples(src, dst, **kw):
    return [r for r in find_isomorphisms(src, dst, **kw) if isinstance(r, IsoTriple)]


def check_witness(E, c, sol):
    ctx = sol.witness[0].ctx
    for row, cr in zip(E, c):
        v = ctx.one
        for s, e in zip(sol.witness, row):
            v = v * (s ** e if e >= 0 else s.inverse() ** (-e))
        assert v == cr.embed(ctx)


# monomial systems

def test_solve_monomial_unsolvable_with_certificate():
    ctx = make_context(1)
    E = [[1, 1], [1, 1]]
    c = [ctx.coerce(4), ctx.coerce(5)]
    sol = solve_monomial(E, c)
    assert not sol.solvable and sol.witness is None
    v = sol.certificate
    assert sorted(v) == [-1, 1]
    val = ctx.one
    for vi, ci in zip(v, c):
        val = val * (ci if vi > 0 else ci.inverse())
    assert not val.is_one()


def test_solve_monomial_square_root_of_zeta():
    ctx = make_context(11)
    E, c = [[2]], [ctx.zeta(1)]
    sol = solve_monomial(E, c)
    assert sol.solvable
    check_witness(E, c, sol)
    assert sol.witness[0] == ctx.zeta(6)


def test_solve_monomial_empty_system():
    sol = solve_monomial([], [], n=3)
    assert sol.solvable and all(s.is_one() for s in sol.witness)


def test_solve_monomial_enlarges_the_field():
    ctx = make_context(11)
    E, c = [[11]], [ctx.zeta(1)]
    sol = solve_monomial(E, c)
    assert sol.solvable and sol.witness[0].ctx.m == 121
    check_witness(E, c, sol)
    E, c = [[2]], [ctx.coerce(9) * ctx.zeta(3)]
    sol = solve_monomial(E, c)
    check_witness(E, c, sol)


def test_solve_monomial_without_cyclotomic_witness():
    ctx = make_context(1)
    sol = solve_monomial([[2]], [ctx.coerce(2)])
    assert sol.solvable and sol.witness is None


def test_zero_constant():
    with pytest.raises(ZeroConstant):
        solve_monomial([[1]], [make_context(1).zero])


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=3), st.lists(st.integers(0, 10), min_size=3, max_size=3))
def test_solve_monomial_consistent_systems(E, ks):
    # constants built from a known solution are always solvable
    ctx = make_context(11)
    s = [ctx.zeta(ks[0]), ctx.zeta(ks[1]) * ctx.coerce(-1)]
    c = []
    for row in E:
        v = ctx.one
        for si, e in zip(s, row):
            v = v * (si ** e if e >= 0 else si.inverse() ** (-e))
        c.append(v)
    sol = solve_monomial(E, c)
    assert sol.solvable
    check_witness(E, c, sol)


@given(st.integers(1, 10), st.integers(2, 5))
def test_solve_monomial_certificates(k, e):
    # s^e = 1 and s^e = zeta^k together are inconsistent
    ctx = make_context(11)
    sol = solve_monomial([[e], [e]], [ctx.one, ctx.zeta(k)])
    assert not sol.solvable
    assert sol.certificate in ([1, -1], [-1, 1])


def test_split_root_of_unity():
    ctx = make_context(11)
    x = ctx.coerce(3) * ctx.zeta(2)
    rho, k, u = split_root_of_unity(x)
    big = make_context(u * 11 // gcd(u, 11))
    assert rho == 3 and big.coerce(rho) * big.zeta(k * (big.m // u)) == x.embed(big)
    assert split_root_of_unity(ctx.one + ctx.zeta(1)) is None


# constants

def test_iso_constants_identity_is_delta():
    d = a2_121()
    for alpha in d.roots.order:
        t = iso_constants(d, 0, (0, 1), alpha, cap=40)
        l = d.roots.index[alpha]
        e = tuple(1 if k == l else 0 for k in range(3))
        assert t == {e: d.ctx.one}


def test_iso_constants_flip_simple_roots():
    d = a2_121()
    assert iso_constants(d, 0, (1, 0), (1, 0), cap=40) == {(0, 0, 1): d.ctx.one}
    assert iso_constants(d, 0, (1, 0), (0, 1), cap=40) == {(1, 0, 0): d.ctx.one}
    t = iso_constants(d, 0, (1, 0), (1, 1), cap=40)
    assert (0, 1, 0) in t and all(sum(a[0:1]) + sum(a[2:]) + 2 * a[1] == 2 for a in t)


# search

def test_identity_is_found(data_dir):
    for name in ("taft11", "sl2_11", "z121_mu5", "a2_11"):
        t = load(data_dir, name)
        found = triples(t, t)
        ident = [x for x in found if x.sigma == tuple(range(t[0].theta)) and all(s.is_one() for s in x.s)]
        assert ident, name
        assert soundness(t, t, ident[0]) == []


def test_transport(data_dir):
    src, dst = load(data_dir, "taft11_auto"), load(data_dir, "taft11")
    found = triples(src, dst)
    assert [x.phi for x in found] == [((4,),)]
    assert soundness(src, dst, found[0]) == []


def test_different_groups(data_dir):
    assert decide(load(data_dir, "taft11"), load(data_dir, "taft13"))[0] == "not isomorphic"


def test_q_versus_q_squared():
    d1 = taft()
    d2 = Datum(AbelianGroup([11]), [(1,)], [(2,)], [[2]])
    assert decide((d1, {}, {}), (d2, {}, {}))[0] == "not isomorphic"


def test_linking_scaling(data_dir):
    src, dst = load(data_dir, "sl2_11_scaled"), load(data_dir, "sl2_11")
    verdict, res = decide(src, dst)
    assert verdict == "isomorphic"
    for t in res:
        assert (t.s[0] * t.s[1]).to_fraction() == 6
        assert soundness(src, dst, t) == []
    assert decide(src, (sl2_type(), {}, {}))[0] == "not isomorphic"


def test_root_vector_scaling(data_dir):
    src, dst = load(data_dir, "z121_mu_scaled"), load(data_dir, "z121_mu5")
    verdict, res = decide(src, dst)
    assert verdict == "isomorphic"
    assert res[0].s[0] ** 11 == src[2][(1,)] / dst[2][(1,)]
    assert soundness(src, dst, res[0]) == []
    assert decide(src, (z121(), {}, {}))[0] == "not isomorphic"


def test_asymmetric_mu_blocks_the_flip(data_dir):
    t = load(data_dir, "a2_121_mu")
    found = triples(t, t)
    assert {x.sigma for x in found} == {(0, 1)}


def _flip_mu():
    d = a2_121()
    c = u_alpha(d, {(1, 0): 1, (0, 1): 1}, (1, 1), cap=40).terms[(0, 11)]
    half = d.ctx.coerce(1) / d.ctx.coerce(2)
    return d, {(1, 0): 1, (0, 1): 1, (1, 1): c * half}


@pytest.mark.parametrize("i5", ["auto", "direct"])
def test_a2_flip(i5):
    d, mu = _flip_mu()
    found = triples((d, {}, mu), (d, {}, mu), i5=i5)
    assert {x.sigma for x in found} == {(0, 1), (1, 0)}
    flip = [x for x in found if x.sigma == (1, 0)][0]
    assert flip.phi == ((0, 1), (1, 0))
    assert soundness((d, {}, mu), (d, {}, mu), flip) == []


def test_unsound_triple_is_detected():
    d, mu = _flip_mu()
    ctx = d.ctx
    bad = IsoTriple(((0, 1), (1, 0)), (1, 0), [ctx.one, ctx.zeta(1)], None)
    assert soundness((d, {}, mu), (d, {}, mu), bad)


def test_auto_and_direct_agree(data_dir):
    for a, b in [("z121_mu_scaled", "z121_mu5"), ("sl2_11_scaled", "sl2_11"), ("a2_121_mu", "a2_121_mu")]:
        src, dst = load(data_dir, a), load(data_dir, b)
        x = {(t.phi, t.sigma) for t in triples(src, dst, i5="auto")}
        y = {(t.phi, t.sigma) for t in triples(src, dst, i5="direct")}
        assert x == y


def test_errors():
    with pytest.raises(RankMismatch):
        list(find_isomorphisms((taft(), {}, {}), (sl2_type(), {}, {})))
    assert decide((taft(), {}, {}), (sl2_type(), {}, {}))[0] == "not isomorphic"
    small = Datum(AbelianGroup([3]), [(1,)], [(1,)], [[2]])
    with pytest.raises(OrderHypothesisViolated):
        list(find_isomorphisms((small, {}, {}), (small, {}, {})))


def test_undecided_when_cap_is_too_small():
    d, mu = _flip_mu()
    res = list(find_isomorphisms((d, {}, mu), (d, {}, mu), cap=12, i5="direct"))
    assert res and all(isinstance(r, Undecided) for r in res)
    assert decide((d, {}, mu), (d, {}, mu), cap=12, i5="direct")[0] == "undecided"


def test_json(data_dir):
    t = load(data_dir, "z121_mu_scaled")
    res = triples(t, load(data_dir, "z121_mu5"))
    obj = triple_to_json(res[0])
    assert obj["sigma"] == [1] and obj["field"].startswith("zeta_order=")


# completeness against the brute-force oracle

def _d11(g, chi):
    return Datum(AbelianGroup([11]), [(x,) for x in g], [(x,) for x in chi], [[2, 0], [0, 2]] if len(g) == 2 else [[2]])


BRUTE = [
    ("taft transported", (Datum(AbelianGroup([11]), [(3,)], [(4,)], [[2]]), {}, {}), (taft(), {}, {}), (11,)),
    ("taft q vs q^2", (taft(), {}, {}), (Datum(AbelianGroup([11]), [(1,)], [(2,)], [[2]]), {}, {}), (11,)),
    ("sl2 scaled by zeta", (sl2_type(), {(0, 1): "z"}, {}), (sl2_type(), {(0, 1): 1}, {}), (11,)),
    ("sl2 linked vs unlinked", (sl2_type(), {(0, 1): 1}, {}), (sl2_type(), {}, {}), (11,)),
    ("z121 scaled by zeta", (z121(), {}, {(1,): "5*z^11"}), (z121(), {}, {(1,): 5}), (121,)),
    ("z121 vs zero", (z121(), {}, {(1,): 5}), (z121(), {}, {}), (121,)),
]


@pytest.mark.parametrize("name,src,dst,orders", BRUTE, ids=[b[0] for b in BRUTE])
def test_agrees_with_brute_force(name, src, dst, orders):
    fast = triples(src, dst)
    slow = brute_force_iso(src, dst, orders)
    assert bool(fast) == bool(slow)
    assert {(t.phi, t.sigma) for t in fast} == {(p, s) for p, s, _ in slow}
    for t in fast:
        assert soundness(src, dst, t) == []
