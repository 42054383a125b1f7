from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import a2_11, a2_121, sl2_type, taft, z121
from oracles import rank1_constant
from smallqg.errors import ConsistencyFailure, DegreeCapExceeded, IllegalMu
from smallqg.groups import GroupAlgElem
from smallqg.kalgebra import KAlgebra, UCache, build_ufamily, central_support_ok, coproduct_constants, u_alpha


@pytest.mark.parametrize("a", [2, 3, 4])
def test_rank1_constants_match_gauss_binomials(a):
    for d in (taft(11), taft(13), z121()):
        K = KAlgebra(d, 0, 60)
        t = K.coproduct_constants((a,))
        assert set(t) == {((b,), (a - b,)) for b in range(1, a)}
        for (b, c), v in t.items():
            want = rank1_constant(K.N, a, b[0], K.br.E[0][0], K.br.m)
            assert list(v.coeffs()) == want


def test_rank1_examples():
    t = coproduct_constants(taft(), 0, (2,), cap=40)
    assert t == {((1,), (1,)): taft().ctx.coerce(2)}
    t = coproduct_constants(taft(), 0, (3,), cap=40)
    assert {k: v.to_fraction() for k, v in t.items()} == {((1,), (2,)): 3, ((2,), (1,)): 3}
    assert coproduct_constants(taft(), 0, (1,)) == {}


def test_cap_is_enforced():
    with pytest.raises(DegreeCapExceeded):
        coproduct_constants(taft(), 0, (4,), cap=40)


@pytest.mark.parametrize("make", [a2_11, a2_121])
def test_a2_coassociativity_up_to_height_3(make):
    K = KAlgebra(make(), 0, 40)
    for a in K.exponents_up_to(3):
        left, right = K.coassociativity_sides(a)
        assert left == right, a
        for (b, c) in K.coproduct_constants(a):
            assert tuple(x + y for x, y in zip(K.underline(b), K.underline(c))) == K.underline(a)


def test_a2_simple_roots_have_no_constants():
    K = KAlgebra(a2_11(), 0, 40)
    assert K.coproduct_constants((1, 0, 0)) == {}
    assert K.coproduct_constants((0, 0, 1)) == {}
    assert K.coproduct_constants((0, 1, 0))


def test_gamma():
    K = KAlgebra(a2_121(), 0, 40)
    zero = K.zero
    for b in K.exponents_up_to(2):
        assert K.gamma(b, zero).is_one() and K.gamma(zero, b).is_one()
        assert K.gamma(b, b).is_one()  # all eta_l trivial here
    K1 = KAlgebra(z121(), 0, 40)
    assert K1.gamma((2,), (3,)).is_one()


def test_h_and_eta_are_additive():
    K = KAlgebra(a2_121(), 0, 40)
    G = K.G
    exps = K.exponents_up_to(2)
    for b in exps:
        for c in exps:
            a = tuple(x + y for x, y in zip(b, c))
            assert K.h_of(a) == G.mul(K.h_of(b), K.h_of(c))
            assert K.eta_of(a) == G.mul(K.eta_of(b), K.eta_of(c))


def test_z121_family_values():
    d = z121()
    G, ctx = d.group, d.ctx
    fam = build_ufamily(d, 0, {(1,): 5}, cap=40, height=3)
    one = GroupAlgElem.one(G, ctx)
    h = GroupAlgElem.basis(G, ctx, (11,))
    assert fam.u[(1,)] == (one - h) * ctx.coerce(5)
    assert fam.u[(2,)] == (one - h) * (one - h) * ctx.coerce(25)
    assert fam.u[(3,)] == (one - h) * (one - h) * (one - h) * ctx.coerce(125)
    assert u_alpha(d, {(1,): 5}, (1,)) == (one - h) * ctx.coerce(5)
    assert fam.check_all() == []


def test_zero_mu_gives_zero_family():
    fam = build_ufamily(a2_121(), 0, {}, cap=40)
    assert all(not v for v in fam.u.values())


def test_a2_family_invariants_random_mu():
    d = a2_121()
    rng = random.Random(3)
    cache = UCache(d, 40)
    for _ in range(4):
        mu = {r: rng.randint(-4, 4) for r in d.free_mu_roots()}
        fam = build_ufamily(d, 0, mu, K=cache.kalgebra(0), height=3)
        assert fam.check_all() == []
        for r in d.roots.order:
            u = u_alpha(d, mu, r, cache=cache)
            assert not u.epsilon()
            assert central_support_ok(d, u)
            # support inside <g_1^N, g_2^N>
            assert all(all(x % 11 == 0 for x in g) for g in u.terms)


def test_a2_composite_root_value():
    # u_{a1+a2} for mu_1 = mu_2 = 1, mu_12 = 0 and for mu_12 = 3
    d = a2_121()
    G, ctx = d.group, d.ctx
    u0 = u_alpha(d, {(1, 0): 1, (0, 1): 1}, (1, 1), cap=40)
    assert set(u0.terms) == {(0, 0), (0, 11)}
    c = u0.terms[(0, 11)]
    assert u0.terms[(0, 0)] == -c
    u3 = u_alpha(d, {(1, 0): 1, (0, 1): 1, (1, 1): 3}, (1, 1), cap=40)
    one = GroupAlgElem.one(G, ctx)
    h = GroupAlgElem.basis(G, ctx, (11, 11))
    assert u3 - u0 == (one - h) * ctx.coerce(3)


def test_mu_with_trivial_h_is_rejected():
    d = sl2_type()  # g_1^11 = 1 over Z/11
    with pytest.raises(IllegalMu):
        d.validate_mu({(1, 0): 2})
    with pytest.raises(ConsistencyFailure):
        u_alpha(d, {(1, 0): 2}, (1, 0))


@given(st.integers(-20, 20).filter(bool))
def test_z121_u_is_scaled_by_mu(m):
    d = z121()
    u = u_alpha(d, {(1,): m}, (1,))
    assert u == u_alpha(d, {(1,): 1}, (1,)) * d.ctx.coerce(m)
