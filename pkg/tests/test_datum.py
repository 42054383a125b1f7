from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import a2_11, sl2_type, taft, z121
from oracles import enumerate_cyclic_count
from smallqg.datum import Datum, datum_from_json, datum_to_json, dump_triple, enumerate_data, load_triple, validate_datum
from smallqg.errors import CartanConditionFailed, EvenOrder, G2OrderDivisibleBy3, IllegalLinking, IllegalMu, UnitDiagonal
from smallqg.groups import AbelianGroup


def test_validate_examples():
    d = taft()
    assert d.N == [11]
    d = a2_11()
    assert d.N == [11, 11]
    # q_12 q_21 = zeta^-2 = q_11^-1
    assert d.q(0, 1) * d.q(1, 0) == d.q(0, 0).inverse()
    with pytest.raises(CartanConditionFailed):
        Datum(AbelianGroup([11, 11]), [(1, 0), (0, 1)], [(2, -1), (-1, 3)], [[2, -1], [-1, 2]])


def test_validate_errors():
    with pytest.raises(UnitDiagonal):
        Datum(AbelianGroup([11]), [(1,)], [(0,)], [[2]])
    with pytest.raises(EvenOrder):
        Datum(AbelianGroup([12]), [(1,)], [(3,)], [[2]])
    with pytest.raises(G2OrderDivisibleBy3):
        # q_11 = zeta_9^3, q_22 = zeta_9, q_12 q_21 = q_22^-3 = q_11^-1
        Datum(AbelianGroup([9, 9]), [(1, 0), (0, 1)], [(3, 0), (-3, 1)], [[2, -1], [-3, 2]])


def test_validate_is_idempotent():
    for d in list(enumerate_data(AbelianGroup([11]), 2))[::37]:
        assert validate_datum(d) == d


def test_g_chi_alpha():
    d = a2_11()
    assert d.g_chi_alpha((1, 0)) == (d.g[0], d.chi[0])
    assert d.g_chi_alpha((1, 1)) == ((1, 1), (1, 1))
    assert d.g_chi_alpha((0, 0)) == ((0, 0), (0, 0))


@given(st.lists(st.integers(0, 4), min_size=2, max_size=2), st.lists(st.integers(0, 4), min_size=2, max_size=2))
def test_chi_beta_of_g_alpha_is_bilinear_q(alpha, beta):
    d = a2_11()
    g, _ = d.g_chi_alpha(alpha)
    _, chi = d.g_chi_alpha(beta)
    want = d.ctx.one
    for i in range(2):
        for j in range(2):
            want = want * d.q(i, j) ** (alpha[i] * beta[j])
    assert d.group.char_eval(chi, g, d.ctx) == want
    assert d.q_form(alpha, beta) == want


def test_linkable():
    d = sl2_type()
    assert d.linkable(0, 1)
    assert not a2_11().linkable(0, 1)
    e = Datum(AbelianGroup([11, 11]), [(1, 0), (0, 1)], [(1, 0), (0, 1)], [[2, 0], [0, 2]])
    assert not e.linkable(0, 1)


def test_linkable_pairs_have_inverse_diagonals():
    for d in enumerate_data(AbelianGroup([11]), 2):
        for i, j in d.free_linking_pairs():
            assert d.q(i, i) * d.q(j, j) == d.ctx.one


def test_validate_linking():
    d = sl2_type()
    assert d.validate_linking({(0, 1): 1})[(0, 1)].is_one()
    assert d.validate_linking({}) == {}
    e = Datum(AbelianGroup([11, 11]), [(1, 0), (0, 1)], [(1, 0), (0, 1)], [[2, 0], [0, 2]])
    with pytest.raises(IllegalLinking):
        e.validate_linking({(0, 1): 1})


def test_lambda_extension():
    d = sl2_type()
    lam = d.validate_linking({(0, 1): 3})
    assert d.lam(lam, 1, 0) == -d.q(1, 0) * 3


def test_validate_mu():
    d = z121()
    assert d.validate_mu({(1,): 5})[(1,)] == d.ctx.coerce(5)
    with pytest.raises(IllegalMu):
        taft().validate_mu({(1,): 1})
    assert taft().validate_mu({}) == {}


def test_enumeration_examples():
    assert sum(1 for _ in enumerate_data(AbelianGroup([11]), 1)) == 100
    assert sum(1 for _ in enumerate_data(AbelianGroup([2]), 1)) == 0


def test_enumeration_theta2_against_oracle():
    got = sum(1 for d in enumerate_data(AbelianGroup([11]), 2) if d.theta == 2)
    assert got == enumerate_cyclic_count(11, 2) == 1000


def test_enumerated_orders_divide_exponent():
    for d in enumerate_data(AbelianGroup([3, 15]), 1):
        assert d.group.exponent % d.N[0] == 0


@pytest.mark.parametrize("make", [taft, sl2_type, a2_11, z121])
def test_json_roundtrip(make):
    d = make()
    obj = json.loads(json.dumps(datum_to_json(d)))
    assert datum_from_json(obj) == d


def test_triple_roundtrip():
    d = sl2_type()
    lam = d.validate_linking({(0, 1): "1 + z^3"})
    obj = json.loads(json.dumps(dump_triple(d, lam, {})))
    d2, lam2, mu2 = load_triple(obj)
    assert d2 == d and lam2 == lam and mu2 == {}


def test_json_roundtrip_over_enumeration():
    rng = random.Random(1)
    data = list(enumerate_data(AbelianGroup([11]), 2))
    for d in rng.sample(data, 40):
        assert datum_from_json(json.loads(json.dumps(datum_to_json(d)))) == d
