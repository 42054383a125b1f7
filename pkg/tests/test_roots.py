from __future__ import annotations

import pytest

from oracles import weyl_positive_roots
from smallqg.errors import Inconsistent, NotFiniteType, NotGeneralizedCartan, NotStandardForm, OrderViolation
from smallqg.roots import build_root_system, recognize, reflect, standard_cartan, symmetrize
from smallqg.scalars import make_context


def test_recognize_examples():
    c = recognize([[2]])
    assert c.label() == "A_1" and len(c.components) == 1
    assert recognize([[2, -1], [-1, 2]]).label() == "A_2"
    with pytest.raises(NotFiniteType):
        recognize([[2, -2], [-2, 2]])


def test_recognize_rejects_bad_input():
    with pytest.raises(NotGeneralizedCartan):
        recognize([[2, -1], [0, 2]])
    with pytest.raises(NotGeneralizedCartan):
        recognize([[2, 1], [1, 2]])
    # finite type, but the block is not in the fixed standard numbering
    with pytest.raises(NotStandardForm):
        recognize([[2, -1], [-2, 2]])


def test_root_system_examples():
    R = build_root_system(recognize([[2]]))
    assert R.order == [(1,)] and R.w0_word == [0]
    R = build_root_system(recognize([[2, -1], [-1, 2]]))
    assert [i + 1 for i in R.w0_word] == [1, 2, 1]
    assert R.order == [(1, 0), (1, 1), (0, 1)]
    assert build_root_system(recognize(standard_cartan("B", 2))).p == 4


CLASSICAL = [("A", 1, 1), ("A", 2, 3), ("A", 3, 6), ("A", 4, 10), ("B", 2, 4), ("B", 3, 9), ("C", 3, 9), ("G", 2, 6), ("D", 4, 12), ("B", 4, 16), ("C", 4, 16), ("F", 4, 24)]


@pytest.mark.parametrize("kind,n,count", CLASSICAL)
def test_positive_root_counts(kind, n, count):
    a = standard_cartan(kind, n)
    R = build_root_system(recognize(a))
    assert R.p == count
    assert len(R.w0_word) == count
    # independent route: brute-force Weyl orbit
    assert sorted(R.order) == weyl_positive_roots([list(r) for r in a])


@pytest.mark.parametrize("kind,n,_", CLASSICAL)
def test_convexity_and_reflections(kind, n, _):
    a = standard_cartan(kind, n)
    R = build_root_system(recognize(a))
    assert R.is_convex()
    for i in range(n):
        assert tuple(1 if k == i else 0 for k in range(n)) in R.index
    for v in R.order:
        assert all(x >= 0 for x in v)
        for i in range(n):
            assert reflect(a, i, reflect(a, i, v)) == v


def test_block_diagonal_order():
    a = [[2, -1, 0], [-1, 2, 0], [0, 0, 2]]
    R = build_root_system(recognize(a))
    assert R.order == [(1, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 1)]
    assert R.component_positions == [[0, 1, 2], [3]]


def test_symmetrize_examples():
    ctx = make_context(11)
    d, q = symmetrize(recognize([[2]]), [ctx.zeta(1)])
    assert d == [1] and q == ctx.zeta(6)
    d, q = symmetrize(recognize([[2, -1], [-1, 2]]), [ctx.zeta(2), ctx.zeta(2)])
    assert d == [1, 1] and q == ctx.zeta(1)
    d, q = symmetrize(recognize(standard_cartan("B", 2)), [ctx.zeta(2), ctx.zeta(4)])
    assert d == [1, 2] and q == ctx.zeta(1)


def test_symmetrize_errors():
    c12 = make_context(12)
    with pytest.raises(OrderViolation):
        symmetrize(recognize([[2]]), [c12.zeta(3)])
    ctx = make_context(11)
    with pytest.raises(Inconsistent):
        symmetrize(recognize(standard_cartan("B", 2)), [ctx.zeta(2), ctx.zeta(5)])
    c9 = make_context(9)
    with pytest.raises(OrderViolation):
        symmetrize(recognize(standard_cartan("G", 2)), [c9.zeta(1), c9.zeta(3)])
