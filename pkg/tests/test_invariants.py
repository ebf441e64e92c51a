import pytest
from hypothesis import given, settings, strategies as st

from pqsurf.covers import (conjugate_system, enumerate_systems_by_orders, genus_of_cover,
                           hurwitz_move)
from pqsurf.errors import InconsistencyError, ValidationError
from pqsurf.invariants import (chern_numbers, hodge_diamond, k_minus_e_squared, surface_from_subgroup,
                               surface_from_systems, surface_invariants, twist_report)
from pqsurf.permgroup import Permutation, group_from_generators
from pqsurf.singularities import Basket

D7 = Basket.parse([(36, 2, 1), (1, 7, 6), (1, 7, 1)])
D6 = Basket.parse([(42, 2, 1), (2, 3, 2), (2, 3, 1)])
A4 = Basket.parse([(18, 2, 1), (8, 3, 2), (8, 3, 1)])
TWISTED = Basket.parse([(36, 2, 1), (1, 7, 3), (1, 7, 4)])


@pytest.mark.parametrize("basket,order,chern,kme", [
    (D7, 14, (93, 111), 2), (D6, 12, (112, 128), 14), (A4, 12, (110, 118), 18), (TWISTED, 14, (95, 109), 10),
])
def test_chern_and_criterion(basket, order, chern, kme):
    assert chern_numbers(14, 14, order, basket) == chern
    assert k_minus_e_squared(14, 14, order, basket) == (kme, True)


@pytest.mark.parametrize("basket,order,pg,h11", [(D7, 14, 16, 77), (D6, 12, 19, 88), (A4, 12, 18, 80)])
def test_diamonds(basket, order, pg, h11):
    inv = surface_invariants(14, 14, order, basket)
    assert (inv.q, inv.pg, inv.h11) == (0, pg, h11)
    assert inv.diamond.rows() == [[1], [0, 0], [pg, h11, pg], [0, 0], [1]]
    assert inv.KminusE2 < inv.KX2 < 8 * inv.chi
    assert inv.KX2 > 0 and inv.c2 > 0


def test_inconsistent_inputs():
    with pytest.raises(InconsistencyError):
        chern_numbers(14, 14, 14, Basket.parse([(35, 2, 1), (1, 7, 6), (1, 7, 1)]))
    with pytest.raises(InconsistencyError, match="Noether"):
        hodge_diamond(95, 110, 0)
    with pytest.raises(ValidationError):
        chern_numbers(1, 14, 14, D7)


def test_surface_from_subgroup_matches(triple, subgroup):
    inv = surface_from_subgroup(triple, triple, subgroup["D7"])
    assert inv.basket == D7
    assert inv.numerics() == (93, 111, 16, 77, 2)
    assert inv.singular_points == 38


def test_twist_report_diagonal_and_symmetry(systems237, subgroup):
    rep = twist_report(systems237, systems237, subgroup["D7"])
    for i in range(6):
        assert rep.matrix[i][i].numerics() == (93, 111, 16, 77, 2)
        for j in range(6):
            assert rep.matrix[i][j].numerics() == rep.matrix[j][i].numerics()
            assert rep.matrix[i][j].basket == rep.matrix[j][i].basket
    assert rep.all_positive and rep.min_k_minus_e2 == 2
    threaded = twist_report(systems237, systems237, subgroup["D7"], threads=4)
    assert [x.to_dict() for x in threaded.entries] == [x.to_dict() for x in rep.entries]


def test_twist_report_stable_under_moves(systems237, subgroup):
    H = subgroup["A4"]
    moved = [conjugate_system(hurwitz_move(s, 1), 5) for s in systems237]
    a = twist_report(systems237, systems237, H)
    b = twist_report(moved, systems237, H)
    assert [x.to_dict() for x in a.entries] == [x.to_dict() for x in b.entries]


@pytest.fixture(scope="module")
def s4_systems():
    G = group_from_generators(4, [Permutation.from_cycles(4, (0, 1, 2, 3)),
                                  Permutation.from_cycles(4, (0, 1))])
    out = []
    for sig in ([2, 2, 2, 3], [2, 2, 2, 4], [3, 3, 4], [2, 2, 3, 3]):
        out += enumerate_systems_by_orders(G, sig)
    assert all(genus_of_cover(s) >= 2 for s in out)
    return out


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_noether_integrality_property(s4_systems, data):
    s1 = data.draw(st.sampled_from(s4_systems))
    s2 = data.draw(st.sampled_from(s4_systems))
    inv = surface_from_systems(s1, s2)  # raises on any non-integral value
    assert (inv.KX2 + inv.c2) % 12 == 0
    assert inv.chi == (inv.KX2 + inv.c2) // 12
    assert inv.pg == inv.chi - 1 + inv.q
    assert inv.h11 == inv.c2 - 2 + 4 * inv.q - 2 * inv.pg
