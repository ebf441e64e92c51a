import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from pqsurf.covers import conjugate_system, enumerate_systems, induced_quotient_monodromy, validate_system
from pqsurf.errors import ResourceCapError, ValidationError
from pqsurf.fundgroup import (Presentation, ShapeA, ShapeB, check_relator_shapes, cyclic_reduce,
                              evaluate, find_condition2_data, free_reduce, normal_syllables,
                              pi1_trivial_certificate, todd_coxeter, transport_witness,
                              verify_presentation, verify_witness)
from pqsurf.permgroup import Permutation, group_from_generators


def dihedral(n):
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    return group_from_generators(n, [r, s]), r, s


DIHEDRAL7 = Presentation(2, ((1,) * 7, (2, 2), (1, 2, 1, 2)))
COXETER6 = Presentation(2, ((1, 1), (2, 2), (1, 2) * 6))


def test_word_helpers():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    # a^3 b a^3 is cyclically a^6 b, and a^6 = a^-1 modulo a^7
    assert normal_syllables((1, 1, 1, 2, 1, 1, 1), {1: 7}) == ((1, -1), (2, 1))
    with pytest.raises(ValidationError):
        free_reduce((1, 0))


def test_todd_coxeter_examples():
    assert todd_coxeter(DIHEDRAL7).index == 14
    assert todd_coxeter(Presentation(1, ((1,) * 5,)), [(1,)]).index == 1
    assert todd_coxeter(COXETER6).index == 12
    assert todd_coxeter(DIHEDRAL7, [(1,)]).index == 2


def test_coset_table_is_complete_action():
    table = todd_coxeter(DIHEDRAL7)
    for row in table.table:
        assert all(0 <= x < table.index for x in row)
    for c in range(table.index):
        for rel in DIHEDRAL7.relators:
            assert table.act(c, rel) == c


def test_todd_coxeter_cap():
    free_abelian = Presentation(2, ((1, 2, -1, -2),))
    with pytest.raises(ResourceCapError):
        todd_coxeter(free_abelian, max_cosets=500)
    with pytest.raises(ValidationError):
        todd_coxeter(DIHEDRAL7, max_cosets=0)


def test_verify_presentation_examples():
    G, r, s = dihedral(7)
    assert verify_presentation(DIHEDRAL7, G, [r, s])
    assert not verify_presentation(DIHEDRAL7, G, [r, r])
    C6 = group_from_generators(6, [Permutation([1, 2, 3, 4, 5, 0])])
    g = C6.elements[C6.generator_indices[0]]
    assert not verify_presentation(Presentation(1, ((1,) * 6,)), C6, [g * g])
    with pytest.raises(ValidationError):
        verify_presentation(DIHEDRAL7, G, [r])


def test_condition2_generators_are_themselves():
    G, r, s = dihedral(7)
    sys = validate_system(G, [r, s, (r * s).inverse()])
    data = find_condition2_data(sys, (0, 1))
    assert (data[0].j, data[0].ell, data[0].h) == (1, 1, 0)
    assert (data[1].j, data[1].ell, data[1].h) == (2, 1, 0)
    for g, c in zip(sys.elements, data):
        assert G.conj(G.power(sys.elements[(0, 1)[c.j - 1]], c.ell), c.h) == g


def test_condition2_for_d7_class_data(triple, subgroup):
    H = subgroup["D7"]
    sys = enumerate_systems(H, induced_quotient_monodromy(triple, H).class_reps(), limit=1)[0]
    r_pos = next(k for k, g in enumerate(sys.elements) if H.element_order(g) == 7)
    s_pos = 0
    data = find_condition2_data(sys, (r_pos, s_pos))
    for g, c in zip(sys.elements, data):
        if H.element_order(g) == 2:
            assert c.j == 2 and c.ell == 1  # a conjugate of s


def test_condition2_for_a4_class_data(triple, subgroup):
    H = subgroup["A4"]
    for sys in enumerate_systems(H, induced_quotient_monodromy(triple, H).class_reps(), limit=10):
        inv = next(k for k, g in enumerate(sys.elements) if H.element_order(g) == 2)
        three = next(k for k, g in enumerate(sys.elements) if H.element_order(g) == 3)
        if not H.generates([sys.elements[inv], sys.elements[three]]):
            continue
        data = find_condition2_data(sys, (inv, three))
        # brute force over all 12 conjugators
        for g, c in zip(sys.elements, data):
            a = sys.elements[(inv, three)[c.j - 1]]
            assert any(H.conj(H.power(a, c.ell), x) == g for x in range(12))


def test_shape_of_dihedral_relators():
    G, r, s = dihedral(7)
    sys = validate_system(G, [r, s, (r * s).inverse()])
    shapes = check_relator_shapes(DIHEDRAL7, find_condition2_data(sys, (0, 1)))
    # r s r s is certified as r s r s^-1, using s^2 = 1
    assert shapes[2] == ShapeA(2, 1, 1, (2,), 1, 1)
    assert shapes[2].word() == (1, 2, 1, -2)


def test_shape_of_power_relator():
    C5 = group_from_generators(5, [Permutation([1, 2, 3, 4, 0])])
    a = C5.elements[C5.generator_indices[0]]
    sys = validate_system(C5, [a, a.inverse()])
    pres = Presentation(1, ((1,) * 5,))
    (shape,) = check_relator_shapes(pres, find_condition2_data(sys, (0,)))
    assert isinstance(shape, ShapeA) and shape.e2 == 0 and shape.word() == (1,) * 5


def test_coxeter_product_relator_is_shape_b():
    G, r, s = dihedral(6)
    f1, f2 = s, s * r
    assert (f1 * f2).order == 6
    sys = validate_system(G, [f1, f2] * 6)
    shapes = check_relator_shapes(COXETER6, find_condition2_data(sys, (0, 1)))
    assert isinstance(shapes[2], ShapeB)
    assert all(h == () and ell == 1 for h, _, ell in shapes[2].factors)
    result = pi1_trivial_certificate(sys)
    assert result.verified


def test_d7_witness():
    G, r, s = dihedral(7)
    sys = validate_system(G, [r, s, (r * s).inverse()])
    result = pi1_trivial_certificate(sys)
    assert result.verified
    w = result.witness
    assert w.family == "dihedral"
    assert {evaluate((k,), G, w.generators) for k in (1, 2)} == {G.idx(r), G.idx(s)}
    assert verify_witness(w)


def test_tampered_witness_fails():
    G, r, s = dihedral(7)
    sys = validate_system(G, [r, s, (r * s).inverse()])
    w = pi1_trivial_certificate(sys).witness
    bad_c2 = list(w.condition2)
    bad_c2[0] = dataclasses.replace(bad_c2[0], ell=2)
    assert not verify_witness(dataclasses.replace(w, condition2=tuple(bad_c2)))
    # an extra relator that does not hold in the group
    bad_pres = Presentation(2, w.presentation.relators + ((1,),))
    assert not verify_witness(dataclasses.replace(w, presentation=bad_pres))
    # dropping a relator leaves a shape pointing nowhere; the enumeration of
    # the now infinite group is cut off by the cap
    short = Presentation(2, w.presentation.relators[:-1])
    with pytest.raises(ResourceCapError):
        verify_witness(dataclasses.replace(w, presentation=short), max_cosets=2000)


def test_witness_transport(triple, subgroup):
    H = subgroup["A4"]
    for sys in enumerate_systems(H, induced_quotient_monodromy(triple, H).class_reps(), limit=5):
        w = pi1_trivial_certificate(sys).witness
        for x in (1, 5, 11):
            moved = transport_witness(w, x)
            assert moved.original.elements == conjugate_system(sys, x).elements
            assert verify_witness(moved)


def test_pi1_bounded_search_outcomes():
    # C2 x C2 with a system that only generates through the product: no
    # generator can be written as a conjugate of a power of a single system
    # element unless all three are assigned.
    a = Permutation.from_cycles(4, (0, 1))
    b = Permutation.from_cycles(4, (2, 3))
    G = group_from_generators(4, [a, b])
    sys = validate_system(G, [a, b, a * b])
    assert pi1_trivial_certificate(sys, max_generators=1).status == "refuted-at-bound"
    assert pi1_trivial_certificate(sys).verified


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 50))
def test_cyclic_presentation_orders(n):
    assert todd_coxeter(Presentation(1, ((1,) * n,))).index == n


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 50))
def test_dihedral_presentation_orders(n):
    pres = Presentation(2, ((1,) * n, (2, 2), (1, 2, 1, 2)))
    assert todd_coxeter(pres).index == 2 * n
    G, r, s = dihedral(n) if n > 2 else (None, None, None)
    if G is not None:
        assert verify_presentation(pres, G, [r, s])
