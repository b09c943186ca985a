from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mckay.ages import age_census, age_profile, class_profiles, discrepancy_of_class, junior_classes, weight_age
from mckay.groups import WeightVector, binary_dihedral, cyclic_group, diagonal_group, fixed_subspace


def test_examples():
    assert age_census(cyclic_group(3, (1, 1, 1))) == {0: 1, 1: 1, 2: 1}
    assert age_census(cyclic_group(7, (1, 2, 4))) == {0: 1, 1: 3, 2: 3}
    assert age_census(cyclic_group(5, (1, 4, 2, 3))) == {0: 1, 2: 4}
    assert len(junior_classes(cyclic_group(5, (1, 4, 2, 3)))) == 0


def test_binary_dihedral_ages_are_one():
    G = binary_dihedral(3)
    assert age_census(G) == {0: 1, 1: len(G.classes) - 1}


def test_discrepancy():
    G = cyclic_group(5, (1, 4, 2, 3))
    assert discrepancy_of_class(G, 1) == 1
    with pytest.raises(ValueError):
        discrepancy_of_class(G, 0)


@st.composite
def sl_groups(draw):
    n = draw(st.integers(2, 4))
    r = draw(st.integers(2, 12))
    a = draw(st.lists(st.integers(0, r - 1), min_size=n - 1, max_size=n - 1))
    a.append((-sum(a)) % r)
    return cyclic_group(r, a)


@settings(max_examples=80, deadline=None)
@given(sl_groups())
def test_age_plus_inverse_age(G):
    for i in range(G.order):
        p, q = age_profile(G, i), age_profile(G, G.inverses[i])
        d = fixed_subspace(G, i).dimension
        assert p.age + q.age == G.n - d
        assert p.fixed_dimension == d
        assert weight_age(G.elements[i]) == p.age


@settings(max_examples=40, deadline=None)
@given(sl_groups())
def test_census_counts_classes(G):
    assert sum(age_census(G).values()) == len(G.classes)
    assert all(0 <= p.age < G.n or (p.age == 0) for p in class_profiles(G))


def test_matrix_and_diagonal_agree():
    # BD_4 is cyclic of order 4; compare with 1/4(1,3)
    a = age_census(binary_dihedral(1))
    b = age_census(cyclic_group(4, (1, 3)))
    assert a == b == {0: 1, 1: 3}
