import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mckay.groups import (
    GroupError,
    WeightVector,
    binary_dihedral,
    close_group,
    commuting_pairs_count,
    conjugacy_classes,
    cyclic_group,
    diagonal_group,
    fixed_subspace,
    invariant_factors,
    subgroup_lattice,
    trivial_group,
)
from mckay.specfile import SpecError, parse_group_spec


def brute_subgroups(G):
    """Oracle: every subset closed under products, checked from the multiplication table."""
    t = G.table
    out = set()
    # every subgroup is generated by at most 3 elements for the small groups used here
    for k in range(0, 4):
        for gens in itertools.combinations(range(G.order), k):
            H = {0}
            changed = True
            while changed:
                changed = False
                for a in list(H):
                    for g in gens:
                        if t[a][g] not in H:
                            H.add(t[a][g])
                            changed = True
            out.add(frozenset(H))
    return out


def test_cyclic_orders_and_classes():
    G = cyclic_group(7, (1, 2, 4))
    assert G.order == 7 and len(G.classes) == 7
    assert G.elements[0] == WeightVector.reduced(7, (0, 0, 0))


def test_diagonal_product_group():
    G = diagonal_group([(2, 1, 1, 0), (2, 0, 1, 1)])
    assert G.order == 4
    assert invariant_factors(G) == [2, 2]


@pytest.mark.parametrize(
    "rows, factors",
    [
        ([(6, 1, 2, 3)], [6]),
        ([(3, 1, 2, 0), (3, 0, 1, 2)], [3, 3]),
        ([(2, 1, 1, 0), (4, 0, 1, 3)], [2, 4]),
        ([(3, 1, 2, 0), (9, 1, 2, 6)], [9]),
        ([(3, 1, 2, 0), (9, 1, 2, 6), (3, 0, 1, 2)], [3, 9]),
        ([(12, 1, 4, 7)], [12]),
    ],
)
def test_invariant_factors(rows, factors):
    assert invariant_factors(diagonal_group(rows)) == factors


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_binary_dihedral_shape(n):
    G = binary_dihedral(n)
    assert G.order == 4 * n
    assert len(G.classes) == n + 3
    assert G.is_commutative() == (n == 1)


def test_class_equation_and_burnside_counts():
    for G in (binary_dihedral(3), binary_dihedral(4), cyclic_group(5, (1, 4))):
        classes = conjugacy_classes(G)
        assert sum(c.size for c in classes) == G.order
        # commuting pairs = |G| * #classes
        assert commuting_pairs_count(G) == G.order * len(classes)
        brute = sum(1 for a in range(G.order) for b in range(G.order) if G.mul(a, b) == G.mul(b, a))
        assert brute == commuting_pairs_count(G)


@pytest.mark.parametrize(
    "G, count",
    [
        (binary_dihedral(2), 6),  # Q8: 1, Z2, three Z4, Q8
        (cyclic_group(12, (1, 4, 7)), 6),
        (diagonal_group([(2, 1, 1, 0), (2, 0, 1, 1)]), 5),
        (binary_dihedral(3), 8),  # Dic3
    ],
)
def test_subgroup_lattice_against_brute_force(G, count):
    lat = subgroup_lattice(G)
    assert set(lat.subgroups) == brute_subgroups(G)
    assert len(lat) == count
    assert sum(len(c) for c in lat.classes) == len(lat)


def test_subgroup_conjugacy_in_nonabelian_group():
    G = binary_dihedral(3)
    lat = subgroup_lattice(G)
    # Dic3 has three conjugate cyclic subgroups of order 4
    fours = [k for k, H in enumerate(lat.subgroups) if len(H) == 4]
    assert len(fours) == 3
    assert len({lat.class_of(lat.subgroups[k]) for k in fours}) == 1


def test_subgroup_bound():
    with pytest.raises(GroupError):
        subgroup_lattice(binary_dihedral(5), bound=10)


def test_fixed_subspace_dimensions():
    G = cyclic_group(6, (1, 2, 3))
    dims = sorted(fixed_subspace(G, i).dimension for i in range(G.order))
    # g^0 fixes 3, g^2,g^4 fix one (third coordinate), g^3 fixes one (second coordinate)
    assert dims == [0, 0, 1, 1, 1, 3]
    Q = binary_dihedral(2)
    assert [fixed_subspace(Q, i).dimension for i in range(Q.order)].count(0) == 7


def test_non_special_generator_rejected():
    with pytest.raises(SpecError, match="determinant"):
        parse_group_spec("kind: abelian-diagonal\nn: 3\ngenerator: 5 1 1 1\n")


def test_close_group_bound():
    with pytest.raises(GroupError):
        close_group([WeightVector.reduced(60, (1, 11, 48))], bound=30)


def test_trivial_group():
    G = trivial_group(3)
    assert G.order == 1 and len(G.classes) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 15), st.integers(0, 14), st.integers(0, 14))
def test_cyclic_group_order_is_lcm_of_reduced_weights(r, a, b):
    a, b = a % r, b % r
    c = (-a - b) % r
    G = cyclic_group(r, (a, b, c))
    from math import gcd

    assert G.order == r // gcd(r, gcd(a, gcd(b, c)))
    assert all(WeightVector.reduced(r, (a, b, c)).is_special() for _ in [0])
