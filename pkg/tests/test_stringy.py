from fractions import Fraction as F

import pytest

from mckay.exact import MotiveExpr, motive_eval_at_one
from mckay.groups import GroupError, binary_dihedral, cyclic_group, diagonal_group
from mckay.stringy import (
    StringyResult,
    coordinate_strata,
    euler_results,
    orbifold_euler,
    orbifold_euler_strata,
    stringy_census,
    stringy_from_fan,
    stringy_from_group,
)
from mckay.toric import NotAResolution, crepant_fan, orthant_fan, star_subdivide

L = MotiveExpr.L(1)


def test_1_3_111():
    G = cyclic_group(3, (1, 1, 1))
    want = L**3 + L**2 + L
    assert stringy_from_fan(crepant_fan(G)).motive == want
    assert stringy_from_group(G).motive == want
    assert stringy_census(G).motive == want


def test_1_7_124():
    G = cyclic_group(7, (1, 2, 4))
    assert stringy_from_group(G).motive == L**3 + 3 * L**2 + 3 * L
    assert stringy_from_group(G).euler == 7


def test_terminal_quotient_in_dimension_four():
    G = cyclic_group(5, (1, 4, 2, 3))
    r = stringy_from_group(G)
    assert r.motive == L**4 + 4 * L**2
    assert r.euler == 5


def test_routes_agree_on_corpus(corpus):
    for e in corpus:
        G = e.group
        if not G.is_abelian_diagonal:
            continue
        a = stringy_from_group(G).motive
        assert a == stringy_census(G).motive, e.label
        if G.n in (2, 3) and G.order > 1:
            assert a == stringy_from_fan(crepant_fan(G)).motive, e.label


def test_blowup_of_c4_mod_z2_is_not_crepant_but_stringy_is_invariant():
    # discrepancy 1 divisor: the strata formula still recovers the orbifold value
    G = cyclic_group(2, (1, 1, 1, 1))
    fan = star_subdivide(orthant_fan(G), (F(1, 2),) * 4)
    assert stringy_from_fan(fan).motive == L**4 + L**2
    assert stringy_census(G).motive == L**4 + L**2


def test_birational_invariance_under_extra_blowup():
    # blow up a smooth point (a torus-fixed point of a crepant resolution) further
    G = cyclic_group(3, (1, 1, 1))
    fan = crepant_fan(G)
    cone = fan.cones[0]
    v = tuple(sum(fan.rays[i][k] for i in cone) for k in range(3))
    bigger = star_subdivide(fan, v)
    assert bigger.is_smooth()
    assert stringy_from_fan(bigger).motive == stringy_from_fan(fan).motive


def test_euler_numbers_agree():
    for G in (cyclic_group(6, (1, 2, 3)), diagonal_group([(2, 1, 1, 0), (2, 0, 1, 1)])):
        assert orbifold_euler(G) == orbifold_euler_strata(G) == stringy_census(G).euler
    bd = binary_dihedral(3)
    assert orbifold_euler(bd) == 6
    assert [r.provenance for r in euler_results(bd)] == ["commuting-pairs"]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_census_route_for_binary_dihedral(n):
    # minimal resolution of a D_(n+2) surface singularity: C^2 plus n + 2 exceptional curves
    r = stringy_census(binary_dihedral(n))
    assert r.motive == L**2 + (n + 2) * L
    assert r.euler == orbifold_euler(binary_dihedral(n)) == n + 3


def test_census_route_for_exceptional_groups(corpus_by_name):
    for name, rank in (("binary-tetrahedral", 6), ("binary-octahedral", 7)):
        assert stringy_census(corpus_by_name[name].group).motive == L**2 + rank * L


def test_errors():
    with pytest.raises(GroupError):
        stringy_from_group(binary_dihedral(2))
    with pytest.raises(NotAResolution):
        stringy_from_fan(orthant_fan(cyclic_group(3, (1, 1, 1))))
    fan = crepant_fan(cyclic_group(3, (1, 1, 1)))
    fan.marks = {3: -1}
    with pytest.raises(ValueError):
        stringy_from_fan(fan)
    with pytest.raises(ArithmeticError):
        StringyResult(L + 1, F(3), "bogus")


def test_coordinate_strata_partition_subsets():
    G = cyclic_group(6, (1, 2, 3))
    strata = coordinate_strata(G)
    assert sum(len(v) for v in strata.values()) == 2**3
    assert motive_eval_at_one(sum((L ** len(S) for v in strata.values() for S in v), MotiveExpr.const(0))) == 8


def test_single_blowup_family_by_hand():
    from mckay.verify import single_blowup_family

    # C^4 / (Z/2): a = 2, b = 2; exceptional part 1 + L^2 after removing the open torus-complement L^4 - 1
    h, hg, ex = single_blowup_family(2, 2)
    assert h == hg == L**4 + L**2
    assert ex == L**2 + 1
