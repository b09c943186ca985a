"""Stringy motives and orbifold Euler numbers.

Three routes to the same invariant of C^n/G:

* ``fan``: sum over open strata of a marked smooth fan, each weighted by
  prod (L - 1)/(L^(a_j + 1) - 1);
* ``group``: sum over subgroups H of [X^H] times sum_{g in H} L^(age g),
  where X^H is the locus of C^n whose stabilizer is exactly H;
* ``census``: sum over g of L^(n - age g).

The first two are what the theory asserts agree; the third is an identity
the test suite checks against both.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .ages import age_profile, weight_age
from .exact import MotiveExpr, motive_eval_at_one
from .groups import FiniteMatrixGroup, GroupError, commuting_pairs_count
from .toric import NotAResolution, SimplicialFan, toric_strata_classes

ROUTES = ("fan", "group", "census", "commuting-pairs", "strata-euler")


@dataclass
class StringyResult:
    motive: MotiveExpr | None
    euler: Fraction
    provenance: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.motive is not None and motive_eval_at_one(self.motive) != self.euler:
            raise ArithmeticError("Euler number disagrees with the motive at L = 1")


def _L() -> MotiveExpr:
    return MotiveExpr.L(1)


def stringy_from_fan(fan: SimplicialFan) -> StringyResult:
    if not fan.is_smooth():
        raise NotAResolution(f"fan is not smooth: {fan.non_basic_cones()}")
    for i, a in fan.marks.items():
        if a < 0:
            raise ValueError(f"ray {i} has negative discrepancy {a}")
    L = _L()
    strata = toric_strata_classes(fan)
    total = MotiveExpr.const(0)
    for J, cls in strata.items():
        term = cls
        for j in J:
            term = term * (L - 1) / (L ** (fan.marks[j] + 1) - 1)
        total = total + term
    return StringyResult(total, motive_eval_at_one(total), "fan", {"strata": len(strata)})


def _require_abelian(G: FiniteMatrixGroup, what: str) -> None:
    if not G.is_abelian_diagonal:
        raise GroupError(f"{what} needs an abelian diagonal group; use orbifold_euler for {G.name or 'this group'}")


def coordinate_strata(G: FiniteMatrixGroup) -> dict[frozenset[int], list[frozenset[int]]]:
    """Map each stabilizer subgroup H (element indices) to the coordinate sets S with Stab(S) = H.

    S is the set of nonzero coordinates of a point; its stabilizer is the
    set of g acting trivially on those coordinates.
    """
    _require_abelian(G, "coordinate_strata")
    out: dict[frozenset[int], list[frozenset[int]]] = defaultdict(list)
    for k in range(G.n + 1):
        for S in combinations(range(G.n), k):
            H = frozenset(i for i, g in enumerate(G.elements) if all(g.a[j] == 0 for j in S))
            out[H].append(frozenset(S))
    return dict(out)


def stratum_class(sets: list[frozenset[int]]) -> MotiveExpr:
    t = _L() - 1
    total = MotiveExpr.const(0)
    for S in sets:
        total = total + t ** len(S)
    return total


def stringy_from_group(G: FiniteMatrixGroup) -> StringyResult:
    _require_abelian(G, "stringy_from_group")
    L = _L()
    total = MotiveExpr.const(0)
    strata = coordinate_strata(G)
    for H in sorted(strata, key=lambda h: (len(h), sorted(h))):
        ages = MotiveExpr.const(0)
        for i in sorted(H):
            ages = ages + L ** weight_age(G.elements[i])
        total = total + stratum_class(strata[H]) * ages
    return StringyResult(total, motive_eval_at_one(total), "group", {"subgroups": len(strata)})


def stringy_census(G: FiniteMatrixGroup) -> StringyResult:
    """Sum over conjugacy classes [g] of L^(n - age g).

    This is sum_[g] [X^g / C(g)] L^(age g) with each quotient of a fixed
    subspace counted as L^dim; the classes of g and g^-1 pair off and
    dim X^g = n - age g - age g^-1. For abelian G it is a sum over elements.
    """
    L = _L()
    total = MotiveExpr.const(0)
    for c in G.classes:
        total = total + L ** (G.n - age_profile(G, c.representative).age)
    return StringyResult(total, motive_eval_at_one(total), "census")


def orbifold_euler(G: FiniteMatrixGroup) -> Fraction:
    """(1/|G|) times the number of commuting pairs; each fixed locus is a linear space."""
    return Fraction(commuting_pairs_count(G), G.order)


def orbifold_euler_strata(G: FiniteMatrixGroup) -> Fraction:
    """sum over stabilizer subgroups H of e(X^H) times the number of classes of H."""
    total = Fraction(0)
    for H, sets in coordinate_strata(G).items():
        total += motive_eval_at_one(stratum_class(sets)) * len(H)
    return total


def euler_results(G: FiniteMatrixGroup) -> list[StringyResult]:
    out = [StringyResult(None, orbifold_euler(G), "commuting-pairs")]
    if G.is_abelian_diagonal:
        out.append(StringyResult(None, orbifold_euler_strata(G), "strata-euler"))
    return out
