"""Age grading of group elements and discrepancies of the associated divisors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exact import ArithmeticError_, cyclo_dft_multiplicities
from .groups import ConjugacyClass, FiniteMatrixGroup, WeightVector


@dataclass(frozen=True)
class AgeProfile:
    class_index: int
    r: int
    exponents: tuple[int, ...]  # sorted, 0 <= a_i < r
    age: int
    fixed_dimension: int

    @property
    def junior(self) -> bool:
        return self.age == 1


def eigen_multiplicities(G: FiniteMatrixGroup, i: int) -> list[int]:
    """Entry j = multiplicity of exp(2 pi i j / r) as an eigenvalue of element i, r its order."""
    g = G.elements[i]
    r = G.element_orders[i]
    if isinstance(g, WeightVector):
        out = [0] * r
        for a in g.a:
            out[a] += 1
        return out
    traces = [G.trace(G.power(i, k)) for k in range(r)]
    return cyclo_dft_multiplicities(traces, r)


def weight_age(w: WeightVector) -> int:
    s = sum(w.a)
    if s % w.r:
        raise ArithmeticError_(f"{w} has non-integral age: determinant != 1")
    return s // w.r


def age_profile(G: FiniteMatrixGroup, i: int) -> AgeProfile:
    r = G.element_orders[i]
    mult = eigen_multiplicities(G, i)
    exps = tuple(j for j, mu in enumerate(mult) for _ in range(mu))
    total = sum(exps)
    if total % r:
        raise ArithmeticError_(f"element {i} has age {Fraction(total, r)}: determinant != 1")
    return AgeProfile(G.class_of[i], r, exps, total // r, mult[0])


def class_profiles(G: FiniteMatrixGroup) -> list[AgeProfile]:
    return [age_profile(G, c.representative) for c in G.classes]


def junior_classes(G: FiniteMatrixGroup) -> list[ConjugacyClass]:
    return [c for c, p in zip(G.classes, class_profiles(G)) if p.age == 1]


def discrepancy_of_class(G: FiniteMatrixGroup, i: int) -> int:
    """Discrepancy age(g) - 1 of the divisor attached to a nonidentity element."""
    if i == 0:
        raise ValueError("the identity has no associated divisor")
    return age_profile(G, i).age - 1


def age_census(G: FiniteMatrixGroup) -> dict[int, int]:
    """Number of conjugacy classes of each age."""
    c = Counter(p.age for p in class_profiles(G))
    return dict(sorted(c.items()))
