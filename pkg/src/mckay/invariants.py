"""Invariant polynomials and relations for matrix groups acting on C^n.

Convention: g acts on functions by (g.f)(u) = f(g^{-1} u). So f is
invariant when f(g^{-1} u) = f(u) for each generator g, which then holds
on all of G.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exact import CyclotomicNumber, MultiPoly, poly_substitute
from .groups import FiniteMatrixGroup

DEFAULT_VARIABLES = ("u", "v", "w", "t")


def group_variables(n: int) -> tuple[str, ...]:
    if n > len(DEFAULT_VARIABLES):
        return tuple(f"u{i + 1}" for i in range(n))
    return DEFAULT_VARIABLES[:n]


@dataclass
class ActionOnVariables:
    """The substitution u_i -> sum_j (g^{-1})_{ij} u_j for one group element."""

    element: int
    substitution: dict[str, MultiPoly]

    def apply(self, p: MultiPoly) -> MultiPoly:
        return poly_substitute(p, self.substitution)


def action_on_variables(G: FiniteMatrixGroup, i: int, variables: tuple[str, ...] | None = None) -> ActionOnVariables:
    variables = variables or group_variables(G.n)
    if len(variables) != G.n:
        raise ValueError(f"need {G.n} variables, got {len(variables)}")
    M = G.matrix(G.inverses[i])
    xs = [MultiPoly.var(variables, v) for v in variables]
    sub = {}
    for r, v in enumerate(variables):
        row = MultiPoly(variables)
        for c in range(G.n):
            entry = M[r][c]
            if entry != 0:
                row = row + xs[c] * _scalar(entry)
        sub[v] = row
    return ActionOnVariables(i, sub)


def _scalar(x):
    if isinstance(x, CyclotomicNumber) and x.is_rational():
        return x.to_rational()
    return x


def act(p: MultiPoly, G: FiniteMatrixGroup, i: int) -> MultiPoly:
    return action_on_variables(G, i, p.variables).apply(p)


def generator_indices(G: FiniteMatrixGroup) -> list[int]:
    return [G.index[g.over(G.conductor) if G.is_abelian_diagonal else g.key()] for g in G.generators]


def is_invariant(p: MultiPoly, G: FiniteMatrixGroup, elements: list[int] | None = None) -> bool:
    if len(p.variables) != G.n:
        raise ValueError(f"polynomial has {len(p.variables)} variables, group acts on C^{G.n}")
    idx = generator_indices(G) if elements is None else elements
    return all(act(p, G, i) == p for i in idx)


def check_relation(lhs: MultiPoly, bindings: Mapping[str, MultiPoly]) -> bool:
    """True iff lhs vanishes identically after substituting the bindings."""
    return poly_substitute(lhs, bindings).is_zero()


def binary_dihedral_invariants(n: int) -> dict[str, MultiPoly]:
    """x = u^2n + v^2n, y = u^2 v^2, z = uv(u^2n - v^2n)."""
    if n < 1:
        raise ValueError("n >= 1")
    u = MultiPoly.var(("u", "v"), "u")
    v = MultiPoly.var(("u", "v"), "v")
    return {
        "x": u ** (2 * n) + v ** (2 * n),
        "y": u**2 * v**2,
        "z": u * v * (u ** (2 * n) - v ** (2 * n)),
    }


def binary_dihedral_relation(n: int, coefficient: int = 4) -> MultiPoly:
    """z^2 - y x^2 + c y^(n+1); c = 4 is the true relation."""
    X, Y, Z = (MultiPoly.var(("x", "y", "z"), s) for s in "xyz")
    return Z**2 - Y * X**2 + Fraction(coefficient) * Y ** (n + 1)
