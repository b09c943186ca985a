"""Motivic measure of arc spaces on an affine chart with a monomial divisor.

Arcs are never built. An arc on C^n is sorted by its order vector e
(e_i = order of vanishing of x_i along the arc); the set of arcs with a given
order vector is a cylinder whose measure is prod (L - 1) L^(-e_i), with the
normalization that all of C[[t]]^n has measure L^n. Arcs lying inside a
coordinate hyperplane (e_i infinite) form a null set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import MotiveExpr, lefschetz_series

DEFAULT_S_MAX = 12


@dataclass(frozen=True)
class MonomialDivisorChart:
    """C^n with the divisor of x_1^m_1 ... x_n^m_n."""

    n: int
    m: tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != self.n:
            raise ValueError(f"need {self.n} multiplicities, got {len(self.m)}")
        if any(x < 0 for x in self.m):
            raise ValueError("multiplicities must be nonnegative")

    @property
    def components(self) -> list[int]:
        return [i for i, x in enumerate(self.m) if x > 0]

    def weighted(self, a: Sequence[int]) -> "MonomialDivisorChart":
        """Chart for D = sum a_i m_i {x_i = 0}; ``a`` is indexed by component."""
        comps = self.components
        if len(a) != len(comps):
            raise ValueError(f"need one weight per component ({len(comps)}), got {len(a)}")
        if any(x < 0 for x in a):
            raise ValueError("weights must be nonnegative")
        m = list(0 for _ in range(self.n))
        for i, w in zip(comps, a):
            m[i] = self.m[i] * w
        return MonomialDivisorChart(self.n, tuple(m))


@dataclass(frozen=True)
class OrderStratum:
    e: tuple[int, ...]  # orders along the divisor components; other coordinates free
    measure: MotiveExpr


def stratum_measure(e: Sequence[int], free: int) -> MotiveExpr:
    L = MotiveExpr.L(1)
    out = L**free
    for k in e:
        out = out * (L - 1) * MotiveExpr.L(-k)
    return out


def _order_vectors(weights: tuple[int, ...], s: int):
    """Vectors e >= 0 with sum w_i e_i = s, all w_i > 0."""
    if not weights:
        if s == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(s // w + 1):
        for tail in _order_vectors(rest, s - w * e):
            yield (e,) + tail


def order_strata(chart: MonomialDivisorChart, s: int) -> list[OrderStratum]:
    if s < 0:
        raise ValueError("level must be nonnegative")
    comps = chart.components
    free = chart.n - len(comps)
    w = tuple(chart.m[i] for i in comps)
    return [OrderStratum(e, stratum_measure(e, free)) for e in _order_vectors(w, s)]


def measure_of_order_level(chart: MonomialDivisorChart, s: int) -> MotiveExpr:
    """mu(F_D^{-1}(s)) where F_D(arc) = sum m_i * ord x_i."""
    total = MotiveExpr.const(0)
    for st in order_strata(chart, s):
        total = total + st.measure
    return total


def jet_stratum_class(n: int, e: Sequence[int], k: int) -> MotiveExpr:
    """[B_k] for B_k = jets mod t^(k+1) in C^n with ord x_i = e_i exactly (all e_i <= k)."""
    if len(e) != n or any(x > k or x < 0 for x in e):
        raise ValueError("orders must lie in 0..k")
    L = MotiveExpr.L(1)
    out = MotiveExpr.const(1)
    for x in e:
        out = out * (L - 1) * L ** (k - x)
    return out


def measure_at_truncation(n: int, e: Sequence[int], k: int) -> MotiveExpr:
    """[B_k] L^(-nk): the measure computed at truncation level k."""
    return jet_stratum_class(n, e, k) * MotiveExpr.L(-n * k)


def motivic_integral_truncated(
    chart: MonomialDivisorChart, a_weights: Sequence[int], S_max: int = DEFAULT_S_MAX
) -> MotiveExpr:
    """Partial sum over s <= S_max of mu(F_D^{-1}(s)) L^(-s), D = sum a_i m_i {x_i = 0}."""
    D = chart.weighted(a_weights)
    total = MotiveExpr.const(0)
    for s in range(S_max + 1):
        total = total + measure_of_order_level(D, s) * MotiveExpr.L(-s)
    return total


def closed_form(chart: MonomialDivisorChart, a_weights: Sequence[int]) -> MotiveExpr:
    """Strata formula on the chart: open strata of the coordinate divisor with (L-1)/(L^(c+1)-1) factors."""
    D = chart.weighted(a_weights)
    L = MotiveExpr.L(1)
    comps = chart.components
    free = chart.n - len(comps)
    total = MotiveExpr.const(0)
    for mask in range(1 << len(comps)):
        J = [comps[i] for i in range(len(comps)) if mask >> i & 1]
        term = (L - 1) ** (len(comps) - len(J)) * L**free
        for j in J:
            term = term * (L - 1) / (L ** (D.m[j] + 1) - 1)
        total = total + term
    return total


@dataclass
class SeriesReport:
    agree: bool
    depth: int
    top: int
    lhs: list[Fraction]
    rhs: list[Fraction]
    first_disagreement: int | None = None

    def __str__(self):
        if self.agree:
            return f"agree through depth {self.depth} (from L^{self.top})"
        i = self.first_disagreement
        return f"disagree at index {i} (L^{self.top - i}): {self.lhs[i]} vs {self.rhs[i]}"


def _aligned(x: MotiveExpr, top: int, depth: int) -> list[Fraction]:
    t, c = lefschetz_series(x, depth + 2 * abs(top) + 2)
    if not x.num:
        return [Fraction(0)] * (depth + 1)
    out = []
    for i in range(depth + 1):
        j = i - (top - t)  # index into c of L^(top - i)
        out.append(c[j] if 0 <= j < len(c) else Fraction(0))
    return out


def series_compare(lhs: MotiveExpr, rhs_partial: MotiveExpr, depth: int) -> SeriesReport:
    """Compare coefficients of L^(top), ..., L^(top - depth) in the 1/L expansions."""
    if not lhs.den or lhs.den[-1] == 0:
        raise ValueError("lhs has no 1/L expansion")
    tops = [lefschetz_series(x, 0)[0] for x in (lhs, rhs_partial) if x.num]
    top = max(tops) if tops else 0
    a = _aligned(lhs, top, depth)
    b = _aligned(rhs_partial, top, depth)
    first = next((i for i in range(depth + 1) if a[i] != b[i]), None)
    return SeriesReport(first is None, depth, top, a, b, first)


def series_valuation(x: MotiveExpr) -> int | None:
    """Exponent v with x = c L^(-v) + lower order terms; None for zero."""
    if not x.num:
        return None
    return -lefschetz_series(x, 0)[0]


@lru_cache(maxsize=None)
def _count_jets_mod_p(n: int, e: tuple[int, ...], k: int, p: int) -> int:
    """Brute-force count of jets in (F_p[t]/t^(k+1))^n with ord x_i = e_i."""
    from itertools import product

    def order(coeffs):
        return next((i for i, c in enumerate(coeffs) if c), k + 1)

    count = 1
    for i in range(n):
        c = sum(1 for coeffs in product(range(p), repeat=k + 1) if order(coeffs) == e[i])
        count *= c
    return count


def count_jets_mod_p(n: int, e: Sequence[int], k: int, p: int) -> int:
    return _count_jets_mod_p(n, tuple(e), k, p)
