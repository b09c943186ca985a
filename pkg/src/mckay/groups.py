"""Finite subgroups of SL(n, C): closure, conjugacy classes, subgroups.

Two element models share one group type. Abelian diagonal groups keep
weight vectors ``(1/r)(a_1, ..., a_n)`` and never build matrices; other
groups hold square matrices over a cyclotomic field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence, Union

from .exact import CyclotomicNumber, lcm

DEFAULT_CLOSURE_BOUND = 10_000
DEFAULT_SUBGROUP_BOUND = 512


class GroupError(ValueError):
    """Invalid generators or a closure that does not terminate within bound."""


@dataclass(frozen=True, order=True)
class WeightVector:
    """Diagonal element diag(e^{a_1}, ..., e^{a_n}) with e = exp(2 pi i / r).

    Always stored with ``r`` equal to the element order.
    """

    r: int
    a: tuple[int, ...]

    @classmethod
    def reduced(cls, r: int, a: Sequence[int]) -> "WeightVector":
        a = [x % r for x in a]
        g = gcd(r, *a) if a else r
        return cls(r // g, tuple(x // g for x in a))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def order(self) -> int:
        return self.r

    def is_special(self) -> bool:
        return sum(self.a) % self.r == 0

    def over(self, big: int) -> tuple[int, ...]:
        """Exponents over the common denominator ``big``."""
        return tuple(x * (big // self.r) for x in self.a)

    def __str__(self):
        return f"1/{self.r}(" + ",".join(map(str, self.a)) + ")"


Matrix = tuple  # tuple[tuple[CyclotomicNumber, ...], ...]


@dataclass(frozen=True)
class MatrixElement:
    entries: Matrix

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def conductor(self) -> int:
        return self.entries[0][0].m

    def __mul__(self, other: "MatrixElement") -> "MatrixElement":
        return MatrixElement(mat_mul(self.entries, other.entries))

    def trace(self) -> CyclotomicNumber:
        t = self.entries[0][0]
        for i in range(1, self.n):
            t = t + self.entries[i][i]
        return t

    def key(self) -> tuple:
        return tuple((c._den, c._num) for row in self.entries for c in row)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(c) for c in row) for row in self.entries) + "]"


GroupElement = Union[WeightVector, MatrixElement]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def identity_matrix(n: int, m: int) -> Matrix:
    one = CyclotomicNumber.from_rational(m, 1)
    zero = CyclotomicNumber.from_rational(m, 0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def row_reduce(rows: list[list], one, zero) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field; returns (rref, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows: list[list], one, zero) -> list[list]:
    """Basis of {x : rows @ x = 0}."""
    ncols = len(rows[0]) if rows else 0
    rref, pivots = row_reduce(rows, one, zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def determinant(m: Matrix):
    n = len(m)
    one = m[0][0] * 0 + 1
    rows = [list(r) for r in m]
    det = one
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return one * 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = one / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FixedSubspace:
    dimension: int
    coordinates: tuple[int, ...] | None = None  # diagonal case
    basis: tuple[tuple, ...] | None = None  # matrix case


@dataclass
class FiniteMatrixGroup:
    """A finite group of determinant-one transformations of C^n.

    ``elements`` is in canonical order (identity first). ``words[i]`` is a
    shortest word in the generators (generator indices) giving element i.
    """

    kind: str  # "abelian-diagonal" or "matrix"
    n: int
    conductor: int
    elements: list
    generators: list
    words: list = field(repr=False)
    name: str = ""

    def __post_init__(self):
        if self.kind == "abelian-diagonal":
            self._keys = [e.over(self.conductor) for e in self.elements]
        else:
            self._keys = [e.key() for e in self.elements]
        self.index = {k: i for i, k in enumerate(self._keys)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_abelian_diagonal(self) -> bool:
        return self.kind == "abelian-diagonal"

    def _product(self, i: int, j: int) -> int:
        if self.is_abelian_diagonal:
            N = self.conductor
            k = tuple((x + y) % N for x, y in zip(self._keys[i], self._keys[j]))
            return self.index[k]
        p = self.elements[i] * self.elements[j]
        return self.index[p.key()]

    @cached_property
    def table(self) -> list[list[int]]:
        """Multiplication table on element indices: table[i][j] = g_i g_j."""
        return [[self._product(i, j) for j in range(self.order)] for i in range(self.order)]

    @cached_property
    def inverses(self) -> list[int]:
        inv = [0] * self.order
        for i, row in enumerate(self.table):
            inv[i] = row.index(0)
        return inv

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power(self, i: int, k: int) -> int:
        acc = 0
        base = i if k >= 0 else self.inverses[i]
        k = abs(k)
        while k:
            if k & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            k >>= 1
        return acc

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = self.table[x][i]
                k += 1
            out.append(k)
        return out

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.element_orders)

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i))

    def trace(self, i: int) -> CyclotomicNumber:
        """Trace of element i in the defining representation."""
        g = self.elements[i]
        if isinstance(g, MatrixElement):
            return g.trace()
        N = self.conductor
        acc = CyclotomicNumber.from_rational(N, 0)
        for a in g.over(N):
            acc = acc + CyclotomicNumber.zeta(N, a)
        return acc

    def matrix(self, i: int) -> Matrix:
        g = self.elements[i]
        if isinstance(g, MatrixElement):
            return g.entries
        N = self.conductor
        zero = CyclotomicNumber.from_rational(N, 0)
        exps = g.over(N)
        return tuple(
            tuple(CyclotomicNumber.zeta(N, exps[r]) if r == c else zero for c in range(self.n))
            for r in range(self.n)
        )

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, cl in enumerate(self.classes):
            for i in cl.members:
                out[i] = c
        return out

    def __str__(self):
        return self.name or f"{self.kind} group of order {self.order} in SL({self.n})"


# ---------------------------------------------------------------------------
# construction


def close_group(
    generators: Sequence[GroupElement],
    bound: int = DEFAULT_CLOSURE_BOUND,
    name: str = "",
) -> FiniteMatrixGroup:
    """Closure of ``generators`` under multiplication.

    Weight-vector generators produce an abelian-diagonal group; matrix
    generators a matrix group whose entries are re-embedded in the field of
    the group exponent when that is larger.
    """
    gens = list(generators)
    if not gens:
        raise GroupError("need at least one generator")
    if all(isinstance(g, WeightVector) for g in gens):
        return _close_diagonal(gens, bound, name)
    if all(isinstance(g, MatrixElement) for g in gens):
        return _close_matrix(gens, bound, name)
    raise GroupError("generators must all be weight vectors or all matrices")


def _close_diagonal(gens: list[WeightVector], bound: int, name: str) -> FiniteMatrixGroup:
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise GroupError("generators of different dimensions")
        if not g.is_special():
            raise GroupError(f"{g} has determinant != 1")
    N = lcm(*(g.r for g in gens))
    vecs = [g.over(N) for g in gens]
    ident = (0,) * n
    seen = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for v in frontier:
            for gi, w in enumerate(vecs):
                u = tuple((x + y) % N for x, y in zip(v, w))
                if u not in seen:
                    seen[u] = seen[v] + (gi,)
                    if len(seen) > bound:
                        raise GroupError(f"not finite within bound {bound}")
                    nxt.append(u)
        frontier = nxt
    elems = sorted((WeightVector.reduced(N, v), v) for v in seen)
    return FiniteMatrixGroup(
        kind="abelian-diagonal",
        n=n,
        conductor=N,
        elements=[e for e, _ in elems],
        generators=list(gens),
        words=[seen[v] for _, v in elems],
        name=name,
    )


def _close_matrix(gens: list[MatrixElement], bound: int, name: str) -> FiniteMatrixGroup:
    n = gens[0].n
    m = lcm(*(g.conductor for g in gens))
    gens = [MatrixElement(tuple(tuple(c.embed(m) for c in row) for row in g.entries)) for g in gens]
    for g in gens:
        if g.n != n:
            raise GroupError("generators of different dimensions")
        if determinant(g.entries) != 1:
            raise GroupError(f"generator {g} has determinant != 1")
    ident = MatrixElement(identity_matrix(n, m))
    seen = {ident.key(): (ident, ())}
    frontier = [ident]
    while frontier:
        nxt = []
        for v in frontier:
            word = seen[v.key()][1]
            for gi, g in enumerate(gens):
                u = v * g
                k = u.key()
                if k not in seen:
                    seen[k] = (u, word + (gi,))
                    if len(seen) > bound:
                        raise GroupError(f"not finite within bound {bound}")
                    nxt.append(u)
        frontier = nxt
    items = list(seen.values())
    # element orders decide the conductor before canonical sorting
    orders = [_matrix_order(e, ident) for e, _ in items]
    big = lcm(m, *orders)
    if big != m:
        items = [
            (MatrixElement(tuple(tuple(c.embed(big) for c in row) for row in e.entries)), w)
            for e, w in items
        ]
        gens = [MatrixElement(tuple(tuple(c.embed(big) for c in row) for row in g.entries)) for g in gens]
    ranked = sorted(zip(orders, items), key=lambda t: (t[0], t[1][0].key()))
    return FiniteMatrixGroup(
        kind="matrix",
        n=n,
        conductor=big,
        elements=[e for _, (e, _) in ranked],
        generators=gens,
        words=[w for _, (_, w) in ranked],
        name=name,
    )


def _matrix_order(e: MatrixElement, ident: MatrixElement) -> int:
    k, x = 1, e
    while x.key() != ident.key():
        x = x * e
        k += 1
    return k


def cyclic_group(r: int, a: Sequence[int], name: str = "") -> FiniteMatrixGroup:
    """The cyclic group generated by (1/r)(a_1, ..., a_n)."""
    return close_group([WeightVector.reduced(r, a)], name=name or f"1/{r}({','.join(map(str, a))})")


def diagonal_group(rows: Sequence[Sequence[int]], name: str = "") -> FiniteMatrixGroup:
    """Abelian group generated by weight rows ``(r, a_1, ..., a_n)``."""
    gens = [WeightVector.reduced(row[0], row[1:]) for row in rows]
    return close_group(gens, name=name)


def binary_dihedral(n: int) -> FiniteMatrixGroup:
    """BD_{4n} generated by diag(e, e^-1) and [[0, 1], [-1, 0]], e = exp(2 pi i/2n)."""
    if n < 1:
        raise ValueError("n >= 1")
    m = 2 * n
    z = CyclotomicNumber.zeta
    zero = CyclotomicNumber.from_rational(m, 0)
    one = CyclotomicNumber.from_rational(m, 1)
    alpha = MatrixElement(((z(m, 1), zero), (zero, z(m, -1))))
    beta = MatrixElement(((zero, one), (-one, zero)))
    return close_group([alpha, beta], name=f"BD{4 * n}")


def trivial_group(n: int) -> FiniteMatrixGroup:
    return close_group([WeightVector(1, (0,) * n)], name="trivial")


# ---------------------------------------------------------------------------
# structure


def conjugacy_classes(G: FiniteMatrixGroup) -> list[ConjugacyClass]:
    """Conjugation orbits in canonical order, each represented by its least index."""
    if G.is_abelian_diagonal:
        return [ConjugacyClass(i, (i,)) for i in range(G.order)]
    t, inv = G.table, G.inverses
    assigned = [False] * G.order
    out = []
    for x in range(G.order):
        if assigned[x]:
            continue
        orbit = sorted({t[t[g][x]][inv[g]] for g in range(G.order)})
        for y in orbit:
            assigned[y] = True
        out.append(ConjugacyClass(orbit[0], tuple(orbit)))
    return out


def commuting_pairs_count(G: FiniteMatrixGroup) -> int:
    """Number of ordered pairs (g, h) with gh = hg."""
    if G.is_abelian_diagonal:
        return G.order * G.order
    t = G.table
    return sum(1 for i in range(G.order) for j in range(G.order) if t[i][j] == t[j][i])


def fixed_subspace(G: FiniteMatrixGroup, i: int) -> FixedSubspace:
    """Fixed locus of element i: coordinate set for weight vectors, a kernel basis otherwise."""
    g = G.elements[i]
    if isinstance(g, WeightVector):
        coords = tuple(k for k, a in enumerate(g.a) if a == 0)
        return FixedSubspace(len(coords), coordinates=coords)
    m = G.conductor
    one = CyclotomicNumber.from_rational(m, 1)
    zero = CyclotomicNumber.from_rational(m, 0)
    rows = [[g.entries[r][c] - (one if r == c else zero) for c in range(G.n)] for r in range(G.n)]
    basis = nullspace(rows, one, zero)
    return FixedSubspace(len(basis), basis=tuple(tuple(v) for v in basis))


def generated_subgroup(G: FiniteMatrixGroup, gens: Sequence[int]) -> frozenset[int]:
    t = G.table
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass
class SubgroupLattice:
    subgroups: list[frozenset[int]]
    classes: list[list[int]]  # indices into ``subgroups``; G-conjugacy classes

    def __len__(self) -> int:
        return len(self.subgroups)

    def contains(self, i: int, j: int) -> bool:
        """True when subgroup j is contained in subgroup i."""
        return self.subgroups[j] <= self.subgroups[i]

    def class_of(self, H: frozenset[int]) -> int:
        k = self.subgroups.index(H)
        return next(c for c, members in enumerate(self.classes) if k in members)


def subgroup_lattice(G: FiniteMatrixGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> SubgroupLattice:
    """All subgroups of G grouped into conjugacy classes."""
    if G.order > bound and not G.is_abelian_diagonal:
        raise GroupError(
            f"|G| = {G.order} exceeds subgroup bound {bound}; use an abelian-diagonal group"
        )
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(G.order):
                if g in H:
                    continue
                K = generated_subgroup(G, _gens_of(G, H) + [g])
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    subs = sorted(found, key=lambda H: (len(H), sorted(H)))
    index = {H: k for k, H in enumerate(subs)}
    t, inv = G.table, G.inverses
    assigned: dict[int, int] = {}
    classes: list[list[int]] = []
    for k, H in enumerate(subs):
        if k in assigned:
            continue
        orbit = sorted({index[frozenset(t[t[g][h]][inv[g]] for h in H)] for g in range(G.order)})
        for o in orbit:
            assigned[o] = len(classes)
        classes.append(orbit)
    return SubgroupLattice(subs, classes)


def _gens_of(G: FiniteMatrixGroup, H: frozenset[int]) -> list[int]:
    gens: list[int] = []
    cur = frozenset({0})
    for h in sorted(H):
        if h not in cur:
            gens.append(h)
            cur = generated_subgroup(G, gens)
    return gens


def invariant_factors(G: FiniteMatrixGroup) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an abelian group, from element orders."""
    if not G.is_commutative():
        raise GroupError("invariant factors need an abelian group")
    orders = G.element_orders
    primes = sorted({p for o in orders for p in _prime_factors(o)})
    parts: dict[int, list[int]] = {}
    for p in primes:
        sylow = sum(1 for o in orders if _is_power_of(o, p))
        counts = [1]
        while counts[-1] < sylow:
            k = len(counts)
            counts.append(sum(1 for o in orders if (p**k) % o == 0))
        # p^ge[k] = counts[k+1]/counts[k]: number of cyclic factors of order >= p^(k+1)
        ge = [_ilog(counts[k + 1] // counts[k], p) for k in range(len(counts) - 1)]
        lam = []
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            lam += [k + 1] * (ge[k] - nxt)
        parts[p] = sorted(lam, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for idx in range(width):
        d = 1
        for p, lam in parts.items():
            if idx < len(lam):
                d *= p ** lam[idx]
        factors.append(d)
    return sorted(factors)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_power_of(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def _ilog(x: int, p: int) -> int:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def element_fraction_point(g: WeightVector) -> tuple[Fraction, ...]:
    """The lattice point a/r of a weight vector, coordinates in [0, 1)."""
    return tuple(Fraction(a, g.r) for a in g.a)
