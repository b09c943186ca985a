"""Character tables, tensor decomposition and McKay quivers.

Characters come from the Burnside-Dixon class-algebra method. The common
eigenvectors of the class matrices are split over a prime field F_p with
p = 1 mod exp(G); each character is then lifted to exact values in
Q(zeta_m) through its eigenvalue multiplicities, and the finished table is
checked exactly against both orthogonality relations.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt

import networkx as nx

from .exact import ArithmeticError_, CyclotomicNumber, _reduction_table, euler_phi
from .groups import FiniteMatrixGroup


class CharacterTableError(ArithmeticError_):
    """The class algebra failed to split or a check failed: an arithmetic bug."""


# ---------------------------------------------------------------------------
# sums of roots of unity, kept sparse for fast exact inner products


RootSum = dict  # exponent mod m -> integer multiplicity


def rootsum_mul(a: RootSum, b: RootSum, m: int) -> RootSum:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = (e1 + e2) % m
            out[k] = out.get(k, 0) + c1 * c2
    return out


def rootsum_conj(a: RootSum, m: int) -> RootSum:
    return {(-e) % m: c for e, c in a.items()}


def rootsum_to_cyclo(a: RootSum, m: int, scale: Fraction = Fraction(1)) -> CyclotomicNumber:
    table = _reduction_table(m)
    acc = [0] * euler_phi(m)
    for e, c in a.items():
        if c:
            row = table[e % m]
            for j, t in enumerate(row):
                if t:
                    acc[j] += c * t
    return CyclotomicNumber._from_ints(m, acc, 1) * scale


# ---------------------------------------------------------------------------
# modular linear algebra


def _rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace_mod(rows: list[list[int]], p: int) -> list[list[int]]:
    ncols = len(rows[0])
    rref, pivots = _rref_mod(rows, p)
    out = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = (-row[f]) % p
        out.append(v)
    return out


def _charpoly_mod(R: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg reduction."""
    n = len(R)
    H = [row[:] for row in R]
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if H[i][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[piv], H[c + 1] = H[c + 1], H[piv]
            for row in H:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        inv = pow(H[c + 1][c], p - 2, p)
        for i in range(c + 2, n):
            if H[i][c]:
                f = H[i][c] * inv % p
                H[i] = [(x - f * y) % p for x, y in zip(H[i], H[c + 1])]
                for row in H:
                    row[c + 1] = (row[c + 1] + f * row[i]) % p
    # recurrence on leading principal submatrices
    polys = [[1]]
    for k in range(n):
        nxt = [0] + polys[k]  # x * p_k
        nxt = [(a - H[k][k] * (polys[k][i] if i < len(polys[k]) else 0)) % p for i, a in enumerate(nxt)]
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * H[i + 1][i] % p
            coef = prod * H[i][k] % p
            if coef:
                for t, a in enumerate(polys[i]):
                    nxt[t] = (nxt[t] - coef * a) % p
        polys.append(nxt)
    return polys[n]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Least prime p = 1 mod exponent with p > 2 sqrt(order)."""
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * order):
        p += exponent
    return p


def _primitive_root_of_unity(e: int, p: int) -> int:
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return pow(g, (p - 1) // e, p)
    return 1  # p = 2


# ---------------------------------------------------------------------------
# tables


@dataclass
class ClassFunction:
    values: tuple[CyclotomicNumber, ...]
    _roots: tuple[RootSum, ...] | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def degree(self) -> Fraction:
        return self.values[0].to_rational()


@dataclass
class CharacterTable:
    group: FiniteMatrixGroup = field(repr=False)
    rows: list[ClassFunction]
    class_sizes: list[int]
    prime: int

    @property
    def degrees(self) -> list[int]:
        return [int(r.degree) for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    @cached_property
    def inverse_class(self) -> list[int]:
        G = self.group
        return [G.class_of[G.inverses[c.representative]] for c in G.classes]


def character_table(G: FiniteMatrixGroup) -> CharacterTable:
    """Irreducible characters of G, trivial first, then by degree and values."""
    classes = G.classes
    k = len(classes)
    order = G.order
    cls = G.class_of
    t, inv = G.table, G.inverses
    e = G.exponent
    m = G.conductor
    if m % e:
        raise CharacterTableError(f"conductor {m} is not a multiple of exponent {e}")
    p = dixon_prime(order, e)
    Z = _primitive_root_of_unity(e, p)
    sizes = [c.size for c in classes]

    # class matrices A_j[i][l] = #{x in C_j : x^-1 z_l in C_i}
    def class_matrix(j: int) -> list[list[int]]:
        A = [[0] * k for _ in range(k)]
        for l, cl in enumerate(classes):
            z = cl.representative
            for x in classes[j].members:
                A[cls[t[inv[x]][z]]][l] += 1
        return A

    mats = [class_matrix(j) for j in range(k)]
    rng = random.Random(order * 1009 + k)
    combo = [[0] * k for _ in range(k)]
    for A in mats:
        c = rng.randrange(1, p)
        for i in range(k):
            for l in range(k):
                combo[i][l] = (combo[i][l] + c * A[i][l]) % p

    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for A in [combo] + mats:
        if all(len(s) == 1 for s in spaces):
            break
        spaces = [piece for s in spaces for piece in _split(A, s, p)]
    if not all(len(s) == 1 for s in spaces):
        raise CharacterTableError("class algebra did not split into one-dimensional pieces")

    rows = []
    for (w,) in spaces:
        if w[0] % p == 0:
            raise CharacterTableError("eigenvector vanishes on the identity class")
        s0 = pow(w[0], p - 2, p)
        w = [x * s0 % p for x in w]
        norm = sum(w[l] * w[cls[inv[classes[l].representative]]] * pow(sizes[l], p - 2, p) for l in range(k)) % p
        d2 = order * pow(norm, p - 2, p) % p
        deg = next((d for d in range(1, isqrt(order) + 1) if d * d % p == d2), None)
        if deg is None:
            raise CharacterTableError("no integral degree for a class-algebra eigenvector")
        chi_mod = [deg * w[l] * pow(sizes[l], p - 2, p) % p for l in range(k)]
        rows.append(_lift(G, chi_mod, deg, p, Z, e, m))

    def sort_key(r: ClassFunction):
        trivial = all(v == 1 for v in r.values)
        return (not trivial, r.degree, tuple((v._den, v._num) for v in r.values))

    rows.sort(key=sort_key)
    table = CharacterTable(G, rows, sizes, p)
    verify_orthogonality(table)
    return table


def _split(A: list[list[int]], basis: list[list[int]], p: int) -> list[list[list[int]]]:
    if len(basis) == 1:
        return [basis]
    E, piv = _rref_mod(basis, p)
    d = len(E)
    k = len(A)
    # R[r][c] = coordinate r of A e_c
    Ae = [[sum(A[i][l] * vec[l] for l in range(k)) % p for i in range(k)] for vec in E]
    R = [[Ae[c][piv[r]] for c in range(d)] for r in range(d)]
    roots = _roots_mod(_charpoly_mod(R, p), p)
    if len(roots) == 1:
        return [E]
    pieces = []
    for lam in roots:
        M = [[(R[r][c] - (lam if r == c else 0)) % p for c in range(d)] for r in range(d)]
        for_vecs = _nullspace_mod(M, p)
        vecs = [[sum(v[r] * E[r][i] for r in range(d)) % p for i in range(k)] for v in for_vecs]
        pieces.append(vecs)
    if sum(len(v) for v in pieces) != d:
        raise CharacterTableError("class matrix is not diagonalizable mod p")
    return pieces


def _lift(G: FiniteMatrixGroup, chi_mod: list[int], deg: int, p: int, Z: int, e: int, m: int) -> ClassFunction:
    values, roots = [], []
    orders = G.element_orders
    for c in G.classes:
        g = c.representative
        o = orders[g]
        zo = pow(Z, e // o, p)
        powers = [chi_mod[G.class_of[G.power(g, s)]] for s in range(o)]
        inv_o = pow(o, p - 2, p)
        zpow = [pow(zo, j, p) for j in range(o)]
        rs: RootSum = {}
        total = 0
        for tt in range(o):
            mu = sum(powers[s] * zpow[(-tt * s) % o] for s in range(o)) * inv_o % p
            if mu > deg:
                raise CharacterTableError("eigenvalue multiplicity out of range while lifting")
            if mu:
                rs[tt * (m // o) % m] = mu
                total += mu
        if total != deg:
            raise CharacterTableError("lifted multiplicities do not sum to the degree")
        roots.append(rs)
        values.append(rootsum_to_cyclo(rs, m))
    return ClassFunction(tuple(values), tuple(roots))


def _inner(table: CharacterTable, a: tuple[RootSum, ...], b: tuple[RootSum, ...]) -> CyclotomicNumber:
    m = table.group.conductor
    acc: dict[int, int] = {}
    for l, h in enumerate(table.class_sizes):
        for key, c in rootsum_mul(a[l], rootsum_conj(b[l], m), m).items():
            acc[key] = acc.get(key, 0) + h * c
    return rootsum_to_cyclo(acc, m, Fraction(1, table.group.order))


def verify_orthogonality(table: CharacterTable) -> None:
    """Exact row and column orthogonality; raises on any failure."""
    G = table.group
    m = G.conductor
    rows = table.rows
    k = len(rows)
    if k != len(G.classes):
        raise CharacterTableError(f"{k} characters for {len(G.classes)} classes")
    if sum(d * d for d in table.degrees) != G.order:
        raise CharacterTableError("sum of squared degrees differs from |G|")
    for i in range(k):
        for j in range(i, k):
            v = _inner(table, rows[i]._roots, rows[j]._roots)
            if v != (1 if i == j else 0):
                raise CharacterTableError(f"row orthogonality fails for characters {i}, {j}: {v}")
    for l1 in range(k):
        for l2 in range(l1, k):
            acc: dict[int, int] = {}
            for r in rows:
                for key, c in rootsum_mul(r._roots[l1], rootsum_conj(r._roots[l2], m), m).items():
                    acc[key] = acc.get(key, 0) + c
            v = rootsum_to_cyclo(acc, m)
            want = Fraction(G.order, table.class_sizes[l1]) if l1 == l2 else 0
            if v != want:
                raise CharacterTableError(f"column orthogonality fails for classes {l1}, {l2}")


# ---------------------------------------------------------------------------
# class functions from the group


def defining_character(G: FiniteMatrixGroup) -> ClassFunction:
    """Trace of the given n-dimensional representation on each class."""
    from .ages import eigen_multiplicities

    m = G.conductor
    values, roots = [], []
    for c in G.classes:
        g = c.representative
        o = G.element_orders[g]
        mult = eigen_multiplicities(G, g)
        rs = {(j * (m // o)) % m: mu for j, mu in enumerate(mult) if mu}
        roots.append(rs)
        values.append(G.trace(g))
    cf = ClassFunction(tuple(values), tuple(roots))
    for v, rs in zip(cf.values, cf._roots):
        if rootsum_to_cyclo(rs, m) != v:
            raise CharacterTableError("trace disagrees with its eigenvalue multiplicities")
    return cf


def class_function_from_words(G: FiniteMatrixGroup, images, trace) -> ClassFunction:
    """Character of the representation sending generator i to ``images[i]``.

    ``images`` are matrices in any ring; ``trace`` maps a product matrix to a
    CyclotomicNumber over G's conductor. Uses the shortest words of G.
    """
    from .groups import mat_mul

    vals = []
    for c in G.classes:
        word = G.words[c.representative]
        M = None
        for gi in word:
            M = images[gi] if M is None else mat_mul(M, images[gi])
        if M is None:
            n = len(images[0])
            one = images[0][0][0] * 0 + 1
            zero = images[0][0][0] * 0
            M = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        vals.append(trace(M))
    return ClassFunction(tuple(vals))


def _roots_of(cf: ClassFunction, m: int) -> tuple[RootSum, ...]:
    if cf._roots is not None:
        return cf._roots
    out = []
    for v in cf.values:
        out.append({i: c for i, c in _cyclo_as_rootsum(v, m).items()})
    return tuple(out)


def _cyclo_as_rootsum(v: CyclotomicNumber, m: int) -> dict:
    # power basis coefficients are already a (signed) combination of roots of unity
    if v._den != 1:
        raise CharacterTableError("class function value is not an algebraic integer")
    return {i: c for i, c in enumerate(v._num) if c}


def tensor_decompose(chi: ClassFunction, psi: ClassFunction, table: CharacterTable) -> list[int]:
    """Multiplicities of the irreducibles in chi * psi."""
    m = table.group.conductor
    a, b = _roots_of(chi, m), _roots_of(psi, m)
    prod = tuple(rootsum_mul(x, y, m) for x, y in zip(a, b))
    out = []
    for row in table.rows:
        v = _inner(table, prod, row._roots)
        if not v.is_rational() or v.to_rational().denominator != 1 or v.to_rational() < 0:
            raise CharacterTableError(f"non-integral multiplicity {v}: input is not a character")
        out.append(int(v.to_rational()))
    deg = chi.degree * psi.degree
    if sum(x * d for x, d in zip(out, table.degrees)) != deg:
        raise CharacterTableError("tensor decomposition does not preserve degree")
    return out


# ---------------------------------------------------------------------------
# McKay quiver


@dataclass
class McKayQuiver:
    degrees: list[int]
    adjacency: list[list[int]]
    names: list[str]

    @property
    def symmetric(self) -> bool:
        A = self.adjacency
        return all(A[i][j] == A[j][i] for i in range(len(A)) for j in range(len(A)))

    def graph(self) -> nx.Graph:
        """Undirected multiplicity graph; only meaningful when symmetric."""
        if not self.symmetric:
            raise ValueError("quiver is not symmetric")
        g = nx.Graph()
        g.add_nodes_from(range(len(self.degrees)))
        A = self.adjacency
        for i in range(len(A)):
            for j in range(i, len(A)):
                if A[i][j]:
                    g.add_edge(i, j, weight=A[i][j])
        return g


def mckay_quiver(G: FiniteMatrixGroup, table: CharacterTable | None = None) -> McKayQuiver:
    """a_ij = multiplicity of V_j in V_i (x) Q, Q the defining representation."""
    table = table or character_table(G)
    Q = defining_character(G)
    adj = [tensor_decompose(row, Q, table) for row in table.rows]
    n = G.n
    for i, d in enumerate(table.degrees):
        if sum(a * dj for a, dj in zip(adj[i], table.degrees)) != n * d:
            raise CharacterTableError("degree balance of the McKay quiver fails")
    names = [f"V{i}" for i in range(len(table))]
    return McKayQuiver(table.degrees, adj, names)


def extended_dynkin_graph(kind: str, rank: int) -> nx.Graph:
    """Graph of the extended Dynkin diagram of type kind_rank (rank + 1 nodes)."""
    g = nx.Graph()
    if kind == "A":
        if rank == 1:
            g.add_edge(0, 1, weight=2)
        else:
            for i in range(rank + 1):
                g.add_edge(i, (i + 1) % (rank + 1), weight=1)
    elif kind == "D":
        if rank < 4:
            raise ValueError("~D needs rank >= 4")
        chain = rank - 3
        for i in range(chain - 1):
            g.add_edge(i, i + 1, weight=1)
        g.add_edge(0, chain, weight=1)
        g.add_edge(0, chain + 1, weight=1)
        g.add_edge(chain - 1, chain + 2, weight=1)
        g.add_edge(chain - 1, chain + 3, weight=1)
    elif kind == "E":
        arms = {6: (2, 2, 2), 7: (3, 3, 1), 8: (5, 2, 1)}[rank]
        nxt = 1
        for arm in arms:
            prev = 0
            for _ in range(arm):
                g.add_edge(prev, nxt, weight=1)
                prev = nxt
                nxt += 1
    else:
        raise ValueError(kind)
    return g


def finite_dynkin_graph(kind: str, rank: int) -> nx.Graph:
    """Graph of the ordinary (finite) simply-laced Dynkin diagram."""
    g = nx.Graph()
    g.add_nodes_from(range(rank))
    if kind == "A":
        for i in range(rank - 1):
            g.add_edge(i, i + 1, weight=1)
    elif kind == "D":
        for i in range(rank - 2):
            g.add_edge(i, i + 1, weight=1)
        g.add_edge(rank - 3, rank - 1, weight=1)
    elif kind == "E":
        for i in range(rank - 2):
            g.add_edge(i, i + 1, weight=1)
        g.add_edge(2, rank - 1, weight=1)
    else:
        raise ValueError(kind)
    return g


def cartan_matrix(g: nx.Graph) -> list[list[int]]:
    nodes = sorted(g.nodes)
    return [
        [2 if i == j else -(g[i][j]["weight"] if g.has_edge(i, j) else 0) for j in nodes]
        for i in nodes
    ]


_EDGE_MATCH = nx.algorithms.isomorphism.numerical_edge_match("weight", 1)


def dynkin_recognize(q: McKayQuiver) -> str:
    """Label ``~A<k>``, ``~D<k>``, ``~E<k>`` for extended Dynkin quivers, else ``other``."""
    A = q.adjacency
    if not q.symmetric or any(A[i][i] for i in range(len(A))):
        return "other"
    g = q.graph()
    nodes = g.number_of_nodes()
    candidates = [("A", nodes - 1)]
    if nodes - 1 >= 4:
        candidates.append(("D", nodes - 1))
    if nodes - 1 in (6, 7, 8):
        candidates.append(("E", nodes - 1))
    for kind, rank in candidates:
        if rank >= 1 and nx.is_isomorphic(g, extended_dynkin_graph(kind, rank), edge_match=_EDGE_MATCH):
            return f"~{kind}{rank}"
    return "other"


def finite_part_matches(q: McKayQuiver, label: str) -> bool:
    """2*I - A on the nontrivial nodes is the Cartan matrix of the finite type."""
    kind, rank = label[1], int(label[2:])
    A = q.adjacency
    sub = nx.Graph()
    idx = range(1, len(A))
    sub.add_nodes_from(idx)
    for i in idx:
        if A[i][i]:
            return False
        for j in idx:
            if i < j and A[i][j]:
                sub.add_edge(i, j, weight=A[i][j])
    return nx.is_isomorphic(sub, finite_dynkin_graph(kind, rank), edge_match=_EDGE_MATCH)


def quiver_to_dot(q: McKayQuiver, parallel_edges: bool = False) -> str:
    """DOT text: nodes ``name:degree``, multiplicities as weight labels or parallel edges."""
    directed = not q.symmetric
    head = "digraph" if directed else "graph"
    arrow = "->" if directed else "--"
    lines = [f"{head} mckay {{"]
    for name, d in zip(q.names, q.degrees):
        lines.append(f'  {name} [label="{name}:{d}"];')
    A = q.adjacency
    for i in range(len(A)):
        for j in range(len(A)):
            if not A[i][j] or (not directed and j < i):
                continue
            if parallel_edges:
                lines.extend(f"  {q.names[i]} {arrow} {q.names[j]};" for _ in range(A[i][j]))
            else:
                lines.append(f'  {q.names[i]} {arrow} {q.names[j]} [weight={A[i][j]}, label="{A[i][j]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def degree_census(table: CharacterTable) -> Counter:
    return Counter(table.degrees)
