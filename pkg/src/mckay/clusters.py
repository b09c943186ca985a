"""Torus-fixed G-clusters for abelian diagonal G.

A torus-fixed G-cluster is a monomial ideal I whose complement (the
staircase) is a downward-closed set of |G| monomials carrying every
character of G exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .groups import FiniteMatrixGroup, GroupError

DEFAULT_CLUSTER_BOUND = 60
VARIABLES = "xyzw"

Exponent = tuple[int, ...]


def monomial_text(e: Exponent) -> str:
    parts = []
    for v, k in zip(VARIABLES, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"


def _unit(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Staircase:
    n: int
    basis: frozenset  # exponent vectors not in the ideal

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_downward_closed(self) -> bool:
        for e in self.basis:
            for i in range(self.n):
                if e[i] and tuple(x - (j == i) for j, x in enumerate(e)) not in self.basis:
                    return False
        return True

    @property
    def generators(self) -> list[Exponent]:
        """Minimal monomial generators of the ideal."""
        cands = set()
        for e in self.basis:
            for i in range(self.n):
                m = _add(e, _unit(self.n, i))
                if m not in self.basis:
                    cands.add(m)
        gens = []
        for m in cands:
            if all(
                tuple(x - (j == i) for j, x in enumerate(m)) in self.basis for i in range(self.n) if m[i]
            ):
                gens.append(m)
        return sorted(gens, key=lambda g: (sum(g), tuple(-x for x in g)))

    def sorted_basis(self) -> list[Exponent]:
        return sorted(self.basis, key=lambda e: (sum(e), tuple(-x for x in e)))

    def text_art(self) -> str:
        """Rows of y-exponents, columns of x-exponents (n = 2)."""
        if self.n != 2:
            raise ValueError("text art is for n = 2")
        mx = max(e[0] for e in self.basis)
        my = max(e[1] for e in self.basis)
        rows = []
        for j in range(my, -1, -1):
            rows.append("".join("#" if (i, j) in self.basis else "." for i in range(mx + 1)).rstrip("."))
        return "\n".join(rows)


def character_weights(G: FiniteMatrixGroup) -> list[tuple[int, ...]]:
    """Per variable, its character as values on the generators (exponents mod each generator order)."""
    return [tuple(g.a[i] % g.r for g in G.generators) for i in range(G.n)]


def _character_of(e: Exponent, weights: list[tuple[int, ...]], mods: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(k * w[j] for k, w in zip(e, weights)) % mods[j] for j in range(len(mods)))


@dataclass(frozen=True)
class GCluster:
    staircase: Staircase
    character_map: tuple  # (exponent, character) pairs in staircase order

    @property
    def basis(self) -> list[Exponent]:
        return self.staircase.sorted_basis()

    def describe(self) -> str:
        return "{" + ", ".join(monomial_text(e) for e in self.basis) + "}"


def _check_group(G: FiniteMatrixGroup, bound: int) -> None:
    if not G.is_abelian_diagonal:
        raise GroupError("G-cluster enumeration needs an abelian diagonal group")
    if G.order > bound:
        raise GroupError(f"|G| = {G.order} exceeds cluster bound {bound}")


def free_monomials(G: FiniteMatrixGroup, bound: int = 200000) -> list[Exponent]:
    """Monomials not divisible by any nonconstant invariant monomial.

    Only these can occur in a staircase: a divisor with the same character
    would sit in the staircase too. A monomial is free exactly when all its
    immediate divisors are free and its own character is nontrivial.
    """
    n = G.n
    weights = character_weights(G)
    mods = tuple(g.r for g in G.generators)
    trivial = (0,) * len(mods)
    zero = (0,) * n
    free = {zero}
    frontier = [zero]
    while frontier:
        nxt = set()
        for e in frontier:
            for i in range(n):
                m = _add(e, _unit(n, i))
                if m in free or m in nxt:
                    continue
                if _character_of(m, weights, mods) == trivial:
                    continue
                if all(tuple(x - (j == k) for j, x in enumerate(m)) in free for k in range(n) if m[k]):
                    nxt.add(m)
        free |= nxt
        if len(free) > bound:
            raise GroupError(f"more than {bound} candidate monomials")
        frontier = sorted(nxt)
    return sorted(free, key=lambda e: (sum(e), e))


def _divisors(e: Exponent) -> list[Exponent]:
    out = [()]
    for k in e:
        out = [d + (j,) for d in out for j in range(k + 1)]
    return out


def enumerate_torus_fixed_clusters(G: FiniteMatrixGroup, bound: int = DEFAULT_CLUSTER_BOUND) -> list[GCluster]:
    """All staircases of size |G| carrying each character once, in canonical order.

    Character-by-character search: each character gets one free monomial,
    and choosing a monomial forces every divisor onto its own character.
    The most constrained character is branched on first.
    """
    _check_group(G, bound)
    weights = character_weights(G)
    mods = tuple(g.r for g in G.generators)
    free = free_monomials(G)
    char = {e: _character_of(e, weights, mods) for e in free}
    divs = {e: _divisors(e) for e in free}
    cands: dict[tuple, list[Exponent]] = {}
    for e in free:
        # two divisors with one character can never sit in a staircase together
        if len({char[d] for d in divs[e]}) == len(divs[e]):
            cands.setdefault(char[e], []).append(e)
    if len(cands) != G.order:
        raise GroupError("monomial characters do not cover the dual group; is the action faithful?")
    assign: dict[tuple, Exponent] = {}
    found: list[frozenset] = []

    def feasible(m: Exponent) -> bool:
        return all(assign.get(char[d], d) == d for d in divs[m])

    def search():
        if len(assign) == len(cands):
            found.append(frozenset(assign.values()))
            return
        best = None
        for c, ms in cands.items():
            if c in assign:
                continue
            ok = [m for m in ms if feasible(m)]
            if best is None or len(ok) < len(best[1]):
                best = (c, ok)
                if not ok:
                    return
        for m in best[1]:
            added = [char[d] for d in divs[m] if char[d] not in assign]
            for d in divs[m]:
                assign[char[d]] = d
            search()
            for c in added:
                del assign[c]

    search()
    clusters = []
    for b in found:
        st = Staircase(G.n, b)
        cmap = tuple((e, char[e]) for e in st.sorted_basis())
        clusters.append(GCluster(st, cmap))
    clusters.sort(key=lambda c: [(sum(e), e) for e in c.basis])
    return clusters


@dataclass
class RegularCheck:
    ok: bool
    certificate: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _character_label(G: FiniteMatrixGroup, values: tuple[int, ...]) -> str:
    if len(G.generators) == 1:
        return str(values[0])
    return "(" + ",".join(map(str, values)) + ")"


def verify_regular_representation(basis: Iterable[Exponent], G: FiniteMatrixGroup) -> RegularCheck:
    """Check that the monomials carry each character of G exactly once.

    Characters are compared as full value vectors over all of G (exponents
    mod the conductor), independent of the enumerator's generator encoding.
    Labels in the certificate use the generator encoding.
    """
    basis = list(basis)
    cert = []
    N = G.conductor
    keys = [G._keys[i] for i in range(G.order)]

    def full(e):
        return tuple(sum(k * a for k, a in zip(e, g)) % N for g in keys)

    # all characters of G: the monomial characters of exponents below each generator order span them
    gen_mods = [g.r for g in G.generators]
    seen: dict[tuple, list] = {}
    for e in basis:
        seen.setdefault(full(e), []).append(e)
    for v, es in seen.items():
        if len(es) > 1:
            cert.append(
                f"character {_label_of(G, v, gen_mods)} repeated by " + ", ".join(monomial_text(e) for e in es)
            )
    every = _all_characters(G)
    for v, label in every:
        if v not in seen:
            cert.append(f"character {label} missing")
    if len(basis) != G.order:
        cert.append(f"basis has {len(basis)} monomials, |G| = {G.order}")
    st = Staircase(G.n, frozenset(basis))
    if not st.is_downward_closed():
        cert.append("basis is not closed under division")
    return RegularCheck(not cert, cert)


def _all_characters(G: FiniteMatrixGroup) -> list[tuple[tuple, str]]:
    """Every character of G as a value vector, labelled by its values on the generators.

    Enumerated as products of powers of the characters of the coordinates,
    which generate the dual group of a faithful diagonal representation.
    """
    N = G.conductor
    keys = [G._keys[i] for i in range(G.order)]
    found: dict[tuple, tuple] = {}
    frontier = [(0,) * G.n]
    found[tuple(0 for _ in keys)] = (0,) * G.n
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(G.n):
                f = _add(e, _unit(G.n, i))
                v = tuple(sum(k * a for k, a in zip(f, g)) % N for g in keys)
                if v not in found:
                    found[v] = f
                    nxt.append(f)
        frontier = nxt
    gen_mods = [g.r for g in G.generators]
    return sorted((v, _label_of(G, v, gen_mods)) for v in found)


def _label_of(G: FiniteMatrixGroup, v: tuple, gen_mods: list[int]) -> str:
    N = G.conductor
    vals = []
    for g, r in zip(G.generators, gen_mods):
        i = G.index[g.over(N)]
        vals.append(v[i] * r // N)
    return _character_label(G, tuple(vals))


@dataclass
class TripodProfile:
    legs: tuple[int, int, int]  # largest pure powers of x, y, z in the basis
    points: list[tuple[int, int]]  # images in Z^3 / Z(1,1,1), coordinates (e1 - e3, e2 - e3)
    injective: bool

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def degenerate(self) -> bool:
        return sum(1 for x in self.legs if x) <= 1


def tripod_profile(c: GCluster) -> TripodProfile:
    n = c.staircase.n
    if n != 3:
        raise ValueError("tripod profile needs n = 3")
    basis = c.basis
    legs = tuple(max((e[i] for e in basis if sum(e) == e[i]), default=0) for i in range(3))
    pts = [(e[0] - e[2], e[1] - e[2]) for e in basis]
    injective = len(set(pts)) == len(pts)
    if not injective:
        raise ValueError(f"basis {c.describe()} does not embed in the plane lattice")
    return TripodProfile(legs, pts, injective)


@dataclass
class GeneratorShape:
    generators: list[Exponent]
    shapes: list[str]
    conforming: bool
    problems: list[str]


def _shape(e: Exponent) -> str:
    support = [VARIABLES[i] for i, x in enumerate(e) if x]
    if len(support) == 1:
        return support[0]
    if len(support) == 2:
        return "".join(support)
    if e == (1, 1, 1):
        return "xyz"
    return "other"


def nakamura_generator_shape(c: GCluster) -> GeneratorShape:
    """Check the minimal generators against the seven monomial shapes.

    Allowed: one pure power per variable, at most one generator supported on
    each coordinate pair (both exponents positive), and xyz itself.
    """
    if c.staircase.n != 3:
        raise ValueError("generator shapes are defined for n = 3")
    gens = c.staircase.generators
    shapes = [_shape(g) for g in gens]
    problems = []
    for s in sorted(set(shapes)):
        k = shapes.count(s)
        if s == "other":
            problems.append("generator outside the allowed shapes: " + ", ".join(
                monomial_text(g) for g, t in zip(gens, shapes) if t == "other"))
        elif k > 1:
            problems.append(f"{k} generators of shape {s}")
    if len(gens) > 7:
        problems.append(f"{len(gens)} generators")
    return GeneratorShape(gens, shapes, not problems, problems)
