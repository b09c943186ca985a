"""Toric resolutions of abelian quotient singularities C^n/G.

Points live in the overlattice N = Z^n + sum Z*g of rational vectors;
cones are simplicial and live in the positive orthant. The junior simplex
is the slice {x >= 0, sum x_i = 1}; its lattice points other than the unit
vectors are exactly the junior elements of G.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Sequence

from .exact import MotiveExpr
from .groups import FiniteMatrixGroup, GroupError, determinant, element_fraction_point
from .ages import weight_age

Vector = tuple  # tuple[Fraction, ...]


class NotAResolution(ValueError):
    """Raised when a fan has a cone that is not basic in N."""


def _require_abelian(G: FiniteMatrixGroup) -> None:
    if not G.is_abelian_diagonal:
        raise GroupError("toric methods need an abelian diagonal group")


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def det(vectors: Sequence[Vector]) -> Fraction:
    return Fraction(determinant(tuple(tuple(Fraction(x) for x in v) for v in vectors)))


# ---------------------------------------------------------------------------
# the lattice


@dataclass
class OrbifoldLattice:
    """N = Z^n + sum Z*(a/r) for the weight vectors of an abelian diagonal group."""

    group: FiniteMatrixGroup = field(repr=False)

    def __post_init__(self):
        _require_abelian(self.group)

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def index(self) -> int:
        return self.group.order

    def contains(self, v: Vector) -> bool:
        N = self.group.conductor
        key = []
        for x in v:
            y = Fraction(x) * N
            if y.denominator != 1:
                return False
            key.append(int(y) % N)
        return tuple(key) in self.group.index

    def basis(self) -> list[Vector]:
        """A Z-basis of N (rows), from the Hermite normal form of the generators."""
        N = self.group.conductor
        n = self.n
        rows = [[N if i == j else 0 for j in range(n)] for i in range(n)]
        rows += [list(g.over(N)) for g in self.group.elements[1:]]
        hnf = _hermite(rows)
        return [tuple(Fraction(x, N) for x in r) for r in hnf]

    def is_primitive(self, v: Vector) -> bool:
        if not self.contains(v):
            return False
        s = sum(v)
        return not any(self.contains(tuple(x / k for x in v)) for k in range(2, floor(s) + 1))


def _hermite(rows: list[list[int]]) -> list[list[int]]:
    rows = [r[:] for r in rows]
    n = len(rows[0])
    out = []
    for c in range(n):
        active = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r2 = [x - q * y for x, y in zip(r, piv)]
                (nxt if r2[c] else rest).append(r2)
            active = nxt
        if active:
            piv = active[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        rows = rest
    return out


@dataclass(frozen=True)
class RayPoint:
    v: Vector

    @property
    def coordinate_sum(self) -> Fraction:
        return sum(self.v, Fraction(0))

    @property
    def discrepancy(self) -> Fraction:
        return self.coordinate_sum - 1

    @property
    def junior(self) -> bool:
        return self.coordinate_sum == 1

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.v) + ")"


def junior_simplex_points(G: FiniteMatrixGroup) -> list[RayPoint]:
    """Unit vectors, then one point a/r per junior element in canonical element order."""
    _require_abelian(G)
    pts = [RayPoint(unit_vector(G.n, i)) for i in range(G.n)]
    for g in G.elements[1:]:
        if weight_age(g) == 1:
            pts.append(RayPoint(element_fraction_point(g)))
    return pts


# ---------------------------------------------------------------------------
# triangulations of the junior triangle (n = 3)


@dataclass
class Triangulation:
    points: list[RayPoint]
    cells: list[tuple[int, ...]]  # sorted index triples
    group_order: int
    strategy: str = "deterministic"

    def edges(self) -> set[tuple[int, int]]:
        return {e for c in self.cells for e in combinations(c, 2)}

    def normalized_volume(self, cell: Sequence[int]) -> Fraction:
        return abs(det([self.points[i].v for i in cell])) * self.group_order

    def is_basic(self) -> bool:
        return all(self.normalized_volume(c) == 1 for c in self.cells)

    def key(self) -> frozenset:
        return frozenset(self.cells)


def _orient(a: Vector, b: Vector, c: Vector) -> int:
    d = det([a, b, c])
    return (d > 0) - (d < 0)


def _placing(points: list[Vector]) -> list[tuple[int, int, int]]:
    cells = [(0, 1, 2)]
    for p in range(3, len(points)):
        P = points[p]
        hits = []
        for cell in cells:
            a, b, c = (points[i] for i in cell)
            s = _orient(a, b, c)
            l = (_orient(P, b, c) * s, _orient(a, P, c) * s, _orient(a, b, P) * s)
            if min(l) >= 0:
                hits.append((cell, l))
        if not hits:
            raise ValueError(f"point {P} outside the junior triangle")
        new = []
        dead = set()
        for cell, l in hits:
            dead.add(cell)
            zeros = [k for k in range(3) if l[k] == 0]
            if not zeros:
                for k in range(3):
                    t = list(cell)
                    t[k] = p
                    new.append(tuple(sorted(t)))
            elif len(zeros) == 1:
                # p on the edge opposite vertex zeros[0]
                opp = cell[zeros[0]]
                ends = [v for v in cell if v != opp]
                for e in ends:
                    new.append(tuple(sorted((opp, e, p))))
            else:
                raise ValueError("duplicate lattice point")
        cells = [c for c in cells if c not in dead] + new
    return sorted(cells)


def _flippable(points: list[Vector], cells: set, edge: tuple[int, int]):
    a, b = edge
    adj = [c for c in cells if a in c and b in c]
    if len(adj) != 2:
        return None
    c = next(v for v in adj[0] if v not in edge)
    d = next(v for v in adj[1] if v not in edge)
    P = points
    if _orient(P[c], P[d], P[a]) * _orient(P[c], P[d], P[b]) >= 0:
        return None
    return adj, c, d


def _flip_pass(points: list[Vector], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    current = set(cells)
    fresh: set[tuple[int, int]] = set()
    edges = sorted({e for c in cells for e in combinations(c, 2)}, reverse=True)
    for e in edges:
        if e in fresh:
            continue
        hit = _flippable(points, current, e)
        if hit is None:
            continue
        adj, c, d = hit
        if any(tuple(sorted(x)) in fresh for cell in adj for x in combinations(cell, 2)):
            continue
        current -= set(adj)
        current |= {tuple(sorted((c, d, e[0]))), tuple(sorted((c, d, e[1])))}
        fresh.add(tuple(sorted((c, d))))
    return sorted(current)


def crepant_triangulate_3d(G: FiniteMatrixGroup, strategy: str = "deterministic") -> Triangulation:
    """Full lattice triangulation of the junior triangle; every cell is basic.

    ``deterministic`` inserts points in canonical order (placing
    triangulation). ``alternate`` follows it with one pass of edge flips in
    reversed edge order, never re-flipping an edge created in the pass.
    """
    _require_abelian(G)
    if G.n != 3:
        raise ValueError(f"crepant_triangulate_3d needs n = 3, got n = {G.n}")
    if strategy not in ("deterministic", "alternate"):
        raise ValueError(f"unknown strategy {strategy!r}")
    pts = junior_simplex_points(G)
    vecs = [p.v for p in pts]
    cells = _placing(vecs)
    if strategy == "alternate":
        cells = _flip_pass(vecs, cells)
    t = Triangulation(pts, cells, G.order, strategy)
    if not t.is_basic() or len(cells) != G.order:
        raise NotAResolution("triangulation is not unimodular")
    return t


# ---------------------------------------------------------------------------
# fans


@dataclass
class SimplicialFan:
    """Simplicial fan in N with full-dimensional maximal cones.

    ``marks`` maps ray index to the integer discrepancy of its divisor.
    """

    n: int
    rays: list[Vector]
    cones: list[tuple[int, ...]]
    group_order: int
    marks: dict[int, int] = field(default_factory=dict)

    def all_cones(self) -> list[tuple[int, ...]]:
        faces = set()
        for c in self.cones:
            for k in range(len(c) + 1):
                faces.update(combinations(c, k))
        return sorted(faces, key=lambda f: (len(f), f))

    def cone_volume(self, cone: Sequence[int]) -> Fraction:
        return abs(det([self.rays[i] for i in cone])) * self.group_order

    def non_basic_cones(self) -> list[tuple[int, ...]]:
        return [c for c in self.cones if len(c) != self.n or self.cone_volume(c) != 1]

    def is_smooth(self) -> bool:
        return not self.non_basic_cones()

    def ray_index(self, v: Vector) -> int | None:
        v = tuple(Fraction(x) for x in v)
        return next((i for i, r in enumerate(self.rays) if r == v), None)

    def exceptional_rays(self) -> list[int]:
        units = {unit_vector(self.n, i) for i in range(self.n)}
        return [i for i, r in enumerate(self.rays) if r not in units]

    def with_marks(self, convention: str = "all") -> "SimplicialFan":
        """Re-mark exceptional rays with discrepancy s(v) - 1.

        ``all`` marks every exceptional ray; ``positive`` only those with
        positive discrepancy.
        """
        marks = {}
        for i in self.exceptional_rays():
            a = sum(self.rays[i]) - 1
            if a.denominator != 1:
                raise ValueError(f"ray {self.rays[i]} has non-integral discrepancy")
            if convention == "all" or a > 0:
                marks[i] = int(a)
        return SimplicialFan(self.n, list(self.rays), list(self.cones), self.group_order, marks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "group_order": self.group_order,
            "rays": [[str(x) for x in r] for r in self.rays],
            "cones": [list(c) for c in self.cones],
            "marks": {str(k): v for k, v in sorted(self.marks.items())},
            "discrepancies": [str(sum(r) - 1) for r in self.rays],
        }

    def to_text(self) -> str:
        lines = [f"fan n={self.n} |G|={self.group_order} smooth={self.is_smooth()}"]
        for i, r in enumerate(self.rays):
            mark = f" mark={self.marks[i]}" if i in self.marks else ""
            lines.append(f"ray {i}: ({', '.join(map(str, r))}) discrepancy={sum(r) - 1}{mark}")
        for c in self.cones:
            lines.append("cone " + " ".join(map(str, c)))
        return "\n".join(lines) + "\n"


def orthant_fan(G: FiniteMatrixGroup) -> SimplicialFan:
    """The single cone over the unit vectors: C^n/G itself."""
    _require_abelian(G)
    rays = [unit_vector(G.n, i) for i in range(G.n)]
    return SimplicialFan(G.n, rays, [tuple(range(G.n))], G.order)


def fan_from_triangulation(t: Triangulation, marking: str = "all") -> SimplicialFan:
    """Cones over the cells; exceptional rays marked with discrepancy s(v) - 1."""
    n = len(t.points[0].v)
    fan = SimplicialFan(n, [p.v for p in t.points], list(t.cells), t.group_order).with_marks(marking)
    bad = fan.non_basic_cones()
    if bad:
        raise NotAResolution(f"not a resolution: non-basic cones {bad}")
    return fan


def resolution_fan_2d(G: FiniteMatrixGroup, marking: str = "all") -> SimplicialFan:
    """Minimal resolution of C^2/G, G cyclic in SL(2): all junior points on the segment."""
    _require_abelian(G)
    if G.n != 2:
        raise ValueError("resolution_fan_2d needs n = 2")
    pts = sorted((p.v for p in junior_simplex_points(G)), key=lambda v: v[0])
    cones = [(i, i + 1) for i in range(len(pts) - 1)]
    fan = SimplicialFan(2, pts, cones, G.order).with_marks(marking)
    if not fan.is_smooth():
        raise NotAResolution("segment subdivision is not basic")
    return fan


def crepant_fan(G: FiniteMatrixGroup, strategy: str = "deterministic", marking: str = "all") -> SimplicialFan:
    if G.n == 2:
        return resolution_fan_2d(G, marking)
    if G.n == 3:
        return fan_from_triangulation(crepant_triangulate_3d(G, strategy), marking)
    raise ValueError(f"no crepant resolution search for n = {G.n}")


def _coordinates_in_cone(fan: SimplicialFan, cone: Sequence[int], v: Vector) -> list[Fraction] | None:
    """Coefficients of v in the rays of a full-dimensional simplicial cone, or None if outside."""
    R = [fan.rays[i] for i in cone]
    d = det(R)
    coeffs = []
    for k in range(len(R)):
        M = list(R)
        M[k] = v
        coeffs.append(det(M) / d)
    if any(c < 0 for c in coeffs):
        return None
    return coeffs


def star_subdivide(fan: SimplicialFan, v: Vector) -> SimplicialFan:
    """Stellar subdivision at lattice point v; the new ray is marked s(v) - 1."""
    v = tuple(Fraction(x) for x in v)
    if fan.ray_index(v) is not None:
        warnings.warn(f"{v} is already a ray; fan unchanged", stacklevel=2)
        return fan
    rays = list(fan.rays) + [v]
    new = len(rays) - 1
    cones = []
    hit = False
    for cone in fan.cones:
        coeffs = _coordinates_in_cone(fan, cone, v)
        if coeffs is None:
            cones.append(cone)
            continue
        hit = True
        for ray, c in zip(cone, coeffs):
            if c > 0:
                cones.append(tuple(sorted([x for x in cone if x != ray] + [new])))
    if not hit:
        raise ValueError(f"{v} is outside the support of the fan")
    a = sum(v) - 1
    if a.denominator != 1:
        raise ValueError(f"{v} has non-integral discrepancy {a}")
    marks = dict(fan.marks)
    marks[new] = int(a)
    return SimplicialFan(fan.n, rays, sorted(cones), fan.group_order, marks)


def toric_strata_classes(fan: SimplicialFan) -> dict[frozenset, MotiveExpr]:
    """Classes [D_J^o] of the open strata cut out by the marked rays.

    Each torus orbit O(sigma) has class (L - 1)^(n - dim sigma) and lies in
    D_J^o with J the marked rays of sigma.
    """
    if not fan.is_smooth():
        raise NotAResolution(f"fan is not smooth: {fan.non_basic_cones()}")
    t = MotiveExpr.L(1) - 1
    out: dict[frozenset, MotiveExpr] = {}
    for cone in fan.all_cones():
        J = frozenset(i for i in cone if i in fan.marks)
        out[J] = out.get(J, MotiveExpr.const(0)) + t ** (fan.n - len(cone))
    return {J: x for J, x in out.items() if x != 0}


def fan_class(fan: SimplicialFan) -> MotiveExpr:
    """[Y] as the sum over cones of (L - 1)^(n - dim)."""
    t = MotiveExpr.L(1) - 1
    total = MotiveExpr.const(0)
    for cone in fan.all_cones():
        total = total + t ** (fan.n - len(cone))
    return total


def chain_self_intersections(G: FiniteMatrixGroup) -> list[int]:
    """Self-intersections of the exceptional curves of the minimal resolution of C^2/G.

    Uses v_{k-1} + v_{k+1} = c_k v_k along the chain of rays; E_k^2 = -c_k.
    """
    _require_abelian(G)
    if G.n != 2:
        raise ValueError("chain_self_intersections needs n = 2")
    r = G.order
    if not any(g.r == r and tuple(sorted(g.a)) == tuple(sorted((1, r - 1))) for g in G.elements) and r > 1:
        raise ValueError("G must be cyclic of type 1/r(1, r-1)")
    fan = resolution_fan_2d(G)
    rays = fan.rays
    out = []
    for k in range(1, len(rays) - 1):
        s = tuple(a + b for a, b in zip(rays[k - 1], rays[k + 1]))
        c = s[0] / rays[k][0]
        if any(x != c * y for x, y in zip(s, rays[k])):
            raise ArithmeticError("consecutive rays are not in a linear relation")
        if c.denominator != 1:
            raise ArithmeticError("non-integral self-intersection")
        out.append(-int(c))
    return out


# ---------------------------------------------------------------------------
# n = 4 diagnostics


@dataclass
class CornerChop:
    corners: list[tuple[int, ...]]
    corner_volumes: list[Fraction]
    central: tuple[int, ...]  # vertices of the remaining cell
    central_volume: Fraction
    central_lattice_points: int  # lattice points of N in the central cell
    terminal: bool
    smooth: bool


def corner_chop(G: FiniteMatrixGroup) -> CornerChop:
    """Cut the corner simplices off the junior simplex at the junior points on its edges.

    Meant for groups whose junior points are edge midpoints, such as the
    maximal exponent-2 diagonal group in SL(4).
    """
    _require_abelian(G)
    pts = [p.v for p in junior_simplex_points(G)]
    n = G.n
    corners = []
    for i in range(n):
        near = [k for k in range(n, len(pts)) if pts[k][i] > 0]
        corners.append(tuple([i] + near))
    if any(len(c) != n for c in corners):
        raise ValueError("corner chop needs exactly n - 1 junior points on the edges at each vertex")
    vols = [abs(det([pts[k] for k in c])) * G.order for c in corners]
    central = tuple(range(n, len(pts)))
    total = Fraction(G.order)  # the junior simplex itself has normalized volume |G|
    central_volume = total - sum(v for v in vols if v > 0)
    inside = 0
    for k in range(len(pts)):
        if k not in central and all(pts[k][i] < 1 for i in range(n)) and k >= n:
            inside += 1
    central_points = len(central) + inside
    return CornerChop(
        corners,
        vols,
        central,
        central_volume,
        central_points,
        terminal=inside == 0,
        smooth=central_volume == 1 and all(v == 1 for v in vols) and len(central) == n,
    )


# ---------------------------------------------------------------------------
# SVG


def triangulation_svg(t: Triangulation, size: int = 400) -> str:
    """The junior triangle with lattice points, ages and triangulation edges."""
    pad = 30
    A = (pad, size - pad)
    B = (size - pad, size - pad)
    C = (size / 2, pad)

    def xy(v: Vector) -> tuple[float, float]:
        x = float(v[0]) * A[0] + float(v[1]) * B[0] + float(v[2]) * C[0]
        y = float(v[0]) * A[1] + float(v[1]) * B[1] + float(v[2]) * C[1]
        return round(x, 3), round(y, 3)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for a, b in sorted(t.edges()):
        (x1, y1), (x2, y2) = xy(t.points[a].v), xy(t.points[b].v)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1"/>')
    for i, p in enumerate(t.points):
        x, y = xy(p.v)
        age = p.coordinate_sum
        fill = "black" if i < 3 else "red"
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{fill}"/>')
        label = ",".join(str(c) for c in p.v)
        out.append(f'<text x="{x + 6}" y="{y - 6}" font-size="10">({label}) age {age}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
