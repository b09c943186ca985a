"""Corpus verification and the numbered acceptance criteria."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .ages import age_census, class_profiles, discrepancy_of_class, junior_classes
from .arcs import MonomialDivisorChart, closed_form, motivic_integral_truncated, series_compare
from .clusters import enumerate_torus_fixed_clusters, nakamura_generator_shape, verify_regular_representation
from .exact import CyclotomicNumber, MotiveExpr, motive_eval_at_one, motive_to_text
from .groups import (
    FiniteMatrixGroup,
    WeightVector,
    binary_dihedral,
    commuting_pairs_count,
    cyclic_group,
    element_fraction_point,
    subgroup_lattice,
)
from .invariants import (
    binary_dihedral_invariants,
    binary_dihedral_relation,
    check_relation,
    generator_indices,
    is_invariant,
)
from .reptheory import (
    ClassFunction,
    character_table,
    class_function_from_words,
    defining_character,
    dynkin_recognize,
    mckay_quiver,
    tensor_decompose,
)
from .specfile import GroupSpec, SpecError, load_group_spec, parse_motive
from .stringy import orbifold_euler, orbifold_euler_strata, stringy_census, stringy_from_fan, stringy_from_group
from .toric import (
    OrbifoldLattice,
    chain_self_intersections,
    crepant_fan,
    crepant_triangulate_3d,
    fan_from_triangulation,
    junior_simplex_points,
    orthant_fan,
    star_subdivide,
)

SPEC_SUFFIX = ".spec"
CLUSTER_CHECK_LIMIT = 60


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class CorpusEntry:
    path: str
    spec: GroupSpec
    group: FiniteMatrixGroup

    @property
    def label(self) -> str:
        return self.spec.name or Path(self.path).stem


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    p = Path(path)
    files = sorted(p.glob(f"*{SPEC_SUFFIX}")) if p.is_dir() else [p]
    if not p.exists():
        raise SpecError("corpus path does not exist", source=str(p))
    out = []
    for f in files:
        spec = load_group_spec(f)
        out.append(CorpusEntry(str(f), spec, spec.build()))
    return out


def is_special_linear(G: FiniteMatrixGroup) -> bool:
    return all(p.age * p.r == sum(p.exponents) for p in class_profiles(G))


# ---------------------------------------------------------------------------
# per-entry goldens and consistency


def _census_text(c: dict[int, int]) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(c.items()))


def _compare(name: str, expected: str, got: str) -> Check:
    if expected == got:
        return Check(name, True, got)
    return Check(name, False, f"expected {expected!r}, got {got!r}")


def golden_checks(e: CorpusEntry) -> list[Check]:
    G = e.group
    out = []
    for key, expected in sorted(e.spec.expect.items()):
        name = f"{e.label} golden {key}"
        try:
            if key == "order":
                out.append(_compare(name, expected, str(G.order)))
            elif key == "classes":
                out.append(_compare(name, expected, str(len(G.classes))))
            elif key == "census":
                want = " ".join(sorted(expected.split(), key=lambda s: int(s.split(":")[0])))
                out.append(_compare(name, want, _census_text(age_census(G))))
            elif key == "junior":
                out.append(_compare(name, expected, str(len(junior_classes(G)))))
            elif key == "stringy":
                got = stringy_from_group(G).motive if G.is_abelian_diagonal else stringy_census(G).motive
                ok = parse_motive(expected) == got
                out.append(Check(name, ok, motive_to_text(got) if ok else
                                 f"expected {expected!r}, got {motive_to_text(got)!r}"))
            elif key == "euler":
                out.append(_compare(name, str(Fraction(expected)), str(orbifold_euler(G))))
            elif key == "dynkin":
                out.append(_compare(name, expected, dynkin_recognize(mckay_quiver(G))))
            elif key == "clusters":
                out.append(_compare(name, expected, str(len(enumerate_torus_fixed_clusters(G)))))
            elif key == "subgroups":
                out.append(_compare(name, expected, str(len(subgroup_lattice(G)))))
            elif key == "chain":
                out.append(_compare(name, " ".join(expected.split()),
                                    " ".join(map(str, chain_self_intersections(G)))))
            else:
                out.append(Check(name, False, f"unknown golden key (line {e.spec.expect_lines[key]})"))
        except (ValueError, ArithmeticError) as exc:
            out.append(Check(name, False, f"{type(exc).__name__}: {exc}"))
    return out


def consistency_checks(e: CorpusEntry) -> list[Check]:
    G = e.group
    label = e.label
    out = []
    sizes = [c.size for c in G.classes]
    out.append(Check(f"{label} class equation", sum(sizes) == G.order and all(G.order % s == 0 for s in sizes)))
    cp = commuting_pairs_count(G)
    out.append(Check(f"{label} commuting pairs = |G| * classes", cp == G.order * len(G.classes), str(cp)))
    out.append(Check(f"{label} orbifold Euler = classes", orbifold_euler(G) == len(G.classes)))
    census = stringy_census(G)
    out.append(Check(f"{label} census motive at L = 1 = orbifold Euler", census.euler == orbifold_euler(G),
                     motive_to_text(census.motive)))
    if G.is_abelian_diagonal:
        out.append(Check(f"{label} strata Euler", orbifold_euler_strata(G) == len(G.classes)))
        h = stringy_from_group(G).motive
        out.append(Check(f"{label} group route = census", h == stringy_census(G).motive, motive_to_text(h)))
        if G.n in (2, 3) and G.order > 1 and is_special_linear(G):
            strategies = ("deterministic", "alternate") if G.n == 3 else ("deterministic",)
            for s in strategies:
                f = stringy_from_fan(crepant_fan(G, s)).motive
                out.append(Check(f"{label} fan({s}) = group", f == h, motive_to_text(f)))
            if G.order <= CLUSTER_CHECK_LIMIT:
                cs = enumerate_torus_fixed_clusters(G)
                ok = len(cs) == G.order and all(verify_regular_representation(c.basis, G) for c in cs)
                out.append(Check(f"{label} cluster count = |G|", ok, str(len(cs))))
    elif G.n == 2:
        lab = dynkin_recognize(mckay_quiver(G))
        out.append(Check(f"{label} McKay graph is extended Dynkin", lab != "other", lab))
    return out


def verify_corpus(entries: list[CorpusEntry]) -> list[Check]:
    if not entries:
        warnings.warn("empty corpus: nothing to verify", stacklevel=2)
        return []
    out = []
    for e in entries:
        out.extend(golden_checks(e))
        out.extend(consistency_checks(e))
    return out


# ---------------------------------------------------------------------------
# acceptance criteria


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}: {self.title}"


def _result(number: int, title: str, checks: list[Check], extra: list[str] | None = None) -> CriterionResult:
    details = [c.line() for c in checks if not c.passed] + (extra or [])
    return CriterionResult(number, title, all(c.passed for c in checks) and bool(checks), details)


def bd_module_character(G: FiniteMatrixGroup, n: int, i: int) -> ClassFunction:
    """Character of V_i: alpha -> diag(e^i, e^-i), beta -> [[0, 1], [(-1)^i, 0]], e = exp(2 pi i / 2n)."""
    m = G.conductor
    z = CyclotomicNumber.zeta(m, m // (2 * n))
    zero = CyclotomicNumber.from_rational(m, 0)
    one = CyclotomicNumber.from_rational(m, 1)
    alpha = ((z**i, zero), (zero, z ** (-i)))
    beta = ((zero, one), (one * (-1) ** i, zero))
    return class_function_from_words(G, [alpha, beta], lambda M: M[0][0] + M[1][1])


def criterion_1() -> CriterionResult:
    checks = []
    for n in (2, 3, 4, 5):
        G = binary_dihedral(n)
        table = character_table(G)
        q = mckay_quiver(G, table)
        lab = dynkin_recognize(q)
        checks.append(Check(f"BD{4 * n} McKay graph", lab == f"~D{n + 2}" and len(q.degrees) == n + 3, lab))
        Q = bd_module_character(G, n, 1)
        if Q.values != defining_character(G).values:
            checks.append(Check(f"BD{4 * n} Q = V_1", False))
        triv = table.rows[0]
        for i in range(1, n):
            lhs = tensor_decompose(bd_module_character(G, n, i), Q, table)
            a = tensor_decompose(bd_module_character(G, n, i - 1), triv, table)
            b = tensor_decompose(bd_module_character(G, n, i + 1), triv, table)
            rhs = [x + y for x, y in zip(a, b)]
            checks.append(Check(f"BD{4 * n} V_{i} x Q = V_{i - 1} + V_{i + 1}", lhs == rhs, f"{lhs} vs {rhs}"))
    return _result(1, "McKay graph of BD_4n is ~D_(n+2) and the tensor rule holds", checks)


def criterion_2() -> CriterionResult:
    checks = []
    for n in range(1, 7):
        inv = binary_dihedral_invariants(n)
        checks.append(Check(f"n={n} relation", check_relation(binary_dihedral_relation(n), inv)))
        G = binary_dihedral(n)
        for gi in generator_indices(G):
            for name, p in inv.items():
                checks.append(Check(f"n={n} {name} invariant under generator {gi}", is_invariant(p, G, [gi])))
    return _result(2, "BD invariants x, y, z and the D_(n+2) relation", checks)


def sl3_abelian(corpus: list[CorpusEntry], max_order: int = 60) -> list[CorpusEntry]:
    return [
        e for e in corpus
        if e.group.is_abelian_diagonal and e.group.n == 3 and 1 < e.group.order <= max_order
        and is_special_linear(e.group)
    ]


def criterion_3(corpus: list[CorpusEntry]) -> CriterionResult:
    groups = sl3_abelian(corpus)
    checks = [Check("corpus has >= 20 abelian SL(3) groups", len(groups) >= 20, str(len(groups)))]
    for e in groups:
        G = e.group
        pts = junior_simplex_points(G)
        junior = junior_classes(G)
        checks.append(Check(f"{e.label} junior points = junior classes", len(pts) - G.n == len(junior)))
        point_set = {p.v for p in pts}
        lat = OrbifoldLattice(G)
        for c in junior:
            v = element_fraction_point(G.elements[c.representative])
            checks.append(Check(f"{e.label} junior class {c.representative} has its point",
                                v in point_set and lat.is_primitive(v)))
        fan = crepant_fan(G)
        bad = [i for i in range(len(fan.rays)) if sum(fan.rays[i]) - 1 != 0]
        checks.append(Check(f"{e.label} crepant rays have discrepancy 0", not bad, str(bad)))
        for i in range(1, G.order):
            v = element_fraction_point(G.elements[i])
            checks.append(Check(f"{e.label} element {i} age - 1 = ray discrepancy",
                                discrepancy_of_class(G, i) == sum(v) - 1))
    return _result(3, "junior classes are the crepant divisors (age - 1 = discrepancy)", checks)


def criterion_4(corpus: list[CorpusEntry]) -> CriterionResult:
    checks = []
    matrix = [e for e in corpus if not e.group.is_abelian_diagonal]
    checks.append(Check("corpus has non-abelian groups", bool(matrix), str(len(matrix))))
    checks.append(Check("corpus has the quaternion group",
                        any(e.group.order == 8 and not e.group.is_commutative() for e in matrix)))
    for e in corpus:
        G = e.group
        k = len(G.classes)
        checks.append(Check(f"{e.label} e(M, G) = classes", orbifold_euler(G) == k, f"{orbifold_euler(G)} vs {k}"))
        if G.is_abelian_diagonal:
            checks.append(Check(f"{e.label} strata Euler", orbifold_euler_strata(G) == k))
    return _result(4, "orbifold Euler number = number of conjugacy classes", checks)


def criterion_5(corpus: list[CorpusEntry]) -> CriterionResult:
    checks = []
    differing = 0
    for e in sl3_abelian(corpus):
        G = e.group
        h = stringy_from_group(G)
        t1 = crepant_triangulate_3d(G, "deterministic")
        t2 = crepant_triangulate_3d(G, "alternate")
        differing += t1.key() != t2.key()
        for t, name in ((t1, "deterministic"), (t2, "alternate")):
            f = stringy_from_fan(fan_from_triangulation(t))
            checks.append(Check(f"{e.label} fan({name}) = group", f.motive == h.motive,
                                f"{motive_to_text(f.motive)} vs {motive_to_text(h.motive)}"))
        checks.append(Check(f"{e.label} euler at L = 1", h.euler == orbifold_euler(G) == len(G.classes)))
    checks.append(Check("strategies differ on >= 5 groups", differing >= 5, str(differing)))
    G = cyclic_group(7, (1, 2, 4))
    golden = MotiveExpr.L(3) + 3 * MotiveExpr.L(2) + 3 * MotiveExpr.L(1)
    checks.append(Check("1/7(1,2,4) golden", stringy_from_group(G).motive == golden
                        and stringy_from_fan(crepant_fan(G)).motive == golden))
    return _result(5, "stringy motive: fan route = group route", checks)


def single_blowup_family(a: int, b: int) -> tuple[MotiveExpr, MotiveExpr, MotiveExpr]:
    """(fan stringy motive, group stringy motive, exceptional contribution) for 1/b(1,...,1), n = ab."""
    n = a * b
    G = cyclic_group(b, (1,) * n)
    v = tuple(Fraction(1, b) for _ in range(n))
    fan = star_subdivide(orthant_fan(G), v)
    h = stringy_from_fan(fan).motive
    L = MotiveExpr.L(1)
    exceptional = h - (L**n - 1)
    return h, stringy_from_group(G).motive, exceptional


def criterion_6() -> CriterionResult:
    checks = []
    for a, b in ((1, 2), (1, 3), (2, 2), (3, 2), (2, 3)):
        n = a * b
        h, hg, ex = single_blowup_family(a, b)
        want = sum((MotiveExpr.L(n - a * k) for k in range(b)), MotiveExpr.const(0))
        want_ex = sum((MotiveExpr.L(a * k) for k in range(b)), MotiveExpr.const(0))
        checks.append(Check(f"(a,b)=({a},{b}) stringy", h == want and hg == want, motive_to_text(h)))
        checks.append(Check(f"(a,b)=({a},{b}) exceptional classes", ex == want_ex, motive_to_text(ex)))
    return _result(6, "1/b(1,...,1): b stringy classes in dimensions 0, 2a, ..., 2a(b-1)", checks)


def birational_pairs(corpus: list[CorpusEntry], limit: int = 12):
    """(label, fan, v) triples: cone-sum points of crepant fans, then a second subdivision."""
    out = []
    for e in sl3_abelian(corpus, 30):
        fan = crepant_fan(e.group)
        c = fan.cones[0]
        v_point = tuple(sum(x) for x in zip(*(fan.rays[i] for i in c)))
        v_edge = tuple(x + y for x, y in zip(fan.rays[c[0]], fan.rays[c[1]]))
        out.append((e.label, fan, v_point))
        out.append((e.label, fan, v_edge))
        if len(out) >= limit:
            break
    return out


def criterion_7(corpus: list[CorpusEntry]) -> CriterionResult:
    checks = []
    count = 0
    for label, fan, v in birational_pairs(corpus):
        h0 = stringy_from_fan(fan).motive
        f1 = star_subdivide(fan, v)
        h1 = stringy_from_fan(f1).motive
        count += 1
        checks.append(Check(f"{label} subdivide at {tuple(map(str, v))}", h1 == h0))
        # subdivide the subdivided fan at a new cone sum
        new = len(f1.rays) - 1
        c = next(c for c in f1.cones if new in c)
        w = tuple(sum(x) for x in zip(*(f1.rays[i] for i in c)))
        h2 = stringy_from_fan(star_subdivide(f1, w)).motive
        count += 1
        checks.append(Check(f"{label} second subdivision at {tuple(map(str, w))}", h2 == h0))
    checks.append(Check(">= 10 subdivisions", count >= 10, str(count)))
    return _result(7, "stringy motive is invariant under star subdivision", checks)


def criterion_8(depth: int = 10, s_max: int = 12) -> CriterionResult:
    checks = []
    for n, a in ((1, 1), (2, 1), (2, 2), (3, 2), (2, 0)):
        chart = MonomialDivisorChart(n, (1,) + (0,) * (n - 1))
        rep = series_compare(closed_form(chart, (a,)), motivic_integral_truncated(chart, (a,), s_max), depth)
        checks.append(Check(f"n={n} a={a}", rep.agree, str(rep)))
    chart = MonomialDivisorChart(2, (1, 1))
    rep = series_compare(closed_form(chart, (1, 2)), motivic_integral_truncated(chart, (1, 2), s_max), depth)
    checks.append(Check("normal crossing a=(1,2)", rep.agree, str(rep)))
    return _result(8, "truncated motivic integral = strata closed form to depth 10", checks)


def criterion_9() -> CriterionResult:
    checks = []
    for r, a in ((5, (1, 4, 2, 3)), (7, (1, 6, 3, 4))):
        G = cyclic_group(r, a)
        checks.append(Check(f"1/{r}{a} no junior classes", len(junior_classes(G)) == 0
                            and len(junior_simplex_points(G)) == G.n))
    return _result(9, "terminal quotients have no junior elements", checks)


def criterion_10(corpus: list[CorpusEntry]) -> CriterionResult:
    checks = []
    groups = sl3_abelian(corpus, 30)
    checks.append(Check(">= 8 SL(3) groups with |G| <= 30", len(groups) >= 8, str(len(groups))))
    seven = WeightVector(7, (1, 2, 4))
    checks.append(Check("1/7(1,2,4) included", any(e.group.order == 7 and seven in e.group.elements for e in groups)))
    targets = [(e.label, e.group) for e in groups]
    targets += [(f"1/{r}(1,{r - 1})", cyclic_group(r, (1, r - 1))) for r in range(2, 31)]
    for label, G in targets:
        cs = enumerate_torus_fixed_clusters(G)
        checks.append(Check(f"{label} count", len(cs) == G.order, f"{len(cs)} vs {G.order}"))
        for c in cs:
            reg = verify_regular_representation(c.basis, G)
            if not reg:
                checks.append(Check(f"{label} {c.describe()} regular", False, "; ".join(reg.certificate)))
            if G.n == 3:
                sh = nakamura_generator_shape(c)
                if not sh.conforming:
                    checks.append(Check(f"{label} {c.describe()} shape", False, "; ".join(sh.problems)))
    return _result(10, "torus-fixed G-cluster count = |G|", checks)


def criterion_11() -> CriterionResult:
    checks = []
    for r in range(2, 11):
        got = chain_self_intersections(cyclic_group(r, (1, r - 1)))
        checks.append(Check(f"r={r}", got == [-2] * (r - 1), str(got)))
    return _result(11, "1/r(1,r-1) resolves by a chain of -2 curves", checks)


def run_acceptance(corpus: list[CorpusEntry]) -> list[CriterionResult]:
    return [
        criterion_1(),
        criterion_2(),
        criterion_3(corpus),
        criterion_4(corpus),
        criterion_5(corpus),
        criterion_6(),
        criterion_7(corpus),
        criterion_8(),
        criterion_9(),
        criterion_10(corpus),
        criterion_11(),
    ]
