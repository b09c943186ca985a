"""Command-line front end.

Exit codes: 0 success, 1 computation mismatch or internal inconsistency,
2 input error. Structured output is JSON with ``"schema": "mckay/1"``.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .ages import age_census, class_profiles
from .arcs import (
    DEFAULT_S_MAX,
    MonomialDivisorChart,
    closed_form,
    measure_of_order_level,
    motivic_integral_truncated,
    series_compare,
)
from .clusters import (
    DEFAULT_CLUSTER_BOUND,
    enumerate_torus_fixed_clusters,
    monomial_text,
    nakamura_generator_shape,
    tripod_profile,
    verify_regular_representation,
)
from .exact import MotiveExpr, motive_to_text
from .groups import FiniteMatrixGroup, GroupError, invariant_factors, subgroup_lattice
from .invariants import check_relation, group_variables, is_invariant
from .reptheory import dynkin_recognize, mckay_quiver, quiver_to_dot
from .specfile import SpecError, load_group_spec, parse_polynomial
from .stringy import (
    StringyResult,
    orbifold_euler,
    orbifold_euler_strata,
    stringy_census,
    stringy_from_fan,
    stringy_from_group,
)
from .toric import (
    NotAResolution,
    corner_chop,
    crepant_fan,
    crepant_triangulate_3d,
    junior_simplex_points,
    orthant_fan,
    star_subdivide,
    toric_strata_classes,
    triangulation_svg,
)

SCHEMA = "mckay/1"
FORMATS = {
    "group-info": ("text", "structured"),
    "ages": ("text", "structured"),
    "mckay": ("text", "structured", "dot"),
    "toric": ("text", "structured", "svg"),
    "stringy": ("text", "structured"),
    "arcs": ("text", "structured"),
    "ghilb": ("text", "structured"),
    "invariants": ("text", "structured"),
    "verify": ("text", "structured"),
}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    format: str = "text"
    output: str | None = None
    strategy: str = "deterministic"
    route: str = "both"
    depth: int = 10
    s_max: int = DEFAULT_S_MAX
    cluster_bound: int = DEFAULT_CLUSTER_BOUND
    closure_bound: int = 10000
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        allowed = FORMATS[self.command]
        if self.format not in allowed:
            raise InputError(f"{self.command} supports formats {', '.join(allowed)}, not {self.format!r}")
        if self.depth < 0 or self.s_max < 0:
            raise InputError("depth and s-max must be nonnegative")


# ---------------------------------------------------------------------------
# helpers


def _group(cfg: RunConfig) -> FiniteMatrixGroup:
    if not cfg.spec:
        raise InputError("a group spec file is required")
    return load_group_spec(cfg.spec).build(cfg.closure_bound)


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _motive(x: MotiveExpr | None) -> str | None:
    return None if x is None else motive_to_text(x)


def _structured(command: str, result: dict) -> str:
    return json.dumps({"schema": SCHEMA, "command": command, "result": result}, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands; each returns (payload dict, text, exit code)


def cmd_group_info(cfg: RunConfig):
    G = _group(cfg)
    res = {
        "name": G.name,
        "kind": G.kind,
        "n": G.n,
        "conductor": G.conductor,
        "order": G.order,
        "classes": len(G.classes),
        "class_sizes": [c.size for c in G.classes],
        "age_census": {str(k): v for k, v in age_census(G).items()},
    }
    try:
        res["subgroups"] = len(subgroup_lattice(G))
    except GroupError as e:
        res["subgroups"] = None
        res["subgroups_note"] = str(e)
    if G.is_abelian_diagonal:
        res["invariant_factors"] = invariant_factors(G)
    lines = [
        f"group {G.name or '(unnamed)'}: {G.kind}, n = {G.n}, conductor {G.conductor}",
        f"order {G.order}",
        f"classes {len(G.classes)}",
        f"subgroups {res['subgroups'] if res['subgroups'] is not None else 'not computed'}",
        "age census " + " ".join(f"{k}:{v}" for k, v in age_census(G).items()),
    ]
    if "invariant_factors" in res:
        lines.append("invariant factors " + " ".join(map(str, res["invariant_factors"])))
    return res, "\n".join(lines) + "\n", 0


def cmd_ages(cfg: RunConfig):
    G = _group(cfg)
    rows = []
    lines = ["class  rep  order  exponents  age  fixed-dim"]
    for c, p in zip(G.classes, class_profiles(G)):
        rows.append({
            "class": p.class_index, "representative": c.representative, "size": c.size, "order": p.r,
            "exponents": list(p.exponents), "age": p.age, "fixed_dimension": p.fixed_dimension,
            "junior": p.junior,
        })
        exps = "(" + ",".join(map(str, p.exponents)) + ")"
        lines.append(f"{p.class_index:5d}  {c.representative:3d}  {p.r:5d}  1/{p.r}{exps}  {p.age:3d}  {p.fixed_dimension:9d}"
                     + ("  junior" if p.junior else ""))
    census = age_census(G)
    lines.append("census " + " ".join(f"{k}:{v}" for k, v in census.items()))
    return {"classes": rows, "census": {str(k): v for k, v in census.items()}}, "\n".join(lines) + "\n", 0


def cmd_mckay(cfg: RunConfig):
    G = _group(cfg)
    q = mckay_quiver(G)
    label = dynkin_recognize(q)
    dot = quiver_to_dot(q, cfg.options.get("parallel_edges", False))
    res = {"degrees": q.degrees, "adjacency": q.adjacency, "label": label, "symmetric": q.symmetric, "dot": dot}
    if cfg.format == "dot":
        return res, dot, 0
    text = f"label {label}\ndegrees {' '.join(map(str, q.degrees))}\n" + dot
    return res, text, 0


def _parse_point(text: str, n: int) -> tuple[Fraction, ...]:
    try:
        v = tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse point {text!r}") from None
    if len(v) != n:
        raise InputError(f"point {text!r} has {len(v)} coordinates, expected {n}")
    return v


def cmd_toric(cfg: RunConfig):
    G = _group(cfg)
    if not G.is_abelian_diagonal:
        raise InputError("toric needs an abelian diagonal group")
    res: dict = {"junior_points": [[_q(x) for x in p.v] for p in junior_simplex_points(G)]}
    lines = ["junior simplex points:"] + [f"  {p}" for p in junior_simplex_points(G)]
    if cfg.format == "svg":
        if G.n != 3:
            raise InputError("svg output needs n = 3")
        return res, triangulation_svg(crepant_triangulate_3d(G, cfg.strategy)), 0
    if G.n in (2, 3):
        fan = crepant_fan(G, cfg.strategy)
    else:
        fan = orthant_fan(G)
    cc = None
    if G.n >= 4 and len(res["junior_points"]) > G.n:
        try:
            cc = corner_chop(G)
        except ValueError as e:
            lines.append(f"corner chop not applicable: {e}")
    if cc is not None:
        res["corner_chop"] = {
            "corner_volumes": [_q(v) for v in cc.corner_volumes], "central_vertices": list(cc.central),
            "central_volume": _q(cc.central_volume), "terminal": cc.terminal, "smooth": cc.smooth,
        }
        lines.append(f"no crepant search for n = {G.n}; corner chop: corner volumes "
                     f"{' '.join(map(_q, cc.corner_volumes))}, central cell volume {_q(cc.central_volume)}, "
                     f"terminal {cc.terminal}, smooth {cc.smooth}")
    for pt in cfg.options.get("subdivide", []):
        fan = star_subdivide(fan, _parse_point(pt, G.n))
    res["fan"] = fan.to_dict()
    lines.append(fan.to_text().rstrip())
    if fan.is_smooth():
        strata = toric_strata_classes(fan)
        res["strata"] = {",".join(map(str, sorted(J))) or "-": motive_to_text(x) for J, x in
                         sorted(strata.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))}
        lines.append("strata:")
        lines += [f"  {{{k if k != '-' else ''}}}: {v}" for k, v in res["strata"].items()]
    return res, "\n".join(lines) + "\n", 0


def _route_result(G: FiniteMatrixGroup, route: str, cfg: RunConfig) -> StringyResult:
    if route == "fan":
        if G.n not in (2, 3):
            raise NotAResolution(f"no crepant resolution is constructed for n = {G.n}")
        return stringy_from_fan(crepant_fan(G, cfg.strategy))
    if route == "group":
        return stringy_from_group(G)
    return stringy_census(G)


def cmd_stringy(cfg: RunConfig):
    G = _group(cfg)
    routes = {"fan": ["fan"], "group": ["group"], "both": ["fan", "group", "census"]}[cfg.route]
    results: dict[str, StringyResult | str] = {}
    for r in routes:
        try:
            results[r] = _route_result(G, r, cfg)
        except (NotAResolution, GroupError) as e:
            if cfg.route != "both":
                raise InputError(f"{r} route unavailable: {e}") from None
            results[r] = f"unavailable: {e}"
    euler = orbifold_euler(G)
    res: dict = {"group": G.name, "routes": {}, "euler_commuting_pairs": _q(euler)}
    lines = [f"group {G.name or '(unnamed)'}"]
    motives = {}
    for r, v in results.items():
        if isinstance(v, str):
            res["routes"][r] = {"status": v}
            lines.append(f"{r:7s} {v}")
            continue
        motives[r] = v.motive
        poly = v.motive.is_polynomial()
        res["routes"][r] = {"motive": _motive(v.motive), "euler": _q(v.euler), "polynomial": poly}
        lines.append(f"{r:7s} {_motive(v.motive)}  (euler {_q(v.euler)}{'' if poly else ', not polynomial'})")
    lines.append(f"orbifold euler (commuting pairs) {_q(euler)}")
    if G.is_abelian_diagonal:
        es = orbifold_euler_strata(G)
        res["euler_strata"] = _q(es)
        lines.append(f"orbifold euler (strata) {_q(es)}")
    matrix = {}
    names = sorted(motives)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            ok = motives[a] == motives[b]
            matrix[f"{a}={b}"] = ok
            lines.append(f"{'PASS' if ok else 'FAIL'} {a} = {b}")
    for r, v in results.items():
        if not isinstance(v, str):
            ok = v.euler == euler
            matrix[f"{r}@1=euler"] = ok
            lines.append(f"{'PASS' if ok else 'FAIL'} {r} at L=1 = orbifold euler")
    res["cross_check"] = matrix
    code = 0 if all(matrix.values()) else 1
    return res, "\n".join(lines) + "\n", code


def _int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def cmd_arcs(cfg: RunConfig):
    o = cfg.options
    m = _int_list(o["m"], "--m")
    n = o.get("n") or len(m)
    try:
        chart = MonomialDivisorChart(n, m)
        a = _int_list(o["a"], "--a") if o.get("a") else (1,) * len(chart.components)
        D = chart.weighted(a)
    except ValueError as e:
        raise InputError(str(e)) from None
    levels = [measure_of_order_level(D, s) for s in range(cfg.s_max + 1)]
    partial = motivic_integral_truncated(chart, a, cfg.s_max)
    closed = closed_form(chart, a)
    rep = series_compare(closed, partial, cfg.depth)
    res = {
        "chart": {"n": n, "m": list(m), "a": list(a)},
        "levels": [motive_to_text(x) for x in levels],
        "partial_sum": motive_to_text(partial),
        "closed_form": motive_to_text(closed),
        "agree": rep.agree,
        "depth": cfg.depth,
        "first_disagreement": rep.first_disagreement,
    }
    lines = [f"chart n={n} m={list(m)} a={list(a)}"]
    lines += [f"level {s}: {t}" for s, t in enumerate(res["levels"])]
    lines += [f"partial sum (s <= {cfg.s_max}): {res['partial_sum']}", f"closed form: {res['closed_form']}", str(rep)]
    return res, "\n".join(lines) + "\n", 0 if rep.agree else 1


def cmd_ghilb(cfg: RunConfig):
    G = _group(cfg)
    try:
        cs = enumerate_torus_fixed_clusters(G, cfg.cluster_bound)
    except GroupError as e:
        raise InputError(str(e)) from None
    items = []
    lines = [f"{len(cs)} torus-fixed clusters (|G| = {G.order})"]
    all_ok = True
    for k, c in enumerate(cs):
        reg = verify_regular_representation(c.basis, G)
        item = {"basis": [monomial_text(e) for e in c.basis],
                "generators": [monomial_text(e) for e in c.staircase.generators],
                "regular": reg.ok, "certificate": reg.certificate}
        lines.append(f"cluster {k}: {c.describe()}  ideal <{', '.join(item['generators'])}>"
                     f"  regular {reg.ok}")
        all_ok &= reg.ok
        if G.n == 2:
            lines.append(c.staircase.text_art())
        elif G.n == 3:
            tp = tripod_profile(c)
            sh = nakamura_generator_shape(c)
            item.update({"tripod_legs": list(tp.legs), "tripod_points": [list(p) for p in tp.points],
                         "shapes": sh.shapes, "shape_conforming": sh.conforming, "shape_problems": sh.problems})
            lines.append(f"  tripod legs {tp.legs} points {tp.points}")
            lines.append(f"  shapes {' '.join(sh.shapes)} conforming {sh.conforming}")
            all_ok &= sh.conforming
        items.append(item)
    res = {"count": len(cs), "order": G.order, "clusters": items}
    return res, "\n".join(lines) + "\n", 0 if all_ok else 1


def cmd_invariants(cfg: RunConfig):
    o = cfg.options
    res: dict = {"invariance": [], "relations": []}
    lines = []
    if o.get("poly"):
        G = _group(cfg)
        vars_ = group_variables(G.n)
        for text in o["poly"]:
            try:
                p = parse_polynomial(text, vars_, conductor=G.conductor)
            except SpecError as e:
                raise InputError(str(e)) from None
            ok = is_invariant(p, G)
            res["invariance"].append({"poly": text, "invariant": ok})
            lines.append(f"{text}: {'invariant' if ok else 'not invariant'}")
    if o.get("relation"):
        binds = {}
        for b in o.get("bind", []):
            if "=" not in b:
                raise InputError(f"--bind needs name=expression, got {b!r}")
            k, v = b.split("=", 1)
            binds[k.strip()] = v
        src = tuple(sorted(binds))
        target = tuple(o.get("variables", "u,v").split(","))
        try:
            lhs = parse_polynomial(o["relation"], src)
            bound = {k: parse_polynomial(v, target) for k, v in binds.items()}
        except SpecError as e:
            raise InputError(str(e)) from None
        ok = check_relation(lhs, bound)
        res["relations"].append({"relation": o["relation"], "holds": ok})
        lines.append(f"{o['relation']}: {'holds' if ok else 'does not hold'}")
    if not lines:
        raise InputError("give --poly (with a spec) and/or --relation with --bind")
    return res, "\n".join(lines) + "\n", 0


def cmd_verify(cfg: RunConfig):
    from .verify import load_corpus, run_acceptance, verify_corpus

    if not cfg.spec:
        raise InputError("verify needs a corpus directory or spec file")
    entries = load_corpus(cfg.spec)
    lines = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        checks = verify_corpus(entries)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    lines += [c.line() for c in checks]
    res: dict = {"groups": len(entries), "warnings": [str(w.message) for w in caught], "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                                                    for c in checks]}
    ok = all(c.passed for c in checks)
    if cfg.options.get("acceptance"):
        crit = run_acceptance(entries)
        res["criteria"] = [{"number": c.number, "title": c.title, "passed": c.passed, "details": c.details}
                           for c in crit]
        for c in crit:
            lines.append(c.line())
            lines += [f"    {d}" for d in c.details]
        ok &= all(c.passed for c in crit)
    res["passed"] = ok
    lines.append(f"{'PASS' if ok else 'FAIL'} ({len(entries)} groups, {len(checks)} checks)")
    return res, "\n".join(lines) + "\n", 0 if ok else 1


COMMANDS = {
    "group-info": cmd_group_info,
    "ages": cmd_ages,
    "mckay": cmd_mckay,
    "toric": cmd_toric,
    "stringy": cmd_stringy,
    "arcs": cmd_arcs,
    "ghilb": cmd_ghilb,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mckay", description="Computations around the McKay correspondence.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True, spec_required=True):
        if spec:
            sp.add_argument("spec", nargs=None if spec_required else "?", help="group spec file")
        sp.add_argument("--format", default="text")
        sp.add_argument("-o", "--output", help="write output here instead of stdout")
        sp.add_argument("--closure-bound", type=int, default=10000)
        return sp

    common(sub.add_parser("group-info", help="order, classes, subgroups, age census"))
    common(sub.add_parser("ages", help="age of every conjugacy class"))
    sp = common(sub.add_parser("mckay", help="McKay quiver as DOT with its Dynkin label"))
    sp.add_argument("--parallel-edges", action="store_true")
    sp = common(sub.add_parser("toric", help="junior simplex, crepant fan, strata classes"))
    sp.add_argument("--strategy", choices=("deterministic", "alternate"), default="deterministic")
    sp.add_argument("--subdivide", action="append", default=[], metavar="P", help="star-subdivide at p1,...,pn")
    sp = common(sub.add_parser("stringy", help="stringy motive by several routes, cross-checked"))
    sp.add_argument("--route", choices=("fan", "group", "both"), default="both")
    sp.add_argument("--strategy", choices=("deterministic", "alternate"), default="deterministic")
    sp = common(sub.add_parser("arcs", help="arc-space measures on a monomial chart"), spec=False)
    sp.add_argument("--n", type=int, help="dimension (default: number of multiplicities)")
    sp.add_argument("--m", required=True, help="multiplicities m1,...,mn")
    sp.add_argument("--a", help="discrepancy weight per component (default all 1)")
    sp.add_argument("--depth", type=int, default=10)
    sp.add_argument("--s-max", type=int, default=DEFAULT_S_MAX)
    sp = common(sub.add_parser("ghilb", help="torus-fixed G-clusters"))
    sp.add_argument("--bound", type=int, default=DEFAULT_CLUSTER_BOUND)
    sp = common(sub.add_parser("invariants", help="invariance of polynomials and relations"), spec_required=False)
    sp.add_argument("--poly", action="append", default=[], help="polynomial in u, v, ... (zeta = root of unity)")
    sp.add_argument("--relation", help="polynomial in the bound names")
    sp.add_argument("--bind", action="append", default=[], metavar="NAME=EXPR")
    sp.add_argument("--variables", default="u,v", help="variables of the bound expressions")
    sp = common(sub.add_parser("verify", help="check a corpus of group specs"))
    sp.add_argument("--acceptance", action="store_true", help="also run the numbered acceptance criteria")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, spec=getattr(ns, "spec", None), format=ns.format, output=ns.output,
                    closure_bound=ns.closure_bound)
    for name in ("strategy", "route", "depth", "s_max"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "bound"):
        cfg.cluster_bound = ns.bound
    for name in ("parallel_edges", "subdivide", "m", "n", "a", "poly", "relation", "bind", "variables",
                 "acceptance"):
        if hasattr(ns, name):
            cfg.options[name] = getattr(ns, name)
    cfg.validate()
    return cfg


def run(cfg: RunConfig) -> tuple[str, int]:
    res, text, code = COMMANDS[cfg.command](cfg)
    if cfg.format == "structured":
        text = _structured(cfg.command, res)
    return text, code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = config_from_args(ns)
        text, code = run(cfg)
    except (InputError, ValueError, KeyError) as e:
        # SpecError, GroupError and NotAResolution are ValueErrors
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ArithmeticError as e:
        print(f"inconsistency: {e}", file=sys.stderr)
        return 1
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
