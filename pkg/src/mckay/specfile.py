"""Group specification files and the small polynomial expression grammar.

Expressions: integers, ``p/q`` rationals, variables, ``+ - * /`` (division
only by constants), ``^`` for nonnegative integer powers, parentheses, and a
cyclotomic symbol (``z`` in group specs) meaning exp(2 pi i / conductor).
They are parsed with :mod:`ast` after rewriting ``^`` to ``**``, then
evaluated by a whitelisting walker.

Spec files are ``key: value`` lines; ``#`` starts a comment::

    name: BD8
    kind: matrix            # or abelian-diagonal
    n: 2
    conductor: 4
    generator: [z, 0; 0, z^3]
    generator: [0, 1; -1, 0]
    expect.classes: 5

Diagonal generators are written ``generator: r a1 ... an``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .exact import CyclotomicNumber, MotiveExpr, MultiPoly
from .groups import FiniteMatrixGroup, GroupError, MatrixElement, WeightVector, close_group


class SpecError(ValueError):
    """Malformed input; carries a 1-based line (and column when known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str = ""):
        self.line, self.column, self.source = line, column, source
        where = source
        if line is not None:
            where += f":{line}" if where else f"line {line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}" if where else message)


# ---------------------------------------------------------------------------
# expressions


def _evaluate(text: str, leaf: Callable[[str], object], line: int | None = None, source: str = ""):
    if re.search(r"\*\*", text):
        raise SpecError("use ^ for powers", line, None, source)
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as e:
        raise SpecError(f"cannot parse {text.strip()!r}", line, e.offset, source) from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            try:
                return leaf(node.id)
            except KeyError:
                raise SpecError(f"unknown symbol {node.id!r}", line, node.col_offset + 1, source) from None
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(b, MultiPoly):
                    raise SpecError("division by a polynomial", line, node.col_offset + 1, source)
                return a / b
            if isinstance(node.op, ast.Pow):
                if not (isinstance(b, Fraction) and b.denominator == 1):
                    raise SpecError("exponent must be an integer literal", line, node.col_offset + 1, source)
                if b < 0 and isinstance(a, MultiPoly):
                    raise SpecError("negative power of a polynomial", line, node.col_offset + 1, source)
                return a ** int(b)
        raise SpecError(f"unsupported syntax in {text.strip()!r}", line, getattr(node, "col_offset", 0) + 1, source)

    return walk(tree)


def parse_cyclotomic(text: str, conductor: int, symbol: str = "z", line: int | None = None, source: str = ""):
    def leaf(name):
        if name == symbol:
            return CyclotomicNumber.zeta(conductor)
        raise KeyError(name)

    v = _evaluate(text, leaf, line, source)
    if isinstance(v, Fraction):
        v = CyclotomicNumber.from_rational(conductor, v)
    return v


def parse_polynomial(
    text: str,
    variables: tuple[str, ...],
    conductor: int | None = None,
    symbol: str = "zeta",
    line: int | None = None,
    source: str = "",
) -> MultiPoly:
    def leaf(name):
        if name in variables:
            return MultiPoly.var(variables, name)
        if conductor is not None and name == symbol:
            return CyclotomicNumber.zeta(conductor)
        raise KeyError(name)

    v = _evaluate(text, leaf, line, source)
    if not isinstance(v, MultiPoly):
        v = MultiPoly.const(variables, v)
    return v


def parse_motive(text: str) -> MotiveExpr:
    """Rational functions in L, as printed by ``motive_to_text``."""

    def leaf(name):
        if name == "L":
            return MotiveExpr.L(1)
        raise KeyError(name)

    v = _evaluate(text, leaf)
    return v if isinstance(v, MotiveExpr) else MotiveExpr.const(v)


# ---------------------------------------------------------------------------
# group spec files


@dataclass
class GroupSpec:
    kind: str
    n: int
    conductor: int | None
    generators: list
    name: str = ""
    expect: dict[str, str] = field(default_factory=dict)
    expect_lines: dict[str, int] = field(default_factory=dict)
    source: str = ""

    def build(self, bound: int = 10000) -> FiniteMatrixGroup:
        try:
            return close_group(self.generators, bound=bound, name=self.name)
        except GroupError as e:
            raise SpecError(str(e), source=self.source) from None


_KEYS = {"name", "kind", "n", "conductor", "generator"}


def _parse_matrix(text: str, n: int, m: int, line: int, source: str) -> MatrixElement:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise SpecError("matrix generator must look like [a, b; c, d]", line, None, source)
    rows = [r for r in t[1:-1].split(";")]
    if len(rows) != n:
        raise SpecError(f"matrix has {len(rows)} rows, expected {n}", line, None, source)
    entries = []
    for r in rows:
        cells = r.split(",")
        if len(cells) != n:
            raise SpecError(f"matrix row {r.strip()!r} has {len(cells)} entries, expected {n}", line, None, source)
        entries.append(tuple(parse_cyclotomic(c, m, "z", line, source) for c in cells))
    return MatrixElement(tuple(entries))


def parse_group_spec(text: str, source: str = "") -> GroupSpec:
    fields: dict[str, tuple[str, int]] = {}
    gens_raw: list[tuple[str, int]] = []
    expect: dict[str, str] = {}
    expect_lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise SpecError(f"expected 'key: value', got {line!r}", lineno, None, source)
        key, value = (s.strip() for s in line.split(":", 1))
        if key.startswith("expect."):
            expect[key[7:]] = value
            expect_lines[key[7:]] = lineno
        elif key == "generator":
            gens_raw.append((value, lineno))
        elif key in _KEYS:
            if key in fields:
                raise SpecError(f"duplicate key {key!r}", lineno, None, source)
            fields[key] = (value, lineno)
        else:
            raise SpecError(f"unknown key {key!r}", lineno, None, source)

    def need(key):
        if key not in fields:
            raise SpecError(f"missing key {key!r}", None, None, source)
        return fields[key]

    kind, kline = need("kind")
    if kind not in ("abelian-diagonal", "matrix"):
        raise SpecError(f"kind must be abelian-diagonal or matrix, got {kind!r}", kline, None, source)
    nval, nline = need("n")
    if not nval.isdigit() or int(nval) < 1:
        raise SpecError(f"n must be a positive integer, got {nval!r}", nline, None, source)
    n = int(nval)
    conductor = None
    if "conductor" in fields:
        cval, cline = fields["conductor"]
        if not cval.isdigit() or int(cval) < 1:
            raise SpecError(f"conductor must be a positive integer, got {cval!r}", cline, None, source)
        conductor = int(cval)
    if not gens_raw:
        raise SpecError("no generator lines", None, None, source)
    gens = []
    for value, lineno in gens_raw:
        if kind == "abelian-diagonal":
            parts = value.split()
            if not all(re.fullmatch(r"-?\d+", p) for p in parts):
                raise SpecError(f"diagonal generator must be integers 'r a1 .. an', got {value!r}", lineno, None, source)
            nums = [int(p) for p in parts]
            if len(nums) != n + 1:
                raise SpecError(f"diagonal generator needs {n + 1} integers, got {len(nums)}", lineno, None, source)
            r, a = nums[0], nums[1:]
            if r < 1:
                raise SpecError("r must be positive", lineno, None, source)
            if conductor is not None and conductor % r:
                raise SpecError(f"r = {r} does not divide conductor {conductor}", lineno, None, source)
            if sum(a) % r:
                raise SpecError(f"1/{r}{tuple(a)} has determinant != 1", lineno, None, source)
            gens.append(WeightVector.reduced(r, a))
        else:
            if conductor is None:
                raise SpecError("matrix groups need a conductor", None, None, source)
            gens.append(_parse_matrix(value, n, conductor, lineno, source))
    name = fields.get("name", ("", 0))[0]
    return GroupSpec(kind, n, conductor, gens, name, expect, expect_lines, source)


def load_group_spec(path: str | Path) -> GroupSpec:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise SpecError(f"cannot read: {e.strerror}", source=str(p)) from None
    return parse_group_spec(text, source=str(p))
