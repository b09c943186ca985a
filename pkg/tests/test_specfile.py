from fractions import Fraction

import pytest

from mckay.exact import MotiveExpr
from mckay.specfile import SpecError, load_group_spec, parse_cyclotomic, parse_group_spec, parse_motive, parse_polynomial

GOOD = """# a comment
name: bd8
kind: matrix
n: 2
conductor: 4
generator: [z, 0; 0, z^3]
generator: [0, 1; -1, 0]   # beta
expect.order: 8
"""


def test_good_spec():
    s = parse_group_spec(GOOD)
    G = s.build()
    assert G.order == 8 and s.name == "bd8"
    assert s.expect == {"order": "8"} and s.expect_lines == {"order": 8}


def error_line(text):
    with pytest.raises(SpecError) as e:
        parse_group_spec(text, source="x.spec")
    return e.value


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("kind: matrix\nn: 2\nconductor: 4\ngenerator: [z, 0; 0]\n", 4, "has 1 entries"),
        ("kind: matrix\nn: 2\nconductor: 4\ngenerator: [z, 0]\n", 4, "1 rows"),
        ("kind: matrix\nn: 2\nconductor: 4\ngenerator: [z, 0; 0, q]\n", 4, "unknown symbol 'q'"),
        ("kind: abelian-diagonal\nn: 3\ngenerator: 3 1 1\n", 3, "needs 4 integers"),
        ("kind: abelian-diagonal\nn: 3\ngenerator: 3 1 1 2\n", 3, "determinant"),
        ("kind: weird\nn: 3\ngenerator: 3 1 1 1\n", 1, "kind"),
        ("kind: abelian-diagonal\nn: x\n", 2, "positive integer"),
        ("kind: abelian-diagonal\nn: 3\nfoo: 1\n", 3, "unknown key"),
        ("kind: abelian-diagonal\nkind: matrix\n", 2, "duplicate"),
        ("kind: abelian-diagonal\nn: 3\njunk line\n", 3, "key: value"),
        ("kind: matrix\nn: 2\nconductor: 4\ngenerator: [z**2, 0; 0, 1]\n", 4, "use ^"),
        ("kind: abelian-diagonal\nn: 3\nconductor: 4\ngenerator: 3 1 1 1\n", 4, "divide"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    err = error_line(text)
    assert err.line == line
    assert fragment in str(err)
    assert str(err).startswith(f"x.spec:{line}")


def test_missing_fields():
    assert error_line("n: 3\n").line is None
    assert "no generator" in str(error_line("kind: abelian-diagonal\nn: 3\n"))
    assert "conductor" in str(error_line("kind: matrix\nn: 2\ngenerator: [1, 0; 0, 1]\n"))


def test_column_reported_for_syntax_errors():
    with pytest.raises(SpecError) as e:
        parse_polynomial("u + * v", ("u", "v"), line=3)
    assert e.value.line == 3 and e.value.column is not None


def test_non_special_matrix_is_rejected_at_build():
    s = parse_group_spec("kind: matrix\nn: 2\nconductor: 4\ngenerator: [z, 0; 0, z]\n")
    with pytest.raises(SpecError):
        s.build()


def test_expressions():
    assert parse_cyclotomic("1/2*(1+z^2)", 8) * 2 == parse_cyclotomic("1 + z^2", 8)
    assert parse_cyclotomic("z^4", 4) == 1
    with pytest.raises(SpecError):
        parse_polynomial("u / v", ("u", "v"))
    with pytest.raises(SpecError):
        parse_polynomial("u^(-1)", ("u",))
    with pytest.raises(SpecError):
        parse_polynomial("u^v", ("u", "v"))
    with pytest.raises(SpecError):
        parse_polynomial("__import__('os')", ("u",))
    with pytest.raises(SpecError):
        parse_polynomial("u.real", ("u",))


def test_motive_round_trip():
    from mckay.exact import motive_to_text

    L = MotiveExpr.L(1)
    for m in (L**3 + 19 * L**2 + 7 * L, (L - 1) / (L**2 - 1), L**-2 * 3 + Fraction(1, 2), MotiveExpr.const(0)):
        assert parse_motive(motive_to_text(m)) == m


def test_load_missing_file(tmp_path):
    with pytest.raises(SpecError, match="cannot read"):
        load_group_spec(tmp_path / "nope.spec")
    p = tmp_path / "a.spec"
    p.write_text("kind: abelian-diagonal\nn: 2\ngenerator: 3 1 2\n")
    assert load_group_spec(p).build().order == 3
