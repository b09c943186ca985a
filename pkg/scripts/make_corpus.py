"""Regenerate corpus/*.spec with golden values.

Goldens for diagonal groups come from a standalone oracle in this file
(closure of exponent vectors, ages as coordinate sums, the stringy motive
as sum_g L^(n - age g)); it does not import the package. Goldens for the
matrix groups are classical facts: |BD_4n| = 4n with n + 3 classes and
McKay graph ~D_(n+2); the binary tetrahedral and octahedral groups give
~E6 and ~E7. The stringy class of C^2/G is L^2 + (rank) L: one
affine line per exceptional curve of the minimal resolution.

    python scripts/make_corpus.py [outdir]
"""

from __future__ import annotations

import sys
from collections import Counter
from math import gcd
from pathlib import Path

DIAGONAL = [
    # name, rows of (r, a1..an)
    ("cyclic-3-111", [(3, 1, 1, 1)]),
    ("cyclic-7-124", [(7, 1, 2, 4)]),
    ("cyclic-5-113", [(5, 1, 1, 3)]),
    ("cyclic-6-123", [(6, 1, 2, 3)]),
    ("cyclic-4-112", [(4, 1, 1, 2)]),
    ("cyclic-6-114", [(6, 1, 1, 4)]),
    ("cyclic-2-110", [(2, 1, 1, 0)]),
    ("cyclic-8-125", [(8, 1, 2, 5)]),
    ("cyclic-9-126", [(9, 1, 2, 6)]),
    ("cyclic-10-136", [(10, 1, 3, 6)]),
    ("cyclic-11-128", [(11, 1, 2, 8)]),
    ("cyclic-12-147", [(12, 1, 4, 7)]),
    ("cyclic-13-139", [(13, 1, 3, 9)]),
    ("cyclic-14-1211", [(14, 1, 2, 11)]),
    ("cyclic-15-1410", [(15, 1, 4, 10)]),
    ("cyclic-17-1313", [(17, 1, 3, 13)]),
    ("cyclic-19-1711", [(19, 1, 7, 11)]),
    ("cyclic-20-1415", [(20, 1, 4, 15)]),
    ("cyclic-30-1425", [(30, 1, 4, 25)]),
    ("cyclic-60-11148", [(60, 1, 11, 48)]),
    ("klein-2x2", [(2, 1, 1, 0), (2, 0, 1, 1)]),
    ("abelian-2x4", [(2, 1, 1, 0), (4, 0, 1, 3)]),
    ("abelian-3x3", [(3, 1, 2, 0), (3, 0, 1, 2)]),
    ("abelian-4x4", [(4, 1, 3, 0), (4, 0, 1, 3)]),
    ("abelian-5x5", [(5, 1, 4, 0), (5, 0, 1, 4)]),
    ("abelian-6x6", [(6, 1, 5, 0), (6, 0, 1, 5)]),
    ("abelian-3x9", [(3, 0, 1, 2), (9, 1, 2, 6)]),
    ("abelian-7x7", [(7, 1, 6, 0), (7, 0, 1, 6)]),
    # SL(2)
    ("a1", [(2, 1, 1)]),
    ("a2", [(3, 1, 2)]),
    ("a4", [(5, 1, 4)]),
    ("a7", [(8, 1, 7)]),
    # n = 4 and the 1/b(1,...,1) family
    ("terminal-5-1423", [(5, 1, 4, 2, 3)]),
    ("terminal-7-1634", [(7, 1, 6, 3, 4)]),
    ("klein-cube-sl4", [(2, 1, 1, 0, 0), (2, 0, 1, 1, 0), (2, 0, 0, 1, 1)]),
    ("half-1111", [(2, 1, 1, 1, 1)]),
    ("third-111111", [(3, 1, 1, 1, 1, 1, 1)]),
    ("half-111111", [(2, 1, 1, 1, 1, 1, 1)]),
    ("trivial-3", [(1, 0, 0, 0)]),
]

MATRIX = [
    ("bd8", 4, ["[z, 0; 0, z^3]", "[0, 1; -1, 0]"], {"order": 8, "classes": 5, "dynkin": "~D4", "stringy": "L^2 + 4*L", "euler": 5}),
    ("quaternion", 4, ["[z, 0; 0, -z]", "[0, z; z, 0]"], {"order": 8, "classes": 5, "dynkin": "~D4", "stringy": "L^2 + 4*L", "euler": 5}),
    ("bd12", 6, ["[z, 0; 0, z^5]", "[0, 1; -1, 0]"], {"order": 12, "classes": 6, "dynkin": "~D5", "stringy": "L^2 + 5*L", "euler": 6}),
    ("bd16", 8, ["[z, 0; 0, z^7]", "[0, 1; -1, 0]"], {"order": 16, "classes": 7, "dynkin": "~D6", "stringy": "L^2 + 6*L", "euler": 7}),
    ("bd20", 10, ["[z, 0; 0, z^9]", "[0, 1; -1, 0]"], {"order": 20, "classes": 8, "dynkin": "~D7", "stringy": "L^2 + 7*L", "euler": 8}),
    (
        "binary-tetrahedral",
        8,
        ["[z^2, 0; 0, -z^2]", "[0, 1; -1, 0]", "[1/2*(1+z^2), 1/2*(1+z^2); 1/2*(-1+z^2), 1/2*(1-z^2)]"],
        {"order": 24, "classes": 7, "dynkin": "~E6", "stringy": "L^2 + 6*L", "euler": 7},
    ),
    (
        "binary-octahedral",
        8,
        ["[z, 0; 0, z^7]", "[0, 1; -1, 0]", "[1/2*(1+z^2), 1/2*(1+z^2); 1/2*(-1+z^2), 1/2*(1-z^2)]"],
        {"order": 48, "classes": 8, "dynkin": "~E7", "stringy": "L^2 + 7*L", "euler": 8},
    ),
]


def closure(rows):
    N = 1
    for r, *_ in rows:
        N = N * r // gcd(N, r)
    n = len(rows[0]) - 1
    gens = [tuple(a * (N // r) % N for a in row[1:]) for row in rows for r in [row[0]]]
    seen = {(0,) * n}
    todo = [(0,) * n]
    while todo:
        v = todo.pop()
        for g in gens:
            w = tuple((x + y) % N for x, y in zip(v, g))
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return N, n, sorted(seen)


def motive_text(coeffs: dict[int, int]) -> str:
    parts = []
    for k in sorted(coeffs, reverse=True):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("L" if k == 1 else f"L^{k}")
        body = mono if c == 1 and mono else (f"{c}*{mono}" if mono else str(c))
        parts.append(body)
    return " + ".join(parts) or "0"


def diagonal_goldens(rows):
    N, n, elems = closure(rows)
    ages = [sum(v) // N for v in elems]
    census = Counter(ages)
    stringy = Counter(n - a for a in ages)
    out = {
        "order": len(elems),
        "classes": len(elems),
        "census": " ".join(f"{k}:{v}" for k, v in sorted(census.items())),
        "junior": census.get(1, 0),
        "stringy": motive_text(stringy),
        "euler": len(elems),
    }
    if n == 2 and len(rows) == 1 and rows[0][2] == rows[0][0] - rows[0][1]:
        r = rows[0][0]
        out["dynkin"] = f"~A{r - 1}"
        out["chain"] = " ".join(["-2"] * (r - 1))
        out["clusters"] = r
    if n == 3 and len(elems) > 1:
        out["clusters"] = len(elems)
    return out


def write(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, rows in DIAGONAL:
        lines = [f"name: {name}", "kind: abelian-diagonal", f"n: {len(rows[0]) - 1}"]
        lines += ["generator: " + " ".join(map(str, row)) for row in rows]
        lines += [f"expect.{k}: {v}" for k, v in diagonal_goldens(rows).items()]
        (outdir / f"{name}.spec").write_text("\n".join(lines) + "\n")
    for name, m, gens, goldens in MATRIX:
        lines = [f"name: {name}", "kind: matrix", "n: 2", f"conductor: {m}"]
        lines += [f"generator: {g}" for g in gens]
        lines += [f"expect.{k}: {v}" for k, v in goldens.items()]
        (outdir / f"{name}.spec").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    write(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "corpus")
