"""Stringy motives of every corpus group by each available route.

    python scripts/stringy_report.py [corpus_dir]
"""

import sys
from pathlib import Path

from mckay.exact import motive_to_text
from mckay.stringy import orbifold_euler, stringy_census, stringy_from_fan, stringy_from_group
from mckay.toric import crepant_fan
from mckay.verify import load_corpus


def main(path: Path) -> None:
    for e in load_corpus(path):
        G = e.group
        census = stringy_census(G).motive
        routes = {"census": census}
        if G.is_abelian_diagonal:
            routes["group"] = stringy_from_group(G).motive
            if G.n in (2, 3) and G.order > 1:
                routes["fan"] = stringy_from_fan(crepant_fan(G)).motive
        agree = all(m == census for m in routes.values())
        print(f"{e.label:<20} e={orbifold_euler(G)!s:<4} {motive_to_text(census):<28} "
              f"routes={','.join(routes)} {'agree' if agree else 'DISAGREE'}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "corpus")
