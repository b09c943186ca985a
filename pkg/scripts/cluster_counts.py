"""Torus-fixed G-cluster counts against |G|, including experimental n = 4 input.

    python scripts/cluster_counts.py [corpus_dir]
"""

import sys
import time
from pathlib import Path

from mckay.clusters import enumerate_torus_fixed_clusters, nakamura_generator_shape
from mckay.verify import load_corpus


def main(path: Path) -> None:
    print(f"{'group':<20}{'n':>3}{'|G|':>6}{'clusters':>10}{'shapes ok':>11}{'seconds':>9}")
    for e in load_corpus(path):
        G = e.group
        if not G.is_abelian_diagonal or G.order == 1 or G.order > 60 or G.n > 4:
            continue
        t = time.perf_counter()
        cl = enumerate_torus_fixed_clusters(G)
        dt = time.perf_counter() - t
        shapes = sum(nakamura_generator_shape(c).conforming for c in cl) if G.n == 3 else "-"
        print(f"{e.label:<20}{G.n:>3}{G.order:>6}{len(cl):>10}{shapes!s:>11}{dt:>9.2f}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "corpus")
