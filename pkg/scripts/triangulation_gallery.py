"""Write SVG pictures of both crepant triangulations for the SL(3) corpus groups.

    python scripts/triangulation_gallery.py [outdir]
"""

import sys
from pathlib import Path

from mckay.toric import crepant_triangulate_3d, triangulation_svg
from mckay.verify import load_corpus, sl3_abelian

ROOT = Path(__file__).resolve().parent.parent


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    differ = []
    for e in sl3_abelian(load_corpus(ROOT / "corpus")):
        tris = {s: crepant_triangulate_3d(e.group, s) for s in ("deterministic", "alternate")}
        for s, t in tris.items():
            (out / f"{e.label}-{s}.svg").write_text(triangulation_svg(t))
        if tris["deterministic"].key() != tris["alternate"].key():
            differ.append(e.label)
    print(f"wrote {out}; strategies differ on {len(differ)} groups: {', '.join(differ)}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "gallery")
