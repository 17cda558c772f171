"""Write the quaternion example (matrix, perturbation, one Hessenberg grid) as JSON documents."""

import argparse
from pathlib import Path

from blockinv.demo_data import example_grid, example_perturbation
from blockinv.io import document_from_partitioned, dumps_pretty


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=Path(__file__).resolve().parent.parent / "data", type=Path)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    grid = example_grid()
    e = example_perturbation()
    docs = {
        "m4.json": document_from_partitioned(grid, include=lambda j, k: j <= k),
        "e4.json": document_from_partitioned(e.grid),
        # block rows 1..4, block columns 2..5: the grid behind inverse block (1,5)
        "h4.json": document_from_partitioned(grid.sub_grid(1, 2, 4), include=lambda r, c: r <= c + 1),
    }
    for name, doc in docs.items():
        path = args.out_dir / name
        path.write_text(dumps_pretty(doc) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
