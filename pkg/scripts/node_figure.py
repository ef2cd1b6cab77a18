"""Draw the degenerate Lissajous curve and its LC nodes, e.g. for (7, 23).

    python3 scripts/node_figure.py --m 7 --n 23 --out results/
"""

import argparse
from pathlib import Path

import numpy as np

from lissajous_lebesgue.lcnodes import build_nodes, curve_node_match, lissajous_point
from lissajous_lebesgue.svg import nodes_figure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--n", type=int, default=23)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    nodes = build_nodes((args.m, args.n))
    t = np.linspace(0.0, np.pi, 2000)
    curve = np.column_stack(lissajous_point(nodes.degrees, t))
    stem = args.out / f"lc_{args.m}_{args.n}"
    stem.with_suffix(".csv").write_text(nodes.to_csv())
    nodes_figure(args.m, args.n, curve, nodes.points).save(stem.with_suffix(".svg"))
    print(f"{len(nodes)} nodes; curve self-intersections match: {curve_node_match(nodes.degrees)}")
    print(f"wrote {stem}.csv and {stem}.svg")


if __name__ == "__main__":
    main()
