"""Run every residual sweep at desk-scale sizes and write CSV + SVG per kind.

    python3 scripts/run_sweeps.py --out results/
    python3 scripts/run_sweeps.py --out results/ --only continuous lc
"""

import argparse
import math
import time
from pathlib import Path

from lissajous_lebesgue import asympt
from lissajous_lebesgue.interp import lebesgue_constant_lc
from lissajous_lebesgue.lcnodes import build_nodes
from lissajous_lebesgue.norms import frak_f
from lissajous_lebesgue.svg import sweep_figure

SWEEPS = {
    "continuous": [(m, m + 1) for m in (8, 16, 32, 64)],
    "lc": [(n, n + 1) for n in (8, 16, 32)],
    "discrete": [(8, 16), (8, 24), (16, 32), (8, 9), (16, 17)],
    "delta1": [8, 16, 32, 64],
    "delta2": [8, 16, 32, 64],
    "scriptf": [(32, 1), (32, 2), (32, 4)],
    "fnorm": [(8, 9), (16, 17), (32, 33)],
}


def anisotropic_lc(out: Path, ns=(16, 32, 64, 128)):
    """Lambda^LC for (3, n) against (8/pi^2) ln n ln m, scale ln n + ln^2 m."""
    lines = ["m,n,computed,main_term,residual,scale,ratio"]
    for n in ns:
        value = lebesgue_constant_lc(build_nodes((3, n))).value
        main = asympt.lc_anisotropic_term(3, n)
        scale = math.log(n) + math.log(3) ** 2
        lines.append(f"3,{n},{value:.17g},{main:.17g},{value - main:.17g},{scale:.17g},"
                     f"{abs(value - main) / scale:.17g}")
        print(f"  lc (3, {n}): {value:.4f}  ratio {abs(value - main) / scale:.3f}")
    (out / "lc_anisotropic.csv").write_text("\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--only", nargs="*", choices=[*SWEEPS, "anisotropic", "frakf"])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    chosen = args.only or [*SWEEPS, "anisotropic", "frakf"]

    for kind in chosen:
        t0 = time.perf_counter()
        print(f"[{kind}]")
        if kind == "anisotropic":
            anisotropic_lc(args.out)
        elif kind == "frakf":
            lines = ["m,n,frak_f"]
            for m, n in [(8, 9), (16, 17), (16, 31)]:
                v = frak_f(m, n).value
                lines.append(f"{m},{n},{v:.17g}")
                print(f"  frak F ({m}, {n}) = {v:.4f}")
            (args.out / "frak_f.csv").write_text("\n".join(lines) + "\n")
        else:
            recs = asympt.sweep(kind, SWEEPS[kind])
            for r in recs:
                conv = "" if r.convergence is None else f"  conv {r.convergence:.1e}"
                print(f"  ({r.m}, {r.n}) computed {r.computed:.5f} residual {r.residual:+.5f} "
                      f"ratio {r.ratio:.3f}{conv}")
            print(f"  ratio spread {asympt.ratio_spread(recs):.3f}")
            (args.out / f"{kind}.csv").write_text(asympt.records_to_csv(recs))
            sweep_figure([r.n for r in recs], [r.residual for r in recs],
                         f"{kind}: computed - main term").save(args.out / f"{kind}.svg")
        print(f"  ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
