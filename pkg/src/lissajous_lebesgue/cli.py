"""Command-line front end.

    lclebesgue nodes --m 7 --n 23 --out nodes.csv --svg nodes.svg
    lclebesgue kernel-verify --m 2 --n 3 --points 200 --trunc-V 2000
    lclebesgue lebesgue --m 8 --n 9 [--kind lc]
    lclebesgue sweep --kind continuous --sizes 8:9,16:17,32:33 --out sweep.csv --svg sweep.svg

Exit status: 0 on success, 1 when a numeric contract is violated, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import asympt, kernels
from .lcnodes import CoprimalityError, DegreePair, build_nodes, lissajous_point
from .norms import PeriodicityError, QuadratureSpec
from .search import DegenerateSearchError, SearchSpec
from .svg import nodes_figure, sweep_figure

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
# minimum distance of random verification points from the kernel singular lines
SINGULAR_CLEARANCE = 1e-3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    m: int | None = None
    n: int | None = None
    kind: str | None = None
    sizes: tuple[tuple[int, int], ...] = ()
    points: int = 200
    grid: int | None = None
    cells: int = 8
    trunc_V: int = 2000
    variant: str = kernels.DEFAULT_F_VARIANT
    out: str | None = None
    svg: str | None = None
    seed: int = 0
    max_size: int = asympt.DEFAULT_MAX_SIZE

    def validate(self) -> "RunConfig":
        if self.command in ("nodes", "kernel-verify", "lebesgue"):
            if self.m is None or self.n is None:
                raise UsageError(f"{self.command} needs --m and --n")
            DegreePair(self.m, self.n)
        if self.command == "sweep":
            if self.kind not in asympt.KINDS:
                raise UsageError(f"--kind must be one of {', '.join(asympt.KINDS)}")
            if not self.sizes:
                raise UsageError("sweep needs --sizes")
        if self.command == "lebesgue" and self.kind not in (None, *asympt.LEBESGUE_KINDS):
            raise UsageError(f"--kind must be one of {', '.join(asympt.LEBESGUE_KINDS)}")
        if self.points < 1:
            raise UsageError("--points must be positive")
        if self.cells < 1:
            raise UsageError("--cells must be positive")
        if self.trunc_V < 1:
            raise UsageError("--trunc-V must be positive")
        if self.variant not in kernels.F_VARIANTS:
            raise UsageError(f"--variant must be one of {kernels.F_VARIANTS}")
        if self.max_size < 1:
            raise UsageError("--max-size must be positive")
        return self

    @property
    def quad(self) -> QuadratureSpec:
        return QuadratureSpec(cells_per_oscillation=self.cells)

    @property
    def search(self) -> SearchSpec:
        return SearchSpec(grid_points_per_axis=self.grid)


def _write_text(path: str, text: str):
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def singular_distance(m: int, n: int, x, y):
    """Distance from ``(x, y)`` to the nearest line where a kernel factor is singular.

    The lines are ``y = 0`` (the ``2/y`` factor) and ``x +- n y/m = 2 pi j``
    (poles of the Dirichlet ratios inside ``S_mn``).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = n / m
    dist = np.abs(y)
    for sgn in (1.0, -1.0):
        t = x + sgn * a * y
        off = t - 2 * np.pi * np.rint(t / (2 * np.pi))
        dist = np.minimum(dist, np.abs(off) / math.hypot(1.0, a))
    return dist


def verification_points(m: int, n: int, count: int, seed: int,
                        clearance: float = SINGULAR_CLEARANCE):
    rng = np.random.default_rng(seed)
    xs, ys = [], []
    while len(xs) < count:
        x = rng.uniform(-np.pi, np.pi, count)
        y = rng.uniform(-np.pi, np.pi, count)
        ok = singular_distance(m, n, x, y) >= clearance
        xs.extend(x[ok])
        ys.extend(y[ok])
    return np.array(xs[:count]), np.array(ys[:count])


def cmd_nodes(cfg: RunConfig) -> int:
    nodes = build_nodes((cfg.m, cfg.n))
    csv_text = nodes.to_csv()
    if cfg.out:
        _write_text(cfg.out, csv_text)
    else:
        sys.stdout.write(csv_text)
    if cfg.svg:
        t = np.linspace(0.0, np.pi, 2000)
        curve = np.column_stack(lissajous_point(nodes.degrees, t))
        _write_text(cfg.svg, nodes_figure(cfg.m, cfg.n, curve, nodes.points).render())
    print(f"LC_{cfg.m},{cfg.n}: {len(nodes)} nodes", file=sys.stderr)
    return EXIT_OK


def cmd_kernel_verify(cfg: RunConfig) -> int:
    m, n = cfg.m, cfg.n
    x, y = verification_points(m, n, cfg.points, cfg.seed)
    trunc = kernels.TruncationSpec(cfg.trunc_V)
    res, bound = kernels.decomposition_residual(m, n, x, y, trunc, cfg.variant)
    ok = bool(np.all(res <= bound + 1e-8))
    if cfg.out:
        lines = ["x,y,residual,tail_bound"]
        lines += [f"{a:.17g},{b:.17g},{r:.17g},{t:.17g}" for a, b, r, t in zip(x, y, res, bound)]
        _write_text(cfg.out, "\n".join(lines) + "\n")
    print(f"(m, n) = ({m}, {n}), points = {len(x)}, V = {cfg.trunc_V}, F variant = {cfg.variant}")
    if n % m == 0:
        print("note: m divides n, so F is identically zero")
    print(f"max residual   = {res.max():.3e}")
    print(f"max tail bound = {bound.max():.3e}")
    print(f"worst residual / (bound + 1e-8) = {(res / (bound + 1e-8)).max():.3g}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VIOLATION


def _print_records(records):
    for r in records:
        conv = "" if r.convergence is None else f"  self-conv {r.convergence:.2e}"
        print(f"{r.kind:>10s} ({r.m}, {r.n}): computed {r.computed:.6f}  main {r.main_term:.6f}  "
              f"residual {r.residual:+.6f}  ratio {r.ratio:.4f}{conv}")
    if any(r.kind in asympt.LEBESGUE_KINDS and r.p == 0 for r in records):
        print("note: m divides n; n = lambda m + p with p = m is treated as the p = 0 regime "
              "(remainder scale ln n)")


def cmd_lebesgue(cfg: RunConfig) -> int:
    kinds = (cfg.kind,) if cfg.kind else asympt.LEBESGUE_KINDS
    records = []
    for kind in kinds:
        records += asympt.sweep(kind, [(cfg.m, cfg.n)], cfg.quad, cfg.search, cfg.max_size,
                                check_convergence=False)
    _print_records(records)
    text = asympt.records_to_csv(records)
    if cfg.out:
        _write_text(cfg.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    records = asympt.sweep(cfg.kind, cfg.sizes, cfg.quad, cfg.search, cfg.max_size,
                           check_convergence=False)
    _print_records(records)
    print(f"ratio spread across consecutive sizes: {asympt.ratio_spread(records):.3f}")
    text = asympt.records_to_csv(records)
    if cfg.out:
        _write_text(cfg.out, text)
    else:
        sys.stdout.write(text)
    if cfg.svg:
        fig = sweep_figure([r.n for r in records], [r.residual for r in records],
                           f"{cfg.kind}: computed - main term")
        _write_text(cfg.svg, fig.render())
    return EXIT_OK


COMMANDS = {"nodes": cmd_nodes, "kernel-verify": cmd_kernel_verify,
            "lebesgue": cmd_lebesgue, "sweep": cmd_sweep}


def _sizes(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        parts = item.split(":")
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size {item!r}; use m:n") from None
        if len(vals) == 1:
            vals = vals * 2
        if len(vals) != 2:
            raise argparse.ArgumentTypeError(f"bad size {item!r}; use m:n")
        out.append((vals[0], vals[1]))
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lclebesgue", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--kind")
    common.add_argument("--grid", type=int, help="search grid points per axis")
    common.add_argument("--cells", type=int, default=8, help="quadrature cells per oscillation")
    common.add_argument("--trunc-V", dest="trunc_V", type=int, default=2000)
    common.add_argument("--variant", choices=kernels.F_VARIANTS, default=kernels.DEFAULT_F_VARIANT)
    common.add_argument("--out")
    common.add_argument("--svg")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", dest="max_size", type=int, default=asympt.DEFAULT_MAX_SIZE)
    common.add_argument("--points", type=int, default=200)
    common.add_argument("--sizes", type=_sizes, default=(), help="comma-separated m:n pairs")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(**vars(args)).validate()
        return COMMANDS[cfg.command](cfg)
    except (UsageError, CoprimalityError, DegenerateSearchError, asympt.RegimeError,
            asympt.SizeCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PeriodicityError, FloatingPointError) as exc:
        print(f"numeric contract violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
