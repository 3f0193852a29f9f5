"""Command-line front end.

Subcommands
-----------
spectrum   eigenvalues of one stream or swirl operator
table      recompute a published table and diff it against the reference
kernel     kernel diagnostics of the n = 0 stream operator
mu2        second-order small-sigma coefficient
sweep      spectra over a Cartesian parameter grid, written as CSV

Exit codes: 0 success, 1 tolerance failure, 2 invalid parameters,
3 solver failure.
"""
import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .asymptotics import small_sigma_expansion
from .cache import DEFAULT_CACHE_DIR, ReportCache, spectrum_dict
from .eigensolve import kernel_mode_cosines, spectrum_reduced
from .errors import SolverError
from .grid import Params
from .operators import assemble_L, kernel_residual
from .tables import TABLES, compute_non_spectral, judge, table_tasks

EXIT_OK, EXIT_TOLERANCE, EXIT_INVALID, EXIT_SOLVER = 0, 1, 2, 3

DEFAULTS = {
    "op": "L", "n": 0, "a": None, "sigma": 0.0, "N": 100, "form": "reduced",
    "format": "json", "out": None, "svg": None, "jobs": 1, "cache": DEFAULT_CACHE_DIR,
}
SCALAR_TYPES = {
    "op": str, "n": int, "a": float, "sigma": float, "N": int, "form": str,
    "format": str, "out": str, "svg": str, "jobs": int, "cache": str, "id": int,
}
SWEEP_HEADER = [
    "a", "sigma", "n", "N", "min_real", "second_min_real", "max_abs_imag",
    "nearest_zero_abs", "status",
]


class InvalidConfig(ValueError):
    pass


def load_config(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise InvalidConfig(f"{path}:{lineno}: expected 'key = value'")
            key = key.strip().lstrip("-")
            if key not in SCALAR_TYPES:
                raise InvalidConfig(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _convert(key, value, many=False):
    kind = SCALAR_TYPES[key]
    try:
        if many:
            if isinstance(value, str):
                value = value.replace(",", " ").split()
            elif not isinstance(value, (list, tuple)):
                value = [value]
            return [kind(v) for v in value]
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(f"bad value for {key}: {value!r}") from exc


def resolve(args, keys, many=()):
    """Merge defaults, then the config file, then explicit flags."""
    file_values = load_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key in keys:
        flag = getattr(args, key, None)
        if flag is not None:
            value = flag
        elif key in file_values:
            value = file_values[key]
        else:
            value = DEFAULTS.get(key)
        if value is not None:
            value = _convert(key, value, many=key in many)
        merged[key] = value
    return merged


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one ``spectrum`` run."""

    operator: str
    n: int
    a: float
    sigma: float
    N: int
    form: str = "reduced"
    fmt: str = "json"
    out: str = None

    def __post_init__(self):
        if self.operator not in ("L", "M"):
            raise InvalidConfig(f"--op must be L or M, got {self.operator!r}")
        if self.form not in ("reduced", "generalized"):
            raise InvalidConfig(f"--form must be reduced or generalized, got {self.form!r}")
        if self.operator == "M" and self.form != "reduced":
            raise InvalidConfig("the swirl operator only supports --form reduced")
        if self.fmt not in ("csv", "json"):
            raise InvalidConfig(f"--format must be csv or json, got {self.fmt!r}")
        if self.a is None:
            raise InvalidConfig("--a is required")
        self.params  # validates a, sigma, n, N

    @property
    def params(self):
        return Params(a=self.a, sigma=self.sigma, n=self.n, N=self.N)


def _cache(args, root):
    return None if args.no_cache else ReportCache(root)


def _fmt(x):
    return format(x, ".17g")


def write_spectrum(report, fmt, stream):
    if fmt == "json":
        json.dump(report, stream, indent=1)
        stream.write("\n")
    else:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["re", "im"])
        for re_part, im_part in report["eigenvalues"]:
            writer.writerow([_fmt(re_part), _fmt(im_part)])


def write_svg(report, path):
    """Static scatter of the eigenvalue cloud with the near-zero eigenvalue marked."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    values = np.array(report["eigenvalues"])
    near = report["nearest_zero"]["value"]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(values[:, 0], values[:, 1], s=6, color="tab:blue", label="eigenvalues")
    ax.scatter([near[0]], [near[1]], s=40, color="tab:red", marker="x", label="nearest zero")
    ax.set_xscale("symlog")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    p = report["params"]
    ax.set_title(f"{report['operator']}: a={p['a']:g}, sigma={p['sigma']:g}, n={p['n']}, N={p['N']}")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_spectrum(args):
    values = resolve(args, ("op", "n", "a", "sigma", "N", "form", "format", "out", "svg", "cache"))
    config = RunConfig(
        values["op"], values["n"], values["a"], values["sigma"], values["N"],
        values["form"], values["format"], values["out"],
    )
    report, _ = spectrum_dict(config.operator, config.params, config.form, _cache(args, values["cache"]))
    print(f"min_real = {report['min_real']:.10g}")
    print(f"second_min_real = {report['second_min_real']:.10g}")
    print(f"max_abs_imag = {report['max_abs_imag']:.10g}")
    if config.out:
        with open(config.out, "w", newline="") as fh:
            write_spectrum(report, config.fmt, fh)
    if values["svg"] is not None:
        svg = values["svg"] or (str(Path(config.out).with_suffix(".svg")) if config.out else "spectrum.svg")
        write_svg(report, svg)
    return EXIT_OK


def _table_cell(task, form, cache_root):
    if task.quantity in ("min_real", "second_min_real"):
        cache = ReportCache(cache_root) if cache_root else None
        report, _ = spectrum_dict("L", task.params, form, cache)
        return report[task.quantity]
    return compute_non_spectral(task)


def _run(fn, argsets, jobs):
    if jobs > 1 and len(argsets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*argsets)))
    return [fn(*a) for a in argsets]


def cmd_table(args):
    values = resolve(args, ("id", "form", "jobs", "cache", "out"))
    table_id = values["id"]
    if table_id not in TABLES:
        raise InvalidConfig(f"--id must be one of {sorted(TABLES)}, got {table_id}")
    if values["form"] not in ("reduced", "generalized"):
        raise InvalidConfig(f"--form must be reduced or generalized, got {values['form']!r}")
    if values["jobs"] < 1:
        raise InvalidConfig("--jobs must be at least 1")
    cache_root = None if args.no_cache else values["cache"]
    tasks = table_tasks(table_id)
    computed = _run(_table_cell, [(t, values["form"], cache_root) for t in tasks], values["jobs"])
    results = [judge(t, v) for t, v in zip(tasks, computed)]

    table = TABLES[table_id]
    print(f"Table {table_id}: {table.title}")
    print(f"{'row':>20} {'col':>6} {'reference':>14} {'computed':>16} {'rel.err':>10}  status")
    failing = []
    for r in results:
        status = {True: "PASS", False: "FAIL", None: "REPORT"}[r.passed]
        ref_text = table.cells[(r.task.row, r.task.col)]
        print(f"{r.task.row:>20} {r.task.col:>6} {ref_text:>14} {r.computed:>16.8g} {r.rel_error:>10.3e}  {status}")
        if r.passed is False:
            failing.append(r)
    if values["out"]:
        with open(values["out"], "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["row", "col", "reference", "computed", "rel_error", "status"])
            for r in results:
                status = {True: "pass", False: "fail", None: "report"}[r.passed]
                writer.writerow([r.task.row, r.task.col, table.cells[(r.task.row, r.task.col)],
                                 _fmt(r.computed), _fmt(r.rel_error), status])
    if failing:
        print(f"{len(failing)} cell(s) outside tolerance:")
        for r in failing:
            print(f"  ({r.task.row}, {r.task.col}): {r.computed:.8g} vs {r.reference:g}")
        return EXIT_TOLERANCE
    print("all gated cells within tolerance")
    return EXIT_OK


def cmd_kernel(args):
    values = resolve(args, ("a", "N", "out"))
    if values["a"] is None:
        raise InvalidConfig("--a is required")
    params = Params(a=values["a"], N=values["N"])
    L0 = assemble_L(params)
    report = spectrum_reduced(L0, vectors=False)
    lam, cos_u, cos_w = kernel_mode_cosines(L0)
    out = {
        "a": params.a,
        "N": params.N,
        "kernel_residual": kernel_residual(params.a, params.N),
        "kernel_residual_inner": kernel_residual(params.a, params.N, fraction=0.8),
        "nearest_zero": [report.nearest_zero.real, report.nearest_zero.imag],
        "kernel_mode": [lam.real, lam.imag],
        "cos_angle_unweighted": cos_u,
        "cos_angle_sin_weighted": cos_w,
    }
    print(f"kernel residual (inf-norm, relative) = {out['kernel_residual']:.6e}")
    print(f"kernel residual on the inner 80% = {out['kernel_residual_inner']:.6e}")
    print(f"nearest-zero eigenvalue = {report.nearest_zero.real:.10g}{report.nearest_zero.imag:+.3g}j")
    print(f"kernel-mode eigenvalue = {lam.real:.10g}")
    print(f"cosine (unweighted) = {cos_u:.6f}")
    print(f"cosine (sin-weighted) = {cos_w:.6f}")
    if values["out"]:
        with open(values["out"], "w") as fh:
            json.dump(out, fh, indent=1)
    return EXIT_OK


def cmd_mu2(args):
    values = resolve(args, ("a", "N", "out"))
    if values["a"] is None:
        raise InvalidConfig("--a is required")
    params = Params(a=values["a"], N=values["N"])
    exp = small_sigma_expansion(params.a, params.N)
    print(f"Re mu_2 = {exp.re_mu2:.10g}")
    print(f"Im mu_1 = {exp.im_mu1:.6g}")
    for name, sol in (("first", exp.first), ("second", exp.second)):
        print(f"{name}-order bordered residual (relative) = {sol.relative_residual:.3e}")
    if values["out"]:
        diag = {"a": params.a, "N": params.N, "im_mu1": exp.im_mu1, "re_mu2": exp.re_mu2}
        for name, sol in (("first", exp.first), ("second", exp.second)):
            diag[name] = {
                "mu": sol.mu,
                "residual_norm": sol.residual_norm,
                "rhs_norm": sol.rhs_norm,
                "relative_residual": sol.relative_residual,
            }
        with open(values["out"], "w") as fh:
            json.dump(diag, fh, indent=1)
    return EXIT_OK


def _sweep_row(op, params, form, cache_root):
    cache = ReportCache(cache_root) if cache_root else None
    try:
        report, _ = spectrum_dict(op, params, form, cache)
    except SolverError as exc:
        return params.as_dict(), None, f"solver error: {exc}"
    return params.as_dict(), report, "ok"


def sweep_csv(rows):
    """Deterministic CSV text: rows sorted by ``(a, sigma, n, N)``."""
    rows = sorted(rows, key=lambda r: (r[0]["a"], r[0]["sigma"], r[0]["n"], r[0]["N"]))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for p, report, status in rows:
        head = [_fmt(p["a"]), _fmt(p["sigma"]), p["n"], p["N"]]
        if report is None:
            writer.writerow(head + ["", "", "", "", status])
            continue
        near = report["nearest_zero"]["value"]
        writer.writerow(head + [
            _fmt(report["min_real"]), _fmt(report["second_min_real"]),
            _fmt(report["max_abs_imag"]), _fmt(float(np.hypot(*near))), status,
        ])
    return buf.getvalue()


def cmd_sweep(args):
    many = ("a", "sigma", "n", "N")
    values = resolve(args, ("op", "form", "jobs", "cache", "out") + many, many=many)
    if values["a"] is None:
        raise InvalidConfig("--a is required")
    if values["op"] not in ("L", "M"):
        raise InvalidConfig(f"--op must be L or M, got {values['op']!r}")
    if values["form"] not in ("reduced", "generalized") or (values["op"] == "M" and values["form"] != "reduced"):
        raise InvalidConfig(f"invalid --form {values['form']!r} for operator {values['op']}")
    if values["jobs"] < 1:
        raise InvalidConfig("--jobs must be at least 1")
    grid = [
        Params(a=a, sigma=s, n=n, N=N)
        for a, s, n, N in itertools.product(values["a"], values["sigma"], values["n"], values["N"])
    ]
    cache_root = None if args.no_cache else values["cache"]
    rows = _run(_sweep_row, [(values["op"], p, values["form"], cache_root) for p in grid], values["jobs"])
    text = sweep_csv(rows)
    if values["out"]:
        with open(values["out"], "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if any(status == "ok" for _, _, status in rows) else EXIT_SOLVER


def build_parser():
    parser = argparse.ArgumentParser(
        prog="landau-spectra",
        description="Spectra of the linearized stream and swirl operators around Landau solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *flags):
        p.add_argument("--config", help="key = value file; flags given here take precedence")
        if "cache" in flags:
            p.add_argument("--cache", help=f"cache directory (default {DEFAULT_CACHE_DIR})")
            p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
        if "out" in flags:
            p.add_argument("--out", help="output path")

    p = sub.add_parser("spectrum", help="eigenvalues of one operator")
    p.add_argument("--op", choices=("L", "M"))
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--N", type=int)
    p.add_argument("--form", choices=("reduced", "generalized"))
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--svg", nargs="?", const="", help="also write an eigenvalue scatter as SVG")
    common(p, "cache", "out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("table", help="recompute a published table and diff it")
    p.add_argument("--id", type=int)
    p.add_argument("--form", choices=("reduced", "generalized"))
    p.add_argument("--jobs", type=int)
    common(p, "cache", "out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("kernel", help="kernel diagnostics of the n = 0 stream operator")
    p.add_argument("--a", type=float)
    p.add_argument("--N", type=int)
    common(p, "out")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("mu2", help="second-order small-sigma coefficient Re mu_2")
    p.add_argument("--a", type=float)
    p.add_argument("--N", type=int)
    common(p, "out")
    p.set_defaults(func=cmd_mu2)

    p = sub.add_parser("sweep", help="spectra over a parameter grid, as CSV")
    p.add_argument("--op", choices=("L", "M"))
    p.add_argument("--a", type=float, nargs="+")
    p.add_argument("--sigma", type=float, nargs="+")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--N", type=int, nargs="+")
    p.add_argument("--form", choices=("reduced", "generalized"))
    p.add_argument("--jobs", type=int)
    common(p, "cache", "out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidConfig, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SolverError, np.linalg.LinAlgError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
