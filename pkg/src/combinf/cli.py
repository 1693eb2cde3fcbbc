"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter validation, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import exact, mst, simulation, svgplot
from .connectivity import heritability_index, twin_edgewise_correlation
from .errors import DataError, ValidationError
from .matrixio import CohortManifest, read_matrix_csv, write_matrix_csv

_MODE_MAP = {
    "distance": mst.WeightMode.DISTANCE,
    "one-minus": mst.WeightMode.ONE_MINUS_SIMILARITY,
    "max-tree": mst.WeightMode.MAX_TREE,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _format_pvalue(pv: exact.ExactPValue) -> str:
    return f"{pv.real_value:.6g} (exact {pv.numerator}/{pv.denominator})"


def cmd_pvalue(args) -> int:
    pv = exact.exact_pvalue(args.q, args.d)
    print(f"P(D_{args.q} >= {args.d}) = {_format_pvalue(pv)}")
    return 0


def _write_step_csv(path, curve_a, curve_b, label_a, label_b) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["series", "weight", "edges_added"])
        for label, curve in ((label_a, curve_a), (label_b, curve_b)):
            for w, c in curve:
                writer.writerow([label, repr(float(w)), c])


def _compare_report(ma, mb, mode, name_a, name_b, localize_center=None,
                    localize_radius=None, svg=None, csv_out=None) -> int:
    forest_a, weights_a = mst.mst_from_connectivity(ma, mode)
    forest_b, weights_b = mst.mst_from_connectivity(mb, mode)
    cmp = mst.compare_msts(weights_a, weights_b)
    print(f"q = {cmp.q}")
    print(f"D = {cmp.d} at weight {cmp.argmax_weight:.6g}")
    print(f"p-value = {_format_pvalue(cmp.p_value)}")
    if cmp.ties_absorbed:
        print("warning: tied weights across sequences were absorbed; "
              "exactness assumes tie-free data", file=sys.stderr)
    curve_a = mst.growth_curve(weights_a)
    curve_b = mst.growth_curve(weights_b)
    if localize_center is not None:
        radius = localize_radius if localize_radius is not None else 0.0
        nodes = mst.localize_nodes(forest_a, forest_b, localize_center, radius)
        print(f"nodes within {radius:.6g} of weight {localize_center:.6g}:")
        for label in nodes:
            print(f"  {label}")
    if svg:
        svgplot.write_growth_curve_svg(svg, curve_a, curve_b, name_a, name_b,
                                       marker_weight=cmp.argmax_weight)
    if csv_out:
        _write_step_csv(csv_out, curve_a, curve_b, name_a, name_b)
    return 0


def cmd_compare(args) -> int:
    ma = read_matrix_csv(args.matrix_a)
    mb = read_matrix_csv(args.matrix_b)
    if ma.p != mb.p:
        raise DataError(f"matrix dimensions differ: {ma.p} vs {mb.p}")
    if ma.labels != mb.labels:
        only_a = sorted(set(ma.labels) - set(mb.labels))
        only_b = sorted(set(mb.labels) - set(ma.labels))
        raise DataError(
            f"node labels differ (only in A: {only_a[:5]}, only in B: {only_b[:5]})")
    return _compare_report(
        ma, mb, _MODE_MAP[args.mode],
        Path(args.matrix_a).stem, Path(args.matrix_b).stem,
        localize_center=args.localize_center,
        localize_radius=args.localize_radius,
        svg=args.svg, csv_out=args.csv)


def cmd_heritability(args) -> int:
    cohort_mz = CohortManifest.load(args.mz).load_cohort()
    cohort_dz = CohortManifest.load(args.dz).load_cohort()
    if cohort_mz.labels != cohort_dz.labels:
        raise DataError("MZ and DZ cohorts have different node labels")
    c_mz = twin_edgewise_correlation(cohort_mz, symmetrize=args.symmetrize)
    c_dz = twin_edgewise_correlation(cohort_dz, symmetrize=args.symmetrize)
    hi = heritability_index(c_mz, c_dz)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(c_mz, out / "C_MZ.csv")
    write_matrix_csv(c_dz, out / "C_DZ.csv")
    write_matrix_csv(hi, out / "HI.csv")
    print(f"wrote C_MZ.csv, C_DZ.csv, HI.csv to {out}")
    return _compare_report(c_mz, c_dz, mst.WeightMode.ONE_MINUS_SIMILARITY,
                           "MZ", "DZ",
                           localize_center=args.localize_center,
                           localize_radius=args.localize_radius)


def cmd_simulate(args) -> int:
    try:
        doc = json.loads(Path(args.config).read_text())
    except OSError as err:
        raise DataError(f"cannot read config {args.config}: {err}") from err
    except json.JSONDecodeError as err:
        raise DataError(f"{args.config}: invalid JSON: {err}") from err
    cfg = simulation.SimulationConfig.from_json(doc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def progress(label, done, total):
        print(f"\r{label}: {done}/{total}", end="", file=sys.stderr, flush=True)
        if done == total:
            print(file=sys.stderr)

    report = simulation.run_experiment(cfg, progress=progress)
    (out / "report.json").write_text(report.to_json_text())
    table = report.to_text_table()
    (out / "report.txt").write_text(table)
    print(table, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="combinf",
                     description="Exact combinatorial inference on MST shapes "
                                 "of connectivity networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pvalue", help="exact P(D_q >= d)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_pvalue)

    p = sub.add_parser("compare", help="compare the spanning trees of two matrices")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.add_argument("--mode", choices=sorted(_MODE_MAP), default="distance")
    p.add_argument("--localize-center", type=float, default=None)
    p.add_argument("--localize-radius", type=float, default=None)
    p.add_argument("--svg", default=None, help="write growth-curve plot")
    p.add_argument("--csv", default=None, help="write both step functions")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("heritability", help="twin heritability pipeline")
    p.add_argument("--mz", required=True, help="MZ cohort manifest (JSON)")
    p.add_argument("--dz", required=True, help="DZ cohort manifest (JSON)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--symmetrize", action="store_true")
    p.add_argument("--localize-center", type=float, default=None)
    p.add_argument("--localize-radius", type=float, default=None)
    p.set_defaults(func=cmd_heritability)

    p = sub.add_parser("simulate", help="modular-network benchmark")
    p.add_argument("--config", required=True, help="SimulationConfig JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except DataError as err:
        print(f"data error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
