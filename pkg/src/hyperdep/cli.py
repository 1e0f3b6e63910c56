"""Command-line pipeline: simulate, measures, infer, complexity, experiment,
baseline.

One executable, subcommand style. All randomness flows from --seed; every
output embeds the config, the seed, and the tool version, and contains no
timestamps, so identical commands give byte-identical files at any thread
count. Exit codes: 0 ok, 1 usage, 2 data error, 3 internal.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .complexity import phi_total
from .dataset import DataError, load, write as write_dataset
from .entropy import populate
from .hypergraph import (WEIGHT_MEASURES, build_null, enumerate_subsets,
                         export, infer)
from .measures import measure_report, write_reports_jsonl, write_reports_tsv
from .simulator import (KINDS, RNG_NAME, DependencySpec, correlation_matrix,
                        generate, noise_experiment, sample_size_experiment,
                        write_incremental_tsv, write_noise_tsv,
                        write_partition_tsv)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

OUTPUT_DIR_ENV = "HYPERDEP_OUT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tool_block(seed=None) -> dict:
    block = {"name": "hyperdep", "version": __version__}
    if seed is not None:
        block["seed"] = seed
    return block


def _out_dir(args) -> Path:
    d = Path(args.out_dir or os.environ.get(OUTPUT_DIR_ENV, "."))
    d.mkdir(parents=True, exist_ok=True)
    return d


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out-dir", default=None,
                   help=f"output directory (default: ${OUTPUT_DIR_ENV} or .)")
    p.add_argument("--log-base", type=float, default=2.0,
                   help="logarithm base for entropies (default 2, bits)")
    p.add_argument("--threads", type=int, default=1,
                   help="parallel workers; results are identical at any count")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperdep",
                     description="multi-variable dependency detection and "
                                 "hypergraph inference for discrete data")
    parser.add_argument("--version", action="version",
                        version=f"hyperdep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("simulate", help="generate a benchmark dataset")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--n", type=int, default=1000, help="sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name", default=None, help="output file stem")
    _add_common(p)

    p = sub.add_parser("measures",
                       help="per-subset interaction and dependence scores")
    p.add_argument("--input", required=True)
    p.add_argument("--sigma", type=int, default=3, help="max subset size")
    p.add_argument("--target", default=None,
                   help="restrict to subsets containing this variable")
    p.add_argument("--alternating-sign", action="store_true",
                   help="apply the alternating (-1)^m prefactor to the "
                        "symmetric score")
    p.add_argument("--jsonl", default=None, help="also write JSON lines here")
    p.add_argument("--tsv", default=None, help="also write a TSV here")
    _add_common(p)

    p = sub.add_parser("infer", help="infer a weighted dependency hypergraph")
    p.add_argument("--input", required=True)
    p.add_argument("--sigma", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-perm", type=int, default=100,
                   help="permutation replicates for the null threshold")
    p.add_argument("--quantile", type=float, default=0.99)
    p.add_argument("--threshold", type=float, default=None,
                   help="absolute threshold override (skips the null model)")
    p.add_argument("--weight", choices=WEIGHT_MEASURES,
                   default="symmetric_delta")
    p.add_argument("--minimal", action="store_true",
                   help="drop edges that contain a smaller surviving edge")
    p.add_argument("--target", default=None,
                   help="restrict to subsets containing this variable")
    p.add_argument("--alternating-sign", action="store_true")
    p.add_argument("--formats", default="json,dot",
                   help="comma-separated: json, dot")
    p.add_argument("--name", default="hypergraph", help="output file stem")
    _add_common(p)

    p = sub.add_parser("complexity", help="pairwise and subset-level "
                                          "set complexity")
    p.add_argument("--input", required=True)
    p.add_argument("--sigma", type=int, default=2, help="max subset size")
    p.add_argument("--top", type=int, default=10,
                   help="how many components to print")
    p.add_argument("--json", dest="json_out", default=None)
    p.add_argument("--alternating-sign", action="store_true")
    _add_common(p)

    p = sub.add_parser("experiment",
                       help="sample-size and noise sweeps on generated data")
    p.add_argument("--kind", required=True,
                   choices=("partition", "incremental", "noise"))
    p.add_argument("--n", type=int, default=None,
                   help="base sample count (default 5000; 500 for noise)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-subsets", type=int, default=10)
    p.add_argument("--step", type=int, default=100)
    p.add_argument("--n-steps", type=int, default=None)
    p.add_argument("--levels", type=int, default=20)
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--flips-per-level", type=int, default=25)
    p.add_argument("--noise-mode", choices=("redraw", "distinct"),
                   default="redraw")
    p.add_argument("--noise-target", default="W")
    p.add_argument("--name", default=None, help="output file stem")
    _add_common(p)

    p = sub.add_parser("baseline",
                       help="pairwise Pearson/Spearman correlation table")
    p.add_argument("--input", required=True)
    p.add_argument("--json", dest="json_out", default=None)
    _add_common(p)

    return parser


def cmd_simulate(args) -> int:
    spec = DependencySpec(kind=args.kind, n_samples=args.n, seed=args.seed)
    ds = generate(spec)
    stem = args.name or f"{args.kind}_{args.n}_{args.seed}"
    out = _out_dir(args)
    csv_path = out / f"{stem}.csv"
    write_dataset(ds, csv_path)
    provenance = {
        "tool": _tool_block(seed=args.seed),
        "rng": RNG_NAME,
        "kind": args.kind,
        "n_samples": args.n,
        "variables": [{"name": v.name, "cardinality": v.cardinality}
                      for v in ds.variables],
        "file": csv_path.name,
    }
    prov_path = out / f"{stem}.provenance.json"
    prov_path.write_text(json.dumps(provenance, indent=2, sort_keys=True) + "\n")
    print(csv_path)
    return EXIT_OK


def cmd_measures(args) -> int:
    ds = load(args.input)
    if args.sigma > ds.n_vars:
        raise ValueError(f"sigma {args.sigma} exceeds {ds.n_vars} variables")
    containing = ds.index_of(args.target) if args.target else None
    cache = populate(ds, args.sigma, log_base=args.log_base,
                     threads=args.threads)
    subsets = enumerate_subsets(ds.n_vars, args.sigma, containing=containing)
    reports = [measure_report(cache, s, signed=args.alternating_sign)
               for s in subsets]
    write_reports_tsv(reports, sys.stdout, names=ds.names)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            write_reports_jsonl(reports, fh)
    if args.tsv:
        with open(args.tsv, "w", encoding="utf-8") as fh:
            write_reports_tsv(reports, fh, names=ds.names)
    return EXIT_OK


def cmd_infer(args) -> int:
    ds = load(args.input)
    if args.sigma > ds.n_vars:
        raise ValueError(f"sigma {args.sigma} exceeds {ds.n_vars} variables")
    containing = ds.index_of(args.target) if args.target else None
    if args.threshold is not None:
        threshold = args.threshold
    else:
        threshold = build_null(ds, args.sigma, args.n_perm, args.seed,
                               quantile=args.quantile, log_base=args.log_base,
                               weight_measure=args.weight,
                               signed=args.alternating_sign,
                               threads=args.threads)
    hg = infer(ds, args.sigma, threshold, weight_measure=args.weight,
               signed=args.alternating_sign, log_base=args.log_base,
               minimal=args.minimal, containing=containing,
               threads=args.threads)
    hg.meta["seed"] = args.seed
    hg.meta["tool"] = _tool_block()
    hg.meta["input"] = Path(args.input).name
    out = _out_dir(args)
    formats = [f.strip() for f in args.formats.split(",") if f.strip()]
    for fmt in formats:
        path = out / f"{args.name}.{fmt}"
        export(hg, path, fmt=fmt)
        print(path)
    for e in hg.edges:
        label = ",".join(ds.names[i] for i in e.members)
        print(f"edge {{{label}}} weight {e.weight:.6g}", file=sys.stderr)
    return EXIT_OK


def cmd_complexity(args) -> int:
    ds = load(args.input)
    if args.sigma > ds.n_vars:
        raise ValueError(f"sigma {args.sigma} exceeds {ds.n_vars} variables")
    cache = populate(ds, max(args.sigma, 2), log_base=args.log_base,
                     threads=args.threads)
    report = phi_total(cache, max(args.sigma, 2),
                       signed=args.alternating_sign)
    print(f"psi {report.psi:.6g}")
    print(f"phi {report.phi_total:.6g}")
    for members, value in report.top_components(args.top):
        label = ",".join(ds.names[i] for i in members)
        print(f"component {{{label}}} {value:.6g}")
    if args.json_out:
        payload = report.to_json_dict()
        payload["tool"] = _tool_block()
        Path(args.json_out).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    out = _out_dir(args)
    stem = args.name or f"experiment_{args.kind}_{args.seed}"
    if args.kind in ("partition", "incremental"):
        n = args.n if args.n is not None else 5000
        base = generate(DependencySpec(kind="w_of_xy", n_samples=n,
                                       seed=args.seed))
        report = sample_size_experiment(
            base, kind=args.kind, n_subsets=args.n_subsets, step=args.step,
            n_steps=args.n_steps, log_base=args.log_base)
        tsv_writer = (write_partition_tsv if args.kind == "partition"
                      else write_incremental_tsv)
        if args.kind == "partition":
            print(f"focus mean {report.focus_mean:.6g} "
                  f"std {report.focus_std:.6g}")
            print(f"others mean {report.others_mean:.6g} "
                  f"std {report.others_std:.6g}")
    else:
        n = args.n if args.n is not None else 500
        base = generate(DependencySpec(kind="w_of_xy", n_samples=n,
                                       seed=args.seed))
        report = noise_experiment(
            base, n_levels=args.levels, replicates=args.replicates,
            flips_per_level=args.flips_per_level, seed=args.seed,
            target=args.noise_target, mode=args.noise_mode,
            log_base=args.log_base)
        tsv_writer = write_noise_tsv
        print(f"ratio first {report.ratio[0]:.6g} last {report.ratio[-1]:.6g}")
    payload = report.to_json_dict()
    payload["config"] = {"seed": args.seed, "n_base": n,
                         "log_base": args.log_base, "rng": RNG_NAME}
    payload["tool"] = _tool_block()
    (out / f"{stem}.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n")
    with open(out / f"{stem}.tsv", "w", encoding="utf-8") as fh:
        tsv_writer(report, fh)
    print(out / f"{stem}.json")
    return EXIT_OK


def cmd_baseline(args) -> int:
    ds = load(args.input)
    table = correlation_matrix(ds)
    print("pair\tpearson\tspearman\tdegenerate")
    for row in table:
        print(f"{row['pair']}\t{row['pearson']:.6g}\t"
              f"{row['spearman']:.6g}\t{int(row['degenerate'])}")
    if args.json_out:
        payload = {"pairs": table, "tool": _tool_block()}
        Path(args.json_out).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "measures": cmd_measures,
    "infer": cmd_infer,
    "complexity": cmd_complexity,
    "experiment": cmd_experiment,
    "baseline": cmd_baseline,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - last resort
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
