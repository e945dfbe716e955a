"""Command line interface.

Subcommands:

* ``run``          execute an experiment grid and persist run records
* ``table``        render a comparison table from stored records
* ``trajectories`` emit per-generation indicator CSV for one problem
* ``refset``       export or import reference sets

Exit codes: 0 on success, 1 on configuration errors, 2 when at least one
experiment cell failed at runtime.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness, metrics, problems
from .core import RandomSource
from .harness import ConfigError


def _parse_list(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _parse_variables(text: str) -> dict[int, int] | int:
    """Either a single count ("7") or per-M pairs ("5=9,10=14,15=19")."""
    if "=" not in text:
        return int(text)
    mapping = {}
    for pair in _parse_list(text):
        m, n = pair.split("=")
        mapping[int(m)] = int(n)
    return mapping


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emodisc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute an experiment grid")
    run_p.add_argument("--config", help="JSON config file (flags override it)")
    run_p.add_argument("--class", dest="experiment_class", help="experiment class name or 'custom'")
    run_p.add_argument("--problem", help="comma-separated problem names")
    run_p.add_argument("--objectives", help="comma-separated objective counts")
    run_p.add_argument("--variables", help="variable count, or per-M pairs like 5=9,10=14")
    run_p.add_argument("--algorithm", help="comma-separated subset of none,dd,od,bd")
    run_p.add_argument("--runs", type=int)
    run_p.add_argument("--seed", type=int, dest="base_seed")
    run_p.add_argument("--pop-size", type=int, dest="population_size")
    run_p.add_argument("--generations", type=int, dest="max_generations")
    run_p.add_argument("--out", dest="out_dir")
    run_p.add_argument("--jobs", type=int)
    run_p.add_argument("--trace-metrics", action="store_true", default=None)
    run_p.add_argument("--refset-path", dest="refset_dir", help="directory with refset_<problem>_M<M>.csv overrides")
    run_p.add_argument("--refset-size", type=int, dest="reference_size")

    table_p = sub.add_parser("table", help="render comparison table from stored records")
    table_p.add_argument("--records", required=True, help="directory of run record JSONs")
    table_p.add_argument("--baseline", default="none")
    table_p.add_argument("--label", help="class label for the output file name")
    table_p.add_argument("--out", help="output CSV path (default <records>/table_<label>.csv)")

    traj_p = sub.add_parser("trajectories", help="emit per-generation indicator CSV")
    traj_p.add_argument("--records", required=True)
    traj_p.add_argument("--problem", required=True)
    traj_p.add_argument("--objectives", type=int, required=True)
    traj_p.add_argument("--out", help="output CSV path (default <records>/traj_<problem>_M<M>.csv)")

    ref_p = sub.add_parser("refset", help="export or import reference sets")
    ref_sub = ref_p.add_subparsers(dest="refset_command", required=True)
    exp_p = ref_sub.add_parser("export", help="build a reference set and write it as CSV")
    exp_p.add_argument("--problem", required=True)
    exp_p.add_argument("--objectives", type=int, required=True)
    exp_p.add_argument("--variables", type=int, required=True)
    exp_p.add_argument("--size", type=int, default=10000)
    exp_p.add_argument("--seed", type=int, default=1)
    exp_p.add_argument("--path", required=True, help="output CSV path")
    imp_p = ref_sub.add_parser("import", help="validate a CSV and install it as an override")
    imp_p.add_argument("--path", required=True, help="input CSV path")
    imp_p.add_argument("--problem", required=True)
    imp_p.add_argument("--objectives", type=int, required=True)
    imp_p.add_argument("--refset-dir", required=True, help="override directory used by run --refset-path")
    return parser


def _cmd_run(args) -> int:
    overrides = {
        "experiment_class": args.experiment_class,
        "problems": _parse_list(args.problem) if args.problem else None,
        "objectives": [int(m) for m in _parse_list(args.objectives)] if args.objectives else None,
        "variables": _parse_variables(args.variables) if args.variables else None,
        "algorithms": _parse_list(args.algorithm) if args.algorithm else None,
        "runs": args.runs,
        "base_seed": args.base_seed,
        "population_size": args.population_size,
        "max_generations": args.max_generations,
        "out_dir": args.out_dir,
        "jobs": args.jobs,
        "trace_metrics": args.trace_metrics,
        "refset_dir": args.refset_dir,
        "reference_size": args.reference_size,
    }
    cfg = harness.load_config(args.config, overrides)
    records = harness.run_experiment(cfg)
    expected = len(harness.experiment_cells(cfg))
    print(f"completed {len(records)}/{expected} cells -> {cfg.out_dir}")
    return 0 if len(records) == expected else 2


def _cmd_table(args) -> int:
    records = harness.load_records(args.records)
    table = harness.render_table(records, baseline=args.baseline)
    label = args.label
    if label is None:
        config_path = Path(args.records) / "config.json"
        label = "records"
        if config_path.exists():
            label = json.loads(config_path.read_text()).get("experiment_class", label)
    out = Path(args.out) if args.out else Path(args.records) / f"table_{label}.csv"
    out.write_text(table.to_csv())
    print(f"wrote {out}")
    return 0


def _cmd_trajectories(args) -> int:
    records = harness.load_records(args.records)
    csv_text = harness.emit_trajectories(records, args.problem, args.objectives)
    out = (
        Path(args.out)
        if args.out
        else Path(args.records) / f"traj_{args.problem}_M{args.objectives}.csv"
    )
    out.write_text(csv_text)
    print(f"wrote {out}")
    return 0


def _cmd_refset(args) -> int:
    if args.refset_command == "export":
        spec = problems.make_problem(args.problem, args.objectives, args.variables)
        ref = metrics.build_reference_set(spec, args.size, RandomSource(args.seed))
        metrics.save_reference_csv(ref, args.path)
        print(f"wrote {len(ref)} points -> {args.path}")
        return 0
    ref = metrics.load_reference_csv(args.path, problem=f"{args.problem}_M{args.objectives}")
    if ref.points.shape[1] != args.objectives:
        raise ConfigError("path", f"reference file has {ref.points.shape[1]} columns, expected {args.objectives}")
    target_dir = Path(args.refset_dir)
    target_dir.mkdir(parents=True, exist_ok=True)
    target = target_dir / f"refset_{args.problem}_M{args.objectives}.csv"
    metrics.save_reference_csv(ref, target)
    print(f"installed {len(ref)} points -> {target}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "table": _cmd_table,
        "trajectories": _cmd_trajectories,
        "refset": _cmd_refset,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
