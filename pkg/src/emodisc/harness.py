"""Experiment harness: configuration, batch execution over
(problem x objectives x algorithm x seed) cells, JSON persistence of run
records, and emission of comparison tables and trajectory CSVs.

Cell seeds are stable hashes of (base_seed, problem, M, algorithm, run
index), so any cell can be reproduced in isolation and batch output is
independent of execution order and worker count.
"""

from __future__ import annotations

import hashlib
import json
import re
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import metrics, nsga2, problems, stats
from .core import RandomSource
from .discretization import STRATEGIES, DiscretizationConfig
from .metrics import ReferenceSet
from .nsga2 import AlgorithmConfig, GenerationTrace, RunRecord
from .problems import PROBLEM_NAMES

SCHEMA_VERSION = 1

CLASS_SETTINGS: dict[str, dict] = {
    "standard": {"objectives": (3,), "variables": {3: 7}},
    "large_scale": {"objectives": (3,), "variables": {3: 1000}},
    "many_objective": {"objectives": (5, 10, 15), "variables": {5: 9, 10: 14, 15: 19}},
    "large_scale_many_objective": {
        "objectives": (5, 10, 15),
        "variables": {5: 1000, 10: 1000, 15: 1000},
    },
}


class ConfigError(ValueError):
    """Configuration problem; names the offending field."""

    def __init__(self, fieldname: str, message: str):
        super().__init__(f"{fieldname}: {message}")
        self.fieldname = fieldname


@dataclass(frozen=True)
class ExperimentConfig:
    experiment_class: str
    problems: tuple[str, ...]
    objectives: tuple[int, ...]
    variables: dict[int, int]  # objective count -> variable count
    algorithms: tuple[str, ...]
    runs: int = 30
    base_seed: int = 1
    population_size: int = 100
    max_generations: int = 200
    out_dir: str = "results"
    jobs: int = 1
    trace_metrics: bool = False
    reference_size: int = 10000
    refset_dir: str | None = None


def resolve_config(
    experiment_class: str,
    problems_list=None,
    objectives=None,
    variables=None,
    algorithms=None,
    **rest,
) -> ExperimentConfig:
    """Build and validate a fully resolved ExperimentConfig.

    Named experiment classes pin their objective/variable counts; passing
    conflicting values is rejected rather than silently merged. Fully custom
    combinations require experiment_class="custom".
    """
    if experiment_class in CLASS_SETTINGS:
        pinned = CLASS_SETTINGS[experiment_class]
        if objectives is not None and tuple(int(m) for m in objectives) != pinned["objectives"]:
            raise ConfigError(
                "objectives",
                f"class {experiment_class!r} fixes objectives to {pinned['objectives']}; "
                "use experiment_class='custom' to override",
            )
        if variables is not None:
            if isinstance(variables, int):
                provided = {m: variables for m in pinned["objectives"]}
            else:
                provided = {int(m): int(n) for m, n in dict(variables).items()}
            if provided != pinned["variables"]:
                raise ConfigError(
                    "variables",
                    f"class {experiment_class!r} fixes variable counts to {pinned['variables']}; "
                    "use experiment_class='custom' to override",
                )
        objectives = pinned["objectives"]
        variables = dict(pinned["variables"])
    elif experiment_class == "custom":
        if objectives is None:
            raise ConfigError("objectives", "custom class requires explicit objective counts")
        objectives = tuple(int(m) for m in objectives)
        if variables is None:
            raise ConfigError("variables", "custom class requires explicit variable counts")
        if isinstance(variables, int):
            variables = {m: variables for m in objectives}
        variables = {int(m): int(n) for m, n in dict(variables).items()}
        missing = [m for m in objectives if m not in variables]
        if missing:
            raise ConfigError("variables", f"no variable count for M={missing}")
    else:
        raise ConfigError(
            "experiment_class",
            f"unknown class {experiment_class!r}; expected one of "
            f"{sorted(CLASS_SETTINGS)} or 'custom'",
        )

    problems_list = tuple(problems_list) if problems_list is not None else PROBLEM_NAMES
    for p in problems_list:
        if p not in PROBLEM_NAMES:
            raise ConfigError("problems", f"unknown problem {p!r}")
    algorithms = tuple(algorithms) if algorithms is not None else STRATEGIES
    for a in algorithms:
        if a not in STRATEGIES:
            raise ConfigError("algorithms", f"unknown algorithm {a!r}")
    for m in objectives:
        if variables[m] < m:
            raise ConfigError("variables", f"n={variables[m]} is below M={m}")

    cfg = ExperimentConfig(
        experiment_class=experiment_class,
        problems=problems_list,
        objectives=tuple(int(m) for m in objectives),
        variables={int(m): int(n) for m, n in variables.items()},
        algorithms=algorithms,
        **rest,
    )
    if cfg.runs < 1:
        raise ConfigError("runs", "must be at least 1")
    if not 0 <= cfg.base_seed < 2**64:
        raise ConfigError("base_seed", "must fit in 64 unsigned bits")
    if cfg.population_size < 2 or cfg.population_size % 2:
        raise ConfigError("population_size", "must be even and at least 2")
    if cfg.max_generations < 0:
        raise ConfigError("max_generations", "must be non-negative")
    if cfg.jobs < 1:
        raise ConfigError("jobs", "must be at least 1")
    if cfg.reference_size < max(cfg.objectives):
        raise ConfigError("reference_size", "must be at least the objective count")
    return cfg


def config_to_dict(cfg: ExperimentConfig) -> dict:
    d = asdict(cfg)
    d["variables"] = {str(m): n for m, n in cfg.variables.items()}
    return d


def load_config(path=None, overrides: dict | None = None) -> ExperimentConfig:
    """Resolve a config from a JSON file, CLI-style overrides, or both.

    Override values of None are ignored; explicit values replace file values.
    """
    data: dict = {}
    if path is not None:
        with open(path) as fh:
            data = json.load(fh)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    if "experiment_class" not in data:
        raise ConfigError("experiment_class", "missing (choose a named class or 'custom')")
    known = {
        "experiment_class", "problems", "objectives", "variables", "algorithms",
        "runs", "base_seed", "population_size", "max_generations", "out_dir",
        "jobs", "trace_metrics", "reference_size", "refset_dir",
    }
    unknown = set(data) - known
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown configuration key")
    variables = data.get("variables")
    if isinstance(variables, dict):
        variables = {int(m): int(n) for m, n in variables.items()}
    return resolve_config(
        data["experiment_class"],
        problems_list=data.get("problems"),
        objectives=data.get("objectives"),
        variables=variables,
        algorithms=data.get("algorithms"),
        **{
            k: data[k]
            for k in (
                "runs", "base_seed", "population_size", "max_generations",
                "out_dir", "jobs", "trace_metrics", "reference_size", "refset_dir",
            )
            if k in data
        },
    )


def save_config(cfg: ExperimentConfig, path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg), indent=2, sort_keys=True) + "\n")


def cell_seed(base_seed: int, problem: str, M: int, algorithm: str, run_index: int) -> int:
    """Stable 64-bit seed for one experiment cell."""
    key = f"{base_seed}|{problem}|{M}|{algorithm}|{run_index}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def experiment_cells(cfg: ExperimentConfig) -> list[tuple[str, int, str, int]]:
    """All (problem, M, algorithm, run_index) cells in canonical order."""
    return [
        (p, M, a, r)
        for p in cfg.problems
        for M in cfg.objectives
        for a in cfg.algorithms
        for r in range(cfg.runs)
    ]


def reference_set_for(cfg: ExperimentConfig, problem: str, M: int) -> ReferenceSet:
    """Load (if an override file exists) or build the reference set for a cell."""
    if cfg.refset_dir is not None:
        override = Path(cfg.refset_dir) / f"refset_{problem}_M{M}.csv"
        if override.exists():
            return metrics.load_reference_csv(override, problem=f"{problem}_M{M}")
    spec = problems.make_problem(problem, M, cfg.variables[M])
    rng = RandomSource(cell_seed(cfg.base_seed, problem, M, "refset", 0))
    return metrics.build_reference_set(spec, cfg.reference_size, rng)


def _run_cell(payload: dict) -> RunRecord:
    spec = problems.make_problem(payload["problem"], payload["M"], payload["n"])
    cfg = AlgorithmConfig(
        population_size=payload["population_size"],
        max_generations=payload["max_generations"],
        discretization=DiscretizationConfig(strategy=payload["algorithm"]),
    )
    ref = None
    if payload["refpoints"] is not None:
        ref = ReferenceSet(points=payload["refpoints"], problem=payload["problem"])
    return nsga2.run(spec, cfg, RandomSource(payload["seed"]), ref)


def run_experiment(cfg: ExperimentConfig) -> list[RunRecord]:
    """Execute every cell of the experiment grid, persisting records as they
    complete.

    A failing cell is recorded in ``<out>/failures.json`` and the batch
    continues; successful records are returned sorted in canonical cell
    order. Final IGD/GD values are always filled in (per-generation traces
    additionally carry them when ``trace_metrics`` is set).
    """
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_config(cfg, out / "config.json")

    refsets = {
        (p, M): reference_set_for(cfg, p, M) for p in cfg.problems for M in cfg.objectives
    }
    cells = experiment_cells(cfg)
    payloads = [
        {
            "problem": p,
            "M": M,
            "n": cfg.variables[M],
            "algorithm": a,
            "seed": cell_seed(cfg.base_seed, p, M, a, r),
            "population_size": cfg.population_size,
            "max_generations": cfg.max_generations,
            "refpoints": refsets[(p, M)].points if cfg.trace_metrics else None,
        }
        for (p, M, a, r) in cells
    ]

    records: list[RunRecord] = []
    failures: list[dict] = []

    def finish(index: int, record: RunRecord) -> None:
        p, M, a, r = cells[index]
        if record.final_igd is None:
            record.final_igd = metrics.igd(record.final_objectives, refsets[(p, M)])
            record.final_gd = metrics.gd(record.final_objectives, refsets[(p, M)])
        save_record(record, out)
        records.append(record)

    def fail(index: int, exc: Exception) -> None:
        p, M, a, r = cells[index]
        failures.append(
            {
                "problem": p,
                "M": M,
                "algorithm": a,
                "run_index": r,
                "seed": payloads[index]["seed"],
                "error": f"{type(exc).__name__}: {exc}",
            }
        )

    if cfg.jobs == 1:
        for i, payload in enumerate(payloads):
            try:
                finish(i, _run_cell(payload))
            except Exception as exc:  # record and continue the batch
                fail(i, exc)
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = {pool.submit(_run_cell, payload): i for i, payload in enumerate(payloads)}
            for fut in as_completed(futures):
                i = futures[fut]
                try:
                    finish(i, fut.result())
                except Exception as exc:
                    fail(i, exc)

    if failures:
        failures.sort(key=lambda f: (f["problem"], f["M"], f["algorithm"], f["run_index"]))
        (out / "failures.json").write_text(json.dumps(failures, indent=2) + "\n")

    order = {cell: i for i, cell in enumerate(cells)}
    records.sort(key=lambda rec: order[(rec.problem, rec.M, rec.algorithm, _run_index_of(rec, cfg))])
    return records


def _run_index_of(record: RunRecord, cfg: ExperimentConfig) -> int:
    for r in range(cfg.runs):
        if cell_seed(cfg.base_seed, record.problem, record.M, record.algorithm, r) == record.seed:
            return r
    return cfg.runs  # foreign record; sort after known cells


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def record_to_dict(record: RunRecord) -> dict:
    """Canonical JSON form; deliberately excludes wall-clock duration so a
    rerun with the same seed serializes bit-identically."""
    return {
        "schema": SCHEMA_VERSION,
        "problem": record.problem,
        "M": record.M,
        "n": record.n,
        "algorithm": record.algorithm,
        "seed": record.seed,
        "population_size": record.population_size,
        "max_generations": record.max_generations,
        "generations": [t.generation for t in record.traces],
        "igd": [t.igd for t in record.traces],
        "gd": [t.gd for t in record.traces],
        "final_igd": record.final_igd,
        "final_gd": record.final_gd,
        "final_decisions": record.final_decisions.tolist(),
        "final_objectives": record.final_objectives.tolist(),
    }


def record_from_dict(data: dict) -> RunRecord:
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported record schema: {data.get('schema')!r}")
    traces = [
        GenerationTrace(generation=g, igd=i, gd=d)
        for g, i, d in zip(data["generations"], data["igd"], data["gd"])
    ]
    return RunRecord(
        problem=data["problem"],
        M=data["M"],
        n=data["n"],
        algorithm=data["algorithm"],
        seed=data["seed"],
        population_size=data["population_size"],
        max_generations=data["max_generations"],
        traces=traces,
        final_decisions=np.asarray(data["final_decisions"], dtype=float),
        final_objectives=np.asarray(data["final_objectives"], dtype=float),
        final_igd=data["final_igd"],
        final_gd=data["final_gd"],
    )


def record_filename(record: RunRecord) -> str:
    return f"{record.problem}_M{record.M}_{record.algorithm}_seed{record.seed}.json"


def save_record(record: RunRecord, out_dir) -> Path:
    path = Path(out_dir) / record_filename(record)
    path.write_text(json.dumps(record_to_dict(record), sort_keys=True) + "\n")
    return path


def load_records(out_dir) -> list[RunRecord]:
    """Load every run record JSON in a directory (canonically sorted)."""
    recs = []
    for path in sorted(Path(out_dir).glob("*_seed*.json")):
        with open(path) as fh:
            recs.append(record_from_dict(json.load(fh)))
    recs.sort(key=lambda r: (_problem_order(r.problem), r.M, _algorithm_order(r.algorithm), r.seed))
    return recs


def _problem_order(problem: str):
    return (PROBLEM_NAMES.index(problem), "") if problem in PROBLEM_NAMES else (len(PROBLEM_NAMES), problem)


def _algorithm_order(algorithm: str):
    return STRATEGIES.index(algorithm) if algorithm in STRATEGIES else len(STRATEGIES)


# ---------------------------------------------------------------------------
# tables and trajectories
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellStats:
    mean: float
    std: float
    mark: str
    p_value: float


@dataclass(frozen=True)
class TableRow:
    problem: str
    M: int
    cells: dict[str, CellStats]
    best: str


@dataclass(frozen=True)
class ComparisonTable:
    algorithms: tuple[str, ...]
    baseline: str
    rows: tuple[TableRow, ...]
    footer: dict[str, tuple[int, int, int]]  # algorithm -> (+, -, =) counts

    def to_csv(self) -> str:
        header = ["problem", "M"]
        for a in self.algorithms:
            header += [f"{a}_mean", f"{a}_std", f"{a}_mark"]
        header.append("best")
        lines = [",".join(header)]
        for row in self.rows:
            cols = [row.problem, str(row.M)]
            for a in self.algorithms:
                cell = row.cells[a]
                cols += [format_scientific(cell.mean, 4), format_scientific(cell.std, 2), cell.mark]
            cols.append(row.best)
            lines.append(",".join(cols))
        footer_cols = ["+/-/=", ""]
        for a in self.algorithms:
            plus, minus, equal = self.footer[a]
            footer_cols += ["", "", f"{plus}/{minus}/{equal}"]
        footer_cols.append("")
        lines.append(",".join(footer_cols))
        return "\n".join(lines) + "\n"


def format_scientific(x: float, mantissa_decimals: int) -> str:
    """Scientific notation with the exponent stripped of leading zeros,
    e.g. 23397.4 -> '2.3397e+4'."""
    return re.sub(r"e([+-])0*(\d+)$", r"e\1\2", f"{x:.{mantissa_decimals}e}")


def render_table(records: list[RunRecord], baseline: str = "none") -> ComparisonTable:
    """Aggregate final IGD values into a paper-style comparison table.

    Rows are keyed by (problem, M); each algorithm column carries mean,
    standard deviation, and its significance mark against the baseline
    algorithm; the footer tallies marks per column.
    """
    grouped: dict[tuple[str, int], dict[str, list[float]]] = {}
    algorithms_seen: set[str] = set()
    for rec in records:
        if rec.final_igd is None:
            raise ValueError("records must carry final IGD values before table rendering")
        grouped.setdefault((rec.problem, rec.M), {}).setdefault(rec.algorithm, []).append(
            rec.final_igd
        )
        algorithms_seen.add(rec.algorithm)
    if not grouped:
        raise ValueError("no records to tabulate")
    if baseline not in algorithms_seen:
        raise ValueError(f"baseline algorithm {baseline!r} has no records")

    algorithms = tuple(sorted(algorithms_seen, key=_algorithm_order))
    rows = []
    tallies = {a: [0, 0, 0] for a in algorithms}
    for (problem, M) in sorted(grouped, key=lambda k: (_problem_order(k[0]), k[1])):
        cells_raw = grouped[(problem, M)]
        if set(cells_raw) != set(algorithms):
            missing = sorted(set(algorithms) - set(cells_raw))
            raise ValueError(f"({problem}, M={M}) lacks records for {missing}")
        base_summary = stats.SampleSummary.from_values(cells_raw[baseline])
        cells = {}
        for a in algorithms:
            summary = stats.SampleSummary.from_values(cells_raw[a])
            sig = stats.mark(base_summary, summary)
            cells[a] = CellStats(mean=summary.mean, std=summary.std, mark=sig.mark, p_value=sig.p_value)
            tallies[a]["+-=".index(sig.mark)] += 1
        best = min(algorithms, key=lambda a: cells[a].mean)
        rows.append(TableRow(problem=problem, M=M, cells=cells, best=best))
    footer = {a: tuple(t) for a, t in tallies.items()}
    return ComparisonTable(algorithms=algorithms, baseline=baseline, rows=tuple(rows), footer=footer)


def emit_trajectories(records: list[RunRecord], problem: str, M: int) -> str:
    """Long-format per-generation indicator CSV for one (problem, M) pair.

    One row per trace point: generation, algorithm, seed, igd, gd. Metric
    fields are empty for runs recorded without trace metrics.
    """
    selected = [r for r in records if r.problem == problem and r.M == M]
    selected.sort(key=lambda r: (_algorithm_order(r.algorithm), r.seed))
    lines = ["generation,algorithm,seed,igd,gd"]
    for rec in selected:
        for t in rec.traces:
            igd_s = repr(t.igd) if t.igd is not None else ""
            gd_s = repr(t.gd) if t.gd is not None else ""
            lines.append(f"{t.generation},{rec.algorithm},{rec.seed},{igd_s},{gd_s}")
    return "\n".join(lines) + "\n"
