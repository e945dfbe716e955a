"""A desk-scale version of the paper-style comparison pipeline.

Runs a small experiment grid (two problems, three variants, a handful of
seeds), persists the run records, and renders the significance table with
+/-/= marks against the no-discretization baseline. Scale the knobs up
(runs=30, max_generations=200, population_size=100, the full problem list)
to reproduce the published protocol.
"""

import tempfile
from pathlib import Path

from emodisc import load_config, render_table, run_experiment
from emodisc.harness import resolve_config

out_dir = Path(tempfile.mkdtemp(prefix="emodisc_demo_"))

cfg = resolve_config(
    "custom",
    problems_list=["dtlz1", "dtlz2"],
    objectives=[3],
    variables={3: 30},
    algorithms=["none", "dd", "od"],
    runs=6,
    base_seed=99,
    population_size=40,
    max_generations=40,
    reference_size=500,
    out_dir=str(out_dir),
)

records = run_experiment(cfg)
print(f"executed {len(records)} runs -> {out_dir}")

table = render_table(records, baseline="none")
print(table.to_csv())

# configs round-trip through JSON, so a stored experiment is re-runnable
reloaded = load_config(out_dir / "config.json")
assert reloaded == cfg
print("stored config reloads identically")
