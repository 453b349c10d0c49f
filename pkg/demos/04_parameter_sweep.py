"""A small parameter sweep with figure-ready CSV output.

Runs the four corner cells of the learning-parameter space at reduced
repetition count, attaches the exhaustive-oracle reference, and leaves
the datasets under demos/out/ (see the figure package for plotting).
"""

import dataclasses
from pathlib import Path

from qreuse import (
    load_scenario,
    load_sweep_spec,
    report,
    run_sweep,
    solve_oracles,
)

# the bundled preset runs 100 repetitions; trim it for a quick demo
spec = dataclasses.replace(load_sweep_spec("corners"), repetitions=10)
print(f"sweep: {len(spec.cells)} cells x {spec.repetitions} repetitions "
      f"of {spec.iterations} iterations each")

result = run_sweep(spec)
oracles = solve_oracles(load_scenario(spec.scenario))

out = Path(__file__).parent / "out"
report(result, oracles, out)

print(f"\n{'alpha':>6} {'gamma':>6} {'eps0':>5}   mean Mbps    std   vs optimum")
for cell in result.cells:
    frac = cell.mean_aggregate_bps / oracles.aggregate.value
    print(f"{cell.alpha:6.2f} {cell.gamma:6.2f} {cell.eps0:5.2f}   "
          f"{cell.mean_aggregate_bps / 1e6:9.1f} {cell.std_aggregate_bps / 1e6:6.1f}"
          f"   {frac:8.1%}")

print(f"\ndatasets written to {out}/:")
for p in sorted(out.iterdir()):
    print(f"  {p.name}")
print("\nfull-size version:  qreuse sweep corners --out runs/corners")
