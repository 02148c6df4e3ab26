"""Sweep eta downward and report, for each value, whether some grid triple certifies.

Also runs the bisection optimizer on a config file and prints its history.

    python3 scripts/eta_sweep.py [--config configs/optimize_tightened.json] [--etas 18,17.95,...]
"""

import argparse
import json
import time
from fractions import Fraction

from pinchcert.exactnum import format_rational, parse_rational
from pinchcert.pinching import SearchConfig, feasible_at, optimize_eta

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--config", default=None)
ap.add_argument("--etas", default="18,17.95,17.93,17.9,17.89,17.885,17.88,17.87,17.85")
ap.add_argument("--json", action="store_true")
a = ap.parse_args()

cfg = SearchConfig.from_file(a.config) if a.config else SearchConfig.tightened()
rows = []
for text in a.etas.split(","):
    eta = parse_rational(text)
    t0 = time.perf_counter()
    found = feasible_at(eta, cfg, 6)
    rows.append({
        "eta": format_rational(eta),
        "feasible": found is not None,
        "params": found[0].to_dict() if found else None,
        "seconds": round(time.perf_counter() - t0, 3),
    })

t0 = time.perf_counter()
res = optimize_eta(6, cfg)
summary = {"sweep": rows, "optimizer": res.to_dict(), "optimizer_seconds": round(time.perf_counter() - t0, 3)}
if a.json:
    print(json.dumps(summary, indent=2))
else:
    for r in rows:
        mark = "feasible  " if r["feasible"] else "not found "
        print(f"eta = {float(Fraction(r['eta'])):10.5f}  {mark} {r['params'] or ''}")
    if res.feasible:
        print(f"\noptimizer: best eta = {format_rational(res.best_eta)} ({float(res.best_eta):.6f})")
        print(f"params: {res.params.to_dict()}")
    else:
        print(f"\noptimizer: {res.status}")
    print(f"optimizer time: {summary['optimizer_seconds']} s")
