"""Run the exact spectral oracle over several dimensions and seeds.

    python3 scripts/run_oracle.py [--ns 6,8,12] [--eta 18] [--trials 10000] [--seeds 0]
"""

import argparse
import json
import time

from pinchcert.exactnum import parse_rational
from pinchcert.lemmas import sample_spectra

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--ns", default="6,8,12")
ap.add_argument("--eta", default="18")
ap.add_argument("--trials", type=int, default=10**4)
ap.add_argument("--seeds", default="0")
ap.add_argument("--json", action="store_true")
a = ap.parse_args()

eta = parse_rational(a.eta)
reports = []
failed = False
for n in (int(t) for t in a.ns.split(",")):
    for seed in (int(t) for t in a.seeds.split(",")):
        t0 = time.perf_counter()
        rep = sample_spectra(n, eta, a.trials, seed)
        d = rep.to_dict()
        d["seconds"] = round(time.perf_counter() - t0, 3)
        reports.append(d)
        failed |= not rep.passed
        if not a.json:
            print(f"n={n:3d} seed={seed}: {rep.trials} trials, {rep.violations} violations, "
                  f"{rep.f_mismatches} F mismatches, min margin {d['min_margin_float']:.4g}, "
                  f"{d['seconds']} s  [{d['status'].upper()}]")
if a.json:
    print(json.dumps(reports, indent=2))
raise SystemExit(1 if failed else 0)
