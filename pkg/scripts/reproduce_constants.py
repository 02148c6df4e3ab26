"""Print the exact pinching coefficients for a parameter triple and certify their signs.

    python3 scripts/reproduce_constants.py [--eps 1/18 --sigma 7/18 --kappa 1/24 --eta 18]
"""

import argparse

from pinchcert.exactnum import parse_rational
from pinchcert.pinching import PinchingParams, certify_negative, derived_constants

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--eps", default="1/18")
ap.add_argument("--sigma", default="7/18")
ap.add_argument("--kappa", default="1/24")
ap.add_argument("--eta", default="18")
ap.add_argument("--table", default="6,7,8,10,20,100,1000", help="comma-separated n values to tabulate")
a = ap.parse_args()

params = PinchingParams(*(parse_rational(t) for t in (a.eps, a.sigma, a.kappa, a.eta)))
cert = certify_negative(params)
dc = derived_constants(params)
print(f"params: {params.to_dict()}")
print(f"b = {dc.b}\nc = {dc.c}\ntau coefficient = {dc.tau_coefficient}")
print(f"theta      = {cert.theta.reduced()}")
print(f"coef_sn    = {cert.coef_sn.reduced()}")
print(f"coef_const = {cert.coef_const.reduced()}")
print(f"\n{'n':>6} {'theta':>12} {'coef_sn':>12} {'coef_const':>12}")
for n in (int(t) for t in a.table.split(",")):
    print(f"{n:>6} {float(cert.theta(n)):>12.6f} {float(cert.coef_sn(n)):>12.6f} {float(cert.coef_const(n)):>12.6f}")
print()
for o in cert.obligations:
    print(f"[{o.status}] {o.desc}")
print(f"certificate on [6, inf): {cert.overall.upper()}")
