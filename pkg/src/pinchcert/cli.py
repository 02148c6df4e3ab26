"""Command-line front end.

Exit codes: 0 on pass or success, 1 on a failed certificate or oracle
violations, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from pinchcert.exactnum import format_rational, parse_rational
from pinchcert.lemmas import LEMMAS, certify_all, certify_lemma, sample_spectra
from pinchcert.multipoly import parse_poly
from pinchcert.elimination import discriminant, resultant
from pinchcert.pinching import PinchingParams, SearchConfig, certify_negative, optimize_eta
from pinchcert.realroots import DomainSpec, count_real_roots_detailed, sturm_sequence
from pinchcert.exprparse import identifiers

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


class _HelpShown(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if status == 0:
            raise _HelpShown()
        raise UsageError(message or f"exit {status}")


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pinchcert", description="Exact certificates for the pinching lemmas.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("certify", help="run lemma certificates")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--lemma", choices=list(LEMMAS))
    g.add_argument("--all", action="store_true")
    c.add_argument("--json", action="store_true")

    r = sub.add_parser("resultant", help="res_V(P, Q)")
    r.add_argument("--var", required=True)
    r.add_argument("--p", required=True)
    r.add_argument("--q", required=True)
    r.add_argument("--json", action="store_true")

    d = sub.add_parser("disc", help="disc_V(P)")
    d.add_argument("--var", required=True)
    d.add_argument("--p", required=True)
    d.add_argument("--json", action="store_true")

    s = sub.add_parser("sturm", help="Sturm chain and real-root count")
    s.add_argument("--p", required=True)
    s.add_argument("--domain", default="all")
    s.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle", help="exact spectral sampling oracle")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--eta", type=_rational, required=True)
    o.add_argument("--trials", type=int, required=True)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--json", action="store_true")

    pn = sub.add_parser("pinch", help="final coefficients and their negativity certificate")
    pn.add_argument("--eps", type=_rational, required=True)
    pn.add_argument("--sigma", type=_rational, required=True)
    pn.add_argument("--kappa", type=_rational, required=True)
    pn.add_argument("--eta", type=_rational, required=True)
    ng = pn.add_mutually_exclusive_group()
    ng.add_argument("--n", type=_rational)
    ng.add_argument("--n-symbolic", action="store_true")
    pn.add_argument("--json", action="store_true")

    op = sub.add_parser("optimize", help="search for the smallest feasible eta")
    op.add_argument("--config", required=True)
    op.add_argument("--json", action="store_true")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _cmd_certify(a) -> tuple[int, str]:
    certs = certify_all() if a.all else [certify_lemma(a.lemma)]
    ok = all(c.passed for c in certs)
    if a.json:
        if a.all:
            out = _dump({"certificates": [c.to_dict() for c in certs], "overall": "pass" if ok else "fail"})
        else:
            out = _dump(certs[0].to_dict())
    else:
        out = "\n\n".join(c.summary() for c in certs)
        if a.all:
            out += f"\n\noverall: {'PASS' if ok else 'FAIL'}"
    return (0 if ok else 1), out


def _single_var(p, text: str) -> str:
    used = list(p.used_vars())
    if len(used) > 1:
        raise UsageError(f"expected a univariate polynomial, found variables {used}")
    return used[0] if used else (identifiers(text) or ["x"])[0]


def _cmd_resultant(a) -> tuple[int, str]:
    p, q = parse_poly(a.p), parse_poly(a.q)
    res = resultant(p, q, a.var).value
    if a.json:
        return 0, _dump({"op": "resultant", "var": a.var, "p": str(p), "q": str(q), "result": str(res)})
    return 0, str(res)


def _cmd_disc(a) -> tuple[int, str]:
    p = parse_poly(a.p)
    d = discriminant(p, a.var).value
    if a.json:
        return 0, _dump({"op": "disc", "var": a.var, "p": str(p), "result": str(d)})
    return 0, str(d)


def _cmd_sturm(a) -> tuple[int, str]:
    p = parse_poly(a.p)
    v = _single_var(p, a.p)
    dom = DomainSpec.parse(a.domain)
    chain = sturm_sequence(p, v)
    count, nudges = count_real_roots_detailed(p, v, dom)
    data = {
        "op": "sturm",
        "var": v,
        "p": str(p),
        "domain": dom.to_dict(),
        "chain": [str(q) for q in chain.polys],
        "root_count": count,
    }
    if nudges:
        data["endpoint_nudges"] = {k: format_rational(e) for k, e in nudges.items()}
    if a.json:
        return 0, _dump(data)
    lines = [f"p = {p}", f"domain: {dom}", "Sturm chain:"]
    lines += [f"  {i}: {q}" for i, q in enumerate(data["chain"])]
    lines.append(f"distinct real roots in domain: {count}")
    return 0, "\n".join(lines)


def _cmd_oracle(a) -> tuple[int, str]:
    rep = sample_spectra(a.n, a.eta, a.trials, a.seed)
    d = rep.to_dict()
    code = 0 if rep.passed else 1
    if a.json:
        return code, _dump(d)
    lines = [
        f"oracle n={a.n} eta={format_rational(a.eta)} seed={a.seed}",
        f"  S range: [{d['config']['S_range'][0]}, {d['config']['S_range'][1]}]",
        f"  c = {d['c']}",
        f"  trials accepted: {rep.trials} (rejected {rep.rejected})",
        f"  violations: {rep.violations}",
        f"  F-identity mismatches: {rep.f_mismatches}",
        f"  minimal margin cF - L^3: {d['min_margin_float']}",
        f"  status: {d['status'].upper()}",
    ]
    return code, "\n".join(lines)


def _cmd_pinch(a) -> tuple[int, str]:
    params = PinchingParams(a.eps, a.sigma, a.kappa, a.eta)
    cert = certify_negative(params)
    d = cert.to_dict()
    if a.n is not None:
        d["at_n"] = {
            "n": format_rational(a.n),
            "theta": format_rational(cert.theta.evaluate(a.n)),
            "coef_sn": format_rational(cert.coef_sn.evaluate(a.n)),
            "coef_const": format_rational(cert.coef_const.evaluate(a.n)),
        }
    code = 0 if cert.passed else 1
    if a.json:
        return code, _dump(d)
    lines = [f"params: {', '.join(f'{k}={v}' for k, v in params.to_dict().items())}"]
    if a.n is not None:
        lines += [f"{k} at n={d['at_n']['n']}: {d['at_n'][k]}" for k in ("theta", "coef_sn", "coef_const")]
    else:
        lines += [f"theta = {d['theta']}", f"coef_sn = {d['coef_sn']}", f"coef_const = {d['coef_const']}"]
    for o in cert.obligations:
        lines.append(f"  [{o.status}] {o.desc}")
    lines.append(f"negativity on [6, inf): {cert.overall.upper()}")
    return code, "\n".join(lines)


def _cmd_optimize(a) -> tuple[int, str]:
    cfg = SearchConfig.from_file(a.config)
    res = optimize_eta(6, cfg)
    code = 0 if res.feasible else 1
    if a.json:
        return code, _dump(res.to_dict())
    if not res.feasible:
        return code, "infeasible under config"
    lines = [
        f"best eta = {format_rational(res.best_eta)} ({float(res.best_eta):.6f})",
        f"params: {res.params.to_dict()}",
        f"certificate: {res.cert.overall.upper()}",
        "history:",
    ]
    lines += [f"  eta={h['eta']:>14s} feasible={h['feasible']}" for h in res.history]
    return code, "\n".join(lines)


_COMMANDS = {
    "certify": _cmd_certify,
    "resultant": _cmd_resultant,
    "disc": _cmd_disc,
    "sturm": _cmd_sturm,
    "oracle": _cmd_oracle,
    "pinch": _cmd_pinch,
    "optimize": _cmd_optimize,
}


def _glue_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-2,2" as a flag; bind such values to their option
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _NEGATIVE_OK:
            nxt = next(it, None)
            if nxt is None:
                out.append(a)
            elif nxt[:1] == "-" and nxt[1:2] and (nxt[1].isdigit() or nxt[1] in "./"):
                out.append(f"{a}={nxt}")
            else:
                out += [a, nxt]
        else:
            out.append(a)
    return out


_NEGATIVE_OK = {"--domain", "--n", "--eps", "--sigma", "--kappa", "--eta"}


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one command; returns (exit code, stdout text)."""
    try:
        args = build_parser().parse_args(_glue_values(argv))
        return _COMMANDS[args.command](args)
    except _HelpShown:
        return 0, ""
    except UsageError as exc:
        return 2, f"usage error: {exc}".rstrip()
    except (ValueError, ZeroDivisionError, ArithmeticError, OSError, KeyError) as exc:
        return 2, f"error: {exc}"


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == 2 else sys.stdout
    print(out, file=stream)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
