import json
from pathlib import Path

import pytest

from pinchcert.certificate import Certificate
from pinchcert.cli import main, run
from pinchcert.lemmas import INEQKS_DISC_CONST, INEQKS_DISC_FACTORS, RK, _expand_factored
from pinchcert.multipoly import parse_poly
from pinchcert.pinching import RationalFunctionN

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
PINCH = ["pinch", "--eps", "1/18", "--sigma", "7/18", "--kappa", "1/24", "--eta", "18"]


def test_certify_ineqks_json():
    code, out = run(["certify", "--lemma", "ineqks", "--json"])
    assert code == 0
    cert = Certificate.from_json(out)
    assert cert.overall == "pass"
    disc = next(o for o in cert.obligations if o.kind == "discriminant-match")
    expected = _expand_factored(INEQKS_DISC_CONST, INEQKS_DISC_FACTORS, RK)
    assert parse_poly(disc.data["rhs"], RK) == expected
    assert parse_poly(disc.data["lhs"], RK) == expected


def test_certify_all_text_and_json_agree():
    code_t, text = run(["certify", "--all"])
    code_j, js = run(["certify", "--all", "--json"])
    assert code_t == code_j == 0
    data = json.loads(js)
    assert data["overall"] == "pass"
    assert [c["name"] for c in data["certificates"]] == ["ineqef", "alineq2", "ineqks", "alineq1"]
    for c in data["certificates"]:
        assert f"certificate {c['name']}: {c['overall'].upper()}" in text
        assert Certificate.from_dict(c).to_dict() == c


def test_resultant_and_disc():
    assert run(["resultant", "--var", "x", "--p", "x-2", "--q", "x-5"]) == (0, "-3")
    code, out = run(["disc", "--var", "x", "--p", "x^2 + p*x + q", "--json"])
    assert code == 0 and json.loads(out)["result"] == "p^2 - 4*q"


def test_sturm():
    code, out = run(["sturm", "--p", "x^3 - x", "--domain", "-2,2", "--json"])
    data = json.loads(out)
    assert code == 0 and data["root_count"] == 3
    assert data["chain"] == ["x^3 - x", "3*x^2 - 1", "2/3*x", "1"]
    code, out = run(["sturm", "--p", "x^2 + 1"])
    assert code == 0 and "distinct real roots in domain: 0" in out


def test_pinch_symbolic_matches_closed_forms():
    code, out = run(PINCH + ["--n-symbolic", "--json"])
    assert code == 0
    d = json.loads(out)
    n = RationalFunctionN.var()
    assert RationalFunctionN.parse(d["theta"]) == 784 / (513 * n) + RationalFunctionN(6323) / 2835
    assert RationalFunctionN.parse(d["coef_sn"]) == -(784 / (1539 * n) + RationalFunctionN(13) / 2430)
    const = -(3629 * n**2 + 126690 * n - 347760) / (1939140 * (n + 4))
    assert RationalFunctionN.parse(d["coef_const"]) == const
    code, text = run(PINCH + ["--n-symbolic"])
    assert code == 0 and "theta = (120137*n + 82320)/(53865*n)" in text


def test_pinch_numeric_and_decimal_eta():
    code, out = run(["pinch", "--eps", "1/18", "--sigma", "7/18", "--kappa", "1/24", "--eta", "17.93",
                     "--n", "6", "--json"])
    d = json.loads(out)
    assert code == 0 and d["params"]["eta"] == "1793/100"
    assert d["at_n"]["n"] == "6"


def test_pinch_failure_exit_code():
    code, _ = run(["pinch", "--eps", "1/18", "--sigma", "10", "--kappa", "1/24", "--eta", "18"])
    assert code == 1


def test_oracle_echoes_seed():
    code, out = run(["oracle", "--n", "6", "--eta", "18", "--trials", "50", "--json"])
    d = json.loads(out)
    assert code == 0 and d["config"]["seed"] == 0 and d["violations"] == 0
    code, out = run(["oracle", "--n", "6", "--eta", "18", "--trials", "50", "--seed", "5"])
    assert code == 0 and "seed=5" in out


def test_optimize_configs():
    code, out = run(["optimize", "--config", str(CONFIGS / "optimize_default.json"), "--json"])
    d = json.loads(out)
    assert code == 0 and d["status"] == "feasible"
    code, out = run(["optimize", "--config", str(CONFIGS / "optimize_empty.json")])
    assert code == 1 and out == "infeasible under config"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["certify"],
        ["certify", "--lemma", "nope"],
        ["certify", "--all", "--lemma", "ineqef"],
        ["certify", "--all", "--verbose"],
        ["resultant", "--var", "x", "--p", "x-2"],
        ["resultant", "--var", "x", "--p", "2x", "--q", "x"],
        ["resultant", "--var", "x", "--p", "3", "--q", "x"],
        ["sturm", "--p", "x*y"],
        ["sturm", "--p", "x", "--domain", "somewhere"],
        ["oracle", "--n", "4", "--eta", "18", "--trials", "5"],
        ["pinch", "--eps", "0", "--sigma", "1", "--kappa", "1", "--eta", "1"],
        ["pinch", "--eps", "x", "--sigma", "1", "--kappa", "1", "--eta", "1"],
        ["optimize", "--config", "/nonexistent.json"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out = run(argv)
    assert code == 2, out


def test_main_prints(capsys):
    assert main(["resultant", "--var", "x", "--p", "x-2", "--q", "x-5"]) == 0
    assert capsys.readouterr().out.strip() == "-3"
    assert main(["resultant"]) == 2
    assert "usage error" in capsys.readouterr().err
