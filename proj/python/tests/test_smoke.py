import json
import math
import os
import subprocess
from fractions import Fraction
from pathlib import Path

import pytest

import meritfair as mf

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "data"

COURT = (DATA / "court.csv").read_text()
DETERMINISTIC = '{"type":"deterministic"}'
GLOBAL = '{"type":"randomized","rates":{"global":["3/4","1/10"]}}'
COIN = '{"type":"randomized","rates":{"global":["1/2","1/2"]}}'


def test_example1_numbers():
    report = mf.example1()
    stages = {s["name"]: s for s in report["stages"]}
    assert set(stages) == {"global", "group-fair"}
    totals = stages["global"]["contingency"]["totals"]
    assert mf.exact(totals["guilty_convicted"]) == 1875
    assert mf.exact(totals["innocent_convicted"]) == 750
    share = {g["value"]: mf.exact(g["guilty_share"]) for g in stages["global"]["justice"]["groups"]}
    assert share["M"] == Fraction(15, 19)
    assert share["F"] == Fraction(15, 29)
    assert stages["group-fair"]["verdict"]["fair"] is True
    assert stages["group-fair"]["procedure_class"] == "ImperfectlyJust"
    assert report["population"]["total"] == 10000


def test_classify_and_diamond():
    assert mf.classify("3/4", "1/10")["class"] == "ImperfectlyJust"
    assert mf.classify(1, 0)["class"] == "PerfectlyJust"
    assert mf.classify(Fraction(1, 3), Fraction(1, 3))["class"] == "MeritAgnostic"
    x, y = mf.to_diamond(0.75, 0.1)
    assert math.isclose(x, 0.65 / math.sqrt(2), abs_tol=1e-12)
    assert math.isclose(y, 0.85 / math.sqrt(2), abs_tol=1e-12)
    with pytest.raises(mf.MeritfairError):
        mf.classify("2", "0")


def test_rates_and_fairness():
    rates = mf.exact_rates(COURT, DETERMINISTIC)
    assert (mf.exact(rates["h"]), mf.exact(rates["k"])) == (Fraction(3, 5), Fraction(1, 5))
    verdict = mf.check_pairwise_fairness(COURT, GLOBAL, "district", "north", "south")
    assert verdict["fair"] is True
    assert mf.check_absolute_fairness(COURT, COIN, "bipartitions", 15)["fair"] is True
    assert mf.check_absolute_fairness(COURT, DETERMINISTIC, "singletons")["fair"] is False


def test_witness_matches_search():
    witness = mf.construct_witness(COURT)
    assert witness["status"] == "witnessed"
    search = mf.exhaustive_search(COURT)
    x1 = sorted(witness["group_x1"]["ids"])
    splits = [sorted(v["group_a"]) for v in search] + [
        sorted(v["group_b"]) for v in search
    ]
    assert x1 in splits


def test_verify_theorem_small():
    report = mf.verify_theorem(6, 50, 11)
    assert report["passed"] is True
    assert report["counterexamples"] == []


def test_simulate_is_deterministic_in_seed():
    a = mf.simulate(COURT, GLOBAL, 5, 20)
    b = mf.simulate(COURT, GLOBAL, 5, 20)
    assert a == b
    assert a["empirical"] is True


def test_run_cli_in_process():
    code, out, err = mf.run_cli(["classify", "--h", "0", "--k", "1", "--format", "json"])
    assert code == 0, err
    assert json.loads(out)["class"] == "PerfectlyUnjust"
    code, _, err = mf.run_cli(["audit", "--population", str(DATA / "missing.csv"), "--procedure", "x.json"])
    assert code == 1
    assert err


CLI = os.environ.get("MERITFAIR_CLI")
SCHEMAS = os.environ.get("MERITFAIR_SCHEMAS", str(ROOT / "schemas"))

COMMANDS = {
    "audit": ["--population", str(DATA / "court.csv"), "--procedure", str(DATA / "per_district.json"),
              "--attribute", "district"],
    "classify": ["--h", "0.75", "--k", "0.1", "--format", "json"],
    "witness": ["--population", str(DATA / "court.csv"), "--format", "json"],
    "simulate": ["--population", str(DATA / "court.csv"), "--procedure", str(DATA / "global.json"),
                 "--attribute", "district", "--trials", "3", "--seed", "9"],
    "example1": ["--format", "json"],
    "roc-export": ["--points", str(DATA / "points.csv"), "--format", "json"],
    "verify": ["--n", "6", "--trials", "10", "--format", "json"],
}


@pytest.mark.skipif(not CLI, reason="MERITFAIR_CLI not set")
@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_cli_output_matches_schema(command):
    jsonschema = pytest.importorskip("jsonschema")
    proc = subprocess.run([CLI, command, *COMMANDS[command]], capture_output=True, text=True, timeout=120)
    assert proc.returncode in (0, 2), proc.stderr
    schema = json.loads(Path(SCHEMAS, f"{command}.schema.json").read_text())
    jsonschema.validate(json.loads(proc.stdout), schema)


@pytest.mark.skipif(not CLI, reason="MERITFAIR_CLI not set")
def test_cli_witness_exit_codes(tmp_path):
    perfect = tmp_path / "perfect.csv"
    perfect.write_text("id,J,X,attrs\na,0,0,\nb,1,1,\n")
    ok = subprocess.run([CLI, "witness", "--population", str(perfect)], capture_output=True, text=True)
    assert ok.returncode == 0
    assert "no violation" in ok.stdout
    bad = subprocess.run([CLI, "witness", "--population", str(DATA / "court.csv")], capture_output=True, text=True)
    assert bad.returncode == 2
