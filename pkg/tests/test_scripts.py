import json
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def run_script(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=True).stdout


def test_run_constructions(tmp_path):
    out = tmp_path / "r.jsonl"
    text = run_script("run_constructions.py", "--genera", "2", "--Ns", "2", "--random-words", "2", "--out", str(out))
    assert text.rstrip().endswith("totals: pass=5")
    reports = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["construction"] for r in reports] == ["lemma32", "lemma33", "cor42", "cor42", "cor42"]


def test_fo_growth():
    text = run_script("fo_growth.py", "--max-N", "3", "--samples", "2")
    rows = [line.split() for line in text.splitlines()[2:]]
    assert [r[0] for r in rows] == ["1", "2", "3"]
    assert all(r[-1] == "True" for r in rows)
