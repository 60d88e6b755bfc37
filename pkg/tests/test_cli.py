import json
import subprocess
import sys

import pytest

from prymlab import formats
from prymlab.cli import resolve_phi, run
from prymlab.constructions import verify_corollary_4_2, verify_lemma_2_2, verify_reducible_bound
from prymlab.covers import cyclic_quotient
from prymlab.linalg import RationalMatrix
from prymlab.words import twist_word


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path):
    z2 = write_json(tmp_path / "z2.json", formats.quotient_to_dict(cyclic_quotient(2, 2, {"b1": 1})))
    z4 = write_json(tmp_path / "z4.json", formats.quotient_to_dict(cyclic_quotient(2, 4, {"b1": 1})))
    id4 = write_json(tmp_path / "id4.json", formats.matrix_to_dict(RationalMatrix.identity(4)))
    bad = write_json(
        tmp_path / "bad.json",
        {"genus": 2, "degree": 3, "images": {"a1": [1, 0, 2], "b1": [1, 2, 0]}},
    )
    return {"z2": z2, "z4": z4, "id4": id4, "bad": bad, "dir": tmp_path}


class TestCommands:
    def test_word_reduce(self, capsys):
        code, out, _ = invoke(capsys, "word", "reduce", "a1 A1 b1")
        assert code == 0 and json.loads(out) == {"word": "b1"}

    def test_word_invert(self, capsys):
        code, out, _ = invoke(capsys, "word", "invert", "a1 b1")
        assert json.loads(out)["word"] == "B1 A1"

    def test_auto_twist_and_check(self, capsys, tmp_path):
        code, out, _ = invoke(capsys, "auto", "twist", "--g", "2", "--curve", "a1")
        assert code == 0 and json.loads(out)["forward"]["b1"] == "b1 a1"
        path = tmp_path / "t.json"
        path.write_text(out)
        code, out, _ = invoke(capsys, "auto", "check", "--phi", str(path))
        assert code == 0 and json.loads(out)["passed"]

    def test_auto_check_wrong_inverse(self, capsys, tmp_path):
        bad = write_json(tmp_path / "p.json", {"genus": 2, "forward": {"b1": "b1 a1"}, "backward": {"b1": "b1 a1"}})
        code, _, _ = invoke(capsys, "auto", "check", "--phi", bad)
        assert code == 1

    def test_compose(self, capsys):
        code, out, _ = invoke(capsys, "auto", "compose", "--g", "2", "--phi", "twist:a1", "--psi", "twist:b1,twist:a1")
        assert json.loads(out)["forward"]["a1"] == "B1"

    def test_cover_build_and_kernel(self, capsys, files):
        code, out, _ = invoke(capsys, "cover", "build", "--file", files["z2"])
        assert code == 0 and json.loads(out)["valid"]
        code, out, _ = invoke(capsys, "cover", "kernel", "--file", files["z4"])
        d = json.loads(out)
        assert d["rank"] == 10 and d["transversal"] == ["", "b1", "b1 b1", "b1 b1 b1"]

    def test_invariant_power(self, capsys, files):
        code, out, _ = invoke(capsys, "cover", "invariant-power", "--file", files["z2"], "--phi", "twist:a1")
        assert json.loads(out) == {"k": 1}

    def test_prym(self, capsys, files):
        code, out, _ = invoke(capsys, "prym", "fo-dim", "--file", files["z4"], "--phi", "id")
        assert json.loads(out)["fo_dim"] == 10
        code, out, _ = invoke(capsys, "prym", "lifts", "--file", files["z4"], "--alpha", "a1")
        assert json.loads(out)["lifts"] == 4
        code, out, _ = invoke(capsys, "prym", "matrix", "--file", files["z2"], "--phi", "twist:a1")
        assert len(json.loads(out)["rows"]) == 6

    def test_spectra(self, capsys, files):
        code, out, _ = invoke(capsys, "spectra", "fo", "--matrix", files["id4"])
        assert code == 0 and json.loads(out)["fo_dim"] == 4
        code, out, _ = invoke(capsys, "spectra", "charpoly", "--matrix", files["id4"])
        assert json.loads(out)["coeffs"] == ["1", "-4", "6", "-4", "1"]
        code, out, _ = invoke(capsys, "spectra", "fixed", "--matrix", files["id4"])
        assert json.loads(out)["fixed_dim"] == 4

    def test_construct(self, capsys, files):
        code, out, _ = invoke(capsys, "construct", "cyclic-sep", "--g", "2", "--N", "2", "--h", "1")
        d = json.loads(out)
        assert (d["lifts"], d["span_dim"]) == (3, 2)
        code, out, _ = invoke(capsys, "construct", "char-refine", "--file", files["z2"])
        assert json.loads(out)["degree"] == 16

    def test_torus(self, capsys):
        code, out, _ = invoke(capsys, "torus", "h1", "--g", "2", "--phi", "twist:a1")
        assert json.loads(out) == {"h1_rank": 4}

    def test_pretty_and_out(self, capsys, files):
        target = files["dir"] / "r.json"
        code, out, _ = invoke(capsys, "verify", "cor42", "--g", "2", "--phi", "id", "--pretty", "--out", str(target))
        assert code == 0 and out == ""
        text = target.read_text()
        assert text.splitlines()[-1].startswith("cor42: pass")


class TestExitCodes:
    def test_lemma32_pass(self, capsys):
        code, out, _ = invoke(capsys, "verify", "lemma32", "--g", "2", "--N", "5", "--phi", "twist:a1")
        assert code == 0 and json.loads(out)["computed"]["span_dim"] == 5

    def test_bad_cover(self, capsys, files):
        code, out, err = invoke(capsys, "cover", "build", "--file", files["bad"])
        assert code == 2 and out == ""
        assert err.startswith("prymlab: invalid-input:") and err.count("\n") == 1

    def test_unknown_flag(self, capsys):
        code, _, err = invoke(capsys, "word", "reduce", "a1", "--bogus")
        assert code == 2 and err.startswith("prymlab: usage:")

    def test_missing_file(self, capsys):
        code, _, err = invoke(capsys, "spectra", "fo", "--matrix", "/nonexistent.json")
        assert code == 2

    def test_missing_out_dir(self, capsys):
        code, _, _ = invoke(capsys, "word", "reduce", "a1", "--out", "/nonexistent/dir/x.json")
        assert code == 2

    def test_curve_not_fixed(self, capsys):
        code, _, err = invoke(capsys, "verify", "lemma32", "--g", "2", "--N", "3", "--phi", "twist:b1")
        assert code == 2 and "invalid-input" in err

    def test_cap_exceeded(self, capsys):
        code, out, err = invoke(capsys, "verify", "lemma33", "--g", "2", "--N", "3", "--h", "1", "--phi", "twist:a1", "--cap", "2")
        assert code == 3 and json.loads(out)["verdict"] == "undetermined"
        assert err.startswith("prymlab: undetermined:")

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("PRYMLAB_MAX_POWER", "3")
        code, _, _ = invoke(capsys, "verify", "lemma33", "--g", "2", "--N", "3", "--h", "1", "--phi", "twist:a1")
        assert code == 3
        monkeypatch.setenv("PRYMLAB_MAX_POWER", "4")
        code, _, _ = invoke(capsys, "verify", "lemma33", "--g", "2", "--N", "3", "--h", "1", "--phi", "twist:a1")
        assert code == 0

    def test_guard(self, capsys, files, monkeypatch):
        monkeypatch.setenv("PRYMLAB_GUARD", "10")
        code, _, _ = invoke(capsys, "construct", "char-refine", "--file", files["z2"])
        assert code == 3

    def test_out_of_range(self, capsys):
        code, out, _ = invoke(capsys, "verify", "lemma33", "--g", "2", "--N", "0", "--h", "1", "--phi", "twist:a1")
        assert code == 3 and json.loads(out)["params"]["out_of_range"]

    def test_bad_shorthand(self, capsys):
        code, _, _ = invoke(capsys, "torus", "h1", "--g", "2", "--phi", "twist:c1")
        assert code == 2


class TestAgreement:
    def test_shorthand_order(self):
        phi = resolve_phi("twist:a1,twist:b2", 2)
        assert phi.forward == twist_word(2, ["a1", "b2"]).forward

    @pytest.mark.parametrize("phi", ["id", "twist:a1", "twist:a1,twist:a2", "twist:a1,twist:b3"])
    def test_lemma32(self, capsys, phi):
        code, out, _ = invoke(capsys, "verify", "lemma32", "--g", "3", "--N", "3", "--phi", phi)
        lib = verify_reducible_bound("nonsep", 3, 3, resolve_phi(phi, 3))
        assert json.loads(out) == json.loads(formats.dumps(lib.as_dict()))

    def test_lemma22(self, capsys, files):
        code, out, _ = invoke(capsys, "verify", "lemma22", "--sub", files["z4"], "--sup", files["z2"], "--phi", "twist:a1")
        lib = verify_lemma_2_2(cyclic_quotient(2, 4, {"b1": 1}), cyclic_quotient(2, 2, {"b1": 1}), twist_word(2, ["a1"]))
        assert code == 0 and json.loads(out)["verdict"] == lib.verdict == "pass"

    def test_cor42(self, capsys):
        code, out, _ = invoke(capsys, "verify", "cor42", "--g", "2", "--phi", "twist:a1,twist:b1,twist:a1")
        lib = verify_corollary_4_2(2, twist_word(2, ["a1", "b1", "a1"]))
        assert json.loads(out)["computed"] == lib.computed


def test_byte_identical_output(files):
    argv = [sys.executable, "-m", "prymlab", "verify", "lemma22", "--sub", files["z4"], "--sup", files["z2"], "--phi", "twist:a1"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first.endswith(b"\n")
