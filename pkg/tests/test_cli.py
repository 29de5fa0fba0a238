"""Command-line interface: subcommands, exit codes, determinism."""

import json

from splitinv.cli import main

A2_FLIP_SCENARIO = {
    "datum": [["A", 2]],
    "theta": {"perm": [2, 1]},
    "galois": {"order": 2, "omega_T": [1, 2, 1], "sigma_T": None},
    "adata": {"mode": "symbolic"},
}


def write(tmp_path, doc, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestVerify:
    def test_appendix_suite_passes(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["verify", "--suite", "appendix", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["pass"] is True
        names = [c["name"] for c in report["checks"]]
        assert any("n3'" in n for n in names)

    def test_deterministic_reports(self, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["verify", "--suite", "nn", "--seed", "7",
                     "--out", str(out1)]) == 0
        assert main(["verify", "--suite", "nn", "--seed", "7",
                     "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_exit_zero_iff_all_pass(self, capsys):
        assert main(["verify", "--suite", "steinberg"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["pass"] and all(c["pass"] for c in report["checks"])


class TestInvariant:
    def test_symbolic_scenario(self, tmp_path, capsys):
        path = write(tmp_path, A2_FLIP_SCENARIO)
        assert main(["invariant", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["pass"]
        assert report["result"]["ambient"] == "T^theta"
        assert report["result"]["values"]["1"]["weyl"] == [1, 2, 1]

    def test_value_mode(self, tmp_path, capsys):
        doc = {
            "datum": [["A", 2]],
            "theta": {"perm": [2, 1]},
            "galois": {"order": 2, "omega_T": [1, 2, 1], "sigma_T": None,
                       "field": {"d": 5}},
            "adata": {"mode": "values",
                      "values": {"1,0": [0, 1], "0,1": [0, 1], "1,1": [0, 1]}},
        }
        path = write(tmp_path, doc)
        assert main(["invariant", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["pass"]

    def test_malformed_scenario_exits_two(self, tmp_path, capsys):
        doc = dict(A2_FLIP_SCENARIO)
        doc["galois"] = {"order": 2, "omega_T": [1]}  # generator of wrong order
        path = write(tmp_path, doc)
        assert main(["invariant", path]) == 2
        err = capsys.readouterr().err
        assert "galois" in err

    def test_missing_field_named(self, tmp_path, capsys):
        doc = {"datum": [["A", 2]], "adata": {"mode": "symbolic"}}
        path = write(tmp_path, doc)
        assert main(["invariant", path]) == 2
        assert "galois" in capsys.readouterr().err

    def test_bad_json_exits_two(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["invariant", str(path)]) == 2


class TestRestrict:
    def test_report(self, tmp_path, capsys):
        path = write(tmp_path, {"datum": [["A", 3]], "theta": {"perm": [3, 2, 1]}})
        assert main(["restrict", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["result"]["reduced"] is True
        assert report["result"]["fixed_weyl_order"] == 8


class TestHilbert:
    def test_known_value(self, capsys):
        assert main(["hilbert", "2", "5", "--place", "5"]) == 0
        assert capsys.readouterr().out.strip() == "-1"

    def test_real_place(self, capsys):
        assert main(["hilbert", "-1", "-1", "--place", "real"]) == 0
        assert capsys.readouterr().out.strip() == "-1"

    def test_fractions_accepted(self, capsys):
        assert main(["hilbert", "1/2", "5", "--place", "5"]) == 0
        assert capsys.readouterr().out.strip() == "-1"


class TestFactors:
    def test_delta_ks_flagged(self, capsys):
        assert main(["factors", "--variant", "delta_ks"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["chi_invariant"] is False
        assert report["exponents"] == {"I_old": 1, "II": 1, "III": 1, "IV": 1}

    def test_delta_d(self, capsys):
        assert main(["factors", "--variant", "delta_d"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["chi_invariant"] is True
