import json
import subprocess
import sys
from fractions import Fraction

import pytest

from pdeg import cli


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, json.loads(captured.out), captured.err


class TestParseEps:
    def test_fraction_form(self):
        assert cli.parse_eps("1/8") == Fraction(1, 8)

    def test_power_form(self):
        assert cli.parse_eps("2^-20") == Fraction(1, 1 << 20)

    def test_decimal_form(self):
        assert cli.parse_eps("0.25") == Fraction(1, 4)

    @pytest.mark.parametrize("bad", ["0", "1", "3/2", "abc", "2^20", "-1/4"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            cli.parse_eps(bad)


class TestAnalyze:
    def test_named_majority(self, capsys):
        code, payload, err = run_cli(
            capsys, ["analyze", "--kind", "MAJ", "--n", "6", "--field", "2"]
        )
        assert code == 0
        assert payload["command"] == "analyze"
        assert payload["period"] == 7
        assert payload["decomposition"]["g"] == "0100100"
        assert payload["decomposition"]["h"] == "0100011"
        assert "period=7" in err

    def test_spectrum_file(self, capsys, tmp_path):
        path = tmp_path / "spec.txt"
        path.write_text("0111\n")
        code, payload, _ = run_cli(capsys, ["analyze", "--spectrum", str(path)])
        assert code == 0
        assert payload["spectrum"] == "0111"
        assert payload["n"] == 3

    def test_missing_file_is_clean_error(self, capsys, tmp_path):
        code, payload, _ = run_cli(
            capsys, ["analyze", "--spectrum", str(tmp_path / "nope.txt")]
        )
        assert code == 2
        assert payload["error"]["type"] in ("OSError", "FileNotFoundError")

    def test_no_input_given(self, capsys):
        code, payload, _ = run_cli(capsys, ["analyze"])
        assert code == 2
        assert payload["error"]["type"] == "ValueError"

    def test_kind_with_params(self, capsys):
        code, payload, _ = run_cli(
            capsys, ["analyze", "--kind", "ETHR", "--n", "6", "--params", "3"]
        )
        assert code == 0
        assert payload["spectrum"] == "0001000"

    def test_byte_identical_reruns(self, capsys):
        argv = ["analyze", "--kind", "MAJ", "--n", "8"]
        cli.main(argv)
        first = capsys.readouterr().out
        cli.main(argv)
        second = capsys.readouterr().out
        assert first == second
        assert first.endswith("\n")


class TestConstruct:
    def test_exact_small(self, capsys):
        code, payload, err = run_cli(
            capsys,
            ["construct", "--kind", "OR", "--n", "8", "--eps", "1/8",
             "--field", "2"],
        )
        assert code == 0
        assert payload["targets"] == ["011111111"]
        assert payload["recipe"]["n"] == 8
        assert "declared degree bound" in err

    def test_threshold_tuple_request(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["construct", "--n", "40", "--thresholds", "2", "--eps", "1/8",
             "--field", "2"],
        )
        assert code == 0
        assert payload["recipe"]["params"]["branch"] == "hash"

    def test_thresholds_need_n(self, capsys):
        code, payload, _ = run_cli(
            capsys, ["construct", "--thresholds", "2", "--eps", "1/8"]
        )
        assert code == 2
        assert "requires --n" in payload["error"]["message"]


class TestSample:
    def test_exact_values_match_target(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["sample", "--kind", "MAJ", "--n", "6", "--eps", "1/8",
             "--field", "2"],
        )
        assert code == 0
        (component,) = payload["components"]
        assert component["values"] == ["0", "0", "0", "0", "1", "1", "1"]

    def test_seed_determinism(self, capsys):
        argv = ["sample", "--n", "40", "--thresholds", "2", "--eps", "1/8",
                "--field", "2", "--seed", "3"]
        cli.main(argv)
        first = capsys.readouterr().out
        cli.main(argv)
        second = capsys.readouterr().out
        assert first == second

    def test_seed_changes_draw(self, capsys):
        base = ["sample", "--n", "40", "--thresholds", "2", "--eps", "1/8",
                "--field", "2"]
        cli.main(base + ["--seed", "0"])
        first = capsys.readouterr().out
        cli.main(base + ["--seed", "1"])
        second = capsys.readouterr().out
        assert first != second


class TestVerify:
    def test_randomness_free_passes(self, capsys):
        code, payload, err = run_cli(
            capsys,
            ["verify", "--kind", "MAJ", "--n", "8", "--eps", "1/8",
             "--field", "2"],
        )
        assert code == 0
        assert payload["report"]["mode"] == "single-draw"
        assert payload["report"]["passed"] is True
        assert payload["exact_error"] == ["0"] * 9
        assert "PASS" in err

    def test_sampled_recipe(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["verify", "--n", "40", "--thresholds", "2", "--eps", "1/8",
             "--field", "2", "--trials", "60"],
        )
        assert code == 0
        assert payload["report"]["mode"] == "stratified"
        assert payload["report"]["trials"] == 60
        assert payload["exact_error"] is None

    def test_jobs_do_not_change_output(self, capsys):
        base = ["verify", "--n", "40", "--thresholds", "2", "--eps", "1/8",
                "--field", "2", "--trials", "40"]
        cli.main(base)
        first = json.loads(capsys.readouterr().out)
        cli.main(base + ["--jobs", "2"])
        second = json.loads(capsys.readouterr().out)
        assert first["report"]["per_weight"] == second["report"]["per_weight"]


class TestReduce:
    def test_mod_with_check(self, capsys, tmp_path):
        path = tmp_path / "periodic.txt"
        path.write_text("".join("100110"[w % 6] for w in range(19)))
        code, payload, _ = run_cli(
            capsys,
            ["reduce", "--reduction", "mod", "--spectrum", str(path),
             "--field", "2", "--check"],
        )
        assert code == 0
        assert payload["checks"] == [True, True, True]
        assert len(payload["certificates"]) == 3
        assert payload["certificates"][0]["target"]["label"] == "MOD"

    def test_thr(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["reduce", "--reduction", "thr", "--n", "9", "--thresholds", "3"],
        )
        assert code == 0
        labels = [c["target"]["label"] for c in payload["certificates"]]
        assert labels == ["MAJ", "OR"]

    def test_thr_needs_thresholds(self, capsys):
        code, payload, _ = run_cli(
            capsys, ["reduce", "--reduction", "thr", "--n", "9"]
        )
        assert code == 2
        assert "thresholds" in payload["error"]["message"]

    def test_maj_periodic_needs_eps(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["reduce", "--reduction", "maj-periodic", "--kind", "MAJ",
             "--n", "12", "--field", "2"],
        )
        assert code == 2
        assert "--eps" in payload["error"]["message"]

    def test_maj_general(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["reduce", "--reduction", "maj-general", "--kind", "MAJ",
             "--n", "18", "--field", "2", "--check"],
        )
        assert code == 0
        assert payload["checks"] == [True]

    def test_thr_complement(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["reduce", "--reduction", "thr-complement", "--kind", "CONST",
             "--n", "18", "--params", "0"],
        )
        # NOR is not CONST; expect a clean rejection for a constant input
        assert code == 2
        assert payload["error"]["type"] == "ValueError"


class TestBounds:
    def test_predicted(self, capsys):
        code, payload, err = run_cli(
            capsys,
            ["bounds", "--kind", "MAJ", "--n", "64", "--eps", "1/8",
             "--field", "2"],
        )
        assert code == 0
        assert payload["case"] == "per-not-p-power"
        assert "case" in err

    def test_audit_paper_profile(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["bounds", "--audit", "--t", str(10**11), "--eps", "2^-128",
             "--field", "2", "--profile", "paper"],
        )
        assert code == 0
        assert payload["ok"] is True
        assert len(payload["checks"]) == 5

    def test_audit_practical_profile_fails(self, capsys):
        code, payload, _ = run_cli(
            capsys,
            ["bounds", "--audit", "--t", str(10**11), "--eps", "2^-128",
             "--field", "2", "--profile", "practical"],
        )
        assert code == 1
        assert payload["ok"] is False

    def test_audit_needs_t(self, capsys):
        code, payload, _ = run_cli(
            capsys, ["bounds", "--audit", "--eps", "2^-128"]
        )
        assert code == 2
        assert "--t" in payload["error"]["message"]


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 2
        payload = json.loads(capsys.readouterr().out)
        assert payload["error"]["type"] == "usage"

    def test_bad_eps_value(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["construct", "--kind", "OR", "--n", "4", "--eps", "zero"])
        assert exc.value.code == 2
        payload = json.loads(capsys.readouterr().out)
        assert payload["error"]["type"] == "usage"


class TestConsoleScript:
    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pdeg.cli", "analyze", "--kind", "OR",
             "--n", "4"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["spectrum"] == "01111"

    def test_installed_script(self):
        proc = subprocess.run(
            ["pdeg", "bounds", "--kind", "MAJ", "--n", "16", "--eps", "1/8"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["case"] == "per-not-p-power"
