import csv
import io
import json

import pytest

from src.cli import main
from src.errors import ExitCode
from src.precision import SWEEP_FIELDS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestExitCodes:

    def test_verify_passes(self, capsys):
        code, out = run(capsys, "verify", "--n", "8", "--tol", "1e-9", "--quiet")
        assert code == ExitCode.OK
        assert json.loads(out)["passed"] is True

    def test_verify_rejects_small_n(self, capsys):
        code, out = run(capsys, "verify", "--n", "4")
        assert code == ExitCode.USAGE_ERROR
        assert out == ""

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == ExitCode.USAGE_ERROR

    def test_missing_required_option(self, capsys):
        assert run(capsys, "construct")[0] == ExitCode.USAGE_ERROR

    def test_n_and_in_together(self, capsys, tmp_path):
        path = tmp_path / "family.json"
        assert run(capsys, "construct", "--n", "7", "--out", str(path))[0] == ExitCode.OK
        assert run(capsys, "verify", "--n", "7", "--in", str(path))[0] == ExitCode.USAGE_ERROR

    def test_bad_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run(capsys, "verify", "--in", str(path))[0] == ExitCode.USAGE_ERROR

    def test_non_utf8_input(self, capsys, tmp_path):
        path = tmp_path / "binary.json"
        path.write_bytes(b'{"n": 7, \xff\xfe}')
        code, out = run(capsys, "verify", "--in", str(path))
        assert code == ExitCode.USAGE_ERROR
        assert out == ""

    def test_wrong_format_for_subcommand(self, capsys):
        assert run(capsys, "verify", "--n", "7", "--format", "svg")[0] == ExitCode.USAGE_ERROR

    def test_onc_epsilon_above_bound_fails_the_check(self, capsys):
        code, out = run(capsys, "onc", "--n", "7", "--epsilon", "0.02", "--quiet")
        assert code == ExitCode.CHECK_FAILED
        assert json.loads(out)["certified"] is False

    def test_onc_epsilon_below_bound(self, capsys):
        assert run(capsys, "onc", "--n", "7", "--epsilon", "0.01", "--quiet")[0] == ExitCode.OK

    def test_broken_family_fails_the_check(self, capsys, tmp_path):
        path = tmp_path / "family.json"
        run(capsys, "construct", "--n", "7", "--out", str(path))
        doc = json.loads(path.read_text())
        doc["vectors"]["2"] = doc["vectors"]["3"]
        path.write_text(json.dumps(doc))
        code, out = run(capsys, "verify", "--in", str(path), "--quiet")
        assert code == ExitCode.CHECK_FAILED
        assert json.loads(out)["exclusivity_ok"] is False

    def test_verbose_streams_log_records(self, capsys):
        code = main(["--verbose", "verify", "--n", "7", "--quiet"])
        assert code == ExitCode.OK
        assert "Verified n=7" in capsys.readouterr().err

    def test_version(self, capsys):
        code, out = run(capsys, "--version")
        assert code == ExitCode.OK
        assert "qcw" in out


class TestArtifacts:

    def test_construct_then_verify_matches_in_memory(self, capsys, tmp_path):
        path = tmp_path / "family7.json"
        assert run(capsys, "construct", "--n", "7", "--out", str(path), "--quiet")[0] == ExitCode.OK
        from_file = json.loads(run(capsys, "verify", "--in", str(path), "--quiet")[1])
        in_memory = json.loads(run(capsys, "verify", "--n", "7", "--quiet")[1])
        assert from_file == in_memory

    def test_construct_writes_exact_amplitudes(self, capsys):
        doc = json.loads(run(capsys, "construct", "--n", "6", "--quiet")[1])
        assert doc["n"] == 6 and doc["d"] == 4
        assert doc["vectors"]["2"][0] == [1.0, 0.0]

    def test_onc_values(self, capsys):
        doc = json.loads(run(capsys, "onc", "--n", "8", "--quiet")[1])
        assert doc["epsilon_bound"] == pytest.approx(1 / 99, rel=1e-14)
        assert doc["parity"] == "even"

    def test_classical_pentagon(self, capsys):
        code, out = run(capsys, "classical", "--n", "5", "--quiet")
        doc = json.loads(out)
        assert code == ExitCode.OK
        assert doc["alpha"] == 2
        assert doc["classical_p11"] == 0.0

    def test_kcbs_and_hardy(self, capsys):
        kcbs = json.loads(run(capsys, "kcbs", "--n", "9", "--quiet")[1])
        assert kcbs["beta"] == pytest.approx(2 + 1 / 9, abs=1e-12)
        assert kcbs["classical_bound"] == 2
        hardy = json.loads(run(capsys, "hardy", "--n", "9", "--quiet")[1])
        assert hardy["conditions_ok"] is True
        assert hardy["p11"] == pytest.approx(1 / 9, abs=1e-12)

    def test_optimize(self, capsys):
        code, out = run(capsys, "optimize", "--n", "7", "--restarts", "4", "--seed", "3", "--quiet")
        doc = json.loads(out)
        assert code == ExitCode.OK
        assert doc["lambda_max"] == pytest.approx(doc["oracle"], abs=1e-9)
        assert doc["lambda_max"] > doc["family_beta"]

    def test_majorana_json(self, capsys):
        doc = json.loads(run(capsys, "majorana", "--n", "7", "--vertex", "2", "--quiet")[1])
        assert list(doc["constellations"]) == ["v2"]
        (south,) = doc["constellations"]["v2"]["points"]
        assert south["theta"] == pytest.approx(3.14159265358979)
        assert south["mult"] == 4

    def test_majorana_unknown_vertex(self, capsys):
        assert run(capsys, "majorana", "--n", "7", "--vertex", "9")[0] == ExitCode.USAGE_ERROR

    def test_majorana_flip_check(self, capsys):
        code, out = run(capsys, "majorana", "--n", "8", "--check-flip", "--quiet")
        assert code == ExitCode.OK
        assert json.loads(out)["flip_symmetry"]["passed"] is True

    def test_majorana_flip_check_needs_a_constructed_family(self, capsys, tmp_path, umbrella):
        path = tmp_path / "umbrella.json"
        path.write_text(json.dumps(umbrella.to_dict()))
        code, out = run(capsys, "majorana", "--in", str(path), "--check-flip", "--quiet")
        assert code == ExitCode.USAGE_ERROR
        assert out == ""
        assert run(capsys, "majorana", "--in", str(path), "--quiet")[0] == ExitCode.OK

    @pytest.mark.parametrize("n,discs", [(7, 8), (8, 9)])
    def test_majorana_svg_is_stable(self, capsys, tmp_path, n, discs):
        first, second = tmp_path / "a.svg", tmp_path / "b.svg"
        for path in (first, second):
            code, _ = run(capsys, "majorana", "--n", str(n), "--format", "svg", "--out", str(path), "--quiet")
            assert code == ExitCode.OK
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text(encoding="utf-8").count('id="disc-') == discs

    def test_simulate(self, capsys):
        code, out = run(capsys, "simulate", "--n", "7", "--shots", "20000", "--noise", "0", "--seed", "5", "--quiet")
        doc = json.loads(out)
        assert code == ExitCode.OK
        assert doc["empirical_exclusivity_violation"] == 0.0
        assert doc["empirical_beta"] == pytest.approx(2 + 1 / 9, abs=0.05)

    def test_sweep_csv(self, capsys):
        code, out = run(capsys, "sweep", "--n", "7", "--noise", "0", "--noise", "0.01",
                        "--seed", "1", "--shots", "500", "--quiet")
        assert code == ExitCode.OK
        rows = list(csv.DictReader(io.StringIO(out)))
        assert out.splitlines()[0] == ",".join(SWEEP_FIELDS)
        assert len(rows) == 2
        assert [float(r["eta"]) for r in rows] == [0.0, 0.01]

    def test_sweep_json(self, capsys):
        doc = json.loads(run(capsys, "sweep", "--n", "8", "--seed", "2", "--shots", "100",
                             "--format", "json", "--quiet")[1])
        assert len(doc["rows"]) == 1
