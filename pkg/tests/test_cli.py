"""End-to-end tests for the command-line interface."""

import json

import pytest

from unfolder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestClassify:
    def test_auto_pitchfork_json(self, capsys):
        code, out, _ = run(capsys, "classify", "--model", "sh", "--auto-pitchfork")
        assert code == 0
        payload = json.loads(out)
        assert payload["class"] == "Pitchfork"
        assert payload["epsilon"] == -1 and payload["delta"] == 1
        assert payload["codimension"] == 2
        assert payload["extra_param"][0] == "d_a"
        assert abs(payload["extra_param"][1] - 4.0) < 1e-8
        assert set(payload["derivatives"]) == {
            "g",
            "g_x",
            "g_l",
            "g_xx",
            "g_lx",
            "g_ll",
            "g_xxx",
        }

    def test_point_classify_ldgc(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--model", "ldgc_b", "--point", "1,0.025"
        )
        assert code == 0
        assert json.loads(out)["class"] == "Transcritical"

    def test_off_solution_set_exit_2(self, capsys):
        code, out, _ = run(capsys, "classify", "--model", "sh", "--point", "1.3,0.7")
        assert code == 2
        payload = json.loads(out)
        assert "error" in payload

    def test_set_overrides(self, capsys):
        code, out, _ = run(
            capsys,
            "classify",
            "--model",
            "sh",
            "--set",
            "p=-1",
            "--point",
            "1,1",
        )
        assert code == 0
        assert json.loads(out)["class"] == "Transcritical"

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "m.cfg"
        cfg.write_text("p = -1\n")
        code, out, _ = run(
            capsys,
            "classify",
            "--model",
            "sh",
            "--config",
            str(cfg),
            "--point",
            "1,1",
        )
        assert code == 0
        assert json.loads(out)["class"] == "Transcritical"

    def test_tol_env_var(self, capsys, monkeypatch):
        # A sloppy tolerance reclassifies the near-crossing as singular.
        monkeypatch.setenv("UNFOLDER_TOL", "1e-1")
        code, out, _ = run(
            capsys, "classify", "--model", "sh", "--set", "p=-1", "--point", "1,1"
        )
        assert code == 0
        loose = json.loads(out)
        monkeypatch.setenv("UNFOLDER_TOL", "not-a-number")
        code, _, err = run(
            capsys, "classify", "--model", "sh", "--set", "p=-1", "--point", "1,1"
        )
        assert code == 1  # fatal usage error
        assert loose["class"] in ("Transcritical", "Degenerate")

    def test_unknown_model_rejected(self, capsys):
        code, *_ = run(capsys, "classify", "--model", "nope", "--point", "1,1")
        assert code == 1


class TestDiagram:
    def test_writes_csv_and_svg(self, capsys, tmp_path):
        out_dir = tmp_path / "d"
        code, out, _ = run(
            capsys,
            "diagram",
            "--model",
            "sh",
            "--set",
            "alpha=0.01",
            "--out",
            str(out_dir),
        )
        assert code == 0
        csv_text = (out_dir / "diagram.csv").read_text()
        assert csv_text.splitlines()[0] == "branch_id,lambda,x,g_x,stability,physical,special"
        svg_text = (out_dir / "diagram.svg").read_text()
        assert svg_text.startswith("<svg") or "<svg" in svg_text.splitlines()[0:2][-1]

    def test_json_format_signature(self, capsys, tmp_path):
        out_dir = tmp_path / "d"
        code, *_ = run(
            capsys,
            "diagram",
            "--model",
            "ldgc_c",
            "--format",
            "json",
            "--out",
            str(out_dir),
        )
        assert code == 0
        sig = json.loads((out_dir / "signature.json").read_text())
        assert {"n_branches", "n_folds", "hysteresis"} <= set(sig)

    def test_window_flag(self, capsys, tmp_path):
        out_dir = tmp_path / "d"
        code, *_ = run(
            capsys,
            "diagram",
            "--model",
            "sh",
            "--window",
            "0.5,3,0.5,2",
            "--out",
            str(out_dir),
        )
        assert code == 0
        rows = (out_dir / "diagram.csv").read_text().strip().splitlines()[1:]
        for row in rows:
            _, lam, x, *_rest = row.split(",")
            assert 0.5 - 1e-9 <= float(x) <= 3 + 1e-9
            assert 0.5 - 1e-9 <= float(lam) <= 2 + 1e-9


class TestCatalogue:
    def test_catalogue_outputs(self, capsys, tmp_path):
        out_dir = tmp_path / "c"
        code, out, _ = run(
            capsys, "catalogue", "--family", "ldgc_b", "--out", str(out_dir)
        )
        assert code == 0
        assert "distinct signatures: 2" in out
        payload = json.loads((out_dir / "catalogue.json").read_text())
        assert len(payload) == 2
        for k in range(2):
            assert (out_dir / f"diagram_{k:02d}.csv").exists()
