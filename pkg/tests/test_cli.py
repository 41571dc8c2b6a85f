import json
import math
import os
import re

import numpy as np
import pytest

from hystwave.cli import main, parse_drive, parse_initial
from hystwave.drive import LinearDrive, PiecewiseLinearDrive, SinusoidalDrive
from hystwave.errors import ConfigError
from hystwave.particle import ExplicitInitial, RandomMonotone, WellPrepared
from hystwave.wave import solve_width
from hystwave.model import ModelParams

FLOAT_RE = re.compile(r"^-?\d\.\d{12}e[+-]\d{2,3}$")


def read_csv(path):
    meta, columns, rows = {}, None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                k, _, v = line[2:].partition("=")
                meta[k] = v
            elif columns is None:
                columns = line.split(",")
            else:
                rows.append(line.split(","))
    return meta, columns, rows


class TestSimulate:
    def test_artifacts_and_exit_code(self, tmp_path):
        out = tmp_path / "run"
        rc = main([
            "simulate", "--outdir", str(out), "--tau", "0.1", "--n", "200",
            "--t-end", "0.2", "--snapshots", "0.05,0.2",
        ])
        assert rc == 0
        meta, columns, rows = read_csv(out / "diagnostics.csv")
        assert meta["kappa"] == "5.000000000000e-01"
        assert "t" in columns and "sigma" in columns and "ell" in columns
        for row in rows:
            for cell in row:
                assert FLOAT_RE.match(cell), cell
        run = json.loads((out / "run.json").read_text())
        assert run["params"]["delta"] == 1.0
        assert run["final"]["t"] == pytest.approx(0.2, abs=1e-12)
        assert (out / "snapshot_000.csv").exists()
        assert (out / "snapshot_001.csv").exists()
        _, scols, srows = read_csv(out / "snapshot_000.csv")
        assert scols == ["p", "x"]
        assert len(srows) == 200

    def test_reruns_are_byte_identical(self, tmp_path):
        args = ["simulate", "--tau", "0.1", "--n", "100", "--t-end", "0.1"]
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--outdir", str(a)]) == 0
        assert main(args + ["--outdir", str(b)]) == 0
        for name in ("diagnostics.csv", "run.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_config_file_and_flag_override(self, tmp_path):
        cfg = tmp_path / "run.ini"
        cfg.write_text(
            "[model]\ndelta = 2.0\ntau = 0.1\n\n[simulate]\nn = 100\nt_end = 0.1\n"
        )
        out = tmp_path / "out"
        rc = main([
            "simulate", "--config", str(cfg), "--outdir", str(out), "--delta", "3.0",
        ])
        assert rc == 0
        run = json.loads((out / "run.json").read_text())
        assert run["params"]["delta"] == 3.0  # flag wins
        assert run["params"]["tau"] == 0.1  # config wins over default
        assert run["n"] == 100

    def test_outdir_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("HYSTWAVE_OUTDIR", str(tmp_path / "envdir"))
        rc = main(["simulate", "--tau", "0.1", "--n", "50", "--t-end", "0.05"])
        assert rc == 0
        assert (tmp_path / "envdir" / "run.json").exists()

    def test_bad_model_parameter_exits_2_without_writing(self, tmp_path, capsys):
        out = tmp_path / "nope"
        rc = main(["simulate", "--outdir", str(out), "--kappa", "2.0"])
        assert rc == 2
        assert not out.exists()
        assert "configuration error" in capsys.readouterr().err

    def test_bad_dt_is_config_error(self, tmp_path):
        rc = main([
            "simulate", "--outdir", str(tmp_path / "x"), "--tau", "0.1",
            "--dt", "0.5", "--n", "50", "--t-end", "1.0",
        ])
        assert rc == 2


class TestWave:
    def test_artifacts(self, tmp_path):
        out = tmp_path / "w"
        rc = main([
            "wave", "--outdir", str(out), "--tau", "0.05", "--omega", "-1.0",
            "--n-profile", "101",
        ])
        assert rc == 0
        meta, cols, rows = read_csv(out / "profile.csv")
        assert cols == ["P", "X"]
        assert len(rows) == 101
        assert float(rows[0][0]) == 0.0 and float(rows[-1][0]) == 1.0
        doc = json.loads((out / "wave.json").read_text())
        p = ModelParams(kappa=0.5, delta=1.0, tau=0.05)
        assert doc["width"] == pytest.approx(solve_width(p, -1.0), rel=1e-12)
        assert doc["direction"] == "Left"
        assert doc["xi_lo"] == pytest.approx(0.5 - 0.5 * doc["width"], rel=1e-12)

    def test_out_of_domain_time_exits_1(self, tmp_path, capsys):
        out = tmp_path / "w"
        rc = main([
            "wave", "--outdir", str(out), "--tau", "0.05", "--omega", "-1.0",
            "--t", "10.0",
        ])
        assert rc == 1
        assert not out.exists()
        assert "InterfaceOutOfDomain" in capsys.readouterr().err


class TestSpectrum:
    def test_artifacts(self, tmp_path):
        out = tmp_path / "s"
        rc = main([
            "spectrum", "--outdir", str(out), "--tau", "0.01", "--omega", "-1.0",
            "--grid", "40,40",
        ])
        assert rc == 0
        doc = json.loads((out / "spectrum.json").read_text())
        assert doc["coupled"] is True
        assert doc["excluded_point"]["reported"] is False
        assert doc["excluded_point"]["char_plus_abs"] == 0.0
        assert len(doc["roots"]) == 6
        assert all(r["ep_residual"] < 1e-8 for r in doc["roots"])
        assert doc["verdict"]["kind"] == "Stable"
        assert doc["verdict"]["asymptotic_stability"] == "unstable"
        assert doc["thm2"]["sign"] == "+2W"
        assert doc["thm2"]["plus_max_residual"] < 1e-8
        assert doc["thm2"]["minus_min_residual"] > 1e-3
        _, cols, rows = read_csv(out / "chargrid.csv")
        assert cols == ["tau_re", "tau_im", "abs_char_minus", "abs_char_plus"]
        assert len(rows) == 40 * 40

    def test_bad_window_exits_2(self, tmp_path):
        rc = main([
            "spectrum", "--outdir", str(tmp_path / "s"), "--tau", "0.01",
            "--window", "1,2,3",
        ])
        assert rc == 2

    def test_free_width_skips_coupled_outputs(self, tmp_path):
        out = tmp_path / "s"
        rc = main([
            "spectrum", "--outdir", str(out), "--tau", "0.01", "--omega", "-1.0",
            "--grid", "40,40", "--free-width", "0.04", "--thm2-check", "false",
        ])
        assert rc == 0
        doc = json.loads((out / "spectrum.json").read_text())
        assert doc["coupled"] is False
        assert "asymptotic_real_part" not in doc
        assert "verdict" not in doc
        assert "thm2" not in doc


class TestLimit:
    def test_artifacts(self, tmp_path):
        out = tmp_path / "l"
        rc = main([
            "limit", "--outdir", str(out), "--kappa", str(1.0 / 3.0),
            "--delta", str(2.0 / 3.0),
        ])
        assert rc == 0
        meta, cols, rows = read_csv(out / "limit.csv")
        assert cols == ["t", "sigma", "xi", "ell", "branch"]
        branches = {row[4] for row in rows}
        assert "Part4_LeftMoving" in branches and "Part2_RightMoving" in branches
        doc = json.loads((out / "loop.json").read_text())
        assert len(doc["events"]) == 4
        assert doc["events"][0]["t"] == pytest.approx(math.asin(2.0 / 3.0), abs=1e-12)
        assert doc["boundary"]["corners"]["part2_part3"] == [-2.0, -1.0]

    def test_inconsistent_start_exits_1(self, tmp_path):
        rc = main([
            "limit", "--outdir", str(tmp_path / "l"), "--xi0", "0.9",
            "--sigma0", "0.5",
        ])
        assert rc == 1


class TestCompare:
    def test_artifacts(self, tmp_path):
        out = tmp_path / "c"
        rc = main([
            "compare", "--outdir", str(out), "--tau", "0.1", "--n", "200",
            "--t-end", "0.5", "--osc-window", "0.1,0.5",
        ])
        assert rc == 0
        _, cols, rows = read_csv(out / "compare.csv")
        assert cols == [
            "t", "ell", "sigma_particle", "xi_minus", "xi_plus",
            "sigma_limit", "xi_limit",
        ]
        doc = json.loads((out / "metrics.json").read_text())
        assert doc["hausdorff_ell_sigma"] >= 0.0
        assert doc["oscillation"] >= 0.0
        assert doc["osc_window"] == [0.1, 0.5]

    def test_bad_osc_window_exits_2(self, tmp_path):
        rc = main([
            "compare", "--outdir", str(tmp_path / "c"), "--tau", "0.1",
            "--n", "100", "--t-end", "0.2", "--osc-window", "0.1",
        ])
        assert rc == 2


class TestSweep:
    def test_parallel_combos(self, tmp_path):
        out = tmp_path / "sw"
        rc = main([
            "sweep", "--outdir", str(out), "--sub", "limit",
            "--param", "model.delta", "--values", "0.5,2.5",
            "--kappa", "0.3", "--t-end", "3.14", "--workers", "2",
        ])
        assert rc == 0
        doc = json.loads((out / "sweep.json").read_text())
        assert doc["sub"] == "limit"
        assert [c["status"] for c in doc["combos"]] == ["ok", "ok"]
        for val in ("0.5", "2.5"):
            assert (out / f"delta={val}" / "limit.csv").exists()
            assert (out / f"delta={val}" / "loop.json").exists()

    def test_unknown_parameter_exits_2(self, tmp_path):
        rc = main([
            "sweep", "--outdir", str(tmp_path / "sw"), "--sub", "limit",
            "--param", "model.zeta", "--values", "1,2",
        ])
        assert rc == 2

    def test_failed_combo_reported_and_exit_1(self, tmp_path):
        # second delta drives the limit state into an inconsistent entry
        out = tmp_path / "sw"
        rc = main([
            "sweep", "--outdir", str(out), "--sub", "limit",
            "--param", "limit.sigma0", "--values", "0.0,0.7",
            "--xi0", "0.5", "--workers", "1",
        ])
        assert rc == 1
        doc = json.loads((out / "sweep.json").read_text())
        statuses = {c["overrides"]["limit.sigma0"]: c["status"] for c in doc["combos"]}
        assert statuses["0.0"] == "ok"
        assert statuses["0.7"] == "error"


class TestParsers:
    def test_drive_kinds(self):
        assert isinstance(parse_drive("linear:rate=2,offset=1"), LinearDrive)
        assert isinstance(parse_drive("sin:amplitude=2,frequency=0.5"), SinusoidalDrive)
        pwl = parse_drive("pwl:knots=0:0;1:2;3:-1")
        assert isinstance(pwl, PiecewiseLinearDrive)
        assert pwl.ell(1.0) == pytest.approx(2.0)

    def test_drive_errors(self):
        with pytest.raises(ConfigError):
            parse_drive("quadratic:rate=1")
        with pytest.raises(ConfigError):
            parse_drive("linear:rate=1,slope=2")  # unknown option
        with pytest.raises(ConfigError):
            parse_drive("linear:rate=fast")
        with pytest.raises(ConfigError):
            parse_drive("sin:amplitude")

    def test_initial_kinds(self):
        assert isinstance(parse_initial("well-prepared:xi=0.3", 100), WellPrepared)
        assert isinstance(parse_initial("random:seed=7", 100), RandomMonotone)
        sign = parse_initial("sign:xi=0.25", 8)
        assert isinstance(sign, ExplicitInitial)
        assert np.sum(sign.x > 0) == 6

    def test_initial_errors(self):
        with pytest.raises(ConfigError):
            parse_initial("gaussian:xi=0.5", 100)
        with pytest.raises(ConfigError):
            parse_initial("well-prepared:xi=center", 100)
