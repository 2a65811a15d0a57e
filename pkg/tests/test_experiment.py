"""Tests for the benchmark harness and its command line front end."""

import json
import math

import mpmath
import numpy as np
import pytest

import nysquad.cli as cli
from nysquad.exceptions import ConfigError, NumericalConsistencyError
from nysquad.experiment import (
    ALL_METHODS,
    CSV_HEADER,
    FIGURE_PRESETS,
    ExperimentConfig,
    ResultRow,
    run_experiment,
    write_csv,
)


def tiny_config(**overrides):
    base = dict(figure="custom", d=1, r=1, n_list=(4,), trials=2,
                methods=("monte-carlo", "kq-ksZ"))
    base.update(overrides)
    return ExperimentConfig(**base)


def strip_runtime(rows):
    return [(r.figure, r.method, r.d, r.r, r.n, r.N, r.trial, r.seed, r.wce_sq)
            for r in rows]


class TestConfig:
    def test_presets_bind(self):
        assert ExperimentConfig.from_figure("fig1b").d == 2
        assert ExperimentConfig.from_figure("fig1c").r == 3
        cfg = ExperimentConfig.from_figure("fig2b")
        assert cfg.n_rule == "n3" and cfg.n_list[-1] == 64

    def test_overrides_beat_preset(self):
        cfg = ExperimentConfig.from_figure("fig1a", trials=3, n_list=(4, 8))
        assert cfg.trials == 3 and cfg.n_list == (4, 8) and cfg.d == 1

    def test_unknown_figure(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_figure("fig9z")

    def test_sample_size_rules(self):
        assert tiny_config(n_rule="n2").sample_size(8) == 64
        assert tiny_config(n_rule="n3").sample_size(8) == 512

    @pytest.mark.parametrize("bad", [
        dict(d=0), dict(d=16), dict(d=True), dict(r=0), dict(r=7),
        dict(n_list=()), dict(n_list=(8, 4)), dict(n_list=(4, 4)),
        dict(n_list=(1,)), dict(n_list=(4.0,)), dict(n_rule="n4"),
        dict(trials=0), dict(methods=()), dict(methods=("bogus",)),
        dict(methods=("monte-carlo", "monte-carlo")),
        dict(seed=-1), dict(seed=2**64), dict(enforce_inequality=1),
        dict(rtol=0.0), dict(rtol=2.0), dict(rtol=1), dict(figure="wat"),
    ])
    def test_validate_rejects(self, bad):
        with pytest.raises(ConfigError):
            tiny_config(**bad).validate()

    def test_mu_variant_needs_closed_form_square(self):
        with pytest.raises(ConfigError):
            tiny_config(r=4, methods=("kq-ksmuZ",)).validate()
        tiny_config(r=3, methods=("kq-ksmuZ",)).validate()

    def test_all_presets_validate(self):
        for figure in FIGURE_PRESETS:
            ExperimentConfig.from_figure(figure).validate()


class TestResultRow:
    def test_header(self):
        assert CSV_HEADER == "figure,method,d,r,n,N,trial,seed,wce_sq,runtime_ms"

    def test_float_roundtrip(self):
        wce_sq = math.pi / 7.0
        row = ResultRow("fig1a", "monte-carlo", 1, 1, 4, 16, 0, 0, wce_sq, 3)
        text = row.to_csv()
        assert float(text.split(",")[8]) == wce_sq

    def test_field_order_matches_header(self):
        row = ResultRow("f", "m", 2, 3, 4, 16, 5, 6, 0.5, 7)
        assert row.to_csv() == "f,m,2,3,4,16,5,6,0.5,7"


class TestRunExperiment:
    def test_row_grid_and_sorting(self):
        cfg = tiny_config(n_list=(4, 8))
        rows = run_experiment(cfg)
        assert len(rows) == 2 * 2 * 2  # methods x n x trials
        keys = [(r.method, r.n, r.trial) for r in rows]
        assert keys == sorted(keys)
        assert {r.N for r in rows} == {16, 64}
        assert all(r.figure == "custom" and r.seed == 0 for r in rows)
        assert all(np.isfinite(r.wce_sq) and r.wce_sq > 0 for r in rows)

    def test_deterministic_up_to_runtime(self):
        cfg = tiny_config()
        assert strip_runtime(run_experiment(cfg)) == strip_runtime(run_experiment(cfg))

    def test_seed_changes_results(self):
        a = run_experiment(tiny_config(methods=("monte-carlo",)))
        b = run_experiment(tiny_config(methods=("monte-carlo",), seed=1))
        assert {r.wce_sq for r in a} != {r.wce_sq for r in b}

    def test_method_subset_reproduces_full_run_rows(self):
        # dedicated streams: dropping methods must not move the others
        full = run_experiment(tiny_config(methods=ALL_METHODS))
        part = run_experiment(tiny_config(methods=("kq-ksZ",)))
        full_z = [r for r in strip_runtime(full) if r[1] == "kq-ksZ"]
        assert full_z == strip_runtime(part)

    def test_grid_baseline_hits_lattice_value(self):
        # d = 1 baseline is the lattice {i/4}: squared error 2 zeta(2) / 16
        cfg = tiny_config(methods=("grid-or-halton-baseline",), trials=1)
        (row,) = run_experiment(cfg)
        want = float(2 * mpmath.zeta(2)) / 16.0
        assert abs(row.wce_sq - want) <= 1e-12

    def test_higher_dimension_runs(self):
        cfg = tiny_config(d=2, methods=("grid-or-halton-baseline", "kq-ksH"),
                          trials=1)
        rows = run_experiment(cfg)
        assert len(rows) == 2


class TestWriteCsv:
    def test_layout(self, tmp_path):
        rows = run_experiment(tiny_config(trials=1))
        out = tmp_path / "res.csv"
        write_csv(rows, out)
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + len(rows)
        assert out.read_text().endswith("\n")

    def test_rtol_comment(self, tmp_path):
        out = tmp_path / "res.csv"
        write_csv([], out, rtol_comment=1e-8)
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# rtol=")
        assert float(lines[0].partition("=")[2]) == 1e-8
        assert lines[1] == CSV_HEADER


class TestCli:
    def _config_file(self, tmp_path, **payload):
        base = dict(figure="custom", d=1, r=1, n_list=[4], trials=1,
                    methods=["monte-carlo"])
        base.update(payload)
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(base))
        return str(path)

    def test_success_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "run.csv"
        code = cli.main(["--config", self._config_file(tmp_path), "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER and len(lines) == 2
        assert "wrote 1 rows" in capsys.readouterr().out

    def test_flags_override_config(self, tmp_path):
        out = tmp_path / "run.csv"
        code = cli.main(["--config", self._config_file(tmp_path, trials=2),
                         "--trials", "1", "--out", str(out)])
        assert code == 0
        assert len(out.read_text().splitlines()) == 2

    def test_methods_flag(self, tmp_path):
        out = tmp_path / "run.csv"
        code = cli.main(["--config", self._config_file(tmp_path),
                         "--methods", "monte-carlo,kq-ksH", "--out", str(out)])
        assert code == 0
        assert len(out.read_text().splitlines()) == 3

    def test_figure_flag_beats_config_figure(self, tmp_path):
        cfg = self._config_file(tmp_path, figure="fig1a", n_list=[4], trials=1)
        out = tmp_path / "run.csv"
        code = cli.main(["--figure", "fig2a", "--config", cfg, "--out", str(out)])
        assert code == 0
        assert ",fig2a," not in out.read_text()  # figure is the first column
        assert out.read_text().splitlines()[1].startswith("fig2a,")

    def test_rtol_flag_adds_comment(self, tmp_path):
        out = tmp_path / "run.csv"
        code = cli.main(["--config", self._config_file(tmp_path),
                         "--rtol", "1e-8", "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("# rtol=")

    def test_default_rtol_has_no_comment(self, tmp_path):
        out = tmp_path / "run.csv"
        cli.main(["--config", self._config_file(tmp_path), "--out", str(out)])
        assert not out.read_text().startswith("#")

    def test_no_figure_is_config_error(self, capsys):
        assert cli.main([]) == 2
        assert "config error" in capsys.readouterr().err

    def test_unknown_config_key(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"figure": "fig1a", "bogus": 1}))
        assert cli.main(["--config", str(path)]) == 2

    def test_missing_config_file(self, tmp_path):
        assert cli.main(["--config", str(tmp_path / "nope.json")]) == 2

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        assert cli.main(["--config", str(path)]) == 2

    def test_n_list_must_be_array(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"figure": "fig1a", "n_list": 4}))
        assert cli.main(["--config", str(path)]) == 2

    def test_bad_method_flag(self, tmp_path):
        assert cli.main(["--config", self._config_file(tmp_path),
                         "--methods", "sobol"]) == 2

    def test_bad_figure_choice_exits_like_argparse(self, capsys):
        assert cli.main(["--figure", "fig9"]) == 2
        capsys.readouterr()

    def test_numerical_failure_maps_to_exit_3(self, tmp_path, monkeypatch, capsys):
        def boom(cfg):
            raise NumericalConsistencyError("synthetic")

        monkeypatch.setattr(cli, "run_experiment", boom)
        code = cli.main(["--config", self._config_file(tmp_path),
                        "--out", str(tmp_path / "x.csv")])
        assert code == 3
        assert "numerical consistency" in capsys.readouterr().err
