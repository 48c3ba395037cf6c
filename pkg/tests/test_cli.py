"""Harness behavior: config resolution, hashing, exit codes, reproducibility."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from heis.cli import (
    ReferenceParseError,
    config_hash,
    main,
    parse_dyadic,
    parse_fine_step,
    parse_float_list,
    parse_reference_curve,
)


@pytest.fixture
def runner():
    return CliRunner()


class TestParsers:
    def test_reference_curve_kinds(self):
        assert parse_reference_curve("zero").planar_energy == 0.0
        assert parse_reference_curve("line 1 0").planar_energy == 1.0
        assert parse_reference_curve("poly2 1 0.5").label == "poly2 1 0.5"

    def test_unknown_kind_position(self):
        with pytest.raises(ReferenceParseError) as exc:
            parse_reference_curve("  bogus 1 2")
        assert exc.value.position == 2

    def test_trailing_token_position(self):
        with pytest.raises(ReferenceParseError) as exc:
            parse_reference_curve("line 1 2 3")
        assert exc.value.position == 9

    def test_bad_number_position(self):
        with pytest.raises(ReferenceParseError) as exc:
            parse_reference_curve("line a 2")
        assert exc.value.position == 5

    def test_missing_arguments(self):
        with pytest.raises(ReferenceParseError):
            parse_reference_curve("line 1")
        with pytest.raises(ReferenceParseError):
            parse_reference_curve("")

    def test_dyadic_forms(self):
        assert parse_dyadic("2^-3") == 0.125
        assert parse_dyadic("2**-3") == 0.125
        assert parse_dyadic("0.125") == 0.125
        with pytest.raises(ValueError):
            parse_dyadic("three")
        with pytest.raises(ValueError):
            parse_dyadic("-0.5")

    def test_fine_step_window(self):
        assert parse_fine_step("2^-6") == 2.0 ** -6
        assert parse_fine_step("2^-20") == 2.0 ** -20
        for bad in ("2^-5", "2^-21", "0.3"):
            with pytest.raises(ValueError):
                parse_fine_step(bad)

    def test_float_list(self):
        assert parse_float_list("2^-2, 0.125,") == [0.25, 0.125]


class TestConfigHash:
    def _cfg(self, experiment, **kw):
        base = {"experiment": experiment, "seed": 1, "trials": 100,
                "fine_step": "2^-10", "parameters": {"x": 1}}
        base.update(kw)
        return base

    def test_helix_hash_ignores_seed_and_trials(self):
        a = config_hash(self._cfg("helix", seed=1, trials=5), "helix")
        b = config_hash(self._cfg("helix", seed=9, trials=7), "helix")
        assert a == b

    def test_stochastic_hash_tracks_seed(self):
        a = config_hash(self._cfg("tube", seed=1), "tube")
        b = config_hash(self._cfg("tube", seed=2), "tube")
        assert a != b

    def test_hash_tracks_parameters(self):
        a = config_hash(self._cfg("tube"), "tube")
        c = self._cfg("tube")
        c["parameters"] = {"x": 2}
        assert a != config_hash(c, "tube")


class TestSimulate:
    def test_writes_path_and_passes(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["simulate", "--fine-step", "2^-8",
                                       "--seed", "3", "--out", "r"])
            assert res.exit_code == 0, res.output
            assert "[PASS] starts-at-identity" in res.output
            assert "[PASS] area-is-left-point-lift" in res.output
            lines = Path("r/simulate.csv").read_text().splitlines()
            assert lines[0] == "t,x,y,z"
            assert len(lines) == 2 + 2 ** 8
            summary = json.loads(Path("r/simulate.summary.json").read_text())
            assert summary["pass"] is True
            assert "wall_clock_s" in summary

    def test_reruns_are_byte_identical(self, runner):
        with runner.isolated_filesystem():
            for out in ("a", "b"):
                res = runner.invoke(main, ["simulate", "--fine-step", "2^-8",
                                           "--seed", "5", "--out", out])
                assert res.exit_code == 0
            assert Path("a/simulate.csv").read_bytes() == Path("b/simulate.csv").read_bytes()
            ha = json.loads(Path("a/simulate.summary.json").read_text())["hash"]
            hb = json.loads(Path("b/simulate.summary.json").read_text())["hash"]
            assert ha == hb

    def test_rejects_multiple_trials(self, runner):
        res = runner.invoke(main, ["simulate", "--trials", "2"])
        assert res.exit_code == 1
        assert "single path" in res.output

    def test_rejects_out_of_window_step(self, runner):
        res = runner.invoke(main, ["simulate", "--fine-step", "2^-30"])
        assert res.exit_code == 1
        assert "invalid config" in res.output


class TestConfigFile:
    def test_file_then_flag_precedence(self, runner):
        with runner.isolated_filesystem():
            Path("c.json").write_text(json.dumps({
                "experiment": "ws-converge", "trials": 30, "seed": 2,
                "parameters": {"deltas": "2^-2,2^-3"}}))
            res = runner.invoke(main, ["ws-converge", "--config", "c.json",
                                       "--trials", "40", "--fine-step", "2^-8",
                                       "--out", "r"])
            assert res.exit_code == 0, res.output
            cfg = json.loads(Path("r/ws-converge.summary.json").read_text())["config"]
            assert cfg["trials"] == 40  # flag wins
            assert cfg["seed"] == 2  # file wins over default
            assert cfg["parameters"]["deltas"] == "2^-2,2^-3"

    def test_wrong_experiment_in_file(self, runner):
        with runner.isolated_filesystem():
            Path("c.json").write_text(json.dumps({"experiment": "tube"}))
            res = runner.invoke(main, ["ws-converge", "--config", "c.json"])
            assert res.exit_code == 1
            assert "is for 'tube'" in res.output

    def test_malformed_json(self, runner):
        with runner.isolated_filesystem():
            Path("c.json").write_text("{not json")
            res = runner.invoke(main, ["ws-converge", "--config", "c.json"])
            assert res.exit_code == 1
            assert "not valid JSON" in res.output


class TestExperimentCommands:
    def test_ws_converge_small(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["ws-converge", "--trials", "50",
                                       "--fine-step", "2^-8",
                                       "--deltas", "2^-2,2^-4", "--out", "r"])
            assert res.exit_code == 0, res.output
            rows = Path("r/ws-converge.csv").read_text().splitlines()
            assert rows[0] == "delta,estimate,stderr,n_trials,fine_step,seed"
            assert float(rows[1].split(",")[0]) == 0.25

    def test_ws_converge_rejects_offgrid_delta(self, runner):
        res = runner.invoke(main, ["ws-converge", "--trials", "10",
                                   "--fine-step", "2^-8", "--deltas", "0.3"])
        assert res.exit_code == 1
        assert "not a multiple" in res.output

    def test_energy_diverge_small(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["energy-diverge", "--trials", "64",
                                       "--fine-step", "2^-7",
                                       "--steps", "2^-6,2^-7", "--out", "r"])
            assert res.exit_code == 0, res.output
            assert "[PASS] raw-energy-2-over-h" in res.output
            assert "[PASS] smoothed-plateau-1pct" in res.output

    def test_energy_diverge_step_mismatch(self, runner):
        res = runner.invoke(main, ["energy-diverge", "--fine-step", "2^-8",
                                   "--steps", "2^-6,2^-7"])
        assert res.exit_code == 1
        assert "must equal the smallest step" in res.output

    def test_helix_small(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["helix", "--n", "2,4", "--refine", "2",
                                       "--variant", "verbatim", "--out", "r"])
            assert res.exit_code == 0, res.output
            assert "[PASS] strictly-decreasing" in res.output
            assert "[PASS] rate-constant-stable" in res.output

    def test_helix_hash_independent_of_seed(self, runner):
        with runner.isolated_filesystem():
            hashes = []
            for seed, out in (("1", "a"), ("2", "b")):
                res = runner.invoke(main, ["helix", "--n", "2", "--refine", "1",
                                           "--seed", seed, "--out", out])
                assert res.exit_code == 0
                hashes.append(json.loads(
                    Path(out, "helix.summary.json").read_text())["hash"])
            assert hashes[0] == hashes[1]

    def test_levy_law_small(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["levy-law", "--trials", "2000",
                                       "--fine-step", "2^-8", "--lambdas", "1",
                                       "--out", "r"])
            assert res.exit_code == 0, res.output
            rows = Path("r/levy-law.csv").read_text().splitlines()
            assert rows[1].startswith("nan,")  # variance row marker

    def test_dds_small(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["dds-diagnostics", "--trials", "2000",
                                       "--fine-step", "2^-7",
                                       "--times", "0.5,1.0", "--out", "r"])
            assert res.exit_code == 0, res.output
            assert "[PASS] clock-mean-quarter" in res.output

    def test_dds_offgrid_time(self, runner):
        res = runner.invoke(main, ["dds-diagnostics", "--trials", "10",
                                   "--fine-step", "2^-7", "--times", "0.3"])
        assert res.exit_code == 1
        assert "not a grid node" in res.output


class TestExitCodes:
    def test_support_zero_hits_is_inconclusive(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["support", "--phi", "line 8 8",
                                       "--epsilon", "0.1", "--trials", "100",
                                       "--fine-step", "2^-7", "--out", "r"])
            assert res.exit_code == 2, res.output
            assert "INCONCLUSIVE" in res.output

    def test_support_positive(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["support", "--phi", "zero",
                                       "--epsilon", "1.5", "--trials", "2000",
                                       "--fine-step", "2^-7", "--out", "r"])
            assert res.exit_code == 0, res.output

    def test_tube_empty_ladder_is_inconclusive(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["tube", "--phi", "line 1 0",
                                       "--epsilon", "0.9",
                                       "--deltas", "0.05,0.02",
                                       "--trials", "100", "--budget", "200",
                                       "--min-accepted", "10",
                                       "--fine-step", "2^-7", "--out", "r"])
            assert res.exit_code == 2, res.output
            header = Path("r/tube.csv").read_text().splitlines()[0]
            assert header == "delta,epsilon,p_hat,stderr,accepted,total,seed"

    def test_tube_underpowered_is_inconclusive_not_fail(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["tube", "--phi", "line 1 0",
                                       "--epsilon", "1.0",
                                       "--deltas", "1.5,1.2",
                                       "--trials", "50", "--budget", "60",
                                       "--min-accepted", "40",
                                       "--fine-step", "2^-7", "--out", "r"])
            assert res.exit_code == 2, res.output

    def test_girsanov_far_level_fails(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["girsanov-ratio", "--phi", "line 1 0",
                                       "--deltas", "2.5", "--trials", "20000",
                                       "--fine-step", "2^-7", "--out", "r"])
            assert res.exit_code == 1, res.output
            assert "[FAIL] final-near-target" in res.output

    def test_girsanov_feasible_ladder_passes(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(main, ["girsanov-ratio", "--phi", "line 1 0",
                                       "--deltas", "1.5,1.0,0.7",
                                       "--trials", "60000",
                                       "--fine-step", "2^-7", "--out", "r"])
            assert res.exit_code == 0, res.output
