import math

import numpy as np
import pytest

from unruh_probe import cli, discrimination


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    """(header_comments, column_names, rows as list of float lists)."""
    comments, columns, rows = [], None, []
    for line in text.splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append([float(v) if v else math.nan for v in line.split(",")])
    return comments, columns, rows


def table_values(text):
    out = {}
    for line in text.splitlines():
        if line.startswith("#") or "=" not in line:
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = float(value)
    return out


class TestParams:
    def test_from_n(self, capsys):
        code, out, _ = run_cli(capsys, "params", "--n", "10", "--gamma0", "1")
        assert code == 0
        vals = table_values(out)
        assert vals["A"] == 2.5
        assert vals["B"] == 0.25
        assert vals["n"] == 10.0
        assert abs(vals["a"] - math.pi / math.atanh(0.1)) < 1e-9

    def test_inertial(self, capsys):
        code, out, _ = run_cli(capsys, "params", "--a", "0")
        assert code == 0
        vals = table_values(out)
        assert vals["n"] == 1.0
        assert vals["T"] == 0.0
        assert vals["N_U"] == 0.0

    def test_from_temperature(self, capsys):
        # omega0/T = ln 2 makes n = 3; T given to 10 digits
        code, out, _ = run_cli(capsys, "params", "--T", "1.442695041", "--omega0", "1")
        assert code == 0
        assert abs(table_values(out)["n"] - 3.0) < 1e-6

    def test_exactly_one_input(self, capsys):
        code, _, err = run_cli(capsys, "params", "--a", "1", "--n", "3")
        assert code == 2 and "exactly one" in err
        code, _, err = run_cli(capsys, "params")
        assert code == 2

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "params", "--a", "-2")
        assert code == 1 and "error" in err


class TestEvolve:
    def test_single_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "evolve", "--theta", "0", "--n", "1", "--tau-max", "0", "--points", "1"
        )
        assert code == 0
        _, columns, rows = parse_csv(out)
        assert columns == ["tau", "r1", "r2", "r3"]
        assert rows == [[0.0, 0.0, 0.0, 1.0]]

    def test_relaxation_endpoint(self, capsys):
        code, out, _ = run_cli(
            capsys, "evolve", "--theta", "0", "--n", "10", "--tau-max", "5", "--points", "501"
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        assert len(rows) == 501
        assert abs(rows[-1][3] + 0.1) < 1e-6

    def test_oracle_column(self, capsys):
        code, out, _ = run_cli(
            capsys, "evolve", "--theta", "1.0", "--n", "10", "--tau-max", "3",
            "--points", "61", "--oracle", "2000",
        )
        assert code == 0
        _, columns, rows = parse_csv(out)
        assert columns[-1] == "oracle_delta"
        assert all(row[-1] < 1e-10 for row in rows)

    def test_domain_error_names_flag(self, capsys):
        code, _, err = run_cli(
            capsys, "evolve", "--theta", "0", "--n", "10", "--tau-max", "-1", "--points", "5"
        )
        assert code == 1 and "tau-max" in err

    def test_missing_flags(self, capsys):
        code, _, err = run_cli(capsys, "evolve", "--theta", "0")
        assert code == 2 and "--n" in err


class TestDistance:
    def test_zero_time_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "1.0", "--n", "10",
            "--tau-max", "2", "--points", "5",
        )
        assert code == 0
        _, columns, rows = parse_csv(out)
        assert columns == ["tau", "distance", "normalized", "error_probability"]
        assert rows[0][:2] == [0.0, 0.0]
        assert rows[0][3] == 0.5

    def test_excited_probe_dips_to_zero(self, capsys):
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "0", "--n", "10",
            "--tau-max", "3", "--points", "3001",
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        # skip the trivial zero at tau = 0; the interior dip is the feature
        dip = min((row for row in rows if row[0] >= 0.3), key=lambda row: row[1])
        assert dip[1] < 1e-3
        assert abs(dip[0] - 0.80) < 0.01

    def test_bipartite_normalized_peak(self, capsys):
        # c = 1 normalized curve peaks at ~1.13 near gt = 0.42
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "bipartite", "--werner", "1", "--n", "10",
            "--tau-max", "3", "--points", "3001", "--normalized",
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        peak = max(rows, key=lambda row: row[2])
        assert abs(peak[2] - 1.1333) < 0.01
        assert abs(peak[0] - 0.42) < 0.01

    def test_inertial_drops_normalized_column(self, capsys):
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "0.5", "--n", "1",
            "--points", "5",
        )
        assert code == 0
        _, columns, rows = parse_csv(out)
        assert columns == ["tau", "distance", "error_probability"]
        assert all(row[1] == 0.0 for row in rows)

    def test_normalized_at_n1_is_domain_error(self, capsys):
        code, _, err = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "0.5", "--n", "1",
            "--normalized",
        )
        assert code == 1 and "normalized" in err

    def test_explicit_coefficients(self, capsys):
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "bipartite", "--c1", "0.5", "--c2", "-0.5",
            "--c3", "0.5", "--n", "10", "--points", "9",
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        want = discrimination.bipartite_distance(discrimination.werner(0.5), 10.0, rows[3][0])
        assert abs(rows[3][1] - want.distance) < 1e-10

    def test_state_flag_validation(self, capsys):
        code, _, err = run_cli(
            capsys, "distance", "--mode", "bipartite", "--werner", "1", "--c1", "0.1",
            "--c2", "0", "--c3", "0", "--n", "10",
        )
        assert code == 2
        code, _, err = run_cli(capsys, "distance", "--mode", "bipartite", "--n", "10")
        assert code == 2
        code, _, err = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "1", "--werner", "1", "--n", "10"
        )
        assert code == 2

    def test_round_trip_reevaluation(self, capsys):
        # parsing a curve back and re-evaluating at each printed tau must
        # reproduce the printed values to the printed precision
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "bipartite", "--werner", "0.8", "--n", "10",
            "--tau-max", "4", "--points", "101",
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        for tau, dist, norm, perr in rows:
            again = discrimination.bipartite_distance(discrimination.werner(0.8), 10.0, tau)
            assert abs(again.distance - dist) <= 1e-11 * max(1.0, abs(dist))
            assert abs(again.normalized - norm) <= 1e-11 * max(1.0, abs(norm))
            assert abs(again.error_probability - perr) <= 1e-11


class TestAnalyze:
    def test_threshold(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--what", "threshold", "--n", "10")
        assert code == 0
        _, columns, rows = parse_csv(out)
        assert columns == ["location", "value"]
        assert abs(rows[0][1] - 0.88) < 0.005

    def test_max(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--what", "max", "--werner", "1", "--n", "10")
        assert code == 0
        _, columns, rows = parse_csv(out)
        assert columns == ["location", "value", "normalized"]
        assert abs(rows[0][0] - 0.42) < 0.01
        assert abs(rows[0][2] - 1.13) < 0.01

    def test_zero_no_crossing(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--what", "zero", "--theta", "0", "--n", "1")
        assert code == 0
        assert "no crossing" in out

    def test_zero_crossing(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--what", "zero", "--theta", "0", "--n", "10")
        assert code == 0
        _, _, rows = parse_csv(out)
        assert abs(rows[0][0] - 0.80) < 0.01

    def test_kink(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--what", "kink", "--werner", "0.6", "--n", "10")
        assert code == 0
        _, _, rows = parse_csv(out)
        lam = discrimination.lambdas(rows[0][0], 10.0)
        assert abs(0.6 * lam.lambda2 - lam.lambda3) < 1e-10

    def test_custom_bracket(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--what", "zero", "--theta", "0", "--n", "10",
            "--bracket", "0.1", "5",
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        assert abs(rows[0][0] - 0.80) < 0.01

    def test_missing_state(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--what", "kink", "--n", "10")
        assert code == 2 and "werner" in err


class TestConfigFile:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n = 10\ntheta = 0.0\ntau-max = 2\npoints = 5\n")
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--config", str(cfg)
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        assert len(rows) == 5
        assert rows[-1][0] == 2.0

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n = 10\ntheta = 0.0\npoints = 5\n")
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--config", str(cfg), "--points", "3"
        )
        assert code == 0
        _, _, rows = parse_csv(out)
        assert len(rows) == 3

    def test_unknown_key_is_hard_error(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("theta = 0.0\nbogus = 1\n")
        code, _, err = run_cli(
            capsys, "distance", "--mode", "single", "--n", "10", "--config", str(cfg)
        )
        assert code == 2 and "bogus" in err

    def test_env_var_fallback(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "env.cfg"
        cfg.write_text("n = 10\n")
        monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(cfg))
        code, out, _ = run_cli(capsys, "analyze", "--what", "threshold")
        assert code == 0
        _, _, rows = parse_csv(out)
        assert abs(rows[0][1] - 0.88) < 0.005

    def test_malformed_config(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just some words\n")
        code, _, err = run_cli(capsys, "params", "--n", "2", "--config", str(cfg))
        assert code == 2

    def test_missing_config_file(self, capsys):
        code, _, err = run_cli(capsys, "params", "--n", "2", "--config", "/nonexistent.cfg")
        assert code == 2


class TestDeterminismAndOutput:
    def test_byte_identical_runs(self, capsys):
        argv = ["distance", "--mode", "bipartite", "--werner", "1", "--n", "10", "--points", "50"]
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    def test_header_carries_resolved_parameters(self, capsys):
        _, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "0.5", "--n", "10"
        )
        comments, _, _ = parse_csv(out)
        header = " ".join(comments)
        for fragment in ("mode=single", "theta=0.5", "n=10.0", "tau_max=3.0", "precision=12"):
            assert fragment in header

    def test_no_timestamp_by_default(self, capsys):
        _, out, _ = run_cli(capsys, "params", "--n", "2")
        assert "generated" not in out

    def test_stamp_flag(self, capsys):
        _, out, _ = run_cli(capsys, "params", "--n", "2", "--stamp")
        assert "# generated:" in out

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "curve.csv"
        code, out, _ = run_cli(
            capsys, "distance", "--mode", "single", "--theta", "0", "--n", "10",
            "--points", "5", "--out", str(target),
        )
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("# unruh-probe distance")

    def test_precision_flag(self, capsys):
        _, out, _ = run_cli(capsys, "params", "--n", "10", "--precision", "4")
        assert "a = 31.31\n" in out

    def test_bad_precision(self, capsys):
        code, _, _ = run_cli(capsys, "params", "--n", "10", "--precision", "0")
        assert code == 2


class TestFigure:
    def test_figure_files_and_schemas(self, capsys, tmp_path):
        for which, name, columns in (
            (1, "fig1.csv", ["theta", "tau", "distance", "normalized"]),
            (2, "fig2.csv", ["c", "tau", "distance", "normalized"]),
            (3, "fig3.csv", ["tau", "normalized_entangled", "normalized_single_ground",
                             "normalized_equilibrium"]),
        ):
            code, _, _ = run_cli(
                capsys, "figure", "--which", str(which), "--out", str(tmp_path)
            )
            assert code == 0
            _, got_columns, rows = parse_csv((tmp_path / name).read_text())
            assert got_columns == columns
            assert rows

    def test_byte_identical_across_runs(self, capsys, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        for out in (a, b):
            code, _, _ = run_cli(capsys, "figure", "--which", "2", "--out", str(out))
            assert code == 0
        assert (a / "fig2.csv").read_bytes() == (b / "fig2.csv").read_bytes()

    def test_fig2_separable_curve_stays_below_one(self, capsys, tmp_path):
        run_cli(capsys, "figure", "--which", "2", "--out", str(tmp_path))
        _, _, rows = parse_csv((tmp_path / "fig2.csv").read_text())
        c_min = min(row[0] for row in rows)
        assert abs(c_min - 1.0 / 3.0) < 1e-9
        assert all(row[3] <= 1.0 + 1e-12 for row in rows if row[0] == c_min)

    def test_fig2_curves_approach_one(self, capsys, tmp_path):
        run_cli(capsys, "figure", "--which", "2", "--out", str(tmp_path))
        _, _, rows = parse_csv((tmp_path / "fig2.csv").read_text())
        right_edge = [row for row in rows if row[1] == 3.0]
        assert len(right_edge) == 5
        assert all(abs(row[3] - 1.0) < 0.05 for row in right_edge)

    def test_fig1_excited_slice_dips_then_recovers(self, capsys, tmp_path):
        run_cli(capsys, "figure", "--which", "1", "--out", str(tmp_path))
        _, _, rows = parse_csv((tmp_path / "fig1.csv").read_text())
        slice0 = [row for row in rows if row[0] == 0.0]
        dip = min((row for row in slice0 if row[1] >= 0.3), key=lambda row: row[3])
        assert abs(dip[1] - 0.80) < 0.03
        assert dip[3] < 0.02
        assert slice0[-1][3] > 10.0 * dip[3]

    def test_fig3_dominance_and_edges(self, capsys, tmp_path):
        run_cli(capsys, "figure", "--which", "3", "--out", str(tmp_path))
        _, _, rows = parse_csv((tmp_path / "fig3.csv").read_text())
        assert all(row[3] == 1.0 for row in rows)
        for tau, entangled, ground, _ in rows:
            if tau > 0.0:
                assert entangled >= ground - 1e-12
        assert abs(rows[-1][1] - 1.0) < 0.05
        assert abs(rows[-1][2] - 1.0) < 0.05

    def test_which_validation(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "figure", "--which", "4", "--out", str(tmp_path))
        assert code == 2

    def test_inertial_n_rejected(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "figure", "--which", "1", "--n", "1", "--out", str(tmp_path))
        assert code == 1

    def test_unwritable_out_dir(self, capsys, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("a plain file")
        code, _, err = run_cli(
            capsys, "figure", "--which", "3", "--out", str(blocker / "sub")
        )
        assert code == 1 and "error" in err


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 2

    def test_help_exits_zero(self, capsys):
        assert run_cli(capsys, "--help")[0] == 0
        assert run_cli(capsys, "distance", "--help")[0] == 0
