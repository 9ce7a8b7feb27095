import json

from mzsim.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_single_bs_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli("single-bs", "--photons", "1000", "--seed", "7", "--out", str(a)) == 0
    first = capsys.readouterr().out
    assert run_cli("single-bs", "--photons", "1000", "--seed", "7", "--out", str(b)) == 0
    second = capsys.readouterr().out
    assert first == second
    assert a.read_bytes() == b.read_bytes()


def test_sweep_writes_expected_csv_shape(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli(
        "sweep", "--steps", "9", "--photons", "1500", "--seed", "5", "--out", str(out)
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "delta,d1,d2,d1_fraction,ci_lo,ci_hi"
    assert len(lines) == 10


def test_flag_beats_config_beats_default(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"photon_count": 5000}))

    out = tmp_path / "r.json"
    # CLI flag wins over the config file
    assert run_cli("mzi", "--config", str(cfg_path), "--photons", "700",
                   "--seed", "3", "--out", str(out), "--format", "json") == 0
    assert json.loads(out.read_text())["config"]["photon_count"] == 700
    # config file wins over the built-in default
    assert run_cli("mzi", "--config", str(cfg_path), "--seed", "3",
                   "--out", str(out), "--format", "json") == 0
    assert json.loads(out.read_text())["config"]["photon_count"] == 5000
    # no flag, no file: the built-in default
    assert run_cli("mzi", "--photons", "100000", "--seed", "3",
                   "--out", str(out), "--format", "json") == 0
    assert json.loads(out.read_text())["config"]["photon_count"] == 100_000


def test_analyze_prints_fit_visibility_and_table(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    run_cli("sweep", "--steps", "12", "--photons", "2000", "--seed", "6", "--out", str(out))
    capsys.readouterr()
    assert run_cli("analyze", str(out)) == 0
    text = capsys.readouterr().out
    assert text.startswith("fit:")
    assert "visibility:" in text
    assert "delta,d1_fraction,ci_lo,ci_hi" in text
    # one table row per sweep point
    assert len(text.splitlines()) == 2 + 1 + 12


def test_compare_qm_reports_gap_and_period(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    run_cli("sweep", "--steps", "12", "--photons", "2000", "--seed", "6", "--out", str(out))
    capsys.readouterr()
    assert run_cli("compare-qm", str(out)) == 0
    text = capsys.readouterr().out
    assert "residuals:" in text
    assert "visibility: model=" in text
    assert "period:" in text


def test_mzi_delta_flag_overrides_config(tmp_path):
    out = tmp_path / "r.json"
    assert run_cli("mzi", "--photons", "500", "--seed", "2", "--delta", "1.25",
                   "--out", str(out), "--format", "json") == 0
    assert json.loads(out.read_text())["config"]["delta"] == 1.25


def test_format_flag_wins_over_suffix(tmp_path):
    out = tmp_path / "r.csv"
    assert run_cli("mzi", "--photons", "500", "--seed", "2",
                   "--out", str(out), "--format", "json") == 0
    json.loads(out.read_text())  # parses as JSON despite the .csv name


def test_trace_lands_in_json_output(tmp_path):
    out = tmp_path / "r.json"
    assert run_cli("single-bs", "--photons", "250", "--seed", "2", "--trace",
                   "--out", str(out), "--format", "json") == 0
    data = json.loads(out.read_text())
    assert len(data["trace"]) == 250


def test_sweep_parallel_flag_matches_serial(tmp_path):
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    argv = ["sweep", "--steps", "4", "--photons", "1000", "--seed", "8"]
    assert run_cli(*argv, "--out", str(serial)) == 0
    assert run_cli(*argv, "--parallel", "2", "--out", str(parallel)) == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_unknown_flag_fails_with_usage(capsys):
    assert run_cli("sweep", "--bogus") == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand_fails_with_usage(capsys):
    assert run_cli("frobnicate") == 2
    assert "usage" in capsys.readouterr().err


def test_missing_config_file_is_a_single_line_error(tmp_path, capsys):
    code = run_cli("mzi", "--config", str(tmp_path / "none.json"))
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert len(err.strip().splitlines()) == 1


def test_invalid_photon_count_is_reported(capsys):
    assert run_cli("mzi", "--photons", "0") == 1
    assert "photon_count" in capsys.readouterr().err


def test_analyze_missing_file_fails(tmp_path, capsys):
    assert run_cli("analyze", str(tmp_path / "none.csv")) == 1
    assert capsys.readouterr().err.startswith("error:")
