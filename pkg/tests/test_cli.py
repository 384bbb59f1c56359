import json

import numpy as np
import pytest

from wellcascade.cli import (
    ConfigError,
    load_config,
    main,
    parse_config,
    serialize_config,
)

MINIMAL = """
[wells]
widths_A = 43.85
depths_eV = 1.585, 0.272, 0.524, 0.95
distances_A = 60.19, 60.0, 60.0
"""


def test_bundled_config_parses(reference_run_config):
    cfg = reference_run_config
    assert cfg.spec.labels == ("P", "B", "H", "Q")
    assert cfg.spec.distances == (60.19, 60.0, 60.0, 62.5)
    assert cfg.solver.grid_step == 2e-5
    assert cfg.oracle.grid_points == 20001
    assert cfg.formats == ("json", "table")


def test_config_round_trip(reference_run_config):
    text = serialize_config(reference_run_config)
    assert parse_config(text) == reference_run_config


def test_minimal_config_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.spec.widths == (43.85,) * 4
    assert not cfg.spec.has_closing_distance
    assert cfg.absorption_target_ev == 1.4267
    assert cfg.output_dir == "out"


def test_empty_config_lists_required_keys():
    with pytest.raises(ConfigError) as info:
        parse_config("")
    message = str(info.value)
    for key in ("widths_A", "depths_eV", "distances_A"):
        assert key in message


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config(MINIMAL + "\nbarrier_mass = 3\n")
    assert "barrier_mass" in str(info.value)


def test_unknown_section_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config(MINIMAL + "\n[plotting]\ncolor = red\n")
    assert "plotting" in str(info.value)


def test_geometry_validation_at_parse_time():
    bad = MINIMAL.replace("60.19, 60.0, 60.0", "40.0, 60.0, 60.0")
    with pytest.raises(ConfigError) as info:
        parse_config(bad)
    assert "geometry" in str(info.value)


def test_bad_number_reports_field():
    with pytest.raises(ConfigError) as info:
        parse_config(MINIMAL.replace("43.85", "wide"))
    assert "[wells] widths_A" in str(info.value)


def test_constant_overrides_flow_through():
    cfg = parse_config(MINIMAL + "\n[constants]\nhc_eV_nm = 1240.0\n")
    assert cfg.constants.hc_eV_nm == 1240.0


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_cascade_command_writes_report(tmp_path, reference_config_file, capsys):
    rc = main(["cascade", "--config", str(reference_config_file), "--output-dir", str(tmp_path)])
    assert rc == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["schema_version"] == 1
    assert len(report["steps"]) == 3
    out = capsys.readouterr().out
    assert "transfer schedule" in out


def test_cascade_determinism(tmp_path, reference_config_file):
    dir_a, dir_b = tmp_path / "a", tmp_path / "b"
    assert main(["cascade", "--config", str(reference_config_file), "--output-dir", str(dir_a)]) == 0
    assert main(["cascade", "--config", str(reference_config_file), "--output-dir", str(dir_b)]) == 0
    assert (dir_a / "report.json").read_bytes() == (dir_b / "report.json").read_bytes()


def test_cascade_emit_profile_and_scan(tmp_path, reference_config_file):
    rc = main(
        [
            "cascade",
            "--config",
            str(reference_config_file),
            "--output-dir",
            str(tmp_path),
            "--emit-profile",
            "--emit-scan",
        ]
    )
    assert rc == 0
    assert (tmp_path / "profile.csv").read_text().startswith("x_A,V_eV")
    for i in (1, 2, 3):
        header = (tmp_path / f"scan_pair{i}.csv").read_text().splitlines()[0]
        assert header == "E_eV,lhs,rhs,mismatch,regime,pole_flag"


def test_scan_pair_brackets_the_resonances(tmp_path, reference_config_file):
    rc = main(
        [
            "scan-pair",
            "--config",
            str(reference_config_file),
            "--output-dir",
            str(tmp_path),
            "--pair",
            "1",
            "--emin",
            "1.40",
            "--emax",
            "1.50",
            "--step",
            "1e-5",
        ]
    )
    assert rc == 0
    lines = (tmp_path / "scan_pair1.csv").read_text().strip().splitlines()
    assert lines[0] == "E_eV,lhs,rhs,mismatch,regime,pole_flag"
    energies, mismatches = [], []
    for line in lines[1:]:
        cols = line.split(",")
        if cols[5] == "1":
            continue
        energies.append(float(cols[0]))
        mismatches.append(float(cols[3]))
    energies = np.array(energies)
    mism = np.array(mismatches)
    flips = np.nonzero(np.sign(mism[:-1]) * np.sign(mism[1:]) < 0)[0]
    intervals = [(energies[i], energies[i + 1]) for i in flips]
    for root in (1.444849, 1.459912):
        assert any(lo - 5e-5 <= root <= hi + 5e-5 for lo, hi in intervals)


def test_solve_pair_writes_json(tmp_path, reference_config_file):
    rc = main(
        ["solve-pair", "--config", str(reference_config_file), "--output-dir", str(tmp_path), "--pair", "1"]
    )
    assert rc == 0
    payload = json.loads((tmp_path / "solve_pair1.json").read_text())
    assert set(payload) == {"schema_version", "pair", "config", "levels", "diagnostics"}
    energies = [lv["energy_eV"] for lv in payload["levels"]]
    assert energies == sorted(energies)
    assert min(abs(e - 1.445) for e in energies) < 5e-3


def test_times_from_explicit_energies(capsys):
    rc = main(["times", "--e-plus", "1.460", "--e-minus", "1.445", "--decay-gap", "0.131"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "0.137855" in out or "0.13785" in out
    assert "ratio" in out


def test_times_from_solver_json(tmp_path, reference_config_file, capsys):
    main(["solve-pair", "--config", str(reference_config_file), "--output-dir", str(tmp_path), "--pair", "1"])
    payload = json.loads((tmp_path / "solve_pair1.json").read_text())
    n = len(payload["levels"])
    rc = main(
        [
            "times",
            "--from-json",
            str(tmp_path / "solve_pair1.json"),
            "--lower-index",
            str(n - 3),
            "--upper-index",
            str(n - 2),
        ]
    )
    assert rc == 0
    assert "tunneling time" in capsys.readouterr().out


def test_times_requires_energies():
    assert main(["times"]) == 1


def test_oracle_pair_command(reference_config_file, capsys):
    rc = main(["oracle", "--config", str(reference_config_file), "--pair", "2", "--levels", "4"])
    assert rc == 0
    assert "finite-difference" in capsys.readouterr().out


def test_oracle_cascade_command(reference_config_file, capsys):
    rc = main(["oracle", "--config", str(reference_config_file), "--cascade", "--levels", "4"])
    assert rc == 0
    assert "fd_global_eV" in capsys.readouterr().out


def test_calibrate_command(reference_config_file, capsys):
    rc = main(
        [
            "calibrate",
            "--config",
            str(reference_config_file),
            "--pair",
            "1",
            "--targets",
            "1.445,1.460",
            "--range",
            "60.15,60.25",
        ]
    )
    assert rc == 0
    assert "calibrated distance_A" in capsys.readouterr().out


def test_wavefunction_command(tmp_path, reference_config_file):
    rc = main(
        [
            "wavefunction",
            "--config",
            str(reference_config_file),
            "--output-dir",
            str(tmp_path),
            "--pair",
            "1",
            "--level",
            "0",
            "--points",
            "501",
        ]
    )
    assert rc == 0
    lines = (tmp_path / "wavefunction_PB_0.csv").read_text().strip().splitlines()
    assert lines[0] == "x_A,psi"
    assert len(lines) == 502


def test_env_var_output_dir(tmp_path, reference_config_file, monkeypatch):
    target = tmp_path / "from_env"
    monkeypatch.setenv("WELLCASCADE_OUTDIR", str(target))
    rc = main(["solve-pair", "--config", str(reference_config_file), "--pair", "2"])
    assert rc == 0
    assert (target / "solve_pair2.json").is_file()


def test_unknown_subcommand_exits_2():
    assert main(["frobnicate"]) == 2


def test_missing_required_flag_exits_2():
    assert main(["solve-pair"]) == 2


def test_config_error_exits_2(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text(MINIMAL + "\nspin = up\n")
    assert main(["cascade", "--config", str(bad), "--output-dir", str(tmp_path)]) == 2
    assert main(["cascade", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_computation_error_exits_1(tmp_path):
    cfg = tmp_path / "detuned.cfg"
    cfg.write_text(MINIMAL + "\nabsorption_target_eV = 0.5\n")
    assert main(["cascade", "--config", str(cfg), "--output-dir", str(tmp_path)]) == 1


def test_level_out_of_range_exits_1(tmp_path, reference_config_file):
    rc = main(
        [
            "wavefunction",
            "--config",
            str(reference_config_file),
            "--output-dir",
            str(tmp_path),
            "--pair",
            "1",
            "--level",
            "99",
        ]
    )
    assert rc == 1
