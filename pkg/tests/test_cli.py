import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from gripperopt import cli
from gripperopt.config import load_config, paper_config_text, parse_config
from gripperopt.errors import ConfigError


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_cfg(tmp_path, text, name="design.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def without(prefix):
    return "\n".join(line for line in paper_config_text().splitlines() if not line.startswith(prefix))


# -- config --------------------------------------------------------------------


def test_bundled_config_parses():
    cfg = load_config()
    assert cfg["magnet.flux_density_T"] == 0.494
    assert cfg.weights == (0.9, pytest.approx(0.1))
    arr = cfg.magnet_array()
    assert arr.magnet.outer_diameter == 0.025 and arr.count == 3
    assert cfg.actuator().torque_rating == pytest.approx(20 * 0.0980665)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config(paper_config_text() + "\nmagnet.colour = red\n")
    assert info.value.path == "magnet.colour"


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config(paper_config_text() + "\npayload.mass_kg = 3\n")
    assert info.value.path == "payload.mass_kg"


def test_missing_magnet_block_names_field():
    with pytest.raises(ConfigError) as info:
        parse_config(without("magnet."))
    assert info.value.path == "magnet.flux_density_T"
    assert "magnet.outer_diameter_mm" in str(info.value)


def test_bad_number_names_field():
    with pytest.raises(ConfigError) as info:
        parse_config(paper_config_text().replace("magnet.count = 3", "magnet.count = three"))
    assert info.value.path == "magnet.count"


def test_invalid_value_reports_section():
    cfg = parse_config(paper_config_text().replace("magnet.inner_diameter_mm = 5", "magnet.inner_diameter_mm = 30"))
    with pytest.raises(ConfigError) as info:
        cfg.magnet_array()
    assert info.value.path == "magnet"


def test_line_without_equals():
    with pytest.raises(ConfigError):
        parse_config("magnet.flux_density_T 0.5")


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/file.cfg")


# -- capacity ------------------------------------------------------------------


def test_capacity_reference(capsys):
    code, out, _ = run(["capacity"], capsys)
    assert code == 0
    assert "theoretical 4.66 kg / measured 2.1 kg / array 6.3 kg / payload 2 kg: PASS" in out


def test_capacity_zero_payload(capsys):
    code, out, _ = run(["capacity", "--payload", "0"], capsys)
    assert code == 0 and "infinite" in out and out.rstrip().endswith("PASS")


def test_capacity_overload_is_analysis_success(capsys):
    code, out, _ = run(["capacity", "--payload", "7"], capsys)
    assert code == 0 and out.rstrip().endswith("FAIL")


def test_capacity_csv(capsys):
    code, out, _ = run(["capacity", "--format", "csv"], capsys)
    rows = dict(csv.reader(io.StringIO(out)))
    assert code == 0
    assert float(rows["array_capacity_kg"]) == pytest.approx(6.3)
    assert rows["payload_pass"] == "PASS"


# -- optimize ------------------------------------------------------------------


def test_optimize_sweep(capsys):
    code, out, _ = run(["optimize", "--sweep"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert list(rows[0]) == list(cli.OPTIMIZE_HEADER)
    assert float(rows[-1]["r2_m"]) == pytest.approx(0.0454707903, abs=1e-6)
    assert float(rows[-1]["V"]) == pytest.approx(0.0496222265, abs=1e-6)


def test_optimize_single_weight(capsys):
    code, out, _ = run(["optimize", "--weights", "0.9"], capsys)
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert (float(row["r2_m"]), float(row["r4a_m"]), float(row["V"])) == pytest.approx(
        (0.04547, 0.18188, 0.04962), abs=1e-5
    )
    assert (float(row["rigorous_r2_m"]), float(row["rigorous_r4a_m"]), float(row["rigorous_V"])) == pytest.approx(
        (0.03952, 0.15808, 0.05061), abs=1e-5
    )


@pytest.mark.parametrize("w", ["1.0", "0", "-0.5"])
def test_optimize_bad_weight_is_usage_error(w, capsys):
    code, out, err = run(["optimize", "--weights", w], capsys)
    assert code == 1 and out == "" and "usage" in err


def test_optimize_text(capsys):
    code, out, _ = run(["optimize", "--weights", "0.5", "--format", "text"], capsys)
    assert code == 0 and "0.070498" in out


# -- torque profile ------------------------------------------------------------


def test_torque_profile_four_samples(capsys):
    code, out, _ = run(["torque-profile", "--samples", "4"], capsys)
    data = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)
    assert code == 0
    assert out.splitlines()[0] == "theta2_rad,T2_Nm"
    np.testing.assert_allclose(data[:, 0], [0, math.pi / 2, math.pi, 3 * math.pi / 2])
    np.testing.assert_allclose(data[:, 1], [0, -1.875, 0, 1.875], atol=1e-12)


def test_torque_profile_one_sample_is_usage_error(capsys):
    code, _, _ = run(["torque-profile", "--samples", "1"], capsys)
    assert code == 1


def test_torque_profile_file_round_trip(tmp_path, capsys):
    out_path = tmp_path / "torque.csv"
    code, out, _ = run(["torque-profile", "--samples", "90", "--out", str(out_path)], capsys)
    assert code == 0 and out == ""
    from gripperopt.mechanism import YokeGeometry, driving_torque_profile

    theta, torque = driving_torque_profile(YokeGeometry(0.025, 0.18), 75.0, 90)
    data = np.loadtxt(out_path, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(data[:, 0], theta)
    np.testing.assert_array_equal(data[:, 1], torque)


def test_torque_profile_explicit_geometry(capsys):
    code, out, _ = run(["torque-profile", "--samples", "4", "--r2", "0.03", "--force", "100"], capsys)
    data = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)
    assert code == 0 and data[1, 1] == pytest.approx(-3.0)


def test_unwritable_output(capsys):
    code, _, err = run(["torque-profile", "--samples", "4", "--out", "/nonexistent-dir/t.csv"], capsys)
    assert code == 1 and "cannot write" in err


# -- design --------------------------------------------------------------------


def test_design_text(capsys):
    code, out, _ = run(["design"], capsys)
    assert code == 0
    values = [float(line.split()[-1]) for line in out.splitlines()[2:12]]
    assert values == [2.5, 5, 18, 3, 2.5, 2.5, 2.5, 10, 13, 23]
    assert "actuator: 19.1 kg-cm <= 20 kg-cm: PASS" in out
    assert "[feasibility]" in out


def test_design_csv(capsys):
    code, out, _ = run(["design", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [float(r["dimension_cm"]) for r in rows] == pytest.approx([2.5, 5, 18, 3, 2.5, 2.5, 2.5, 10, 13, 23])


def test_design_missing_magnet_block(tmp_path, capsys):
    path = write_cfg(tmp_path, without("magnet."))
    code, out, err = run(["design", "--config", path], capsys)
    assert code == 2 and out == ""
    assert "magnet.flux_density_T" in err


def test_malformed_config_writes_no_file(tmp_path, capsys):
    path = write_cfg(tmp_path, "magnet.flux_density_T = abc\n")
    target = tmp_path / "out.csv"
    code, _, _ = run(["design", "--config", path, "--out", str(target)], capsys)
    assert code == 2 and not target.exists()
    assert list(tmp_path.iterdir()) == [tmp_path / "design.cfg"]


def test_feasibility_fail_is_not_an_error(tmp_path, capsys):
    path = write_cfg(tmp_path, paper_config_text().replace("actuator.torque_kgcm = 20", "actuator.torque_kgcm = 10"))
    code, out, _ = run(["design", "--config", path], capsys)
    assert code == 0 and "actuator_pass = FAIL" in out


def test_numerical_failure_exit_code(tmp_path, capsys):
    path = write_cfg(tmp_path, paper_config_text().replace("sizing.safety_factor = 2", "sizing.safety_factor = 0.5"))
    code, _, err = run(["design", "--config", path], capsys)
    assert code == 3 and "safety-factor" in err


# -- reproduce / general -------------------------------------------------------


def test_reproduce(capsys):
    code, out, _ = run(["reproduce"], capsys)
    assert code == 0
    assert out.rstrip().endswith("6/6 checks passed")


def test_reproduce_detects_mismatch(tmp_path, capsys):
    path = write_cfg(tmp_path, paper_config_text().replace("magnet.flux_density_T = 0.494", "magnet.flux_density_T = 0.6"))
    code, out, _ = run(["reproduce", "--config", path], capsys)
    assert code == 3 and "FAIL  pull mass per magnet" in out


@pytest.mark.parametrize("cmd", [[], ["capacity"], ["optimize"], ["torque-profile"], ["design"], ["reproduce"]])
def test_help_exits_zero(cmd, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(cmd + ["--help"])
    assert info.value.code == 0


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 1


@pytest.mark.parametrize(
    "argv", [["optimize", "--sweep"], ["torque-profile", "--samples", "360"], ["design", "--format", "csv"]]
)
def test_csv_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "gripperopt.cli", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True, env={"LC_ALL": "de_DE.UTF-8", "PATH": ""}).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    assert a.endswith(b"\n") and b"\r" not in a
