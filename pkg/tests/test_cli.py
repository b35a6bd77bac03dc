import json
import hashlib
from pathlib import Path

import pytest

from susypep.cli import main


def run(args):
    return main(args)


def read_json(path):
    return json.loads(Path(path).read_text())


# fast grid for CLI round trips; accuracy is covered by the physics tests
FAST = ["--step", "0.01", "--rmax", "25"]


def test_fit_deuteron_json(tmp_path, capsys):
    code = run(["fit", "--preset", "deuteron", "--out", str(tmp_path)] + FAST)
    assert code == 0
    out = capsys.readouterr().out
    assert "fit deuteron:" in out and "a_tilde=" in out
    payload = read_json(tmp_path / "fit_deuteron.json")
    assert payload["a_tilde"] == pytest.approx(3.146, rel=5e-3)
    assert payload["beta_per_fm"] == pytest.approx(1.587, rel=5e-3)
    assert (tmp_path / "manifest.json").exists()


def test_fit_alpha_is_config_error(capsys):
    code = run(["fit", "--preset", "alpha"])
    assert code == 3
    assert "fixed parameters" in capsys.readouterr().err


def test_fit_custom_config_round_trip(tmp_path):
    cfg = tmp_path / "custom.cfg"
    cfg.write_text(
        "name = custom\nhbar2_over_2mu = 41.47\ntarget_energy = -2.226\n"
        "target_rms = 1.95\nnodes = 1\ncoordinate_factor = quarter\n"
    )
    out_dir = tmp_path / "out"
    code = run(["fit", "--config", str(cfg), "--out", str(out_dir)] + FAST)
    assert code == 0
    payload = read_json(out_dir / "fit_custom.json")
    assert payload["achieved_rms_fm"] == pytest.approx(1.95, abs=1e-4)


def test_spectrum_alpha(tmp_path, capsys):
    code = run(["spectrum", "--preset", "alpha", "--out", str(tmp_path)] + FAST)
    assert code == 0
    payload = read_json(tmp_path / "spectrum_alpha.json")
    assert payload["depth_MeV"] == pytest.approx(122.694, rel=5e-3)
    levels = {entry["n"]: entry for entry in payload["levels"]}
    assert len(levels) == 3
    assert levels[0]["numerical_MeV"] == pytest.approx(levels[0]["analytic_MeV"], rel=1e-4)


def test_partner_writes_three_potentials_and_records(tmp_path):
    code = run(["partner", "--preset", "deuteron", "--out", str(tmp_path)] + FAST)
    assert code == 0
    for name in ("V1.csv", "V2.csv", "V3.csv", "records.json", "manifest.json"):
        assert (tmp_path / name).exists()
    header = (tmp_path / "V1.csv").read_text().splitlines()[0]
    assert header == "r_fm,V_MeV"
    records = read_json(tmp_path / "records.json")["records"]
    assert [rec["step_kind"] for rec in records] == ["intermediate", "phase_equivalent"]
    assert records[0]["removed_energy_MeV"] == pytest.approx(-481.0, abs=1.0)
    assert records[1]["singular_coefficient"] == pytest.approx(6.0)
    manifest = read_json(tmp_path / "manifest.json")["files"]
    listed = {entry["path"] for entry in manifest}
    assert {"V1.csv", "V2.csv", "V3.csv", "records.json"} <= listed
    for entry in manifest:
        digest = hashlib.sha256((tmp_path / entry["path"]).read_bytes()).hexdigest()
        assert digest == entry["sha256"]


def _csv_columns(path):
    lines = Path(path).read_text().splitlines()[1:]
    cols = list(zip(*(line.split(",") for line in lines)))
    return [list(map(float, col)) for col in cols]


def test_partner_deuteron_pep_shape(tmp_path):
    # repulsive core at small r, shallow attraction beyond
    run(["partner", "--preset", "deuteron", "--out", str(tmp_path)] + FAST)
    r, v3 = _csv_columns(tmp_path / "V3.csv")
    r = list(r)
    assert v3[0] > 0.0
    assert min(v3) < 0.0
    first_negative = r[next(i for i, v in enumerate(v3) if v < 0.0)]
    assert 0.1 < first_negative < 1.5


def test_partner_be11_repulsive_core_extent(tmp_path):
    run(["partner", "--preset", "be11", "--out", str(tmp_path), "--step", "0.01",
         "--rmax", "35"])
    r, v3 = _csv_columns(tmp_path / "V3.csv")
    first_negative = r[next(i for i, v in enumerate(v3) if v < 0.0)]
    assert first_negative == pytest.approx(1.5, abs=0.3)


def test_report_alpha_smoke(tmp_path):
    code = run(["report", "--preset", "alpha", "--out", str(tmp_path)] + FAST)
    assert code == 0
    payload = read_json(tmp_path / "report_alpha.json")
    assert payload["rms_fm"]["deep"] > 0
    assert "transfer" not in payload


def test_partner_iterated_chain_files(tmp_path):
    code = run(
        ["partner", "--preset", "alpha", "--removals", "2", "--out", str(tmp_path)] + FAST
    )
    assert code == 0
    for name in ("V1.csv", "V2.csv", "V3.csv", "V2_removal2.csv", "V3_removal2.csv"):
        assert (tmp_path / name).exists()
    records = read_json(tmp_path / "records.json")["records"]
    assert len(records) == 4


def test_partner_too_many_removals_exits_2(tmp_path, capsys):
    code = run(
        ["partner", "--preset", "deuteron", "--removals", "5", "--out", str(tmp_path)] + FAST
    )
    assert code == 2
    assert "bound state" in capsys.readouterr().err


def test_report_deuteron_fields(tmp_path):
    code = run(["report", "--preset", "deuteron", "--out", str(tmp_path)] + FAST)
    assert code == 0
    payload = read_json(tmp_path / "report_deuteron.json")
    assert payload["rms_fm"]["deep"] == pytest.approx(1.953, abs=5e-3)
    assert payload["rms_fm"]["pep"] == pytest.approx(1.955, abs=5e-3)
    assert payload["cross_section_ratio"] == pytest.approx(0.988, abs=5e-3)
    assert payload["charge_radius_fm"] == pytest.approx(1.158, abs=2e-3)
    assert payload["transfer"]["deep"]["d0_squared_MeV2_fm3"] == pytest.approx(
        15792.0, rel=0.02
    )
    for name in ("u_deep.csv", "u_intermediate.csv", "u_pep.csv"):
        assert (tmp_path / name).exists()
    assert set(payload["states"]["deep"]) == {
        "energy_MeV", "nodes", "kappa_per_fm", "norm_residual",
    }
    # no sweep flags: no phase-shift files
    assert not list(tmp_path.glob("phase_*.csv"))


def test_report_be11_pattern(tmp_path):
    code = run(["report", "--preset", "be11", "--out", str(tmp_path), "--step", "0.01",
                "--rmax", "35"])
    assert code == 0
    payload = read_json(tmp_path / "report_be11.json")
    rms = payload["rms_fm"]
    assert abs(rms["pep"] - rms["deep"]) / rms["deep"] < 0.02
    assert abs(rms["intermediate"] - rms["deep"]) / rms["deep"] > 0.05
    assert payload["matter_radius_fm"] > 0
    assert "notes" in payload and "re-fitted" in payload["notes"][0]
    assert "transfer" not in payload


def test_report_with_sweep_emits_phase_curves(tmp_path):
    code = run(
        ["report", "--preset", "deuteron", "--out", str(tmp_path),
         "--emin", "1", "--emax", "5", "--estep", "1"] + FAST
    )
    assert code == 0
    for name in ("phase_V1.csv", "phase_V2.csv", "phase_V3.csv"):
        lines = (tmp_path / name).read_text().splitlines()
        assert lines[0] == "E_MeV,delta_rad,delta_deg"
        assert len(lines) == 6
    manifest = read_json(tmp_path / "manifest.json")["files"]
    assert {"phase_V1.csv", "phase_V2.csv", "phase_V3.csv"} <= {
        entry["path"] for entry in manifest
    }


def test_partial_sweep_flags_are_config_error(capsys):
    code = run(["report", "--preset", "deuteron", "--emin", "1"])
    assert code == 3
    assert "together" in capsys.readouterr().err


def test_phase_defaults(tmp_path, capsys):
    code = run(
        ["phase", "--preset", "deuteron", "--out", str(tmp_path),
         "--emin", "1", "--emax", "3", "--estep", "0.5"] + FAST
    )
    assert code == 0
    assert "max |delta_V3 - delta_V1|" in capsys.readouterr().out
    assert (tmp_path / "phase_V1.csv").exists()


def test_transfer_ratio_deuteron(tmp_path, capsys):
    code = run(["transfer-ratio", "--preset", "deuteron", "--out", str(tmp_path)] + FAST)
    assert code == 0
    payload = read_json(tmp_path / "transfer_ratio.json")
    assert payload["cross_section_ratio"] == pytest.approx(0.988, abs=5e-3)


def test_transfer_ratio_other_preset_rejected(capsys):
    code = run(["transfer-ratio", "--preset", "alpha"])
    assert code == 3


def test_missing_preset_is_config_error(capsys):
    code = run(["spectrum"])
    assert code == 3
    assert "--preset" in capsys.readouterr().err


def test_unknown_flag_exits_3(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["fit", "--preset", "deuteron", "--bogus"])
    assert exc.value.code == 3


def test_outputs_are_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert run(["report", "--preset", "deuteron", "--out", str(out)] + FAST) == 0
    for path1 in sorted(out1.iterdir()):
        path2 = out2 / path1.name
        assert path1.read_bytes() == path2.read_bytes()
