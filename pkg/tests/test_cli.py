import csv
import json
import math

import pytest

from eppskit.cli import main


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_simulate_writes_pair_with_metadata(tmp_path):
    rc = main(["simulate", "--horizon", "100000", "--seed", "7", "--out", str(tmp_path)])
    assert rc == 0
    rows_a = read_csv(tmp_path / "ticks_a.csv")
    rows_b = read_csv(tmp_path / "ticks_b.csv")
    # Poisson count bound: lam * T = 100000 / 60
    expected = 100000 / 60
    for rows in (rows_a, rows_b):
        assert abs(len(rows) - expected) < 4 * math.sqrt(expected)
        assert all(float(r["price"]) > 0 for r in rows)
    meta = json.loads((tmp_path / "ticks_a.csv.meta.json").read_text())
    assert meta["seed"] == 7
    assert meta["lam"] == pytest.approx(1 / 60)
    assert "version" in meta


def test_simulate_deterministic_rerun(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    main(["simulate", "--horizon", "20000", "--seed", "3", "--out", str(out1)])
    main(["simulate", "--horizon", "20000", "--seed", "3", "--out", str(out2)])
    assert (out1 / "ticks_a.csv").read_bytes() == (out2 / "ticks_a.csv").read_bytes()
    assert (out1 / "ticks_b.csv").read_bytes() == (out2 / "ticks_b.csv").read_bytes()


def test_simulate_zero_horizon_usage_error(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["simulate", "--horizon", "0", "--out", str(tmp_path)])
    assert err.value.code == 2


def test_exact_csv_values(tmp_path):
    rc = main(["exact", "--dt-grid", "1,60,100000", "--out", str(tmp_path)])
    assert rc == 0
    rows = read_csv(tmp_path / "exact.csv")
    by_dt = {int(r["dt_s"]): r for r in rows}
    assert float(by_dt[60]["rho_exact"]) == pytest.approx(math.exp(-1.0), rel=1e-9)
    assert float(by_dt[1]["ratio_exact"]) == 1.0
    assert float(by_dt[100000]["rho_exact"]) == pytest.approx(1.0, abs=1e-3)


def test_epps_sim_curve_increases(tmp_path):
    rc = main(["epps", "--sim", "--horizon", "200000", "--seed", "5",
               "--dt-grid", "1,10,60,600", "--out", str(tmp_path)])
    assert rc == 0
    rows = read_csv(tmp_path / "epps.csv")
    rhos = [float(r["rho"]) for r in rows]
    assert rhos == sorted(rhos)
    assert rhos[-1] > 0.8


def test_epps_identical_files_give_unit_rho(tmp_path, two_day_files):
    path_a, _, _, _ = two_day_files
    rc = main(["epps", "--ticks-a", str(path_a), "--ticks-b", str(path_a),
               "--dt0", "60", "--dt-grid", "60,300",
               "--session-start", "0", "--session-end", "86400",
               "--out", str(tmp_path)])
    assert rc == 0
    rows = read_csv(tmp_path / "epps.csv")
    assert len(rows) == 2
    for r in rows:
        assert float(r["rho"]) == pytest.approx(1.0)
        assert int(r["n_days"]) == 2


def test_epps_grid_mismatch_fails(tmp_path, two_day_files):
    path_a, path_b, _, _ = two_day_files
    rc = main(["epps", "--ticks-a", str(path_a), "--ticks-b", str(path_b),
               "--dt0", "60", "--dt-grid", "90",
               "--session-start", "0", "--session-end", "86400",
               "--out", str(tmp_path)])
    assert rc == 1


def test_decompose_sim_prediction_tracks_measurement(tmp_path):
    rc = main(["decompose", "--sim", "--horizon", "200000", "--seed", "5",
               "--dt-grid", "1,10,60,300", "--out", str(tmp_path)])
    assert rc == 0
    rows = read_csv(tmp_path / "decompose.csv")
    assert rows[0]["rho_measured"] == rows[0]["rho_predicted"]  # dt = dt0 row
    for r in rows:
        assert r["flag"] == ""
        assert abs(float(r["rho_predicted"]) - float(r["rho_measured"])) <= 0.05


def test_decompose_from_files(tmp_path, two_day_files):
    path_a, path_b, _, _ = two_day_files
    rc = main(["decompose", "--ticks-a", str(path_a), "--ticks-b", str(path_b),
               "--dt0", "60", "--dt-grid", "60,300,600",
               "--session-start", "0", "--session-end", "86400",
               "--out", str(tmp_path)])
    assert rc == 0
    rows = read_csv(tmp_path / "decompose.csv")
    assert len(rows) == 3
    for r in rows:
        assert -1.0 <= float(r["rho_measured"]) <= 1.0


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dt-grid = 1,60\nout = {}\nseed = 9\n".format(tmp_path), encoding="utf-8")
    rc = main(["exact", "--config", str(cfg)])
    assert rc == 0
    rows = read_csv(tmp_path / "exact.csv")
    assert [int(r["dt_s"]) for r in rows] == [1, 60]


def test_cli_flag_overrides_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"dt-grid = 1,60\nout = {tmp_path}\n", encoding="utf-8")
    rc = main(["exact", "--config", str(cfg), "--dt-grid", "5"])
    assert rc == 0
    rows = read_csv(tmp_path / "exact.csv")
    assert [int(r["dt_s"]) for r in rows] == [5]
