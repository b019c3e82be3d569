import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from qentropy.cli import build_parser, emit_csv, format_number, run


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.parametrize("x,expected", [
    (0.0, "0.0"),
    (1.0, "1.0"),
    (7.748091729863649e-05, "7.74809173e-5"),
    (1.5e-300, "1.5e-300"),
    (-2.5e12, "-2500000000000.0"),
    (3, "3"),
])
def test_format_number(x, expected):
    assert format_number(x) == expected


def test_format_number_round_trips_at_precision():
    x = 0.1234567890123456
    assert float(format_number(x, 4)) == 0.12346
    assert float(format_number(x, 16)) == x


def test_constants(capsys):
    code, out, _ = invoke(capsys, "constants")
    assert code == 0
    rows = {r[0]: r for r in table(out)[1:]}
    assert table(out)[0] == ["name", "value", "unit"]
    g0 = rows["electric_conductance_quantum"]
    assert g0[2] == "S"
    assert float(g0[1]) == pytest.approx(7.748091729e-5, rel=1e-9)
    assert "\r" not in out


def test_transfer_equal_temperatures(capsys):
    code, out, _ = invoke(capsys, "transfer", "--t1", "1", "--t2", "1", "--nu", "1e9")
    assert code == 0
    assert "net_rate,0.0,W/K\n" in out


def test_transfer_full_ledger(capsys):
    _, out, _ = invoke(capsys, "transfer", "--t1", "2", "--t2", "1", "--nu", "1e9")
    rows = {r[0]: float(r[1]) for r in table(out)[1:]}
    assert rows["net_rate"] == pytest.approx(1.09e-15, rel=2e-3)
    assert rows["second_law_satisfied"] == 1
    assert rows["emitter_current"] == -rows["absorber_current"]


def test_staircase_csv(capsys):
    _, out, _ = invoke(capsys, "staircase", "--steps", "500")
    t = table(out)
    assert t[0] == ["w_m", "G_S"]
    G = np.array([float(r[1]) for r in t[1:]])
    assert len(G) == 500
    assert np.all(np.diff(G) >= 0)


def test_solve_heat_csv(capsys):
    _, out, _ = invoke(capsys, "solve-heat", "--modes", "1:0.1,3:0.02", "--nt", "3", "--nx", "4")
    t = table(out)
    assert t[0] == ["t_s", "x_m", "T_K"]
    assert len(t) == 1 + 3 * 4
    assert float(t[1][2]) == pytest.approx(1.12)


def test_solve_heat_potential_csv(capsys):
    _, out, _ = invoke(capsys, "solve-heat", "--potential", "--modes", "1:0.1,2:0.05",
                       "--growing", "2:1e-20", "--nt", "2")
    t = table(out)
    assert t[0] == ["t_s", "k_per_m", "a", "b"]
    assert len(t) == 1 + 2 * 2


def test_solve_heat_range_error(capsys):
    code, _, err = invoke(capsys, "solve-heat", "--potential", "--modes", "5:0.1", "--growing", "5:1",
                          "--diffusivity", "1", "--length", "1", "--t-end", "1e3")
    assert code == 1
    assert "cap" in err


def test_action_check_csv(capsys):
    _, out, _ = invoke(capsys, "action-check", "--points", "7")
    t = table(out)
    assert t[0] == ["epsilon", "action"]
    eps = np.array([float(r[0]) for r in t[1:]])
    act = np.array([float(r[1]) for r in t[1:]])
    assert np.argmin(act) == 3 and eps[3] == 0.0


def test_pendry_packet_spin(capsys):
    _, out, _ = invoke(capsys, "pendry", "--temp", "1")
    rows = {r[0]: float(r[1]) for r in table(out)[1:]}
    assert rows["entropy_rate_to_conductance_ratio"] == 2.0
    _, out, _ = invoke(capsys, "packet", "--nu", "1e9", "--temp", "1")
    rows = {r[0]: float(r[1]) for r in table(out)[1:]}
    assert rows["entropy_production"] == pytest.approx(2.18e-15, rel=1e-3)
    _, out, _ = invoke(capsys, "spin", "--gamma", "2.675e8", "--b0", "1", "--temp", "300")
    rows = {r[0]: float(r[1]) for r in table(out)[1:]}
    assert rows["entropy_production"] == rows["entropy_production_from_field"]


def test_invalid_arguments_exit_2(capsys):
    code, _, err = invoke(capsys, "bogus")
    assert code == 2 and "usage" in err
    code, _, err = invoke(capsys, "transfer", "--t1", "-1", "--t2", "1", "--nu", "1e9")
    assert code == 2 and "temperature" in err
    code, _, _ = invoke(capsys, "transfer", "--t1", "1")
    assert code == 2
    code, _, _ = invoke(capsys, "solve-heat", "--modes", "0:1")
    assert code == 2


def test_unwritable_destination(capsys, tmp_path):
    code, _, err = invoke(capsys, "constants", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 1


def test_out_file_and_precision(capsys, tmp_path, monkeypatch):
    path = tmp_path / "c.csv"
    assert run(["constants", "--out", str(path), "--precision", "3"]) == 0
    text = path.read_text()
    assert "electric_conductance_quantum,7.748e-5,S\n" in text
    monkeypatch.setenv("QENTROPY_PRECISION", "2")
    _, out, _ = invoke(capsys, "constants")
    assert "electric_conductance_quantum,7.75e-5,S\n" in out


def test_deterministic_output(capsys):
    for argv in (["action-check"], ["staircase"], ["solve-heat", "--modes", "1:0.3,2:0.1"]):
        _, first, _ = invoke(capsys, *argv)
        _, second, _ = invoke(capsys, *argv)
        assert first == second


def test_emit_csv_rejects_empty():
    with pytest.raises(ValueError):
        emit_csv(["a"], [], io.StringIO())


def test_help_lists_units():
    parser = build_parser()
    sub = parser._subparsers._group_actions[0].choices
    for name in ("transfer", "spin", "staircase", "pendry", "packet"):
        text = sub[name].format_help()
        assert any(u in text for u in (" K", " m", " Hz", " T")), name


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qentropy", "transfer", "--t1", "1", "--t2", "1",
                          "--nu", "1e9"], capture_output=True, text=True, check=True).stdout
    assert "net_rate,0.0,W/K" in out
