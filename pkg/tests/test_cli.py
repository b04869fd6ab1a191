import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

import psispec as ps
from psispec.cli import main


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def data_rows(text):
    """Non-comment lines after (and excluding) the header."""
    lines = [
        line
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    ]
    return lines[0], lines[1:]


def message_of(result):
    out = result.output or ""
    err = getattr(result, "stderr", "") or ""
    return out + err


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------


def test_sample_basic():
    result = run("sample", "--n", 9)
    assert result.exit_code == 0
    header, rows = data_rows(result.output)
    assert header == "x,psi,smooth,fluc"
    assert len(rows) == 9
    first = rows[0].split(",")
    assert float(first[0]) == 2.0
    assert float(first[3]) == pytest.approx(0.0406096, abs=1e-6)
    # psi - smooth = fluc, column-wise
    for row in rows:
        x, psi, smooth, fluc = map(float, row.split(","))
        assert psi - smooth == pytest.approx(fluc, abs=1e-14)


def test_sample_single_row():
    result = run("sample", "--n", 1)
    assert result.exit_code == 0
    _, rows = data_rows(result.output)
    assert len(rows) == 1


def test_sample_rejects_x_start_1():
    result = run("sample", "--n", 5, "--x-start", 1)
    assert result.exit_code == 2


def test_sample_full_precision_round_trip():
    result = run("sample", "--n", 50)
    _, rows = data_rows(result.output)
    fl = ps.fluctuation_series(50)
    emitted = np.array([float(r.split(",")[3]) for r in rows])
    assert np.array_equal(emitted, fl.values)  # 17 digits: exact round trip


def test_sample_determinism(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run("sample", "--n", 200, "--out", a).exit_code == 0
    assert run("sample", "--n", 200, "--out", b).exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_sample_io_error(tmp_path):
    target = tmp_path / "no-such-dir" / "out.csv"
    result = run("sample", "--n", 5, "--out", target)
    assert result.exit_code == 4
    assert "no-such-dir" in message_of(result)


def test_missing_required_flag_is_usage_error():
    result = run("sample")
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def test_spectrum_mem_matches_library():
    result = run("spectrum", "--n", 4096)
    assert result.exit_code == 0
    header, rows = data_rows(result.output)
    assert header == "f,P"
    table = np.array([[float(v) for v in r.split(",")] for r in rows])
    y = ps.remove_mean(ps.fluctuation_series(4096))
    spec = ps.ar_psd(ps.burg_fit(y, order=1))
    assert np.array_equal(table[:, 0], spec.freqs)
    assert np.array_equal(table[:, 1], spec.power)
    assert "# method=mem" in result.output
    assert "# order=1" in result.output


def test_spectrum_welch_matches_library():
    result = run("spectrum", "--n", 4096, "--method", "welch", "--segment", 512)
    assert result.exit_code == 0
    _, rows = data_rows(result.output)
    table = np.array([[float(v) for v in r.split(",")] for r in rows])
    y = ps.remove_mean(ps.fluctuation_series(4096))
    spec = ps.welch_psd(y, segment_len=512)
    assert np.array_equal(table[:, 0], spec.freqs)
    assert np.array_equal(table[:, 1], spec.power)


def test_spectrum_bad_segment_is_domain_error():
    result = run("spectrum", "--n", 4096, "--method", "welch", "--segment", 1000)
    assert result.exit_code == 2
    result = run("spectrum", "--n", 256, "--method", "welch", "--segment", 512)
    assert result.exit_code == 2


def test_spectrum_too_short_series():
    assert run("spectrum", "--n", 1).exit_code == 2


def test_spectrum_round_trip_through_sample_csv(tmp_path):
    sample_csv = tmp_path / "sample.csv"
    assert (
        run("sample", "--n", 2000, "--out", sample_csv).exit_code == 0
    )
    direct = run("spectrum", "--n", 2000)
    reread = run("spectrum", "--input", sample_csv)
    assert reread.exit_code == 0
    assert data_rows(direct.output) == data_rows(reread.output)


def test_spectrum_rejects_malformed_input_csv(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,psi,smooth,fluc\n2,1,2\n")
    result = run("spectrum", "--input", bad)
    assert result.exit_code == 3
    assert "line 2" in message_of(result)
    missing = run("spectrum", "--input", tmp_path / "nope.csv")
    assert missing.exit_code == 3


def test_spectrum_synthetic_deterministic_and_seed_sensitive():
    a = run("spectrum", "--synthetic", "white", "--n", 4096, "--seed", 7)
    b = run("spectrum", "--synthetic", "white", "--n", 4096, "--seed", 7)
    c = run("spectrum", "--synthetic", "white", "--n", 4096, "--seed", 8)
    assert a.exit_code == 0
    assert a.output == b.output
    assert a.output != c.output


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------


def test_fit_json_shape_and_values():
    result = run("fit", "--n", 10**4)
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert list(report) == [
        "a",
        "b",
        "f_min",
        "f_max",
        "n_points",
        "r_squared",
        "residual_rms",
    ]
    assert report["f_min"] == 1e-3 and report["f_max"] == 1e-1
    assert report["a"] > 0
    assert -2.2 < report["b"] < -1.5


def test_fit_spectrum_csv_hook(tmp_path):
    freqs = np.logspace(-3, -1, 40)
    table = tmp_path / "spec.csv"
    lines = ["f,P"] + [
        f"{format(f, '.17g')},{format(3.0 * f**-2.0, '.17g')}" for f in freqs
    ]
    table.write_text("\n".join(lines) + "\n")
    result = run("fit", "--spectrum-csv", table)
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["a"] == pytest.approx(3.0, rel=1e-10)
    assert report["b"] == pytest.approx(-2.0, abs=1e-10)
    assert report["r_squared"] == pytest.approx(1.0, abs=1e-12)


def test_fit_synthetic_white_noise_is_flat():
    result = run("fit", "--synthetic", "white", "--n", 8192, "--seed", 3)
    assert result.exit_code == 0
    assert abs(json.loads(result.output)["b"]) < 0.3


def test_fit_band_validation():
    assert run("fit", "--n", 1024, "--band", "0.2:0.1").exit_code == 2
    assert run("fit", "--n", 1024, "--band", "abc").exit_code == 2
    assert run("fit", "--n", 1024, "--band", "1e-3:0.7").exit_code == 2


def test_fit_unreadable_spectrum_is_format_error(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("f,P\n0.01,1.0\n0.005,2.0\n")  # descending frequencies
    assert run("fit", "--spectrum-csv", bad).exit_code == 3


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------


def test_reconstruct_against_library(zeros):
    result = run("reconstruct", "--n", 20, "--K", 50)
    assert result.exit_code == 0
    header, rows = data_rows(result.output)
    assert header == "x,fluc_direct,fluc_zeros,abs_err"
    assert len(rows) == 19  # half-integer points inside [2, 21]
    table = np.array([[float(v) for v in r.split(",")] for r in rows])
    assert np.array_equal(table[:, 0], 2.5 + np.arange(19))
    direct = ps.fluctuation_at(table[:, 0])
    recon = ps.psi_fluc_from_zeros(table[:, 0], zeros, 50)
    assert np.array_equal(table[:, 1], direct)
    assert np.array_equal(table[:, 2], recon)
    assert np.allclose(table[:, 3], np.abs(direct - recon), rtol=0, atol=0)


def test_reconstruct_k_zero_gives_zero_column():
    result = run("reconstruct", "--n", 6, "--K", 0)
    assert result.exit_code == 0
    _, rows = data_rows(result.output)
    assert all(float(r.split(",")[2]) == 0.0 for r in rows)


def test_reconstruct_k_beyond_table():
    assert run("reconstruct", "--n", 6, "--K", 5000).exit_code == 2


def test_reconstruct_zeros_file_errors(tmp_path):
    missing = run("reconstruct", "--n", 6, "--zeros", tmp_path / "nope.txt")
    assert missing.exit_code == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("21.0\n14.1\n")
    broken = run("reconstruct", "--n", 6, "--zeros", bad)
    assert broken.exit_code == 3
    assert "line 2" in message_of(broken)


def test_reconstruct_custom_zeros_table(tmp_path, zeros):
    table = tmp_path / "small.txt"
    lines = [format(t, ".17g") for t in zeros.ordinates[:25]]
    table.write_text("\n".join(lines) + "\n")
    result = run("reconstruct", "--n", 8, "--zeros", table)
    assert result.exit_code == 0  # K defaults to the table size
    _, rows = data_rows(result.output)
    recon = ps.psi_fluc_from_zeros(2.5 + np.arange(7), zeros, 25)
    emitted = np.array([float(r.split(",")[2]) for r in rows])
    assert np.allclose(emitted, recon, rtol=0, atol=1e-12)


# ---------------------------------------------------------------------------
# analytic
# ---------------------------------------------------------------------------


def test_analytic_default_band():
    result = run("analytic")
    assert result.exit_code == 0
    header, rows = data_rows(result.output)
    assert header == "f,P_analytic"
    assert len(rows) == 512
    table = np.array([[float(v) for v in r.split(",")] for r in rows])
    assert np.all(table[:, 1] >= 0)
    assert table[0, 0] == 1e-3 and table[-1, 0] == 1e-1


def test_analytic_band_starting_at_two_pi():
    result = run("analytic", "--band", f"{2 * math.pi}:100", "--n-freq", 32)
    assert result.exit_code == 0
    _, rows = data_rows(result.output)
    first = rows[0].split(",")
    assert float(first[1]) == 0.0


def test_analytic_rejects_nonpositive_band():
    assert run("analytic", "--band", "0:1").exit_code == 2
    assert run("analytic", "--band", "-1:1").exit_code == 2


def test_analytic_determinism():
    a = run("analytic", "--band", "1e-3:1e-1")
    b = run("analytic", "--band", "1e-3:1e-1")
    assert a.output == b.output
