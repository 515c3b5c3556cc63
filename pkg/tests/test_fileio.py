import numpy as np
import pytest

from noonsim.experiments.sweep import SweepResult
from noonsim.fileio import (
    emit_csv,
    load_csv,
    load_eps_csv,
    save_eps_csv,
)


def make_result(n=5, seed=0):
    rng = np.random.default_rng(seed)
    values = np.linspace(0, 1, n)
    cols = {
        "cf_N2": rng.uniform(size=n),
        "cf_N2_norm": rng.uniform(size=n),
    }
    return SweepResult("theta", values, cols)


def test_header_matches_schema(tmp_path):
    res = make_result()
    path = tmp_path / "result.csv"
    emit_csv(res, str(path))
    names, _ = load_csv(str(path))
    assert names == ["theta", "cf_N2", "cf_N2_norm"]


def test_empty_sweep_writes_header_only(tmp_path):
    res = SweepResult("s", np.empty(0), {"cf_N2": np.empty(0)})
    path = tmp_path / "empty.csv"
    emit_csv(res, str(path))
    assert path.read_text() == "s,cf_N2\n"


def test_values_round_trip_exactly(tmp_path):
    res = make_result(n=7, seed=3)
    path = tmp_path / "rt.csv"
    emit_csv(res, str(path))
    names, data = load_csv(str(path))
    assert np.array_equal(data[:, 0], res.values)
    assert np.array_equal(data[:, 1], res.columns["cf_N2"])
    assert np.array_equal(data[:, 2], res.columns["cf_N2_norm"])


def test_single_row(tmp_path):
    res = SweepResult(
        "theta", np.array([0.25]), {"cf_N2": np.array([1.0 / 3.0])}
    )
    path = tmp_path / "one.csv"
    emit_csv(res, str(path))
    names, data = load_csv(str(path))
    assert data.shape == (1, 2)
    assert data[0, 1] == 1.0 / 3.0


def test_byte_identical_reemission(tmp_path):
    res = make_result(n=11, seed=9)
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    emit_csv(res, str(p1))
    emit_csv(res, str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_lf_line_endings_and_ascii(tmp_path):
    res = make_result()
    path = tmp_path / "r.csv"
    emit_csv(res, str(path))
    raw = path.read_bytes()
    assert b"\r" not in raw
    raw.decode("ascii")


def test_eps_csv_round_trip_1d(tmp_path):
    eps = np.array([1.0, 2.5, 12.0, 1.0])
    path = tmp_path / "eps.csv"
    save_eps_csv(eps, str(path))
    assert path.read_text().splitlines()[0] == "eps1d,4"
    back = load_eps_csv(str(path))
    assert np.array_equal(back, eps)


def test_eps_csv_round_trip_2d(tmp_path):
    rng = np.random.default_rng(4)
    eps = 1.0 + rng.uniform(size=(5, 3))
    path = tmp_path / "eps2.csv"
    save_eps_csv(eps, str(path))
    assert path.read_text().splitlines()[0] == "eps2d,5,3"
    back = load_eps_csv(str(path))
    assert np.array_equal(back, eps)


def test_eps_csv_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("epsilon,4\n1\n1\n1\n1\n")
    with pytest.raises(Exception):
        load_eps_csv(str(path))


def test_eps_csv_value_count_checked(tmp_path):
    path = tmp_path / "short.csv"
    path.write_text("eps1d,4\n1\n1\n")
    with pytest.raises(Exception):
        load_eps_csv(str(path))
