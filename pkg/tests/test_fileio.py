import numpy as np
import pytest

from structmat import (
    Circulant,
    MatrixFileError,
    Toeplitz,
    read_matrix,
    write_matrix,
)


def roundtrip(tmp_path, value, name="m.smt"):
    path = tmp_path / name
    write_matrix(path, value)
    return read_matrix(path)


def test_circulant_roundtrip(tmp_path):
    rng = np.random.default_rng(1)
    C = Circulant(rng.standard_normal(9))
    back = roundtrip(tmp_path, C)
    assert isinstance(back, Circulant)
    assert np.array_equal(back.col, C.col)


def test_toeplitz_roundtrip(tmp_path):
    rng = np.random.default_rng(2)
    T = Toeplitz.from_diagonals(rng.standard_normal(12) * 1e-7, 5, 8)
    back = roundtrip(tmp_path, T)
    assert isinstance(back, Toeplitz)
    assert back.shape == (5, 8)
    assert np.array_equal(back.t, T.t)


def test_dense_and_vector_roundtrip(tmp_path):
    rng = np.random.default_rng(3)
    A = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
    back = roundtrip(tmp_path, A)
    assert isinstance(back, np.ndarray) and back.shape == (4, 6)
    assert np.array_equal(back, A)
    v = rng.standard_normal(11)
    backv = roundtrip(tmp_path, v, "v.smt")
    assert backv.ndim == 1 and np.array_equal(backv, v)


def test_bit_exact_for_awkward_doubles(tmp_path):
    rng = np.random.default_rng(4)
    vals = np.concatenate(
        [
            rng.standard_normal(1000) * 10.0 ** rng.integers(-300, 300, 1000),
            [0.0, -0.0, 1e-308, -1e308, np.pi, 2.0 / 3.0],
        ]
    )
    back = roundtrip(tmp_path, vals)
    assert np.array_equal(back, vals)
    complex_vals = vals[:500] + 1j * vals[500:1000]
    backc = roundtrip(tmp_path, complex_vals, "c.smt")
    assert np.array_equal(backc, complex_vals)


def test_header_layout(tmp_path):
    path = tmp_path / "t.smt"
    write_matrix(path, Toeplitz([4, 5, 6, 7], [4, 3, 2, 1]))
    lines = path.read_text().splitlines()
    assert lines[0] == "smt toeplitz 4 4"
    assert len(lines) == 8  # header + m+n-1 entries
    assert lines[1].split() == ["1", "0"]


def test_truncated_file_reports_missing_lines(tmp_path):
    path = tmp_path / "bad.smt"
    path.write_text("smt toeplitz 4 4\n1 0\n2 0\n3 0\n")
    with pytest.raises(MatrixFileError, match="needs 7 entry lines, found 3"):
        read_matrix(path)


def test_bad_header_and_entries(tmp_path):
    path = tmp_path / "bad.smt"
    path.write_text("smx circulant 4\n")
    with pytest.raises(MatrixFileError, match="line 1"):
        read_matrix(path)
    path.write_text("smt circulant 2\n1 0\nbogus 0\n")
    with pytest.raises(MatrixFileError, match="line 3"):
        read_matrix(path)
    path.write_text("smt circulant 2\n1 0\n1\n")
    with pytest.raises(MatrixFileError, match="two numeric fields"):
        read_matrix(path)
    path.write_text("smt sparse 2\n1 0\n1 0\n")
    with pytest.raises(MatrixFileError, match="unknown kind"):
        read_matrix(path)
    path.write_text("")
    with pytest.raises(MatrixFileError, match="empty file"):
        read_matrix(path)


def test_real_detection(tmp_path):
    path = tmp_path / "r.smt"
    write_matrix(path, Circulant([1.0, 2.0]))
    assert read_matrix(path).isreal
    write_matrix(path, Circulant([1.0 + 1j, 2.0]))
    assert not read_matrix(path).isreal
