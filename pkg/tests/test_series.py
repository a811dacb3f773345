import os

import numpy as np
import pytest

from morawetzlab.series import Ledger, emit_series


def _sample_ledger():
    lam = np.linspace(0.0, 1.0, 5)
    return Ledger(name="demo", index_name="lambda", index=lam,
                  columns={"e_T": np.pi * lam, "e_Phi": lam**2},
                  units={"lambda": "M"})


def test_header_and_units(tmp_path):
    path = str(tmp_path / "demo.csv")
    emit_series(_sample_ledger(), path)
    with open(path) as fh:
        header = fh.readline().strip()
    assert header == "lambda [M],e_T [1],e_Phi [1]"


def test_roundtrip_exact(tmp_path):
    led = _sample_ledger()
    path = str(tmp_path / "demo.csv")
    emit_series(led, path)
    data = np.genfromtxt(path, delimiter=",", skip_header=1)
    np.testing.assert_array_equal(data[:, 0], led.index)
    np.testing.assert_array_equal(data[:, 1], led.column("e_T"))
    np.testing.assert_array_equal(data[:, 2], led.column("e_Phi"))


def test_rewrite_is_byte_identical(tmp_path):
    led = _sample_ledger()
    p1, p2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    emit_series(led, p1)
    emit_series(led, p2)
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_no_tmp_file_left_behind(tmp_path):
    path = str(tmp_path / "demo.csv")
    emit_series(_sample_ledger(), path)
    assert os.listdir(tmp_path) == ["demo.csv"]


def test_mismatched_column_rejected():
    with pytest.raises(ValueError):
        Ledger(name="bad", index_name="t", index=np.arange(4.0),
               columns={"x": np.arange(3.0)})


def test_empty_ledger_refused(tmp_path):
    led = Ledger(name="empty", index_name="t", index=np.array([]), columns={})
    with pytest.raises(ValueError):
        led.write_csv(str(tmp_path / "e.csv"))
