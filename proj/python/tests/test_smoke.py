import json
import math

import numpy as np
import pytest

import dlab


def test_count_small_example():
    assert dlab.count_S(3, 2, 1) == 19
    assert dlab.count_S(3, 1, 4) == 9


def test_count_matches_distribution():
    dist = dlab.power_sum_distribution(5, 2, 3)
    assert sum(v * v for v in dist.values()) == dlab.count_S(5, 2, 3)


def test_even_norm_single_mode():
    a = np.zeros(9, dtype=complex)
    a[4 + 2] = 1.0
    assert dlab.even_norm(a, 2, 3) == pytest.approx(1.0)


def test_ramanujan_and_weyl():
    assert dlab.ramanujan_sum(6, 1) == 1
    assert dlab.ramanujan_sum(6, 6) == 2
    assert abs(dlab.weyl_sum(10, 3, 0.0) - 10) < 1e-12


def test_linear_flow_phase():
    phi = np.array([0, 0, 1], dtype=complex)
    out = dlab.linear_flow(phi, 0.25)
    assert out[2] == pytest.approx(np.exp(-0.25j))


def test_first_iterate_without_nonlinearity_is_linear():
    phi = np.array([0.1, 0.0, 0.1], dtype=complex)
    np.testing.assert_allclose(dlab.first_iterate(phi, 0.5), dlab.linear_flow(phi, 0.5), atol=1e-15)


def test_illposedness_slope():
    fit = dlab.illposedness_scan([0, 0, 1], [], 0.3, 1.0, 4.0, [16, 32, 64, 128, 256])
    assert fit["slope"] == pytest.approx(0.4, abs=0.05)
    assert len(fit["rows"]) == 5


def test_picard_contracts():
    phi = np.array([0.1, 0.0, 0.1], dtype=complex)
    r = dlab.picard_solve(phi, p1=[0, 1], delta=1e-3, max_iter=6, band_cap=16)
    assert r["contraction"]
    assert not r["sampled"]


def test_errors_are_translated(tmp_path):
    with pytest.raises(dlab.ConfigError):
        dlab.count_S(1, 2, 3)
    with pytest.raises(ValueError):
        dlab.run("count", {"N": "10..5"}, tmp_path / "x")
    assert not (tmp_path / "x").exists()


def test_run_writes_manifest(tmp_path):
    m = dlab.run("count", {"d": "3", "b": "2", "N": "1"}, tmp_path / "out")
    listed = {f["path"] for f in m["files"]}
    assert listed == {p.name for p in (tmp_path / "out").iterdir()}
    on_disk = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert on_disk["config_hash"] == m["config_hash"]
