import csv
import json
import math

import numpy as np
import pytest

from cubevar import (
    CubeFunction,
    ExperimentConfig,
    ExperimentReport,
    build_table,
    character,
    character_variation,
    counterexample_all_ones,
    counterexample_truncated,
    corollary_truncation_scan,
    full_vs_parity_norm,
    parity_character_scan,
    phi_scan,
    proposition_halfspectrum_scan,
    psi_scan,
    variation_norm_ratio,
)
from cubevar.experiments import dyadic_radii, parity_radii, random_halfspectrum_function


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(n_list=[0])
    with pytest.raises(ValueError):
        ExperimentConfig(r_list=[0.5])
    with pytest.raises(ValueError):
        ExperimentConfig(alpha=1.5)
    with pytest.raises(ValueError):
        ExperimentConfig(q=2)


def test_report_serialization(tmp_path):
    report = ExperimentReport("demo", {"seed": 1})
    report.add({"n": 3, "r": 2.0, "q": None, "metric": "x", "value": 1.5, "witness": {"k": 1}})
    j = json.loads(report.to_json())
    assert j["name"] == "demo" and len(j["records"]) == 1
    path = tmp_path / "demo.csv"
    report.write_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["experiment", "n", "r", "q", "metric", "value", "witness"]
    assert rows[1][0] == "demo" and rows[1][4] == "x"


def test_counterexample_all_ones_small():
    rec = counterexample_all_ones(1, 1.0)
    assert rec["value"] == pytest.approx(2.0, abs=1e-12)
    rec = counterexample_all_ones(8, 2.0)
    assert rec["value"] == pytest.approx(2 * math.sqrt(8), abs=1e-9)
    assert rec["witness"]["satisfied"]


def test_counterexample_ratio_grows_with_n():
    values = [counterexample_all_ones(n, 3.0)["value"] for n in (2, 5, 9)]
    assert values == sorted(values)


def test_counterexample_truncated():
    rec = counterexample_truncated(16, 2.0, 4.0)
    assert rec["witness"]["lower_bound"] == pytest.approx(2.0 / 3.0)
    assert rec["value"] >= rec["witness"]["lower_bound"]
    assert rec["witness"]["satisfied"]


def test_counterexample_truncated_errors():
    with pytest.raises(ValueError):
        counterexample_truncated(8, 2.0, 0.2)
    with pytest.raises(ValueError):
        counterexample_truncated(8, 2.0, 0.9)


def test_character_variation_matches_pipeline():
    n, r = 8, 2.0
    table = build_table(n)
    for weight in (2, 5, n):
        y = (1 << weight) - 1
        pipeline = variation_norm_ratio(character(n, y), range(n + 1), r, table)
        shortcut = character_variation(n, weight, range(n + 1), r, table)
        assert pipeline == pytest.approx(shortcut, rel=1e-9)


def test_corollary_truncation_scan():
    cfg = ExperimentConfig(n_list=[16, 36, 64], r_list=[2.0], alpha=0.25)
    report = corollary_truncation_scan(cfg)
    ratios = [rec for rec in report.records if rec["metric"] == "corollary_ratio"]
    assert len(ratios) == 3
    for rec in ratios:
        w = rec["witness"]
        assert w["weight"] < rec["n"] - w["d_n"]   # excluded from the truncated spectrum
        assert rec["value"] >= w["lower_bound"] - 1e-12
    bounds = [rec["witness"]["lower_bound"] for rec in ratios]
    assert bounds == sorted(bounds)
    assert bounds[-1] > 0.0


def test_parity_radii():
    assert parity_radii(6, 0) == [0, 2, 4, 6]
    assert parity_radii(6, 1) == [1, 3, 5]
    with pytest.raises(ValueError):
        parity_radii(6, 2)


def test_parity_character_scan_endpoints():
    n = 9
    for q in (0, 1):
        rec = parity_character_scan(n, 3.0, q)
        per_level = rec["witness"]["per_level"]
        assert per_level[0] == 0.0    # constant multiplier sequence at weight 0
        assert per_level[n] == 0.0    # fixed parity kills the (-1)^k alternation
        assert rec["value"] == max(per_level)


def test_parity_scan_reflection_symmetry():
    # fixed-parity sequences at weights m and n-m agree up to a global sign
    n = 10
    rec0 = parity_character_scan(n, 3.0, 0)
    rec1 = parity_character_scan(n, 3.0, 1)
    for rec in (rec0, rec1):
        lv = rec["witness"]["per_level"]
        for m in range(n + 1):
            assert lv[m] == pytest.approx(lv[n - m], abs=1e-10)


def test_full_vs_parity_norm():
    n, r = 8, 2.0
    f = character(n, (1 << n) - 1)
    rec = full_vs_parity_norm(n, r, f)
    assert rec["witness"]["full"] == pytest.approx(2 * n ** (1 / r), abs=1e-9)
    assert rec["witness"]["parity"]["0"] == pytest.approx(0.0, abs=1e-10)
    assert rec["witness"]["parity"]["1"] == pytest.approx(0.0, abs=1e-10)
    rng = np.random.default_rng(0)
    g = CubeFunction(n, rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n))
    rec = full_vs_parity_norm(n, r, g)
    for v in rec["witness"]["parity"].values():
        assert v <= rec["witness"]["full"] + 1e-12


def test_full_vs_parity_rejects_zero():
    with pytest.raises(ValueError):
        variation_norm_ratio(CubeFunction(3, np.zeros(8)), range(4), 2.0)


def test_halfspectrum_support_and_norm():
    rng = np.random.default_rng(1)
    n = 8
    f = random_halfspectrum_function(n, rng)
    assert f.norm(2) == pytest.approx(1.0, abs=1e-12)
    from cubevar import fourier, popcounts

    spec = fourier(f)
    assert np.abs(spec.values[popcounts(n) > n / 2]).max() < 1e-12


def test_halfspectrum_scan_consistency():
    n, r = 8, 3.0
    rec = proposition_halfspectrum_scan(n, r, trials=20, seed=7)
    assert math.isfinite(rec["value"])
    # a single character at weight n/2 is one admissible input, so the scan's
    # character-level value is reproducible directly
    table = build_table(n)
    char_value = character_variation(n, n // 2, range(n + 1), r, table)
    pipeline = variation_norm_ratio(character(n, (1 << (n // 2)) - 1), range(n + 1), r, table)
    assert pipeline == pytest.approx(char_value, rel=1e-9)


def test_constant_function_ratio_zero():
    n = 5
    f = character(n, 0)
    assert variation_norm_ratio(f, range(n + 1), 2.0) == pytest.approx(0.0, abs=1e-10)


def test_dyadic_radii():
    assert dyadic_radii(8) == [1, 2, 4]
    assert dyadic_radii(4) == [1, 2]
    assert dyadic_radii(2) == [1]


def test_phi_scan():
    rec = phi_scan(8)
    assert rec["witness"]["phi_at_zero"] == 0.0
    assert len(rec["witness"]["per_level"]) == 5
    assert rec["value"] >= 0.0
    # direct recomputation for n=8, x in 0..4, k in {1,2,4}
    table = build_table(8)
    for x in range(5):
        expected = sum((table.float[k, x] - math.exp(-k * x / 8)) ** 2 for k in (1, 2, 4))
        assert rec["witness"]["per_level"][x] == pytest.approx(expected, rel=1e-14)


def test_psi_scan_small_index_set():
    # n=4: half = 2; the only admissible block is (l=0, g=0, h=1) -> pair (1, 2)
    rec = psi_scan(4)
    table = build_table(4)
    for x in range(3):
        expected = (table.float[1, x] - table.float[2, x]) ** 2
        assert rec["witness"]["per_level"][x] == pytest.approx(expected, rel=1e-14)
    assert rec["witness"]["psi_at_zero"] == 0.0


def test_phi_psi_errors():
    with pytest.raises(ValueError):
        phi_scan(1)
    with pytest.raises(ValueError):
        psi_scan(1)
