"""Counterexample reproduction and multiplier scans.

Every record carries (n, r, q, metric, value, witness) and is assembled into an
ExperimentReport that serializes to JSON (full) and CSV (records only).  All
randomness flows from a single 64-bit seed through numpy's PCG64 generator, so
identical (config, seed) pairs produce byte-identical reports.
"""
from __future__ import annotations

import csv
import datetime
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import CubeFunction, character, fwht, popcounts
from .krawtchouk import KrawtchoukTable, build_table
from .operators import spherical_mean_stack
from .variation import vr_exact, vr_pointwise_values

CSV_HEADER = ["experiment", "n", "r", "q", "metric", "value", "witness"]


@dataclass
class ExperimentConfig:
    n_list: list = field(default_factory=lambda: [8])
    r_list: list = field(default_factory=lambda: [2.0])
    q: int | None = None
    alpha: float = 0.5            # power rule b_n = n^alpha
    seed: int = 0
    trials: int = 100

    def __post_init__(self):
        if any(n < 1 for n in self.n_list):
            raise ValueError("all dimensions must be >= 1")
        if any(r < 1 for r in self.r_list):
            raise ValueError("all variation orders must be >= 1")
        if self.q is not None and self.q not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("power-rule exponent must lie in (0, 1)")
        if self.trials < 1:
            raise ValueError("need at least one trial")

    def as_dict(self) -> dict:
        return {
            "n_list": list(self.n_list),
            "r_list": list(self.r_list),
            "q": self.q,
            "alpha": self.alpha,
            "seed": self.seed,
            "trials": self.trials,
        }


@dataclass
class ExperimentReport:
    name: str
    parameters: dict
    records: list = field(default_factory=list)
    created: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat()
    )

    def add(self, record: dict) -> dict:
        self.records.append(record)
        return record

    def extend(self, records) -> None:
        self.records.extend(records)

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "parameters": self.parameters,
                "created": self.created,
                "records": self.records,
            },
            indent=2,
            default=str,
        )

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())
            fh.write("\n")

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for rec in self.records:
                value = rec.get("value", "")
                if isinstance(value, (int, float, np.floating, np.integer)):
                    value = repr(float(value))
                writer.writerow(
                    [
                        self.name,
                        rec.get("n", ""),
                        rec.get("r", ""),
                        rec.get("q", ""),
                        rec.get("metric", ""),
                        value,
                        json.dumps(rec.get("witness", None), default=float),
                    ]
                )


def variation_norm_ratio(
    f: CubeFunction, radii, r: float, table: KrawtchoukTable | None = None
) -> float:
    """|| V_r(S_k f : k in radii) ||_2 / ||f||_2 via the full pipeline
    (materialize every spherical mean, then pointwise variation)."""
    norm_f = f.norm(2)
    if norm_f == 0.0:
        raise ValueError("ratio undefined for the zero function")
    stack = spherical_mean_stack(f, list(radii), table)
    if np.abs(stack.imag).max() < 1e-13:
        stack = np.ascontiguousarray(stack.real)   # halves the DP memory
    v = vr_pointwise_values(stack, r)
    return float(np.sqrt((v**2).sum())) / norm_f


def character_variation(n: int, weight: int, radii, r: float, table=None) -> float:
    """Ratio for f = chi_y with |y| = weight: equals V_r of the multiplier
    sequence (kappa_k(weight))_k since S_k chi_y = kappa_k(|y|) chi_y."""
    if table is None:
        table = build_table(n)
    return vr_exact([table.float[k, weight] for k in radii], r).value


def counterexample_all_ones(n: int, r: float) -> dict:
    """Full-range variation ratio for the all-ones character; the proven lower
    bound is 2 n^{1/r}, attained with equality."""
    f = character(n, (1 << n) - 1)
    ratio = variation_norm_ratio(f, range(n + 1), r)
    bound = 2.0 * n ** (1.0 / r)
    return {
        "n": n,
        "r": r,
        "q": None,
        "metric": "all_ones_ratio",
        "value": ratio,
        "witness": {"weight": n, "lower_bound": bound, "satisfied": bool(ratio >= bound - 1e-9)},
    }


def counterexample_truncated(n: int, r: float, a_n: float) -> dict:
    """Variation ratio for a character of the largest admissible weight below n
    (requires a_n >= 1 so that weight n-1 satisfies |y| >= n - a_n)."""
    if a_n < 1.0 / 3.0:
        raise ValueError("truncation sequence must satisfy a_n >= 1/3")
    if a_n < 1.0:
        raise ValueError(f"no admissible weight below n for a_n={a_n}")
    weight = n - 1
    y = (1 << weight) - 1
    f = character(n, y)
    ratio = variation_norm_ratio(f, range(n + 1), r)
    bound = (2.0 / 3.0) * math.floor(n / (3.0 * a_n)) ** (1.0 / r)
    return {
        "n": n,
        "r": r,
        "q": None,
        "metric": "truncated_ratio",
        "value": ratio,
        "witness": {
            "weight": weight,
            "a_n": a_n,
            "lower_bound": bound,
            "satisfied": bool(ratio >= bound - 1e-12),
        },
    }


def corollary_truncation_scan(config: ExperimentConfig) -> ExperimentReport:
    """Witnesses excluded from E_n = {|y| >= n - b_n} whose ratios still diverge.

    Uses b_n = n^alpha, d_n = max(1/9, b_n), a_n = sqrt(n d_n), and the witness
    weight ceil(n - d_n) - 1; the ratio is evaluated on the multiplier sequence
    of the witness character.
    """
    report = ExperimentReport("corollary-truncation", config.as_dict())
    for n in config.n_list:
        b_n = n**config.alpha
        d_n = max(1.0 / 9.0, b_n)
        a_n = math.sqrt(n * d_n)
        weight = math.ceil(n - d_n) - 1
        for r in config.r_list:
            if weight < 0 or weight < n - a_n:
                report.add(
                    {
                        "n": n,
                        "r": r,
                        "q": None,
                        "metric": "corollary_skipped",
                        "value": float("nan"),
                        "witness": {"weight": weight, "reason": "witness construction impossible"},
                    }
                )
                continue
            if not weight < n - d_n:
                raise AssertionError("witness not excluded from the truncated spectrum")
            ratio = character_variation(n, weight, range(n + 1), r)
            bound = (2.0 / 3.0) * math.floor(n / (3.0 * a_n)) ** (1.0 / r)
            report.add(
                {
                    "n": n,
                    "r": r,
                    "q": None,
                    "metric": "corollary_ratio",
                    "value": ratio,
                    "witness": {
                        "weight": weight,
                        "b_n": b_n,
                        "d_n": d_n,
                        "a_n": a_n,
                        "lower_bound": bound,
                        "satisfied": bool(ratio >= bound - 1e-12),
                    },
                }
            )
    return report


def parity_radii(n: int, q: int) -> list:
    if q not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    return [k for k in range(n + 1) if k % 2 == q]


def parity_character_scan(n: int, r: float, q: int, table=None) -> dict:
    """Max over spectral levels m of V_r of the parity-restricted multiplier
    sequence; this is the character supremum of the fixed-parity operator."""
    if table is None:
        table = build_table(n)
    radii = parity_radii(n, q)
    values = [character_variation(n, m, radii, r, table) for m in range(n + 1)]
    argmax = int(np.argmax(values))
    return {
        "n": n,
        "r": r,
        "q": q,
        "metric": "parity_character_max",
        "value": float(values[argmax]),
        "witness": {"weight": argmax, "per_level": values},
    }


def full_vs_parity_norm(n: int, r: float, f: CubeFunction, q: int | None = None) -> dict:
    """Full-range and parity-restricted variation ratios for one function."""
    table = build_table(n)
    full = variation_norm_ratio(f, range(n + 1), r, table)
    parities = (0, 1) if q is None else (q,)
    parity = {
        str(qq): variation_norm_ratio(f, parity_radii(n, qq), r, table) for qq in parities
    }
    return {
        "n": n,
        "r": r,
        "q": q,
        "metric": "full_vs_parity",
        "value": full,
        "witness": {"full": full, "parity": parity},
    }


def random_halfspectrum_function(n: int, rng) -> CubeFunction:
    """Unit-norm function with independent complex Gaussian coefficients on
    the frequencies |y| <= n/2 and zero elsewhere."""
    size = 1 << n
    pc = popcounts(n)
    spec = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    spec[pc > n / 2] = 0.0
    spec /= np.sqrt((np.abs(spec) ** 2).sum())
    phys = fwht(spec.copy()) * 2.0 ** (-n / 2)
    return CubeFunction(n, phys)


def proposition_halfspectrum_scan(n: int, r: float, trials: int, seed: int) -> dict:
    """Random-search lower bound for the half-spectrum operator quantity; the
    recorded maximum is a lower bound only."""
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng(seed)
    table = build_table(n)
    best = 0.0
    for _ in range(trials):
        f = random_halfspectrum_function(n, rng)
        best = max(best, variation_norm_ratio(f, range(n + 1), r, table))
    return {
        "n": n,
        "r": r,
        "q": None,
        "metric": "halfspectrum_random_max",
        "value": best,
        "witness": {"trials": trials, "seed": seed, "kind": "lower_bound"},
    }


def dyadic_radii(n: int) -> list:
    """Powers of two inside {1, ..., floor(n/2)}."""
    out = []
    k = 1
    while k <= n // 2:
        out.append(k)
        k *= 2
    return out


def phi_scan(n: int, table=None) -> dict:
    """Phi(x) = sum over dyadic k <= n/2 of |kappa_k(x) - exp(-kx/n)|^2."""
    if n < 2:
        raise ValueError("need n >= 2")
    if table is None:
        table = build_table(n)
    radii = dyadic_radii(n)
    values = []
    for x in range(n // 2 + 1):
        phi = sum((table.float[k, x] - math.exp(-k * x / n)) ** 2 for k in radii)
        values.append(phi)
    argmax = int(np.argmax(values))
    return {
        "n": n,
        "r": None,
        "q": None,
        "metric": "phi_max",
        "value": float(values[argmax]),
        "witness": {"argmax_x": argmax, "phi_at_zero": values[0], "per_level": values},
    }


def psi_scan(n: int, table=None) -> dict:
    """Psi(x): the 2^{g/2}-weighted sum of squared Krawtchouk increments over
    the dyadic block grid; the outer sum is finite since the index constraints
    empty out once 2^l exceeds n/2."""
    if n < 2:
        raise ValueError("need n >= 2")
    if table is None:
        table = build_table(n)
    half = n // 2
    triples = []   # (weight, k_lo, k_hi)
    l = 0
    while (1 << l) <= half:
        for g in range(l + 1):
            step = 1 << (l - g)
            for h in range(1, (1 << g) + 1):
                hi = h * step + (1 << l)
                if hi <= half:
                    triples.append((2.0 ** (g / 2), (h - 1) * step + (1 << l), hi))
        l += 1
    values = []
    for x in range(half + 1):
        psi = sum(w * (table.float[lo, x] - table.float[hi, x]) ** 2 for w, lo, hi in triples)
        values.append(psi)
    argmax = int(np.argmax(values)) if values else 0
    return {
        "n": n,
        "r": None,
        "q": None,
        "metric": "psi_max",
        "value": float(values[argmax]),
        "witness": {"argmax_x": argmax, "psi_at_zero": values[0], "per_level": values},
    }
