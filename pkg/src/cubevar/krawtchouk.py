"""Exact-rational Krawtchouk polynomial tables and the identity/bound sweeps.

The normalized polynomial is

    kappa_k(x) = (1 / C(n,k)) * sum_j (-1)^j C(x,j) C(n-x,k-j),

with the alternating sum truncated to max(0, x+k-n) <= j <= min(k, x).  The
sum suffers catastrophic cancellation in floating point, so every table entry
is computed in exact rational arithmetic and only then rounded to a double.
"""
from __future__ import annotations

import csv
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


def kraw_exact(n: int, k: int, x: int) -> Fraction:
    """Exact value of the normalized Krawtchouk polynomial kappa^(n)_k(x)."""
    if not (0 <= k <= n and 0 <= x <= n):
        raise ValueError(f"k={k}, x={x} outside 0..{n}")
    num = 0
    for j in range(max(0, x + k - n), min(k, x) + 1):
        term = math.comb(x, j) * math.comb(n - x, k - j)
        num += -term if j & 1 else term
    return Fraction(num, math.comb(n, k))


class KrawtchoukTable:
    """Immutable (n+1) x (n+1) table, entry [k][x] = kappa^(n)_k(x).

    `exact` holds Fractions; `float` is the same matrix rounded to doubles.
    """

    def __init__(self, n: int):
        self.n = n
        self.exact = [[kraw_exact(n, k, x) for x in range(n + 1)] for k in range(n + 1)]
        self.float = np.array([[float(v) for v in row] for row in self.exact])
        self.float.setflags(write=False)

    def multipliers(self, k: int, pc: np.ndarray) -> np.ndarray:
        """Spectral multiplier of the radius-k mean: kappa_k(|y|) per index y."""
        return self.float[k][pc]

    def export_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "k", "x", "numerator", "denominator", "float"])
            for k in range(self.n + 1):
                for x in range(self.n + 1):
                    v = self.exact[k][x]
                    writer.writerow(
                        [self.n, k, x, v.numerator, v.denominator, repr(float(self.float[k, x]))]
                    )


@lru_cache(maxsize=None)
def build_table(n: int) -> KrawtchoukTable:
    if not 1 <= n <= 64:
        raise ValueError(f"exact table supports n in 1..64, got {n}")
    return KrawtchoukTable(n)


def check_fact_properties(n: int) -> dict:
    """Exact check of the four basic properties: |kappa| <= 1, kappa_k(0) = 1,
    symmetry in (k, x), and the (-1)^k reflection at x -> n - x."""
    t = build_table(n)
    failures = 0
    checked = 0
    for k in range(n + 1):
        for x in range(n + 1):
            v = t.exact[k][x]
            checked += 4
            if abs(v) > 1:
                failures += 1
            if x == 0 and v != 1:
                failures += 1
            if v != t.exact[x][k]:
                failures += 1
            if v != (-1) ** k * t.exact[k][n - x]:
                failures += 1
    return {"n": n, "checked": checked, "failures": failures}


def check_difference_identity(n: int) -> dict:
    """Exact check of kappa^(n)_k(x) - kappa^(n)_k(x-1) = -(2k/n) kappa^(n-1)_{k-1}(x-1)."""
    if n < 2:
        raise ValueError("difference identity needs n >= 2")
    t = build_table(n)
    s = build_table(n - 1)
    failures = 0
    checked = 0
    for k in range(1, n + 1):
        for x in range(1, n + 1):
            lhs = t.exact[k][x] - t.exact[k][x - 1]
            rhs = Fraction(-2 * k, n) * s.exact[k - 1][x - 1]
            checked += 1
            if lhs != rhs:
                failures += 1
    return {"n": n, "checked": checked, "failures": failures}


def bound_scan_a(n: int) -> dict:
    """Exact sweep of |kappa - 1| * n / (k*x); the sharp constant is 2."""
    t = build_table(n)
    best = Fraction(0)
    argmax = None
    for k in range(1, n + 1):
        for x in range(1, n + 1):
            ratio = abs(t.exact[k][x] - 1) * Fraction(n, k * x)
            if ratio > best:
                best = ratio
                argmax = (k, x)
    return {
        "n": n,
        "constant_name": "bound_a_ratio",
        "value": float(best),
        "exact": best,
        "attains_two": best == 2,
        "within_two": best <= 2,
        "argmax": argmax,
    }


def bound_scan_b_c(n: int) -> dict:
    """Empirical constants for |kappa| <~ n/(kx) and |kappa_k - kappa_{k-1}| <~ 1/k
    over the quadrant k, x <= n/2."""
    if n < 2:
        raise ValueError("scan needs n >= 2")
    t = build_table(n)
    half = n // 2
    c_b, arg_b = 0.0, None
    c_c, arg_c = 0.0, None
    for k in range(1, half + 1):
        for x in range(1, half + 1):
            v = abs(t.float[k, x]) * k * x / n
            if v > c_b:
                c_b, arg_b = v, (k, x)
        for x in range(0, half + 1):
            v = abs(t.float[k, x] - t.float[k - 1, x]) * k
            if v > c_c:
                c_c, arg_c = v, (k, x)
    return {"n": n, "C_b": c_b, "argmax_b": arg_b, "C_c": c_c, "argmax_c": arg_c}


def estimate_exp_constant(n_max: int) -> dict:
    """Empirical constant in |kappa_k(x)| <= exp(-c k x / n) for k, x <= n/2.

    Returns the minimum of -n ln|kappa| / (kx); exact zeros are skipped since
    the bound is vacuous there.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    c_hat = math.inf
    argmin = None
    for n in range(2, n_max + 1):
        t = build_table(n)
        half = n // 2
        for k in range(1, half + 1):
            for x in range(1, half + 1):
                if t.exact[k][x] == 0:
                    continue
                c = -n * math.log(abs(t.float[k, x])) / (k * x)
                if c < c_hat:
                    c_hat = c
                    argmin = (n, k, x)
    return {"n_max": n_max, "constant_name": "c_hat", "value": c_hat, "argmin": argmin}
