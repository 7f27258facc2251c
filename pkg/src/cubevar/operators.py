"""Spherical means, the noise semigroup, and the cube symmetry operators.

Each operator comes in two independent routes (physical-side averaging vs.
spectral multipliers, binomial mixture vs. exponential multiplier) so the
routes can be cross-checked against each other.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    PHYSICAL,
    SPECTRAL,
    CubeFunction,
    convolve,
    fourier,
    fwht,
    inverse_fourier,
    popcounts,
)
from .krawtchouk import KrawtchoukTable, build_table


@dataclass
class NoiseParams:
    """Noise level t >= 0 and the mixing weight u_t = (1 - e^{-t}) / 2."""

    t: float
    u_t: float = field(init=False)

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("noise parameter t must be nonnegative")
        self.u_t = (1.0 - math.exp(-self.t)) / 2.0


def sphere_indicator(n: int, k: int) -> CubeFunction:
    """Normalized indicator of the radius-k sphere, the kernel of S_k."""
    pc = popcounts(n)
    values = np.where(pc == k, 1.0 / math.comb(n, k), 0.0).astype(np.complex128)
    return CubeFunction(n, values)


def spherical_mean_direct(f: CubeFunction, k: int, method: str = "auto") -> CubeFunction:
    """S_k f(x): average of f over the sphere of radius k around x.

    Small spheres are enumerated mask by mask; large ones go through the
    convolution kernel (cheaper than C(n,k) passes once C(n,k) > 4n).
    """
    n = f.n
    if not 0 <= k <= n:
        raise ValueError(f"radius {k} outside 0..{n}")
    if f.side != PHYSICAL:
        raise ValueError("spherical mean expects a physical-side function")
    if method == "auto":
        method = "enum" if math.comb(n, k) <= 4 * n else "conv"
    if method == "enum":
        out = np.zeros_like(f.values)
        idx = np.arange(1 << n)
        for bits in itertools.combinations(range(n), k):
            w = 0
            for b in bits:
                w |= 1 << b
            out += f.values[idx ^ w]
        out /= math.comb(n, k)
        return CubeFunction(n, out, PHYSICAL)
    if method == "conv":
        return convolve(f, sphere_indicator(n, k))
    raise ValueError(f"unknown method {method!r}")


def spherical_mean_multiplier(
    f: CubeFunction, k: int, table: KrawtchoukTable | None = None
) -> CubeFunction:
    """S_k f via the spectral multiplier kappa^(n)_k(|y|)."""
    n = f.n
    if table is None:
        table = build_table(n)
    if table.n != n:
        raise ValueError(f"table for n={table.n} does not match function n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"radius {k} outside 0..{n}")
    F = fourier(f)
    F.values *= table.multipliers(k, popcounts(n))
    return inverse_fourier(F)


def spherical_mean_stack(
    f: CubeFunction, radii, table: KrawtchoukTable | None = None
) -> np.ndarray:
    """Matrix of S_k f for k in `radii` (one row per radius), via one forward
    transform and one inverse transform per radius."""
    n = f.n
    if table is None:
        table = build_table(n)
    pc = popcounts(n)
    F = fourier(f).values
    scale = 2.0 ** (-n / 2)
    rows = np.empty((len(radii), 1 << n), dtype=np.complex128)
    for i, k in enumerate(radii):
        rows[i] = fwht(F * table.multipliers(k, pc))
        rows[i] *= scale
    return rows


def noise_multiplier(f: CubeFunction, t: float) -> CubeFunction:
    """N_t f via the spectral multiplier e^{-t|y|}."""
    if t < 0:
        raise ValueError("noise parameter t must be nonnegative")
    F = fourier(f)
    F.values *= np.exp(-t * popcounts(f.n))
    return inverse_fourier(F)


def noise_binomial(
    f: CubeFunction, t: float, table: KrawtchoukTable | None = None
) -> CubeFunction:
    """N_t f as the binomial mixture sum_k C(n,k) u^k (1-u)^{n-k} S_k f.

    Weights are formed in log-space so they survive n near the dimension cap.
    """
    params = NoiseParams(t)
    n = f.n
    u = params.u_t
    if u == 0.0:
        return f.copy()
    if table is None:
        table = build_table(n)
    log_u = math.log(u)
    log_1mu = math.log1p(-u)
    acc = np.zeros_like(f.values)
    for k in range(n + 1):
        log_w = (
            math.lgamma(n + 1)
            - math.lgamma(k + 1)
            - math.lgamma(n - k + 1)
            + k * log_u
            + (n - k) * log_1mu
        )
        acc += math.exp(log_w) * spherical_mean_multiplier(f, k, table).values
    return CubeFunction(n, acc, PHYSICAL)


def reflect(f: CubeFunction) -> CubeFunction:
    """The reflection f^(y) -> f^(y XOR 1_n); index reversal on the spectral side."""
    if f.side != PHYSICAL:
        raise ValueError("reflect expects a physical-side function")
    F = fourier(f)
    F.values = F.values[::-1].copy()
    return inverse_fourier(F)


def semigroup_axioms_check(n: int, t_grid, trials: int = 20, seed: int = 0) -> dict:
    """Worst violation of the four diffusion-semigroup axioms of N_t on random
    inputs: contraction in p = 1, 2, inf; self-adjointness; positivity on
    nonnegative inputs; conservation of constants."""
    rng = np.random.default_rng(seed)
    size = 1 << n
    worst = {
        "contraction_p1": 0.0,
        "contraction_p2": 0.0,
        "contraction_pinf": 0.0,
        "symmetry": 0.0,
        "positivity": 0.0,
        "conservation": 0.0,
    }
    ones = CubeFunction(n, np.ones(size, dtype=np.complex128))
    for t in t_grid:
        c = noise_multiplier(ones, t)
        worst["conservation"] = max(worst["conservation"], float(np.abs(c.values - 1).max()))
        for _ in range(trials):
            f = CubeFunction(n, rng.standard_normal(size) + 1j * rng.standard_normal(size))
            g = CubeFunction(n, rng.standard_normal(size) + 1j * rng.standard_normal(size))
            nf = noise_multiplier(f, t)
            for p, key in ((1, "contraction_p1"), (2, "contraction_p2"), (math.inf, "contraction_pinf")):
                worst[key] = max(worst[key], nf.norm(p) - f.norm(p))
            lhs = np.vdot(g.values, nf.values)
            rhs = np.vdot(noise_multiplier(g, t).values, f.values)
            worst["symmetry"] = max(worst["symmetry"], abs(lhs - rhs))
            pos = CubeFunction(n, np.abs(rng.standard_normal(size)).astype(np.complex128))
            npos = noise_multiplier(pos, t)
            worst["positivity"] = max(worst["positivity"], float(-npos.values.real.min()))
    worst["max_violation"] = max(worst.values())
    return worst


def antipodal_check(f: CubeFunction, table: KrawtchoukTable | None = None) -> dict:
    """Worst violation of S_k f(x XOR 1_n) = S_{n-k} f(x) over all k and x."""
    n = f.n
    if table is None:
        table = build_table(n)
    means = [spherical_mean_multiplier(f, k, table) for k in range(n + 1)]
    worst = 0.0
    for k in range(n + 1):
        diff = np.abs(means[k].values[::-1] - means[n - k].values).max()
        worst = max(worst, float(diff))
    return {"n": n, "max_violation": worst}
