"""Closed-form continuous-case calculators and figure-data emission.

The average synonymous length S >= 1 measures how much resolution the mapping
gives up; S = 1 recovers every classic Shannon quantity exactly.  Everything
here is a pure formula; curve emission produces deterministic CSV rows for
external plotting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class GaussianParams:
    """Signal power, noise level (variance or one-sided density), optional bandwidth, average synonymous length."""

    p_signal: float
    noise: float
    s_avg: float = 1.0
    bandwidth: float | None = None

    def __post_init__(self):
        if self.p_signal <= 0 or self.noise <= 0:
            raise ValueError("signal power and noise must be positive")
        if self.s_avg < 1:
            raise ValueError("average synonymous length must be at least 1")
        if self.bandwidth is not None and self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")


def uniform_semantic_entropy(a: float, b: float, n_tilde: int) -> float:
    """Uniform density on [a, b] under an even partition into n_tilde intervals: log2 n_tilde."""
    if b <= a:
        raise ValueError("interval must have positive length")
    if n_tilde < 1:
        raise ValueError("need at least one synonymous interval")
    return math.log2(n_tilde)


def gaussian_semantic_entropy(sigma2: float, s: float) -> float:
    """(1/2) log2(2 pi e sigma^2 / S^2); equals the differential entropy at S = 1."""
    if sigma2 <= 0:
        raise ValueError("variance must be positive")
    if s < 1:
        raise ValueError("average synonymous length must be at least 1")
    return 0.5 * math.log2(2.0 * math.pi * math.e * sigma2 / (s * s))


def gaussian_semantic_capacity(p: float, sigma2: float, s: float) -> tuple[float, float]:
    """Per-use capacity (1/2) log2(1 + P/sigma^2) + log2(S^2) and its lower bound
    (1/2) log2(1 + S^4 P/sigma^2)."""
    if p <= 0 or sigma2 <= 0:
        raise ValueError("power and noise variance must be positive")
    if s < 1:
        raise ValueError("average synonymous length must be at least 1")
    snr = p / sigma2
    c_s = 0.5 * math.log2(1.0 + snr) + math.log2(s * s)
    lower = 0.5 * math.log2(1.0 + s**4 * snr)
    return c_s, lower


def bandlimited_semantic_capacity(p: float, n0: float, b: float, s: float) -> tuple[float, float]:
    """Per-second capacity B log2[S^4 (1 + P/(N0 B))] and lower bound B log2(1 + S^4 P/(N0 B))."""
    if p <= 0 or n0 <= 0 or b <= 0:
        raise ValueError("power, noise density, and bandwidth must be positive")
    if s < 1:
        raise ValueError("average synonymous length must be at least 1")
    snr = p / (n0 * b)
    c_s = b * math.log2(s**4 * (1.0 + snr))
    lower = b * math.log2(1.0 + s**4 * snr)
    return c_s, lower


def min_energy_per_sebit(mu: float, s: float) -> float:
    """(2^mu - 1) / (S^4 mu) with N0 = 1; increasing in mu with limit ln2 / S^4 at mu -> 0."""
    if mu <= 0:
        raise ValueError("spectral efficiency must be positive")
    if s < 1:
        raise ValueError("average synonymous length must be at least 1")
    return (2.0**mu - 1.0) / (s**4 * mu)


def gaussian_semantic_rd(p: float, d: float, s: float) -> float:
    """(1/2) log2(P / (S^4 D)) for 0 <= D <= P / S^4, else 0."""
    if p <= 0:
        raise ValueError("source power must be positive")
    if d <= 0:
        raise ValueError("distortion must be positive")
    if s < 1:
        raise ValueError("average synonymous length must be at least 1")
    if d > p / s**4:
        return 0.0
    return 0.5 * math.log2(p / (s**4 * d))


def spectral_efficiency(eb_n0_linear: float, s: float, lower_bound: bool = False) -> float:
    """Largest eta with eta = log2[S^4 (1 + eta Eb/N0)] (capacity form) or
    eta = log2(1 + S^4 eta Eb/N0) (lower-bound form); 0 when no positive root exists.

    This is the per-hertz rate at which the energy per sebit equals Eb/N0.
    """
    if eb_n0_linear <= 0:
        raise ValueError("Eb/N0 must be positive")
    if s < 1:
        raise ValueError("average synonymous length must be at least 1")

    def g(eta: float) -> float:
        if lower_bound:
            return math.log2(1.0 + s**4 * eta * eb_n0_linear) - eta
        return math.log2(s**4 * (1.0 + eta * eb_n0_linear)) - eta

    hi = 1.0
    while g(hi) > 0:
        hi *= 2.0
        if hi > 1e9:
            raise ValueError("spectral efficiency diverged")
    # bisection returns sup{eta > 0 : g(eta) > 0}, which is 0 below the Eb/N0 limit
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


CURVE_KINDS = ("capacity_vs_ebn0", "min_energy_vs_mu", "rd_vs_d")


def emit_curves(kind: str, params: dict, grid) -> tuple[list[str], list[list[float]]]:
    """Header and rows for one figure-style CSV.

    capacity_vs_ebn0: grid of Eb/N0 in dB; classic spectral efficiency plus,
    per S, the capacity-form and lower-bound-form efficiencies.
    min_energy_vs_mu: grid of spectral efficiencies; classic minimum energy
    plus one column per S.
    rd_vs_d: grid of distortions; classic Gaussian R(D) plus one column per S
    (params: p).
    """
    grid = list(grid)
    if not grid:
        raise ValueError("grid must be non-empty")
    s_values = list(params.get("s_values", [2.0]))
    if kind == "capacity_vs_ebn0":
        header = ["eb_n0_db", "classic"]
        for s in s_values:
            header += [f"cs_S{s:g}", f"lower_S{s:g}"]
        rows = []
        for db in grid:
            lin = db_to_linear(db)
            row = [db, spectral_efficiency(lin, 1.0)]
            for s in s_values:
                row.append(spectral_efficiency(lin, s))
                row.append(spectral_efficiency(lin, s, lower_bound=True))
            rows.append(row)
        return header, rows
    if kind == "min_energy_vs_mu":
        header = ["mu", "classic"] + [f"energy_S{s:g}" for s in s_values]
        rows = []
        for mu in grid:
            rows.append(
                [mu, min_energy_per_sebit(mu, 1.0)]
                + [min_energy_per_sebit(mu, s) for s in s_values]
            )
        return header, rows
    if kind == "rd_vs_d":
        p = float(params.get("p", 1.0))
        header = ["d", "classic"] + [f"rate_S{s:g}" for s in s_values]
        rows = []
        for d in grid:
            rows.append(
                [d, gaussian_semantic_rd(p, d, 1.0)]
                + [gaussian_semantic_rd(p, d, s) for s in s_values]
            )
        return header, rows
    raise ValueError(f"kind must be one of {CURVE_KINDS}, got {kind!r}")
