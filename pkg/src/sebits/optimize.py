"""Capacity and rate-distortion solvers over synonymous partitions.

The outer search over mappings is exhaustive partition enumeration gated by a
caller-supplied budget; the inner problems are solved by projected gradient
steps on the probability simplex (the up companion of mutual information is
concave in the input distribution, the down companion convex in the test
channel).  Classic Blahut-Arimoto baselines are included for the C <= C_s and
R_s(D) <= R(D) comparisons.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    ChannelModel,
    Distribution,
    JointDistribution,
    JointSynonymousPartition,
    SynonymousPartition,
    induced_semantic_joint,
)
from .errors import BudgetExceeded, Infeasible, NonConvergence, SizeMismatch
from .measures import entropy, semantic_entropy

_LOG_FLOOR = 1e-300


# ---------------------------------------------------------------------------
# set-partition enumeration
# ---------------------------------------------------------------------------

def bell_number(n: int) -> int:
    """Number of set partitions of an n-element set."""
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1] if n >= 1 else 1


def set_partitions(n: int):
    """All partitions of {0..n-1}, blocks ordered by smallest element."""
    assignment = [0] * n

    def rec(i: int, k: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(k)]
            for idx, lab in enumerate(assignment):
                blocks[lab].append(idx)
            yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(k + 1):
            assignment[i] = lab
            yield from rec(i + 1, k + 1 if lab == k else k)

    if n >= 1:
        yield from rec(1, 1)


def ordered_set_partitions(n: int, k: int):
    """Partitions of {0..n-1} into exactly k labeled, non-empty blocks."""
    for assignment in itertools.product(range(k), repeat=n):
        if len(set(assignment)) != k:
            continue
        blocks: list[list[int]] = [[] for _ in range(k)]
        for idx, lab in enumerate(assignment):
            blocks[lab].append(idx)
        yield tuple(tuple(b) for b in blocks)


def count_ordered_set_partitions(n: int, k: int) -> int:
    # k! * Stirling2(n, k) by inclusion-exclusion
    total = sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1))
    return max(total, 0)


# ---------------------------------------------------------------------------
# simplex projection and shared solver pieces
# ---------------------------------------------------------------------------

def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = 1} (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    rho = np.nonzero(u - css / np.arange(1, v.size + 1) > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def project_rows_simplex(v: np.ndarray) -> np.ndarray:
    """Row-wise simplex projection of a matrix."""
    u = np.sort(v, axis=1)[:, ::-1]
    css = np.cumsum(u, axis=1) - 1.0
    ranks = np.arange(1, v.shape[1] + 1)
    cond = u - css / ranks > 0
    rho = v.shape[1] - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(v.shape[0]), rho] / (rho + 1.0)
    return np.maximum(v - theta[:, None], 0.0)


def _xlog2x_sum(p: np.ndarray) -> float:
    mask = p > 0
    return float(np.sum(p[mask] * np.log2(p[mask])))


# ---------------------------------------------------------------------------
# classic Blahut-Arimoto capacity
# ---------------------------------------------------------------------------

def blahut_arimoto_capacity(
    ch: ChannelModel, tol: float = 1e-10, max_iter: int = 100_000
) -> tuple[float, Distribution]:
    """Classic channel capacity max_p I(X;Y) in bits, with the maximizing input.

    Stops when the Arimoto upper/lower capacity bounds agree within `tol`, so
    the returned value is within `tol` of the true maximum.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = ch.transition
    m = ch.input_size
    if m == 1:
        return 0.0, Distribution(np.ones(1))
    r = np.full(m, 1.0 / m)
    logw = np.where(w > 0, np.log2(np.maximum(w, _LOG_FLOOR)), 0.0)
    for _ in range(max_iter):
        q = r @ w
        logq = np.where(q > 0, np.log2(np.maximum(q, _LOG_FLOOR)), 0.0)
        d = np.sum(w * (logw - logq), axis=1)  # per-input divergence to the output dist
        lower = float(r @ d)
        upper = float(d.max())
        if upper - lower < tol:
            return lower, Distribution(r)
        r = r * np.exp2(d - d.max())
        r /= r.sum()
    raise NonConvergence(f"Blahut-Arimoto did not reach tol={tol} in {max_iter} iterations")


# ---------------------------------------------------------------------------
# inner capacity solver: concave ascent of the up companion over p(x)
# ---------------------------------------------------------------------------

def _up_smi_pieces(ch: ChannelModel, fj: JointSynonymousPartition):
    if fj.u_partition.alphabet_size != ch.input_size or fj.v_partition.alphabet_size != ch.output_size:
        raise SizeMismatch("joint partition does not tile the channel's input x output grid")
    w = ch.transition
    # column-block sums of the transition matrix: wv[x, b] = sum_{y in V_b} p(y|x)
    wv = np.stack([w[:, list(b)].sum(axis=1) for b in fj.v_partition.blocks], axis=1)
    x_block = fj.u_partition.block_of
    return w, wv, x_block


def _up_smi_value(p: np.ndarray, w: np.ndarray, wv: np.ndarray, x_block: np.ndarray) -> float:
    py = p @ w
    n_blocks_u = x_block.max() + 1
    pb = np.zeros((n_blocks_u, wv.shape[1]))
    np.add.at(pb, x_block, p[:, None] * wv)
    return -_xlog2x_sum(p) - _xlog2x_sum(py) + _xlog2x_sum(pb.ravel())


def _up_smi_grad(p: np.ndarray, w: np.ndarray, wv: np.ndarray, x_block: np.ndarray) -> np.ndarray:
    py = p @ w
    n_blocks_u = x_block.max() + 1
    pb = np.zeros((n_blocks_u, wv.shape[1]))
    np.add.at(pb, x_block, p[:, None] * wv)
    logpy = np.log2(np.maximum(py, 1e-15))
    # -log p_x + sum_b wv log pb fused as sum_b wv log(pb / p_x); the mass each
    # x contributes to its block cancels exactly, so boundary points cannot
    # produce mismatched clamps between the two logs
    own = p[:, None] * wv
    rest = np.maximum(pb[x_block, :] - own, 0.0)
    ratio = wv + rest / np.maximum(p, 1e-15)[:, None]
    fused = np.where(wv > 0, wv * np.log2(np.maximum(ratio, 1e-300)), 0.0).sum(axis=1)
    return fused - (w @ logpy)


def maximize_up_smi(
    ch: ChannelModel,
    fj: JointSynonymousPartition,
    tol: float = 1e-8,
    max_iter: int = 100_000,
) -> tuple[float, Distribution]:
    """max over p(x) of H(X)+H(Y)-Hs(X~,Y~) by projected gradient ascent.

    Armijo backtracking; converged when the gradient-mapping norm drops below
    `tol`.  The objective is concave in p(x), so the maximum is global.
    """
    w, wv, x_block = _up_smi_pieces(ch, fj)
    m = ch.input_size
    if m == 1:
        p = np.ones(1)
        return _up_smi_value(p, w, wv, x_block), Distribution(p)
    p = np.full(m, 1.0 / m)
    fval = _up_smi_value(p, w, wv, x_block)
    step = 1.0
    stagnant = 0
    for _ in range(max_iter):
        g = _up_smi_grad(p, w, wv, x_block)
        while True:
            cand = project_simplex(p + step * g)
            fcand = _up_smi_value(cand, w, wv, x_block)
            if fcand >= fval + 1e-4 * float(g @ (cand - p)):
                break
            if step < 1e-15:  # no ascent step survives float precision
                return fval, Distribution(p)
            step *= 0.5
        mapping_norm = float(np.linalg.norm(cand - p)) / max(step, 1e-18)
        stagnant = stagnant + 1 if fcand - fval <= 1e-14 * max(1.0, abs(fval)) else 0
        p, fval = cand, fcand
        if mapping_norm < tol or stagnant >= 64:  # value pinned to float precision
            return fval, Distribution(p)
        step = min(step * 2.0, 1e6)
    raise NonConvergence(f"up-SMI ascent did not reach tol={tol} in {max_iter} iterations")


# ---------------------------------------------------------------------------
# semantic capacity: exhaustive outer search over partition pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CapacityResult:
    c_s: float
    best_input: Distribution
    best_partition: JointSynonymousPartition
    c_classic: float

    def to_json(self) -> dict:
        return {
            "c_s": self.c_s,
            "c_classic": self.c_classic,
            "best_input": self.best_input.probs.tolist(),
            "best_partition": {
                "input_blocks": [list(b) for b in self.best_partition.u_partition.blocks],
                "output_blocks": [list(b) for b in self.best_partition.v_partition.blocks],
            },
        }


def semantic_capacity(
    ch: ChannelModel,
    partition_budget: int = 10_000,
    tol: float = 1e-8,
    identity_only: bool = False,
    threads: int = 1,
) -> CapacityResult:
    """max over (input-partition, output-partition) pairs and p(x) of the up companion.

    The outer maximization enumerates every product pair of set partitions,
    which grows as Bell(N_x) * Bell(N_y); the call refuses to start if that
    exceeds `partition_budget`.  `identity_only` restricts the search to the
    identity pair, which reduces C_s to the classic capacity.
    """
    c_classic, _ = blahut_arimoto_capacity(ch, tol=min(tol, 1e-10))
    nx, ny = ch.input_size, ch.output_size
    if identity_only:
        pairs = [
            (
                tuple((i,) for i in range(nx)),
                tuple((j,) for j in range(ny)),
            )
        ]
    else:
        required = bell_number(nx) * bell_number(ny)
        if required > partition_budget:
            raise BudgetExceeded(
                f"enumeration needs {required} partition pairs, budget is {partition_budget}",
                required=required,
            )
        pairs = [
            (fu, fv)
            for fu in set_partitions(nx)
            for fv in set_partitions(ny)
        ]

    def solve(pair):
        fu, fv = pair
        fj = JointSynonymousPartition(
            SynonymousPartition(fu, nx), SynonymousPartition(fv, ny)
        )
        value, best_p = maximize_up_smi(ch, fj, tol=tol)
        return value, pair, fj, best_p

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(solve, pairs))
    else:
        results = [solve(pair) for pair in pairs]
    # deterministic winner: highest value, ties to the lexicographically smallest pair
    best = min(results, key=lambda r: (-r[0], r[1]))
    return CapacityResult(
        c_s=best[0], best_input=best[3], best_partition=best[2], c_classic=c_classic
    )


# ---------------------------------------------------------------------------
# semantic distortion
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SemanticDistortionMatrix:
    """Non-negative cost d_s(x~_is, x^~_js) of representing one semantic symbol by another."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.size == 0:
            raise SizeMismatch("distortion matrix must be a non-empty 2-D matrix")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("distortion entries must be finite and non-negative")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape  # type: ignore[return-value]


def hamming_distortion(n_source: int, n_reconstruction: int | None = None) -> SemanticDistortionMatrix:
    """0 on the diagonal, 1 elsewhere."""
    m = n_reconstruction if n_reconstruction is not None else n_source
    return SemanticDistortionMatrix(1.0 - np.eye(n_source, m))


def expected_semantic_distortion(
    j: JointDistribution,
    fx: SynonymousPartition,
    fxh: SynonymousPartition,
    ds: SemanticDistortionMatrix,
) -> float:
    """sum over product blocks of block mass times d_s(block)."""
    if ds.shape != (fx.semantic_size, fxh.semantic_size):
        raise SizeMismatch(
            f"distortion matrix is {ds.shape}, partitions induce "
            f"{(fx.semantic_size, fxh.semantic_size)}"
        )
    mass = induced_semantic_joint(j, JointSynonymousPartition(fx, fxh)).probs
    return float(np.sum(mass * ds.values))


# ---------------------------------------------------------------------------
# classic Blahut-Arimoto rate-distortion
# ---------------------------------------------------------------------------

def _ba_rd_fixed_slope(p: np.ndarray, d: np.ndarray, s: float, max_iter: int) -> tuple[float, float, np.ndarray]:
    """BA fixed point at slope parameter s < 0; returns (rate, distortion, q)."""
    n_hat = d.shape[1]
    r = np.full(n_hat, 1.0 / n_hat)
    expo = s * d
    expo -= expo.max(axis=1, keepdims=True)  # per-row shift stabilizes exp
    es = np.exp(expo)
    for _ in range(max_iter):
        a = r * es
        q = a / a.sum(axis=1, keepdims=True)
        r_new = p @ q
        if np.abs(r_new - r).sum() < 1e-14:
            r = r_new
            break
        r = r_new
    else:
        raise NonConvergence("inner Blahut-Arimoto loop did not converge")
    a = r * es
    q = a / a.sum(axis=1, keepdims=True)
    dist = float(np.sum(p[:, None] * q * d))
    mask = q > 0
    ratio = np.zeros_like(q)
    ratio[mask] = q[mask] / np.broadcast_to(r, q.shape)[mask]
    rate = float(np.sum(p[:, None] * np.where(mask, q * np.log2(np.maximum(ratio, _LOG_FLOOR)), 0.0)))
    return max(rate, 0.0), dist, q


def blahut_arimoto_rd(
    src: Distribution, d, target_d: float, tol: float = 1e-8, max_iter: int = 100_000
) -> tuple[float, ChannelModel]:
    """Classic R(D) in bits with the achieving test channel.

    Bisects the slope parameter until the fixed point's distortion matches
    `target_d`; the reported rate comes from the feasible (distortion <= D)
    side of the bracket.
    """
    p = src.probs
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != p.size:
        raise SizeMismatch("distortion matrix rows must match the source alphabet")
    if target_d < 0:
        raise Infeasible("distortion target must be non-negative")
    d_floor = float(p @ d.min(axis=1))
    if target_d < d_floor - 1e-12:
        raise Infeasible(f"no test channel reaches distortion {target_d} (minimum {d_floor})")
    col_cost = p @ d
    j_best = int(np.argmin(col_cost))
    if target_d >= float(col_cost[j_best]) - 1e-12:
        q = np.zeros_like(d)
        q[:, j_best] = 1.0
        return 0.0, ChannelModel(q)

    lo, hi = -1.0, 0.0  # slope bracket: distortion increases toward s = 0
    rate_lo, dist_lo, q_lo = _ba_rd_fixed_slope(p, d, lo, max_iter)
    while dist_lo > target_d:
        hi = lo
        lo *= 2.0
        if lo < -1e6:
            raise NonConvergence("slope bracket search failed")
        rate_lo, dist_lo, q_lo = _ba_rd_fixed_slope(p, d, lo, max_iter)
    best = (rate_lo, dist_lo, q_lo)  # feasible side
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        rate_m, dist_m, q_m = _ba_rd_fixed_slope(p, d, mid, max_iter)
        if dist_m <= target_d:
            best = (rate_m, dist_m, q_m)
            lo = mid
        else:
            hi = mid
        if abs(dist_m - target_d) < 1e-11 or hi - lo < 1e-13 * max(1.0, abs(lo)):
            break
    return best[0], ChannelModel(best[2])


# ---------------------------------------------------------------------------
# semantic rate-distortion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RateDistortionResult:
    r_s: float
    best_test_channel: ChannelModel
    best_partitions: tuple[SynonymousPartition, SynonymousPartition]
    r_classic: float
    distortion_achieved: float

    def to_json(self) -> dict:
        return {
            "r_s": self.r_s,
            "r_classic": self.r_classic,
            "distortion_achieved": self.distortion_achieved,
            "best_test_channel": self.best_test_channel.transition.tolist(),
            "best_partitions": {
                "source_blocks": [list(b) for b in self.best_partitions[0].blocks],
                "reconstruction_blocks": [list(b) for b in self.best_partitions[1].blocks],
            },
        }


def _down_smi_of_q(p: np.ndarray, q: np.ndarray, xh_block: np.ndarray, hs_x: float) -> float:
    """Hs(X~) + Hs(X^~) - H(X, X^) as a function of the test channel q."""
    joint = p[:, None] * q
    n_blocks = xh_block.max() + 1
    pb = np.zeros(n_blocks)
    np.add.at(pb, xh_block, joint.sum(axis=0))
    return hs_x - _xlog2x_sum(pb) + _xlog2x_sum(joint.ravel())


def _down_smi_grad_q(
    p: np.ndarray, q: np.ndarray, xh_block: np.ndarray, lam: float, dsyn: np.ndarray
) -> np.ndarray:
    joint = p[:, None] * q
    n_blocks = xh_block.max() + 1
    pb = np.zeros(n_blocks)
    np.add.at(pb, xh_block, joint.sum(axis=0))
    logq = np.log2(np.maximum(q, 1e-15))
    logpb = np.log2(np.maximum(pb, 1e-15))
    return p[:, None] * (logq - logpb[xh_block][None, :] + lam * dsyn)


def _min_down_smi_at_lambda(
    p: np.ndarray,
    dsyn: np.ndarray,
    xh_block: np.ndarray,
    hs_x: float,
    lam: float,
    tol: float,
    max_iter: int,
    q0: np.ndarray | None = None,
) -> tuple[float, float, np.ndarray]:
    """min over q of down-SMI + lam * distortion; PGD with per-row projection."""
    n, n_hat = dsyn.shape
    q = np.full((n, n_hat), 1.0 / n_hat) if q0 is None else q0.copy()

    def objective(qm: np.ndarray) -> float:
        return _down_smi_of_q(p, qm, xh_block, hs_x) + lam * float(np.sum(p[:, None] * qm * dsyn))

    fval = objective(q)
    step = 1.0
    stagnant = 0
    for _ in range(max_iter):
        g = _down_smi_grad_q(p, q, xh_block, lam, dsyn)
        stalled = False
        while True:
            cand = project_rows_simplex(q - step * g)
            fcand = objective(cand)
            if fcand <= fval + 1e-4 * float(np.sum(g * (cand - q))):
                break
            if step < 1e-15:  # no descent step survives float precision
                stalled = True
                break
            step *= 0.5
        if stalled:
            break
        mapping_norm = float(np.linalg.norm(cand - q)) / max(step, 1e-18)
        stagnant = stagnant + 1 if fval - fcand <= 1e-14 * max(1.0, abs(fval)) else 0
        q, fval = cand, fcand
        if mapping_norm < tol or stagnant >= 64:  # value pinned to float precision
            break
        step = min(step * 2.0, 1e6)
    else:
        raise NonConvergence("down-SMI descent did not converge")
    value = _down_smi_of_q(p, q, xh_block, hs_x)
    dist = float(np.sum(p[:, None] * q * dsyn))
    return value, dist, q


def _min_down_smi_under_distortion(
    p: np.ndarray,
    dsyn: np.ndarray,
    xh_block: np.ndarray,
    hs_x: float,
    target_d: float,
    tol: float,
    max_iter: int,
) -> tuple[float, float, np.ndarray]:
    """min down-SMI subject to expected distortion <= target, by bisection on the multiplier."""
    value, dist, q = _min_down_smi_at_lambda(p, dsyn, xh_block, hs_x, 0.0, tol, max_iter)
    if dist <= target_d + 1e-10:
        return value, dist, q
    lam_hi = 1.0
    for _ in range(80):
        value, dist, q = _min_down_smi_at_lambda(
            p, dsyn, xh_block, hs_x, lam_hi, tol, max_iter, q0=q
        )
        if dist <= target_d + 1e-12:
            break
        lam_hi *= 2.0
    else:
        raise NonConvergence("multiplier bracket search failed")
    best = (value, dist, q)  # feasible side of the bracket
    lam_lo = lam_hi / 2.0 if lam_hi > 1.0 else 0.0
    for _ in range(100):
        lam = 0.5 * (lam_lo + lam_hi)
        value, dist, q = _min_down_smi_at_lambda(
            p, dsyn, xh_block, hs_x, lam, tol, max_iter, q0=q
        )
        if dist <= target_d + 1e-12:
            best = (value, dist, q)
            lam_hi = lam
        else:
            lam_lo = lam
        if abs(dist - target_d) < 1e-9 or lam_hi - lam_lo < 1e-9 * max(1.0, lam_hi):
            break
    return best


def semantic_rate_distortion(
    src: Distribution,
    ds: SemanticDistortionMatrix,
    target_d: float,
    partition_budget: int = 10_000,
    tol: float = 1e-7,
    reconstruction_size: int | None = None,
    max_iter: int = 100_000,
) -> RateDistortionResult:
    """min over partition pairs and distortion-feasible test channels of the down companion.

    `ds` is indexed by semantic symbols, so the enumeration ranges over labeled
    partitions of the source alphabet into ds.shape[0] blocks and of the
    reconstruction alphabet into ds.shape[1] blocks.  The reconstruction
    syntactic alphabet defaults to one symbol per semantic symbol.  The result
    is clamped at zero.
    """
    if target_d < 0:
        raise Infeasible("distortion target must be non-negative")
    p = src.probs
    n = src.alphabet_size
    n_sx, n_sxh = ds.shape
    n_hat = reconstruction_size if reconstruction_size is not None else n_sxh
    if n_sx > n or n_sxh > n_hat:
        raise SizeMismatch("distortion matrix implies more semantic symbols than syntactic ones")
    required = count_ordered_set_partitions(n, n_sx) * count_ordered_set_partitions(n_hat, n_sxh)
    if required > partition_budget:
        raise BudgetExceeded(
            f"enumeration needs {required} partition pairs, budget is {partition_budget}",
            required=required,
        )

    best: tuple | None = None
    for fx_blocks in ordered_set_partitions(n, n_sx):
        fx = SynonymousPartition(fx_blocks, n)
        hs_x = semantic_entropy(src, fx)
        for fxh_blocks in ordered_set_partitions(n_hat, n_sxh):
            fxh = SynonymousPartition(fxh_blocks, n_hat)
            dsyn = ds.values[np.ix_(fx.block_of, fxh.block_of)]
            if target_d < float(p @ dsyn.min(axis=1)) - 1e-12:
                continue  # this pair cannot meet the distortion target
            value, dist, q = _min_down_smi_under_distortion(
                p, dsyn, fxh.block_of, hs_x, target_d, tol, max_iter
            )
            value = max(value, 0.0)
            key = (value, fx_blocks, fxh_blocks)
            if best is None or key < (best[0], best[3], best[4]):
                best = (value, dist, q, fx_blocks, fxh_blocks)
    if best is None:
        raise Infeasible(f"no partition pair admits a test channel with distortion <= {target_d}")

    value, dist, q, fx_blocks, fxh_blocks = best
    fx = SynonymousPartition(fx_blocks, n)
    fxh = SynonymousPartition(fxh_blocks, n_hat)
    dsyn = ds.values[np.ix_(fx.block_of, fxh.block_of)]
    r_classic, _ = blahut_arimoto_rd(src, dsyn, target_d)
    return RateDistortionResult(
        r_s=value,
        best_test_channel=ChannelModel(q),
        best_partitions=(fx, fxh),
        r_classic=r_classic,
        distortion_achieved=dist,
    )


# ---------------------------------------------------------------------------
# source-channel feasibility
# ---------------------------------------------------------------------------

def jscc_feasible(
    rate: float,
    src: Distribution,
    f: SynonymousPartition,
    ch: ChannelModel,
    mode: str = "lossless",
    ds: SemanticDistortionMatrix | None = None,
    target_d: float | None = None,
    partition_budget: int = 10_000,
    tol: float = 1e-8,
    edge_tol: float = 1e-6,
) -> str:
    """Classify a code rate against the semantic source-channel criterion.

    Lossless: feasible iff Hs(U~) <= rate <= C_s.  Lossy (needs ds and
    target_d): feasible iff R_s(D) <= rate <= C_s.  Returns "feasible",
    "infeasible", or "boundary" when within `edge_tol` of either edge.
    """
    if mode == "lossless":
        lower = semantic_entropy(src, f)
    elif mode == "lossy":
        if ds is None or target_d is None:
            raise ValueError("lossy mode needs ds and target_d")
        lower = semantic_rate_distortion(
            src, ds, target_d, partition_budget=partition_budget, tol=tol
        ).r_s
    else:
        raise ValueError(f"mode must be 'lossless' or 'lossy', got {mode!r}")
    upper = semantic_capacity(ch, partition_budget=partition_budget, tol=tol).c_s
    if abs(rate - lower) <= edge_tol or abs(rate - upper) <= edge_tol:
        return "boundary"
    if lower <= rate <= upper:
        return "feasible"
    return "infeasible"
