"""Solver tests: closed-form baselines, grid-search oracles, ordering invariants."""

import numpy as np
import pytest

from sebits.core import (
    ChannelModel,
    Distribution,
    JointDistribution,
    JointSynonymousPartition,
    SynonymousPartition,
)
from sebits.errors import BudgetExceeded, Infeasible
from sebits.measures import up_smi
from sebits.optimize import (
    SemanticDistortionMatrix,
    bell_number,
    blahut_arimoto_capacity,
    blahut_arimoto_rd,
    count_ordered_set_partitions,
    expected_semantic_distortion,
    hamming_distortion,
    jscc_feasible,
    maximize_up_smi,
    ordered_set_partitions,
    semantic_capacity,
    semantic_rate_distortion,
    set_partitions,
)


def h2(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return float(-(x * np.log2(x) + (1 - x) * np.log2(1 - x)))


def bsc(p: float) -> ChannelModel:
    return ChannelModel(np.array([[1 - p, p], [p, 1 - p]]))


class TestPartitionEnumeration:
    def test_bell_numbers(self):
        assert [bell_number(n) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]

    def test_set_partitions_count_matches_bell(self):
        for n in range(1, 6):
            assert len(list(set_partitions(n))) == bell_number(n)

    def test_partitions_are_canonical_and_distinct(self):
        parts = list(set_partitions(4))
        assert len(set(parts)) == len(parts)
        for blocks in parts:
            firsts = [b[0] for b in blocks]
            assert firsts == sorted(firsts)
            assert sorted(i for b in blocks for i in b) == list(range(4))

    def test_ordered_partitions(self):
        got = list(ordered_set_partitions(3, 2))
        assert len(got) == count_ordered_set_partitions(3, 2) == 6
        assert len(set(got)) == 6


class TestBlahutArimotoCapacity:
    def test_bsc_closed_form(self):
        c, r = blahut_arimoto_capacity(bsc(0.11), tol=1e-12)
        assert c == pytest.approx(1 - h2(0.11), abs=1e-9)
        np.testing.assert_allclose(r.probs, [0.5, 0.5], atol=1e-6)

    def test_noiseless_binary(self):
        c, r = blahut_arimoto_capacity(ChannelModel(np.eye(2)))
        assert c == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(r.probs, [0.5, 0.5], atol=1e-6)

    def test_identical_rows_zero(self):
        c, _ = blahut_arimoto_capacity(ChannelModel(np.array([[0.3, 0.7], [0.3, 0.7]])))
        assert c == pytest.approx(0.0, abs=1e-12)

    def test_erasure_channel(self):
        e = 0.25
        ch = ChannelModel(np.array([[1 - e, e, 0.0], [0.0, e, 1 - e]]))
        c, _ = blahut_arimoto_capacity(ch, tol=1e-12)
        assert c == pytest.approx(1 - e, abs=1e-9)


def _xlog2x(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    m = a > 0
    out[m] = a[m] * np.log2(a[m])
    return out


def grid_search_up_smi(ch: ChannelModel, fj: JointSynonymousPartition, step: float = 1e-4):
    """Exhaustive oracle over binary input distributions, written from the raw sums."""
    assert ch.input_size == 2
    w = np.asarray(ch.transition)
    p0 = np.arange(0.0, 1.0 + step / 2, step)
    pm = np.stack([p0, 1.0 - p0], axis=1)  # (grid, 2)
    hx = -_xlog2x(pm).sum(axis=1)
    py = pm @ w
    hy = -_xlog2x(py).sum(axis=1)
    hs = np.zeros_like(p0)
    for bu in fj.u_partition.blocks:
        for bv in fj.v_partition.blocks:
            wsub = w[np.ix_(list(bu), list(bv))].sum(axis=1)  # (len(bu),)
            mass = pm[:, list(bu)] @ wsub
            hs -= _xlog2x(mass)
    values = hx + hy - hs
    k = int(np.argmax(values))
    return float(values[k]), float(p0[k])


class TestMaximizeUpSmi:
    def test_identity_partitions_match_blahut_arimoto(self):
        for p in [0.0, 0.05, 0.11, 0.3, 0.5]:
            ch = bsc(p)
            c, _ = blahut_arimoto_capacity(ch, tol=1e-12)
            v, _ = maximize_up_smi(ch, JointSynonymousPartition.identity(2, 2), tol=1e-10)
            assert v == pytest.approx(c, abs=1e-6)

    def test_fully_merged_noiseless(self):
        fj = JointSynonymousPartition(
            SynonymousPartition.single_block(2), SynonymousPartition.single_block(2)
        )
        v, p = maximize_up_smi(ChannelModel(np.eye(2)), fj, tol=1e-10)
        assert v == pytest.approx(2.0, abs=1e-8)
        np.testing.assert_allclose(p.probs, [0.5, 0.5], atol=1e-5)

    @pytest.mark.parametrize(
        "blocks_x,blocks_y",
        [(((0,), (1,)), ((0, 1),)), (((0, 1),), ((0,), (1,))), (((0,), (1,)), ((0,), (1,)))],
    )
    def test_against_grid_oracle_identical_rows(self, blocks_x, blocks_y):
        ch = ChannelModel(np.array([[0.6, 0.4], [0.6, 0.4]]))
        fj = JointSynonymousPartition(
            SynonymousPartition(blocks_x, 2), SynonymousPartition(blocks_y, 2)
        )
        oracle, _ = grid_search_up_smi(ch, fj)
        v, _ = maximize_up_smi(ch, fj, tol=1e-10)
        assert v == pytest.approx(oracle, abs=1e-3)

    def test_against_grid_oracle_random_2x2(self):
        rng = np.random.default_rng(42)
        for _ in range(6):
            ch = ChannelModel(rng.dirichlet(np.ones(2), size=2))
            for fu in set_partitions(2):
                for fv in set_partitions(2):
                    fj = JointSynonymousPartition(
                        SynonymousPartition(fu, 2), SynonymousPartition(fv, 2)
                    )
                    oracle, _ = grid_search_up_smi(ch, fj)
                    v, _ = maximize_up_smi(ch, fj, tol=1e-9)
                    assert v == pytest.approx(oracle, abs=1e-3)


class TestSemanticCapacity:
    def test_noiseless_binary_fully_merged(self):
        res = semantic_capacity(ChannelModel(np.eye(2)), partition_budget=10)
        assert res.c_s == pytest.approx(2.0, abs=1e-8)
        assert res.best_partition.u_partition.semantic_size == 1
        assert res.best_partition.v_partition.semantic_size == 1
        assert res.c_classic == pytest.approx(1.0, abs=1e-9)

    def test_identity_only_equals_classic(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            ch = ChannelModel(rng.dirichlet(np.ones(3), size=2))
            res = semantic_capacity(ch, identity_only=True)
            assert res.c_s == pytest.approx(res.c_classic, abs=1e-4)

    def test_cs_dominates_classic_on_small_channels(self):
        rng = np.random.default_rng(11)
        for _ in range(4):
            ch = ChannelModel(rng.dirichlet(np.ones(3), size=3))
            res = semantic_capacity(ch, partition_budget=30)
            assert res.c_s >= res.c_classic - 1e-6

    def test_full_merging_degenerates_to_marginal_entropies(self):
        """Merging both alphabets zeroes the joint block entropy, so the outer
        maximum is H(X)+H(Y) for any binary channel: both extremes reach 2.0
        and the classic gap shows up in c_classic only."""
        r0 = semantic_capacity(bsc(0.0), partition_budget=10)
        r5 = semantic_capacity(bsc(0.5), partition_budget=10)
        assert r0.c_s == pytest.approx(2.0, abs=1e-6)
        assert r5.c_s == pytest.approx(2.0, abs=1e-6)
        assert r0.c_classic > r5.c_classic

    def test_budget_gate(self):
        with pytest.raises(BudgetExceeded) as exc:
            semantic_capacity(ChannelModel(np.eye(3)), partition_budget=3)
        assert exc.value.required == bell_number(3) ** 2

    def test_threads_match_sequential(self):
        ch = bsc(0.2)
        a = semantic_capacity(ch, partition_budget=10, threads=1)
        b = semantic_capacity(ch, partition_budget=10, threads=4)
        assert a.c_s == pytest.approx(b.c_s, abs=1e-12)
        assert a.best_partition.u_partition.blocks == b.best_partition.u_partition.blocks


class TestExpectedSemanticDistortion:
    def test_perfect_copy_is_zero(self):
        j = JointDistribution(np.eye(2) * 0.5)
        f = SynonymousPartition.identity(2)
        assert expected_semantic_distortion(j, f, f, hamming_distortion(2)) == 0.0

    def test_independent_uniform_binary(self):
        j = JointDistribution(np.full((2, 2), 0.25))
        f = SynonymousPartition.identity(2)
        assert expected_semantic_distortion(j, f, f, hamming_distortion(2)) == pytest.approx(0.5)

    def test_table2_against_direct_summation(self, table2_joint, table3_partitions):
        rng = np.random.default_rng(3)
        ds = SemanticDistortionMatrix(rng.uniform(0, 2, size=(2, 4)))
        fx, fv = table3_partitions.u_partition, table3_partitions.v_partition
        # direct summation oracle
        expected = 0.0
        for a, bu in enumerate(fx.blocks):
            for b, bv in enumerate(fv.blocks):
                for i in bu:
                    for k in bv:
                        expected += table2_joint.probs[i, k] * ds.values[a, b]
        got = expected_semantic_distortion(table2_joint, fx, fv, ds)
        assert got == pytest.approx(expected, abs=1e-12)


class TestBlahutArimotoRd:
    def test_uniform_binary_hamming_values(self):
        src = Distribution(np.array([0.5, 0.5]))
        d = hamming_distortion(2).values
        assert blahut_arimoto_rd(src, d, 0.5)[0] == pytest.approx(0.0, abs=1e-9)
        assert blahut_arimoto_rd(src, d, 0.25)[0] == pytest.approx(1 - h2(0.25), abs=1e-6)
        assert blahut_arimoto_rd(src, d, 0.0)[0] == pytest.approx(1.0, abs=1e-6)

    def test_nonuniform_closed_form(self):
        # binary source with P(1)=0.2, Hamming: R(D) = H(0.2) - H(D) for D <= 0.2
        src = Distribution(np.array([0.8, 0.2]))
        d = hamming_distortion(2).values
        for target in [0.05, 0.1, 0.15]:
            rate, _ = blahut_arimoto_rd(src, d, target)
            assert rate == pytest.approx(h2(0.2) - h2(target), abs=1e-5)

    def test_infeasible(self):
        src = Distribution(np.array([0.5, 0.5]))
        d = np.array([[1.0, 2.0], [2.0, 1.0]])  # minimum achievable distortion 1.0
        with pytest.raises(Infeasible):
            blahut_arimoto_rd(src, d, 0.5)


class TestSemanticRateDistortion:
    def test_identity_matches_classic(self):
        src = Distribution(np.array([0.5, 0.5]))
        ds = hamming_distortion(2)
        for target in [0.05, 0.15, 0.25, 0.35, 0.45]:
            res = semantic_rate_distortion(src, ds, target)
            assert res.r_s == pytest.approx(1 - h2(target), abs=5e-3)
            assert res.r_s <= res.r_classic + 1e-6
            assert res.distortion_achieved <= target + 1e-6

    def test_lossless_point(self):
        res = semantic_rate_distortion(Distribution(np.array([0.5, 0.5])), hamming_distortion(2), 0.0)
        assert res.r_s == pytest.approx(1.0, abs=1e-6)

    def test_merged_source_is_free(self):
        res = semantic_rate_distortion(
            Distribution(np.array([0.5, 0.5])), SemanticDistortionMatrix(np.zeros((1, 1))), 0.0
        )
        assert res.r_s == 0.0

    def test_nonincreasing_in_distortion(self):
        src = Distribution(np.array([0.6, 0.4]))
        ds = hamming_distortion(2)
        rates = [semantic_rate_distortion(src, ds, t).r_s for t in [0.05, 0.1, 0.2, 0.3, 0.39]]
        assert all(a >= b - 1e-6 for a, b in zip(rates, rates[1:]))

    def test_rs_below_classic_with_merging_freedom(self):
        # ternary source, binary semantic alphabet: merging strictly reduces the rate
        src = Distribution(np.array([0.4, 0.35, 0.25]))
        ds = hamming_distortion(2)
        res = semantic_rate_distortion(src, ds, 0.1, reconstruction_size=2)
        assert res.r_s <= res.r_classic + 1e-6
        assert res.best_partitions[0].semantic_size == 2

    def test_grid_oracle_2x2_inner(self):
        """Inner solver vs an exhaustive 1e-3 grid over binary test channels,
        with the objective recomputed from the raw sums."""
        src = Distribution(np.array([0.5, 0.5]))
        ds = hamming_distortion(2)
        target = 0.2
        res = semantic_rate_distortion(src, ds, target)

        g = np.arange(0.0, 1.0 + 5e-4, 1e-3)
        a, b = np.meshgrid(g, g, indexing="ij")
        dist = 0.5 * a + 0.5 * b
        j = np.stack([0.5 * (1 - a), 0.5 * a, 0.5 * b, 0.5 * (1 - b)])  # joint cells
        r0, r1 = j[0] + j[2], j[1] + j[3]  # reconstruction marginal
        # identity partitions: down companion reduces to I(X;X^)
        hxh = -(_xlog2x(r0) + _xlog2x(r1))
        h_joint = -_xlog2x(j).sum(axis=0)
        i_xy = 1.0 + hxh - h_joint
        i_xy[dist > target] = np.inf
        best = float(np.clip(i_xy, 0.0, None).min())
        assert res.r_s == pytest.approx(best, abs=1e-3)

    def test_infeasible_everywhere(self):
        src = Distribution(np.array([0.5, 0.5]))
        ds = SemanticDistortionMatrix(np.array([[1.0, 2.0], [2.0, 1.0]]))
        with pytest.raises(Infeasible):
            semantic_rate_distortion(src, ds, 0.5)


class TestJsccFeasible:
    @pytest.fixture()
    def setup(self):
        src = Distribution(np.full(4, 0.25))
        f = SynonymousPartition(((0, 1), (2, 3)), 4)
        ch = ChannelModel(np.eye(2))
        return src, f, ch

    def test_feasible_between_bounds(self, setup):
        src, f, ch = setup
        assert jscc_feasible(1.5, src, f, ch) == "feasible"

    def test_infeasible_below_entropy(self, setup):
        src, f, ch = setup
        assert jscc_feasible(0.5, src, f, ch) == "infeasible"

    def test_boundary(self, setup):
        src, f, ch = setup
        assert jscc_feasible(1.0, src, f, ch) == "boundary"
        assert jscc_feasible(2.0, src, f, ch) == "boundary"

    def test_semantic_widens_the_classic_window(self, setup):
        """H(U) > C makes classic transmission impossible; the merged source still fits."""
        src, f, ch = setup
        from sebits.measures import entropy, semantic_entropy

        c_classic, _ = blahut_arimoto_capacity(ch)
        assert entropy(src) > c_classic  # classic window is empty
        assert semantic_entropy(src, f) < 2.0  # semantic window is not
        assert jscc_feasible(1.5, src, f, ch) == "feasible"

    def test_lossy_mode(self, setup):
        src, f, ch = setup
        ds = hamming_distortion(2)
        verdict = jscc_feasible(
            1.5, src, f, ch, mode="lossy", ds=ds, target_d=0.1, partition_budget=10_000
        )
        assert verdict in ("feasible", "boundary")
