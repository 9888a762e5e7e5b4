"""Golden-value tests for the measure functions against Tables I-V.

The relative-entropy cases are checked against a brute-force direct-summation
oracle implemented here, independent of the library's code path.
"""

import math

import numpy as np
import pytest

from sebits.core import (
    Distribution,
    JointDistribution,
    JointSynonymousPartition,
    SynonymousPartition,
    marginals,
    validate_distribution,
    validate_partition,
)
from sebits.errors import SupportMismatch
from sebits.measures import (
    conditional_entropy,
    down_smi,
    entropy,
    full_smi,
    joint_entropy,
    mutual_information,
    semantic_conditional_entropy,
    semantic_entropy,
    semantic_joint_entropy,
    semantic_relative_entropy,
    up_smi,
)

TOL = 1e-3


class TestEntropy:
    def test_table1(self, table1_dist):
        assert entropy(table1_dist) == pytest.approx(2.471, abs=TOL)

    def test_point_mass(self):
        assert entropy(validate_distribution([1.0])) == 0.0

    def test_dyadic(self, huffman_dist):
        assert entropy(huffman_dist) == pytest.approx(1.75, abs=1e-12)


class TestSemanticEntropy:
    def test_table1(self, table1_dist, table1_partition):
        assert semantic_entropy(table1_dist, table1_partition) == pytest.approx(1.971, abs=TOL)

    def test_identity_equals_entropy(self, table1_dist):
        f = SynonymousPartition.identity(6)
        assert semantic_entropy(table1_dist, f) == pytest.approx(entropy(table1_dist), abs=1e-12)

    def test_single_block_is_zero(self, table1_dist):
        assert semantic_entropy(table1_dist, SynonymousPartition.single_block(6)) == 0.0


class TestJointMeasures:
    def test_joint_entropy(self, table2_joint):
        assert joint_entropy(table2_joint) == pytest.approx(3.5842, abs=TOL)

    def test_semantic_joint_entropy(self, table2_joint, table3_partitions):
        assert semantic_joint_entropy(table2_joint, table3_partitions) == pytest.approx(
            2.7087, abs=TOL
        )

    def test_identity_partitions_reduce_to_joint_entropy(self, table2_joint):
        fj = JointSynonymousPartition.identity(4, 5)
        assert semantic_joint_entropy(table2_joint, fj) == pytest.approx(
            joint_entropy(table2_joint), abs=1e-12
        )

    def test_all_in_one_is_zero(self, table2_joint):
        fj = JointSynonymousPartition(
            SynonymousPartition.single_block(4), SynonymousPartition.single_block(5)
        )
        assert semantic_joint_entropy(table2_joint, fj) == 0.0

    def test_conditional_entropies(self, table2_joint):
        assert conditional_entropy(table2_joint, "u_given_v") == pytest.approx(1.3377, abs=TOL)
        assert conditional_entropy(table2_joint, "v_given_u") == pytest.approx(1.6132, abs=TOL)

    def test_semantic_conditional_entropies(self, table2_joint, table3_partitions):
        assert semantic_conditional_entropy(
            table2_joint, table3_partitions.u_partition, "u_given_v"
        ) == pytest.approx(0.6623, abs=TOL)
        assert semantic_conditional_entropy(
            table2_joint, table3_partitions.v_partition, "v_given_u"
        ) == pytest.approx(1.4755, abs=TOL)

    def test_identity_conditional_reduces_to_classic(self, table2_joint):
        f_id = SynonymousPartition.identity(4)
        assert semantic_conditional_entropy(table2_joint, f_id, "u_given_v") == pytest.approx(
            conditional_entropy(table2_joint, "u_given_v"), abs=1e-12
        )

    def test_bad_direction(self, table2_joint):
        with pytest.raises(ValueError):
            semantic_conditional_entropy(
                table2_joint, SynonymousPartition.identity(4), "sideways"
            )


class TestMutualInformationCompanions:
    def test_classic(self, table2_joint):
        assert mutual_information(table2_joint) == pytest.approx(0.6332, abs=TOL)

    def test_up(self, table2_joint, table3_partitions):
        assert up_smi(table2_joint, table3_partitions) == pytest.approx(1.5087, abs=TOL)

    def test_down_raw_and_clamped(self, table2_joint, table3_partitions):
        assert down_smi(table2_joint, table3_partitions) == pytest.approx(-0.6422, abs=TOL)
        assert down_smi(table2_joint, table3_partitions, clamp=True) == 0.0

    def test_full(self, table2_joint, table3_partitions):
        # sum of the separately verified component entropies
        assert full_smi(table2_joint, table3_partitions) == pytest.approx(
            0.971 + 1.971 - 2.7087, abs=TOL
        )

    def test_identity_partitions_reduce_to_classic(self, table2_joint):
        fj = JointSynonymousPartition.identity(4, 5)
        i = mutual_information(table2_joint)
        assert up_smi(table2_joint, fj) == pytest.approx(i, abs=1e-12)
        assert down_smi(table2_joint, fj) == pytest.approx(i, abs=1e-12)
        assert full_smi(table2_joint, fj) == pytest.approx(i, abs=1e-12)

    def test_independent_joint_with_identity_blocks_gives_zero(self):
        j = JointDistribution(np.outer([0.6, 0.4], [0.3, 0.7]))
        fj = JointSynonymousPartition.identity(2, 2)
        assert up_smi(j, fj) == pytest.approx(0.0, abs=1e-12)

    def test_product_semantic_blocks_give_zero_full_smi(self):
        # block masses factor, so the full companion vanishes
        j = JointDistribution(np.outer([0.25, 0.25, 0.3, 0.2], [0.5, 0.1, 0.4]))
        fj = JointSynonymousPartition(
            SynonymousPartition(((0, 1), (2, 3)), 4), SynonymousPartition(((0,), (1, 2)), 3)
        )
        assert full_smi(j, fj) == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# relative entropies vs a direct-summation oracle
# ---------------------------------------------------------------------------

def oracle_relative_entropy(p, q, blocks, mode):
    """Direct per-symbol summation of the defining formulas."""
    total = 0.0
    for block in blocks:
        ps = sum(p[i] for i in block)
        qs = sum(q[i] for i in block)
        for i in block:
            if p[i] == 0:
                continue
            if mode == "full":
                total += p[i] * math.log2(ps / qs)
            elif mode == "semantic_vs_syntactic":
                total += p[i] * math.log2(ps / q[i])
            else:
                total += p[i] * math.log2(p[i] / qs)
    return total


class TestSemanticRelativeEntropy:
    P = [0.5, 0.25, 0.25]
    Q = [0.25, 0.25, 0.5]
    BLOCKS = ((0, 1), (2,))

    @pytest.fixture()
    def setup(self):
        p = validate_distribution(self.P)
        q = validate_distribution(self.Q)
        f = validate_partition(self.BLOCKS, 3)
        return p, q, f

    @pytest.mark.parametrize("mode", ["full", "semantic_vs_syntactic", "syntactic_vs_semantic"])
    def test_against_oracle(self, setup, mode):
        p, q, f = setup
        expected = oracle_relative_entropy(self.P, self.Q, self.BLOCKS, mode)
        assert semantic_relative_entropy(p, q, f, mode) == pytest.approx(expected, abs=1e-12)

    def test_oracle_frozen_values(self, setup):
        p, q, f = setup
        assert semantic_relative_entropy(p, q, f, "full") == pytest.approx(
            0.188721875540867, abs=1e-12
        )
        assert semantic_relative_entropy(p, q, f, "semantic_vs_syntactic") == pytest.approx(
            0.938721875540867, abs=1e-12
        )
        assert semantic_relative_entropy(p, q, f, "syntactic_vs_semantic") == pytest.approx(
            -0.5, abs=1e-12
        )

    def test_corollary_orderings(self, setup):
        p, q, f = setup
        d_low = semantic_relative_entropy(p, q, f, "syntactic_vs_semantic")
        d_full = semantic_relative_entropy(p, q, f, "full")
        d_high = semantic_relative_entropy(p, q, f, "semantic_vs_syntactic")
        d_classic = sum(pi * math.log2(pi / qi) for pi, qi in zip(self.P, self.Q))
        assert d_low <= d_full <= d_high
        assert d_low <= d_classic <= d_high

    def test_equal_distributions_full_is_zero(self):
        p = validate_distribution([0.4, 0.6])
        f = validate_partition([[0], [1]], 2)
        assert semantic_relative_entropy(p, p, f, "full") == 0.0

    def test_merged_masses_cancel(self):
        p = validate_distribution([0.6, 0.4])
        q = validate_distribution([0.4, 0.6])
        f = SynonymousPartition.single_block(2)
        assert semantic_relative_entropy(p, q, f, "full") == pytest.approx(0.0, abs=1e-12)

    def test_support_mismatch(self):
        p = validate_distribution([0.5, 0.5, 0.0])
        q = validate_distribution([0.5, 0.0, 0.5])
        f = validate_partition([[0], [1], [2]], 3)
        with pytest.raises(SupportMismatch):
            semantic_relative_entropy(p, q, f, "full")
        # merging symbol 1 with 2 gives q mass on every block that p touches
        f2 = validate_partition([[0], [1, 2]], 3)
        assert math.isfinite(semantic_relative_entropy(p, q, f2, "full"))

    def test_bad_mode(self, setup):
        p, q, f = setup
        with pytest.raises(ValueError):
            semantic_relative_entropy(p, q, f, "sideways")
