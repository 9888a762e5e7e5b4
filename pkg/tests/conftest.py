import json
from pathlib import Path

import numpy as np
import pytest

from sebits.core import (
    Distribution,
    JointDistribution,
    JointSynonymousPartition,
    SynonymousPartition,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str) -> dict:
    with open(FIXTURES / name) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def table1_dist() -> Distribution:
    return Distribution(np.asarray(load_fixture("tableI_dist.json")["probs"]))


@pytest.fixture(scope="session")
def table1_partition(table1_dist) -> SynonymousPartition:
    blocks = load_fixture("tableI_partition.json")["blocks"]
    return SynonymousPartition(tuple(tuple(b) for b in blocks), table1_dist.alphabet_size)


@pytest.fixture(scope="session")
def table2_joint() -> JointDistribution:
    return JointDistribution(np.asarray(load_fixture("tableII_joint.json")["matrix"]))


@pytest.fixture(scope="session")
def table3_partitions(table2_joint) -> JointSynonymousPartition:
    nu, nv = table2_joint.shape
    fu = SynonymousPartition(
        tuple(tuple(b) for b in load_fixture("tableIII_u_partition.json")["blocks"]), nu
    )
    fv = SynonymousPartition(
        tuple(tuple(b) for b in load_fixture("tableIII_v_partition.json")["blocks"]), nv
    )
    return JointSynonymousPartition(fu, fv)


@pytest.fixture(scope="session")
def huffman_dist() -> Distribution:
    return Distribution(np.asarray(load_fixture("tableVI_dist.json")["probs"]))


@pytest.fixture(scope="session")
def huffman_partition(huffman_dist) -> SynonymousPartition:
    blocks = load_fixture("tableVII_partition.json")["blocks"]
    return SynonymousPartition(tuple(tuple(b) for b in blocks), huffman_dist.alphabet_size)


@pytest.fixture(scope="session")
def hamming_codebook():
    from sebits.chancode import build_grouped_codebook

    obj = load_fixture("tableVIII_codebook.json")
    return build_grouped_codebook(obj["codewords"], obj["groups"])


def random_distribution(rng: np.random.Generator, n: int) -> Distribution:
    p = rng.dirichlet(np.ones(n))
    return Distribution(p)


def random_partition(rng: np.random.Generator, n: int) -> SynonymousPartition:
    labels = rng.integers(0, n, size=n)
    # relabel to a dense 0..k-1 range in order of first appearance
    order: dict[int, int] = {}
    for lab in labels:
        if int(lab) not in order:
            order[int(lab)] = len(order)
    dense = [order[int(lab)] for lab in labels]
    blocks: list[list[int]] = [[] for _ in range(len(order))]
    for idx, lab in enumerate(dense):
        blocks[lab].append(idx)
    return SynonymousPartition(tuple(tuple(b) for b in blocks), n)


def random_joint(rng: np.random.Generator, nu: int, nv: int) -> JointDistribution:
    m = rng.dirichlet(np.ones(nu * nv)).reshape(nu, nv)
    return JointDistribution(m)
