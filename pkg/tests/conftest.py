"""Shared fixtures: the bundled walkthrough instance and a tiny random corpus."""

from pathlib import Path

import pytest

from src.models import GenParams
from src.network.io import load_instance
from src.scenarios import gen_instance

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "src" / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

CORPUS_SEEDS = range(200)
# (slices, SFCs per slice, NFs per SFC); up to six NFs in total
CORPUS_SHAPES = [
    (1, 1, 2), (1, 1, 3), (1, 2, 2), (2, 1, 2), (1, 1, 4), (1, 1, 5),
    (1, 2, 3), (2, 1, 3), (3, 1, 2), (1, 3, 2), (2, 3, 1), (1, 1, 6),
]


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture
def walkthrough():
    """Eight hosts, two connectors; S1 (video) and S2 (monitoring)."""
    return load_instance(DATA_DIR / "walkthrough_instance.json")


def tiny_params(seed: int, n_hosts: int = 4) -> GenParams:
    # Demands and link capacities overlap so the corpus mixes feasible and infeasible draws
    return GenParams(
        n_hosts=n_hosts,
        connectivity=0.6,
        resource_kinds=("cpu", "ram"),
        host_capacity=(100, 200),
        link_bandwidth=(20, 60),
        link_latency=(1, 10),
        demand=(20, 60),
        seed=seed,
    )


def tiny_corpus():
    for seed in CORPUS_SEEDS:
        slices, sfcs, nfs = CORPUS_SHAPES[(seed // 4) % len(CORPUS_SHAPES)]
        yield seed, gen_instance(tiny_params(seed, n_hosts=2 + seed % 4), slices, sfcs, nfs)


@pytest.fixture(scope="session")
def corpus():
    """(seed, (graph, requests)) pairs small enough for exhaustive enumeration."""
    return list(tiny_corpus())
