from fractions import Fraction
from pathlib import Path

import pytest

from genlogic import Dataset, ModelDistribution, Signature, World, enumerate_worlds
from genlogic.mnist import load_image_set, locate_idx_files
from genlogic.synthdata import ensure_synthetic_idx


@pytest.fixture(scope="session")
def rain_sig() -> Signature:
    return Signature(propositions=("rain", "wet"))


@pytest.fixture(scope="session")
def rain_worlds(rain_sig):
    return enumerate_worlds(rain_sig)


@pytest.fixture(scope="session")
def rain_data(rain_worlds) -> Dataset:
    # 10 observations: 4x neither, 2x wet only, 1x rain only, 3x both.
    return Dataset.weighted(zip(rain_worlds, (4, 2, 1, 3)))


@pytest.fixture(scope="session")
def fig_dist(rain_sig, rain_worlds) -> ModelDistribution:
    w = (Fraction(2, 5), Fraction(1, 5), Fraction(1, 10), Fraction(3, 10))
    return ModelDistribution(tuple(rain_worlds), w)


@pytest.fixture(scope="session")
def gap_dist(rain_worlds) -> ModelDistribution:
    # one impossible world: wet-only carries no mass
    w = (Fraction(3, 5), Fraction(0), Fraction(1, 10), Fraction(3, 10))
    return ModelDistribution(tuple(rain_worlds), w)


@pytest.fixture(scope="session")
def drizzle_dist(rain_worlds) -> ModelDistribution:
    # only the two rainless worlds are possible
    w = (Fraction(9, 10), Fraction(1, 10), Fraction(0), Fraction(0))
    return ModelDistribution(tuple(rain_worlds), w)


@pytest.fixture(scope="session")
def blames_sig() -> Signature:
    return Signature(predicates=(("blames", 2),), constants=("a", "b"))


@pytest.fixture(scope="session")
def blames_data(blames_sig) -> Dataset:
    # atoms: blames(a,a), blames(a,b), blames(b,a), blames(b,b)
    rows = ((0b1001, 2), (0b0111, 3), (0b1010, 4))
    return Dataset.weighted((World(blames_sig, bits), c) for bits, c in rows)


@pytest.fixture(scope="session")
def bird_sig() -> Signature:
    return Signature(propositions=("bird", "fly"))


@pytest.fixture(scope="session")
def bird_data(bird_sig) -> Dataset:
    ws = enumerate_worlds(bird_sig)
    return Dataset.weighted(((ws[0], 5), (ws[1], 2), (ws[3], 3)))


@pytest.fixture(scope="session")
def mnist_dir(tmp_path_factory) -> Path:
    """Directory holding a full-size synthetic idx quartet."""
    root = tmp_path_factory.mktemp("idx")
    ensure_synthetic_idx(root, n_train=60000, n_test=10000, seed=0)
    return root


@pytest.fixture(scope="session")
def mnist_split(mnist_dir):
    """Synthetic train/test image sets reloaded from idx files."""
    found = locate_idx_files(mnist_dir)
    train = load_image_set(found["train_images"], found["train_labels"])
    test = load_image_set(found["test_images"], found["test_labels"])
    return train, test
