import numpy as np
import pytest

TEST_KEY = bytes(range(128))
TEST_NONCE = bytes(range(32))


@pytest.fixture
def key():
    return TEST_KEY


@pytest.fixture
def nonce():
    return TEST_NONCE


@pytest.fixture
def rng():
    return np.random.default_rng(0xF406)


def random_state(rng):
    """A uniformly random 16-word state array."""
    return np.frombuffer(rng.bytes(128), dtype="<u8").astype(np.uint64)


def hamming(a: bytes, b: bytes) -> int:
    return sum(bin(x ^ y).count("1") for x, y in zip(a, b))
