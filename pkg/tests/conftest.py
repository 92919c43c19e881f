import numpy as np
import pytest

from simpeval import _kernels
from simpeval.textcore import TokenSequence


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile once so individual test timings stay meaningful.
    _kernels.warmup()


def seq(*surfaces: str) -> TokenSequence:
    return TokenSequence.from_strings(surfaces)


def random_token_sequence(
    rng: np.random.Generator, length: int, alphabet: int
) -> TokenSequence:
    return TokenSequence.from_strings(
        [f"t{x}" for x in rng.integers(0, alphabet, length)]
    )
