"""Shared data and generators for the test suite."""

import math
from collections.abc import Callable, Iterator

import numpy as np

from bisym.core.sampler import TraceMode, draw_spectrum
from bisym.core.spectrum import Spectrum

EXAMPLE = (1.0, 0.3, 0.2, -0.7, -0.8)
A0 = math.sqrt((51 - 3 * math.sqrt(273)) / 200)
B0 = math.sqrt((59 + 3 * math.sqrt(273)) / 200)


def example_matrix() -> np.ndarray:
    """The worked example's realizing matrix, entered by hand."""
    g = math.sqrt(0.21)
    a, b = A0 / math.sqrt(2), B0 / math.sqrt(2)
    return np.array(
        [
            [0.0, g, a, 0.0, 0.4],
            [g, 0.0, b, 0.0, 0.0],
            [a, b, 0.0, b, a],
            [0.0, 0.0, b, 0.0, g],
            [0.4, 0.0, a, g, 0.0],
        ]
    )


def spectra(mode: TraceMode, seed: int) -> Iterator[Spectrum]:
    """Endless seeded stream of spectra with λ1 = 1."""
    rng = np.random.default_rng(seed)
    while True:
        yield draw_spectrum(rng, mode)


def take(mode: TraceMode, seed: int, count: int, keep: Callable[[Spectrum], bool] = lambda _: True) -> list[Spectrum]:
    """The first count spectra of the seeded stream satisfying keep."""
    kept: list[Spectrum] = []
    for s in spectra(mode, seed):
        if keep(s):
            kept.append(s)
            if len(kept) == count:
                return kept
    return kept
