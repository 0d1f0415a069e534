"""Seeded random density matrices for the Monte Carlo volume estimator.

The default ensemble draws eigenvalues uniformly from the probability
simplex and rotates them by a Haar-random unitary (the product measure
the volume bounds are stated for). Hilbert-Schmidt and Haar-pure-state
ensembles are included as comparison baselines.

Reproducibility contract: every generator derives from a
``(seed, stream)`` pair through :func:`rng_from_spec`; equal pairs give
bit-identical sample sequences regardless of scheduling or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .tensor import DensityMatrix, DimensionSpec, as_dims

RNG_NAME = "PCG64"


class Measure(str, Enum):
    NATURAL = "natural"  # uniform simplex eigenvalues x Haar eigenvectors
    HILBERT_SCHMIDT = "hs"
    PURE_HAAR = "pure"


@dataclass(frozen=True)
class SeedSpec:
    """Root seed plus a stream index; each stream is an independent,
    reproducible substream of the same experiment."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if self.seed < 0 or self.stream < 0:
            raise ValueError("seed and stream must be non-negative integers")


def rng_from_spec(spec: SeedSpec) -> np.random.Generator:
    """PCG64 generator for one (seed, stream) pair; streams derived via
    SeedSequence spawn keys are statistically independent."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=spec.seed, spawn_key=(spec.stream,)))
    )


def sample_simplex(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the probability simplex (flat Dirichlet), via
    normalized exponentials."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    w = rng.standard_exponential(n)
    return w / w.sum()


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary: QR of a complex Gaussian matrix with
    the R-diagonal phases folded into Q."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def sample_state(
    dims: DimensionSpec | Iterable[int],
    measure: Measure | str,
    rng: np.random.Generator,
) -> DensityMatrix:
    """Draw one random density matrix from the requested ensemble."""
    spec = as_dims(dims)
    measure = Measure(measure)
    n = spec.total
    if measure is Measure.NATURAL:
        lam = sample_simplex(n, rng)
        u = haar_unitary(n, rng)
        matrix = (u * lam) @ u.conj().T
    elif measure is Measure.HILBERT_SCHMIDT:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        matrix = g @ g.conj().T
        matrix /= np.trace(matrix).real
    else:  # Measure.PURE_HAAR
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        matrix = np.outer(v, v.conj())
    return DensityMatrix(spec, np.ascontiguousarray(matrix))
