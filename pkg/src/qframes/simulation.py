"""Noisy transmission of frame coefficients.

A sender transmits the frame coefficients of ``f``; the receiver gets them
perturbed and synthesizes ``f_hat = sum_k (coeff_k + c_k) f_k = f + sum_k c_k f_k``.
Noise components that lie in the kernel of synthesis cancel. The same noise
draws are pushed through an orthonormal basis of H^n for comparison, where
``||f_hat - f||^2 = sum_k |c_k|^2`` exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import frames as fr
from . import qlinalg as ql
from .errors import InvalidNoiseSpec
from .frames import Frame

U64_MAX = 2 ** 64 - 1


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian noise on every real component of every coefficient, plus erasures.

    ``erasures`` are 0-based coefficient indices whose received value is lost
    (set to zero).
    """

    sigma: float
    seed: int
    trials: int
    erasures: tuple[int, ...] = ()

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise InvalidNoiseSpec(f"sigma must be finite and >= 0, got {self.sigma}")
        if not 0 <= self.seed <= U64_MAX:
            raise InvalidNoiseSpec(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.trials < 1:
            raise InvalidNoiseSpec(f"trials must be positive, got {self.trials}")
        if len(set(self.erasures)) != len(self.erasures):
            raise InvalidNoiseSpec(f"duplicate erasure indices {self.erasures}")
        if any(k < 0 for k in self.erasures):
            raise InvalidNoiseSpec(f"negative erasure index in {self.erasures}")
        object.__setattr__(self, "erasures", tuple(sorted(self.erasures)))

    def check(self, m: int) -> None:
        if any(k >= m for k in self.erasures):
            raise InvalidNoiseSpec(f"erasure index out of range for {m} coefficients: {self.erasures}")


def standard_normals(seed: int, trial: int, m: int) -> np.ndarray:
    """``(m, 4)`` standard normals; entry ``(k, c)`` depends only on ``(seed, trial, k, c)``.

    Philox is keyed by ``seed`` and its counter starts at ``trial`` in the top
    64-bit word, so trials never share counter blocks. Each entry consumes
    exactly two uniforms at a fixed stream position (Box-Muller), which keeps
    entry values independent of ``m`` and of evaluation order.
    """
    bitgen = np.random.Philox(key=seed, counter=trial << 192)
    u = np.random.Generator(bitgen).random((m, 4, 2))
    return np.sqrt(-2.0 * np.log1p(-u[..., 0])) * np.cos(2.0 * np.pi * u[..., 1])


def transmit(frame: Frame, coeffs, noise, erasures=()) -> tuple[np.ndarray, np.ndarray]:
    """Receive ``coeffs + noise`` with ``erasures`` zeroed; return ``(f_hat, effective noise)``."""
    coeffs = np.asarray(coeffs, dtype=float)
    received = coeffs + np.asarray(noise, dtype=float)
    if erasures:
        received[list(erasures)] = 0.0
    return fr.synthesis(frame, received), received - coeffs


@dataclass(frozen=True)
class TrialResult:
    trial: int
    error: float
    noise_l1: float
    noise_l2sq: float
    baseline_error: float
    baseline_noise_l2sq: float


@dataclass(frozen=True)
class SimReport:
    sigma: float
    seed: int
    erasures: tuple[int, ...]
    m: int
    n: int
    trials: tuple[TrialResult, ...]
    mean_error: float
    max_error: float
    mean_noise_l1: float
    mean_noise_l2sq: float
    baseline_mean_error: float
    baseline_max_error: float
    baseline_mean_noise_l2sq: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["erasures"] = list(self.erasures)
        d["trials"] = [asdict(t) for t in self.trials]
        return d


def _l1(c) -> float:
    return math.fsum(np.sqrt(np.sum(c * c, axis=-1)))


def _l2sq(c) -> float:
    return math.fsum(np.sum(c * c, axis=-1))


def simulate(frame: Frame, f, spec: NoiseSpec, workers: int = 1) -> SimReport:
    """Run ``spec.trials`` noisy transmissions of ``f`` through ``frame`` and an ONB baseline.

    Results do not depend on ``workers``: each trial's noise is keyed by
    ``(seed, trial)`` and aggregates are exactly rounded sums.
    """
    f = np.asarray(f, dtype=float)
    spec.check(frame.m)
    coeffs, _ = fr.frame_decomposition(frame, f)
    onb = fr.Frame(ql.gram_schmidt(frame.vectors))
    base_coeffs = fr.analysis(onb, f)
    base_erasures = tuple(k for k in spec.erasures if k < onb.m)

    def run(trial: int) -> TrialResult:
        z = spec.sigma * standard_normals(spec.seed, trial, frame.m)
        f_hat, c = transmit(frame, coeffs, z, spec.erasures)
        g_hat, cb = transmit(onb, base_coeffs, z[: onb.m], base_erasures)
        return TrialResult(
            trial=trial,
            error=ql.vnorm(f_hat - f),
            noise_l1=_l1(c),
            noise_l2sq=_l2sq(c),
            baseline_error=ql.vnorm(g_hat - f),
            baseline_noise_l2sq=_l2sq(cb),
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = tuple(pool.map(run, range(spec.trials)))
    else:
        results = tuple(run(t) for t in range(spec.trials))

    def mean(vals):
        return math.fsum(vals) / len(vals)

    return SimReport(
        sigma=spec.sigma,
        seed=spec.seed,
        erasures=spec.erasures,
        m=frame.m,
        n=frame.n,
        trials=results,
        mean_error=mean([r.error for r in results]),
        max_error=max(r.error for r in results),
        mean_noise_l1=mean([r.noise_l1 for r in results]),
        mean_noise_l2sq=mean([r.noise_l2sq for r in results]),
        baseline_mean_error=mean([r.baseline_error for r in results]),
        baseline_max_error=max(r.baseline_error for r in results),
        baseline_mean_noise_l2sq=mean([r.baseline_noise_l2sq for r in results]),
    )
