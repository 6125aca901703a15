"""Reconstruction error of noisy frame coefficients versus an orthonormal basis.

For each redundancy m/n, draws a random frame of H^n, transmits the frame
coefficients of a random signal with Gaussian noise, and prints the mean
error next to the orthonormal-basis baseline fed the same noise draws.

With ``--normalize parseval`` (default) every frame is rescaled to S = I, so
synthesis is an orthogonal projection of the coefficient space and the share
of noise energy that cancels is about 1 - n/m. With ``unit`` the frame
vectors have norm 1 and the error grows with m instead.

    python scripts/transmission_experiment.py --n 4 --sigma 0.1 --trials 200
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from qframes import Frame, NoiseSpec, simulate
from qframes.qlinalg import embed_real, unembed_real, vecmat


@dataclass(frozen=True)
class Config:
    n: int = 4
    redundancies: tuple[int, ...] = (1, 2, 3, 4, 6, 8)
    sigma: float = 0.1
    trials: int = 200
    seed: int = 2018
    workers: int = 1
    erasures: tuple[int, ...] = field(default=())
    normalize: str = "parseval"


def parseval(vectors: np.ndarray) -> np.ndarray:
    """Rows ``f_k S^{-1/2}``, a frame whose operator is the identity."""
    frame = Frame(vectors)
    lam, v = np.linalg.eigh(embed_real(frame.s_matrix))
    root_inv = unembed_real((v / np.sqrt(lam)) @ v.T)
    return vecmat(vectors, root_inv)


def run(cfg: Config) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    f = rng.normal(size=(cfg.n, 4))
    rows = []
    for r in cfg.redundancies:
        m = r * cfg.n
        vectors = rng.normal(size=(m, cfg.n, 4))
        if cfg.normalize == "parseval":
            vectors = parseval(vectors)
        else:
            vectors /= np.sqrt(np.sum(vectors ** 2, axis=(1, 2), keepdims=True))
        frame = Frame(vectors)
        erasures = tuple(k for k in cfg.erasures if k < m)
        spec = NoiseSpec(sigma=cfg.sigma, seed=cfg.seed, trials=cfg.trials, erasures=erasures)
        rep = simulate(frame, f, spec, workers=cfg.workers)
        rows.append({
            "m": m,
            "redundancy": r,
            "frame_mean_error": rep.mean_error,
            "onb_mean_error": rep.baseline_mean_error,
            "ratio": rep.mean_error / rep.baseline_mean_error,
            "cancelled": 1 - np.mean([t.error ** 2 for t in rep.trials]) / rep.mean_noise_l2sq,
        })
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--sigma", type=float, default=Config.sigma)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--workers", type=int, default=Config.workers)
    p.add_argument("--erase", type=int, nargs="*", default=[])
    p.add_argument("--normalize", choices=["parseval", "unit"], default=Config.normalize)
    a = p.parse_args()
    cfg = Config(n=a.n, sigma=a.sigma, trials=a.trials, seed=a.seed, workers=a.workers,
                 erasures=tuple(a.erase), normalize=a.normalize)
    print(f"n = {cfg.n}, sigma = {cfg.sigma}, trials = {cfg.trials}, erasures = {list(cfg.erasures)}")
    print(f"{'m':>4} {'m/n':>4} {'frame err':>12} {'onb err':>12} {'ratio':>8} {'cancelled':>10}")
    for row in run(cfg):
        print(f"{row['m']:>4} {row['redundancy']:>4} {row['frame_mean_error']:>12.5f} "
              f"{row['onb_mean_error']:>12.5f} {row['ratio']:>8.3f} {row['cancelled']:>10.3f}")


if __name__ == "__main__":
    main()
