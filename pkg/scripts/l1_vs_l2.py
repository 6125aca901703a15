"""Minimal-l1 versus minimal-l2 coefficients on random frames.

Reports the l1 objective of both representations and how many coefficients
each leaves effectively nonzero. The l1 solution tends to be sparser; the
l2 (canonical) one spreads energy over every frame vector.

    python scripts/l1_vs_l2.py --n 3 --m 8 --instances 20
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qframes import Frame, SolverParams, canonical_coefficients, lp_norm, min_l1_coefficients


@dataclass(frozen=True)
class Config:
    n: int = 3
    m: int = 8
    instances: int = 20
    seed: int = 7
    rho: float = 1.0
    max_iter: int = 5000
    support_tol: float = 1e-6


def support(c: np.ndarray, tol: float) -> int:
    mods = np.sqrt(np.sum(c * c, axis=-1))
    return int(np.sum(mods > tol * mods.max()))


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    params = SolverParams(rho=cfg.rho, max_iter=cfg.max_iter)
    for k in range(cfg.instances):
        frame = Frame(rng.normal(size=(cfg.m, cfg.n, 4)))
        f = rng.normal(size=(cfg.n, 4))
        c2 = canonical_coefficients(frame, f)
        rep = min_l1_coefficients(frame, f, params)
        yield {
            "instance": k,
            "l1_of_l2": lp_norm(c2, 1),
            "l1_of_l1": rep.objective,
            "support_l2": support(c2, cfg.support_tol),
            "support_l1": support(rep.coefficients, cfg.support_tol),
            "iterations": rep.iterations,
            "converged": rep.converged,
        }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--m", type=int, default=Config.m)
    p.add_argument("--instances", type=int, default=Config.instances)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--rho", type=float, default=Config.rho)
    a = p.parse_args()
    cfg = Config(n=a.n, m=a.m, instances=a.instances, seed=a.seed, rho=a.rho)
    print(f"{'#':>3} {'l1(canon)':>10} {'l1(min)':>10} {'supp l2':>8} {'supp l1':>8} {'iters':>6}")
    gains = []
    for row in run(cfg):
        gains.append(1 - row["l1_of_l1"] / row["l1_of_l2"])
        flag = "" if row["converged"] else "  (not converged)"
        print(f"{row['instance']:>3} {row['l1_of_l2']:>10.5f} {row['l1_of_l1']:>10.5f} "
              f"{row['support_l2']:>8} {row['support_l1']:>8} {row['iterations']:>6}{flag}")
    print(f"mean relative l1 reduction: {np.mean(gains):.3%}")


if __name__ == "__main__":
    main()
