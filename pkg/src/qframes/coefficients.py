"""Coefficient representations ``f = sum_k c_k f_k``: norms, the l2-optimal choice, l1 search."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import frames as fr
from .errors import InvalidP, NotARepresentation
from .frames import Frame
from .qlinalg import vnorm
from .quaternion import modulus

log = logging.getLogger(__name__)

REPRESENTATION_TOL = 1e-8


def lp_norm(c, p: float) -> float:
    """``(sum_k |c_k|^p)^(1/p)`` with ``|c_k|`` the quaternion modulus."""
    if not p >= 1:
        raise InvalidP(f"lp norm needs p >= 1, got {p}")
    mods = modulus(c).ravel()
    if math.isinf(p):
        return float(mods.max(initial=0.0))
    if p == 1:
        return math.fsum(mods)
    if p == 2:
        return math.sqrt(math.fsum(mods * mods))
    return math.fsum(mods ** p) ** (1.0 / p)


def canonical_coefficients(frame: Frame, f) -> np.ndarray:
    """Frame coefficients ``<f|S^{-1} f_k>``: the representation of least l2 norm."""
    coeffs, _ = fr.frame_decomposition(frame, f)
    return coeffs


def pythagoras_split(frame: Frame, f, c) -> tuple[float, float, float]:
    """``(sum|c_k|^2, sum|a_k|^2, sum|c_k - a_k|^2)`` with ``a`` the frame coefficients.

    The first entry equals the sum of the other two for every representation
    ``c`` of ``f``.
    """
    f = np.asarray(f, dtype=float)
    c = np.asarray(c, dtype=float)
    gap = vnorm(fr.synthesis(frame, c) - f)
    if gap > REPRESENTATION_TOL * (1.0 + vnorm(f)):
        raise NotARepresentation(f"coefficients synthesize to a vector {gap:.3e} away from f")
    a = canonical_coefficients(frame, f)
    return (
        math.fsum(np.sum(c * c, axis=-1)),
        math.fsum(np.sum(a * a, axis=-1)),
        math.fsum(np.sum((c - a) ** 2, axis=-1)),
    )


def shrink(v: np.ndarray, t: float) -> np.ndarray:
    """Group soft-thresholding ``max(1 - t/|v_k|, 0) v_k`` of each 4-block (rows of ``v``)."""
    norms = np.sqrt(np.sum(v * v, axis=-1, keepdims=True))
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(norms > t, 1.0 - t / norms, 0.0)
    return factor * v


@dataclass(frozen=True)
class SolverParams:
    rho: float = 1.0
    max_iter: int = 5000
    tol: float = 1e-8
    stall_tol: float = 1e-10
    # iterations of unchanged objective that count as a stall
    stall_window: int = 200
    # l1 norm above this multiple of the canonical objective counts as divergence
    divergence_factor: float = 10.0

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be positive, got {self.max_iter}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


@dataclass
class L1SolveReport:
    coefficients: np.ndarray
    objective: float
    iterations: int
    primal_residual: float
    dual_residual: float
    converged: bool
    canonical_objective: float = field(default=float("nan"))


def min_l1_coefficients(frame: Frame, f, params: SolverParams | None = None) -> L1SolveReport:
    """Representation of ``f`` minimising ``sum_k |d_k|``.

    ADMM on the flattened real coefficients ``x in R^{4m}``:
    ``x <- Pi(z - u)`` projects onto ``{synthesis(x) = f}``,
    ``z <- shrink(x + u, 1/rho)`` blockwise, ``u <- u + x - z``.
    Every ``x`` iterate is feasible, and the one with the smallest objective
    is returned. The minimiser need not be unique; only the objective is
    meaningful for comparisons.
    """
    params = params or SolverParams()
    f = np.asarray(f, dtype=float)
    c0 = canonical_coefficients(frame, f)
    canon_obj = lp_norm(c0, 1)
    m = frame.m
    proj = fr.AffineProjector(fr.synthesis_real(frame))
    b = f.reshape(-1)

    def objective(x):
        return float(np.sum(np.sqrt(np.sum(x.reshape(m, 4) ** 2, axis=1))))

    z = c0.reshape(-1).copy()
    u = np.zeros_like(z)
    best_x, best_obj = z.copy(), canon_obj
    thresh = 1.0 / params.rho
    tol = params.tol * (1.0 + math.sqrt(float(np.sum(c0 * c0))))
    prev_obj = canon_obj
    stalled = 0
    r_norm = s_norm = float("inf")
    converged = False
    it = 0
    for it in range(1, params.max_iter + 1):
        x = proj.onto_affine(z - u, b)
        z_old = z
        z = shrink((x + u).reshape(m, 4), thresh).reshape(-1)
        u = u + x - z
        r_norm = float(np.linalg.norm(x - z))
        s_norm = params.rho * float(np.linalg.norm(z - z_old))
        obj = objective(x)
        if obj < best_obj:
            best_x, best_obj = x.copy(), obj
        if obj > params.divergence_factor * max(canon_obj, 1e-300):
            log.warning("l1 iterate objective %.3e exceeds %g x canonical; stopping",
                        obj, params.divergence_factor)
            break
        if r_norm <= tol and s_norm <= tol:
            converged = True
            break
        if abs(obj - prev_obj) <= params.stall_tol * (1.0 + obj):
            stalled += 1
            if stalled >= params.stall_window:
                converged = True
                break
        else:
            stalled = 0
        prev_obj = obj
    if not converged:
        log.warning("l1 solve stopped after %d iterations (primal %.2e, dual %.2e)",
                    it, r_norm, s_norm)
    return L1SolveReport(
        coefficients=best_x.reshape(m, 4),
        objective=best_obj,
        iterations=it,
        primal_residual=r_norm,
        dual_residual=s_norm,
        converged=converged,
        canonical_objective=canon_obj,
    )
