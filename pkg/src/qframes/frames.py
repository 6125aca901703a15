"""Finite frames for H^n: operators, optimal bounds, duals, decomposition, projection."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg as sla

from . import qlinalg as ql
from .errors import DimensionMismatch, EmptySpan, NotABasis, NotAFrame, ValidationError

log = logging.getLogger(__name__)

# lambda_min <= SPAN_TOL * lambda_max means the family does not span
SPAN_TOL = 1e-10
TIGHT_SPECTRUM_TOL = 1e-9
TIGHT_FROBENIUS_TOL = 1e-8
BIORTHOGONAL_TOL = 1e-9


class Frame:
    """An ordered family of ``m`` vectors in H^n.

    The frame operator matrix and its spectrum are computed once, at
    construction; instances are read-only afterwards. A family that does not
    span H^n is still a valid ``Frame`` object (it is a frame for its own span),
    but operations that need invertibility raise :class:`NotAFrame`.
    """

    def __init__(self, vectors):
        v = np.array(vectors, dtype=float)
        if v.ndim != 3 or v.shape[-1] != 4:
            raise ValidationError(f"expected (m, n, 4) frame vectors, got shape {v.shape}")
        if v.shape[0] < 1 or v.shape[1] < 1:
            raise ValidationError("a frame needs at least one vector of positive dimension")
        if not np.all(np.isfinite(v)):
            raise ValidationError("frame vectors contain non-finite entries")
        if not np.any(v):
            raise ValidationError("all frame vectors are zero")
        v.setflags(write=False)
        self._vectors = v
        s = ql.matmul(ql.dagger(v), v)
        s = 0.5 * (s + ql.dagger(s))
        s.setflags(write=False)
        self._s = s
        spec = np.clip(ql.hermitian_eigenvalues(s), 0.0, None)
        spec.setflags(write=False)
        self._spectrum = spec

    @classmethod
    def from_rows(cls, rows) -> "Frame":
        return cls(np.stack([ql.qvector(r) for r in rows]))

    @property
    def vectors(self) -> np.ndarray:
        """The frame vectors, one per row: the ``m x n`` synthesis matrix."""
        return self._vectors

    frame_matrix = vectors

    @property
    def s_matrix(self) -> np.ndarray:
        return self._s

    @property
    def spectrum(self) -> np.ndarray:
        return self._spectrum

    @property
    def m(self) -> int:
        return self._vectors.shape[0]

    @property
    def n(self) -> int:
        return self._vectors.shape[1]

    @property
    def redundancy(self) -> float:
        return self.m / self.n

    def __len__(self):
        return self.m

    def __repr__(self):
        return f"Frame(m={self.m}, n={self.n})"


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    tight: bool
    tight_constant: Optional[float]
    # sum of squared vector norms, always a valid (usually loose) upper bound
    schwartz_upper: float


@dataclass(frozen=True)
class DualFrame:
    vectors: np.ndarray

    def to_frame(self) -> Frame:
        return Frame(self.vectors)


def standard_basis(n: int) -> Frame:
    return Frame(ql.identity(n))


def mercedes() -> Frame:
    """Three unit vectors in H^2 at 120 degree spacing (real entries); tight with bound 3/2."""
    r = math.sqrt(3.0) / 2.0
    return Frame.from_rows([[1.0, 0.0], [-0.5, r], [-0.5, -r]])


def _check_coefficients(frame: Frame, c) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.shape[-2:] != (frame.m, 4):
        raise DimensionMismatch(f"expected {frame.m} coefficients, got shape {c.shape}")
    return c


def _check_signal(frame: Frame, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape[-2:] != (frame.n, 4):
        raise DimensionMismatch(f"expected a vector in H^{frame.n}, got shape {f.shape}")
    return f


def synthesis(frame: Frame, c) -> np.ndarray:
    """``sum_k c_k f_k`` with the coefficients on the left."""
    c = _check_coefficients(frame, c)
    return ql.vecmat(c, frame.vectors)


def analysis(frame: Frame, f) -> np.ndarray:
    """``{<f|f_k>}_k`` as an ``(m, 4)`` coefficient array."""
    f = _check_signal(frame, f)
    return ql.inner(f[..., None, :, :], frame.vectors)


def frame_operator(frame: Frame) -> np.ndarray:
    """Matrix of ``S f = sum_k <f|f_k> f_k`` acting on rows: ``S f = f @ Mat(S)``."""
    return frame.s_matrix


def apply_frame_operator(frame: Frame, f) -> np.ndarray:
    """``S f`` evaluated term by term from the definition (no cached matrix)."""
    return synthesis(frame, analysis(frame, f))


def is_frame(frame: Frame) -> bool:
    """True iff the vectors left-span H^n.

    Decided by Gram-Schmidt rank; the spectral test
    ``lambda_min > SPAN_TOL * lambda_max`` is computed alongside and a
    disagreement is logged.
    """
    by_rank = ql.rank(frame.vectors) == frame.n
    by_spectrum = bool(frame.spectrum[0] > SPAN_TOL * frame.spectrum[-1])
    if by_rank != by_spectrum:
        log.warning("rank test (%s) and spectral test (%s) disagree for %r",
                    by_rank, by_spectrum, frame)
    return by_rank


def _require_frame(frame: Frame) -> None:
    if frame.spectrum[0] <= SPAN_TOL * frame.spectrum[-1]:
        raise NotAFrame(
            f"vectors do not span H^{frame.n}: lambda_min={frame.spectrum[0]:.3e}"
        )


def schwartz_bound(frame: Frame) -> float:
    return float(np.sum(frame.vectors ** 2))


def is_tight(frame: Frame) -> Optional[float]:
    """The tight bound ``A`` when ``S = A I`` numerically, else ``None``."""
    lo, hi = float(frame.spectrum[0]), float(frame.spectrum[-1])
    if hi <= 0.0 or hi - lo > TIGHT_SPECTRUM_TOL * hi:
        return None
    a = float(np.mean(frame.spectrum))
    dev = ql.frobenius(frame.s_matrix - a * ql.identity(frame.n))
    if dev > TIGHT_FROBENIUS_TOL * a * math.sqrt(frame.n):
        return None
    return a


def frame_bounds(frame: Frame) -> FrameBounds:
    """Optimal bounds ``A = lambda_min(S)``, ``B = lambda_max(S)``."""
    _require_frame(frame)
    tight = is_tight(frame)
    return FrameBounds(
        lower=float(frame.spectrum[0]),
        upper=float(frame.spectrum[-1]),
        tight=tight is not None,
        tight_constant=tight,
        schwartz_upper=schwartz_bound(frame),
    )


def canonical_dual(frame: Frame) -> DualFrame:
    """``g_k = S^{-1} f_k``."""
    _require_frame(frame)
    g = ql.solve(frame.s_matrix, frame.vectors)
    g.setflags(write=False)
    return DualFrame(g)


def frame_decomposition(frame: Frame, f) -> tuple[np.ndarray, np.ndarray]:
    """Frame coefficients ``<f|S^{-1} f_k>`` and the reconstruction ``sum_k coeff_k f_k``."""
    f = _check_signal(frame, f)
    dual = canonical_dual(frame)
    coeffs = ql.inner(f[..., None, :, :], dual.vectors)
    return coeffs, synthesis(frame, coeffs)


def dual_expansion(frame: Frame, f) -> np.ndarray:
    """The second form of the decomposition, ``sum_k <f|f_k> S^{-1} f_k``."""
    dual = canonical_dual(frame)
    return ql.vecmat(analysis(frame, f), dual.vectors)


def biorthogonal_check(frame: Frame) -> np.ndarray:
    """Matrix ``<f_j|g_k>`` for a basis and its dual; equals the identity."""
    if frame.m != frame.n:
        raise NotABasis(f"{frame.m} vectors cannot form a basis of H^{frame.n}")
    if ql.rank(frame.vectors) < frame.n:
        raise NotABasis("vectors are linearly dependent")
    g = canonical_dual(frame).vectors
    return ql.inner(frame.vectors[:, None, :, :], g[None, :, :, :])


def project_onto_span(vs, f) -> np.ndarray:
    """Orthogonal projection of ``f`` onto ``W = leftspan(vs)``.

    Works inside W: an orthonormal basis of W gives coordinates for the
    ``f_k``; the frame operator of those coordinates is inverted in W and
    ``Pf = sum_k <f|S_W^{-1} f_k> f_k``.
    """
    vs = np.asarray(vs, dtype=float)
    f = np.asarray(f, dtype=float)
    if vs.ndim != 3 or f.shape != vs.shape[1:]:
        raise DimensionMismatch(f"cannot project shape {f.shape} onto vectors of shape {vs.shape}")
    basis = ql.gram_schmidt(vs)
    if len(basis) == 0:
        raise EmptySpan("all spanning vectors are numerically zero")
    # f_k = sum_j <f_k|e_j> e_j
    coords = ql.inner(vs[:, None, :, :], basis[None, :, :, :])
    s_w = ql.matmul(ql.dagger(coords), coords)
    s_w = 0.5 * (s_w + ql.dagger(s_w))
    dual_coords = ql.solve(s_w, coords)
    # <f|w> for w = sum_j a_j e_j equals <y|a> with y_j = <f|e_j>
    y = ql.inner(f[None, :, :], basis)
    alpha = ql.inner(y[None, :, :], dual_coords)
    return ql.vecmat(alpha, vs)


def synthesis_real(frame: Frame) -> np.ndarray:
    """Real ``4n x 4m`` matrix of the synthesis map on flattened coefficients."""
    return ql.right_action_matrix(frame.vectors)


class AffineProjector:
    """Orthogonal projection (in R^{4m}) onto ``{c : A c = b}`` for a full-row-rank ``A``.

    ``A A^T`` is Cholesky-factored once; each call costs two triangular solves.
    """

    def __init__(self, a: np.ndarray):
        self.a = a
        self._chol = sla.cho_factor(a @ a.T)

    def pseudo_solve(self, r: np.ndarray) -> np.ndarray:
        """Minimum-norm ``x`` with ``A x = r``."""
        return self.a.T @ sla.cho_solve(self._chol, r)

    def onto_kernel(self, c: np.ndarray) -> np.ndarray:
        return c - self.pseudo_solve(self.a @ c)

    def onto_affine(self, c: np.ndarray, b: np.ndarray) -> np.ndarray:
        return c - self.pseudo_solve(self.a @ c - b)


def project_to_null_space(frame: Frame, c) -> np.ndarray:
    """Component of ``c`` in the kernel of synthesis, so that ``synthesis(frame, h) = 0``."""
    _require_frame(frame)
    c = _check_coefficients(frame, c)
    proj = AffineProjector(synthesis_real(frame))
    return proj.onto_kernel(c.reshape(-1)).reshape(c.shape)

