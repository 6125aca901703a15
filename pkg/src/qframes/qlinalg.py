"""Linear algebra on the left quaternion Hilbert space H^n.

Vectors are float arrays of shape ``(n, 4)`` and matrices ``(m, n, 4)``; the
trailing axis holds ``(w, x, y, z)``. Vectors are rows, so a left-linear
operator with matrix ``M`` acts as ``f -> f @ M`` (see :func:`matmul`). Left
scalar multiplication then commutes with every operator.

Inner product: ``<f|g> = sum_k f_k conj(g_k)``, left-linear in the first slot.
Solves and eigenvalues go through the 4x4 real block embedding.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import linalg as sla

from .errors import (
    DimensionMismatch,
    MultiplicityViolation,
    NoConvergence,
    NonFiniteError,
    NotHermitian,
    SingularMatrix,
)
from .quaternion import Quaternion, as_array, conj_array, hamilton

log = logging.getLogger(__name__)

GS_DROP_TOL = 1e-10
PIVOT_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-10


def _check_finite(a: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise NonFiniteError(f"{what} contains non-finite entries")
    return a


def qvector(entries) -> np.ndarray:
    """Build a ``(n, 4)`` vector from Quaternions, reals, or 4-sequences."""
    if isinstance(entries, np.ndarray) and entries.ndim == 2 and entries.shape[1] == 4:
        v = entries.astype(float, copy=True)
    else:
        v = np.array([as_array(e) for e in entries], dtype=float).reshape(-1, 4)
    if len(v) == 0:
        raise DimensionMismatch("a quaternion vector needs at least one entry")
    return _check_finite(v, "vector")


def qmatrix(rows) -> np.ndarray:
    """Build a ``(m, n, 4)`` matrix from nested rows of quaternion entries."""
    if isinstance(rows, np.ndarray) and rows.ndim == 3 and rows.shape[2] == 4:
        return _check_finite(rows.astype(float, copy=True), "matrix")
    vs = [qvector(r) for r in rows]
    if len({len(v) for v in vs}) != 1:
        raise DimensionMismatch("matrix rows have different lengths")
    return _check_finite(np.stack(vs), "matrix")


def basis_vector(n: int, k: int, q=1.0) -> np.ndarray:
    """``q * e_k`` in H^n (0-based k)."""
    v = np.zeros((n, 4))
    v[k] = as_array(q)
    return v


def identity(n: int) -> np.ndarray:
    m = np.zeros((n, n, 4))
    m[np.arange(n), np.arange(n), 0] = 1.0
    return m


def diag(values) -> np.ndarray:
    vals = [as_array(v) for v in values]
    m = np.zeros((len(vals), len(vals), 4))
    for i, v in enumerate(vals):
        m[i, i] = v
    return m


def inner(f, g) -> np.ndarray:
    """``<f|g> = sum_k f_k conj(g_k)``; broadcasts over leading axes.

    Returns the quaternion as a ``(..., 4)`` array.
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape[-2] != g.shape[-2]:
        raise DimensionMismatch(f"vector lengths differ: {f.shape[-2]} vs {g.shape[-2]}")
    return hamilton(f, conj_array(g)).sum(axis=-2)


def vnorm(f) -> np.ndarray | float:
    """``sqrt(Re<f|f>)``; broadcasts over leading axes."""
    f = np.asarray(f, dtype=float)
    out = np.sqrt(np.sum(f * f, axis=(-2, -1)))
    return float(out) if out.ndim == 0 else out


def left_scale(q, f) -> np.ndarray:
    """Entrywise ``q f_k``. ``q`` may be a Quaternion or a ``(..., 4)`` array."""
    qa = q.to_array() if isinstance(q, Quaternion) else np.asarray(q, dtype=float)
    f = np.asarray(f, dtype=float)
    return hamilton(qa[..., None, :], f)


def gram_schmidt(vs, drop_tol: float = GS_DROP_TOL) -> np.ndarray:
    """Orthonormal basis of the left span of ``vs`` as a ``(rank, n, 4)`` array.

    Each projection step removes ``<v|e_j> e_j``. Every vector is
    orthogonalised twice against the accepted basis; a residual no larger than
    ``drop_tol * max input norm`` marks the vector as dependent.
    """
    vs = np.asarray(vs, dtype=float)
    if vs.ndim != 3 or vs.shape[-1] != 4:
        raise DimensionMismatch(f"expected a (m, n, 4) stack of vectors, got {vs.shape}")
    _check_finite(vs, "vector list")
    n = vs.shape[1]
    scale = max((vnorm(v) for v in vs), default=0.0)
    basis: list[np.ndarray] = []
    if scale == 0.0:
        return np.zeros((0, n, 4))
    for v in vs:
        r = v.copy()
        for _ in range(2):
            for e in basis:
                r = r - left_scale(inner(r, e), e)
        nr = vnorm(r)
        if nr > drop_tol * scale:
            basis.append(r / nr)
        if len(basis) == n:
            break
    if not basis:
        return np.zeros((0, n, 4))
    return np.stack(basis)


def rank(vs, drop_tol: float = GS_DROP_TOL) -> int:
    return len(gram_schmidt(vs, drop_tol))


def matmul(a, b) -> np.ndarray:
    """Quaternion matrix product; entry products keep left-to-right order."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape[:2]} by {b.shape[:2]}")
    return hamilton(a[:, :, None, :], b[None, :, :, :]).sum(axis=1)


def vecmat(f, m) -> np.ndarray:
    """Row vector times matrix, ``f @ M``; ``f`` may carry leading batch axes."""
    f = np.asarray(f, dtype=float)
    m = np.asarray(m, dtype=float)
    if f.shape[-2] != m.shape[0]:
        raise DimensionMismatch(f"cannot apply {m.shape[:2]} matrix to length-{f.shape[-2]} vector")
    return hamilton(f[..., :, None, :], m).sum(axis=-3)


def dagger(m) -> np.ndarray:
    """Conjugate transpose."""
    return conj_array(np.swapaxes(np.asarray(m, dtype=float), 0, 1))


def frobenius(m) -> float:
    return float(np.sqrt(np.sum(np.square(m))))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m, dtype=float)
    if m.shape[0] != m.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol * scale)


def _blocks(q: np.ndarray) -> np.ndarray:
    """4x4 left-multiplication block of each quaternion in ``q[..., 4]``."""
    w, x, y, z = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            np.stack([w, -x, -y, -z], axis=-1),
            np.stack([x, w, -z, y], axis=-1),
            np.stack([y, z, w, -x], axis=-1),
            np.stack([z, -y, x, w], axis=-1),
        ],
        axis=-2,
    )


def embed_real(m) -> np.ndarray:
    """Real ``4m x 4n`` image of a quaternion ``m x n`` matrix.

    Entry ``w + xi + yj + zk`` becomes ``[[w,-x,-y,-z],[x,w,-z,y],[y,z,w,-x],[z,-y,x,w]]``,
    the matrix of left multiplication by that quaternion. The map is
    multiplicative and sends ``dagger`` to transpose.
    """
    m = np.asarray(m, dtype=float)
    rows, cols = m.shape[:2]
    return _blocks(m).transpose(0, 2, 1, 3).reshape(4 * rows, 4 * cols)


def unembed_real(e: np.ndarray) -> np.ndarray:
    """Inverse of :func:`embed_real` (reads the first column of every block)."""
    r, c = e.shape
    return e.reshape(r // 4, 4, c // 4, 4)[:, :, :, 0].transpose(0, 2, 1).copy()


def right_action_matrix(m) -> np.ndarray:
    """Real matrix ``R`` with ``flat(f @ M) = R @ flat(f)``.

    Uses ``conj(f @ M) = dagger(M) conj(f)`` (column form), so
    ``R = D embed(M)^T D`` with ``D`` the blockwise conjugation sign.
    """
    m = np.asarray(m, dtype=float)
    e = embed_real(m)
    d_out = np.tile([1.0, -1.0, -1.0, -1.0], m.shape[1])
    d_in = np.tile([1.0, -1.0, -1.0, -1.0], m.shape[0])
    return d_out[:, None] * e.T * d_in[None, :]


def solve(m, b, pivot_tol: float = PIVOT_TOL) -> np.ndarray:
    """Solve ``x @ M = b`` for ``x``.

    ``b`` is a vector ``(n, 4)`` or a stack ``(k, n, 4)`` of right-hand sides.
    The ``4n x 4n`` real system is factored once with partial pivoting;
    a pivot below ``pivot_tol`` times the largest matrix entry raises
    :class:`SingularMatrix`.
    """
    m = np.asarray(m, dtype=float)
    b = np.asarray(b, dtype=float)
    n = m.shape[0]
    if m.shape[1] != n:
        raise DimensionMismatch(f"solve needs a square matrix, got {m.shape[:2]}")
    if b.shape[-2] != n:
        raise DimensionMismatch(f"right-hand side has length {b.shape[-2]}, expected {n}")
    _check_finite(m, "matrix")
    _check_finite(b, "right-hand side")
    r = right_action_matrix(m)
    scale = float(np.max(np.abs(r), initial=0.0))
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    lu, piv = sla.lu_factor(r, check_finite=False)
    smallest = float(np.min(np.abs(np.diag(lu))))
    if smallest < pivot_tol * scale:
        raise SingularMatrix(f"pivot {smallest:.3e} below {pivot_tol:g} x {scale:.3e}")
    rhs = b.reshape(-1, 4 * n).T
    x = sla.lu_solve((lu, piv), rhs, check_finite=False)
    return x.T.reshape(b.shape)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament ordering: ``n - 1`` rounds of disjoint index pairs covering all pairs once."""
    players = list(range(n + (n % 2)))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        p, q = (np.array(v, dtype=int) for v in zip(*pairs))
        rounds.append((p, q))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOL,
                       max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.

    A sweep visits every off-diagonal pair once in round-robin order; the
    rotations inside one round touch disjoint rows and columns, so they are
    applied together. Stops once the off-diagonal Frobenius norm drops below
    ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(a))
    # entries this small cannot affect the stopping test
    skip = 1e-3 * tol * scale / n
    offdiag = ~np.eye(n, dtype=bool)
    rounds = _round_robin(n)
    for sweep in range(max_sweeps):
        off = float(np.linalg.norm(a[offdiag]))
        if off < tol * scale:
            log.debug("jacobi converged after %d sweeps", sweep)
            return np.sort(np.diag(a))
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) >= skip
            if not active.any():
                continue
            safe = np.where(active, apq, 1.0)
            theta = (a[q, q] - a[p, p]) / (2.0 * safe)
            t = np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = np.where(active, 1.0 / np.sqrt(t * t + 1.0), 1.0)
            s = np.where(active, t * c, 0.0)
            cp, cq = a[:, p], a[:, q]
            a[:, p], a[:, q] = c * cp - s * cq, s * cp + c * cq
            rp, rq = a[p, :], a[q, :]
            a[p, :], a[q, :] = c[:, None] * rp - s[:, None] * rq, s[:, None] * rp + c[:, None] * rq
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(m, tol: float = JACOBI_TOL,
                          max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """The ``n`` real eigenvalues of a Hermitian quaternion matrix, ascending.

    Each eigenvalue shows up four times in the real embedding; the sorted
    embedded spectrum is cut into consecutive runs of four and each run is
    averaged.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 3 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square quaternion matrix, got {m.shape}")
    _check_finite(m, "matrix")
    if not is_hermitian(m):
        raise NotHermitian("matrix differs from its conjugate transpose")
    e = embed_real(m)
    e = 0.5 * (e + e.T)
    lam = jacobi_eigenvalues(e, tol, max_sweeps).reshape(-1, 4)
    spread = lam[:, -1] - lam[:, 0]
    means = lam.mean(axis=1)
    bad = spread >= 1e-8 * (1.0 + np.abs(means))
    if np.any(bad):
        raise MultiplicityViolation(
            f"eigenvalue quadruplets not degenerate: spreads {spread[bad]}"
        )
    return means
