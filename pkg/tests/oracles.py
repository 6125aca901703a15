"""Reference computations that share no code path with the library routines they check."""

import itertools

import numpy as np

# unit products from i^2 = j^2 = k^2 = -1, ij = -ji = k, jk = -kj = i, ki = -ik = j
# UNIT_TABLE[a][b] = (sign, index) of e_a e_b with e_0 = 1, e_1 = i, e_2 = j, e_3 = k
UNIT_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def table_product(a, b):
    """Quaternion product by bilinear expansion over the unit table."""
    out = [0.0] * 4
    for p, q in itertools.product(range(4), repeat=2):
        sign, idx = UNIT_TABLE[(p, q)]
        out[idx] += sign * a[p] * b[q]
    return np.array(out)


def table_matmul(a, b):
    """Triple-loop quaternion matrix product using :func:`table_product`."""
    m, k, _ = a.shape
    _, n, _ = b.shape
    out = np.zeros((m, n, 4))
    for i in range(m):
        for j in range(n):
            for t in range(k):
                out[i, j] += table_product(a[i, t], b[t, j])
    return out


def table_inner(f, g):
    conj = np.array([1.0, -1.0, -1.0, -1.0])
    return sum(table_product(fk, gk * conj) for fk, gk in zip(f, g))


def random_frame_vectors(rng, n, m):
    return rng.normal(size=(m, n, 4))


def random_unitary_rows(rng, n):
    """Random orthonormal basis of H^n, orthonormalised with the table inner product."""
    rows = []
    while len(rows) < n:
        v = rng.normal(size=(n, 4))
        for e in rows:
            c = table_inner(v, e)
            v = v - np.array([table_product(c, ek) for ek in e])
        nv = np.sqrt(np.sum(v * v))
        if nv > 1e-6:
            rows.append(v / nv)
    return np.stack(rows)


def null_direction(synthesis_real):
    """A unit vector spanning (with its left H-multiples) a 1-dim H-kernel, via SVD."""
    _, _, vt = np.linalg.svd(synthesis_real)
    return vt[-1].reshape(-1, 4)


def grid_l1_minimum(c0, h, levels_stop=1e-9):
    """Minimise ``sum_k |c0_k + t h_k|`` over quaternions ``t`` by shrinking 4-d grids.

    The starting box has half-width ``2 * sum|c0_k|``, which contains every
    minimiser when ``||h||_2 = 1``. Each level evaluates a 17^4 grid and
    recentres on the best point with a box of four grid steps.
    """
    def phi(t):
        d = np.broadcast_to(c0, t.shape[:-1] + c0.shape).copy()
        for (p, q), (sign, idx) in UNIT_TABLE.items():
            d[..., idx] += sign * t[..., None, p] * h[:, q]
        return np.sqrt(np.sum(d * d, axis=-1)).sum(axis=-1)

    radius = 2.0 * np.sqrt(np.sum(c0 * c0, axis=-1)).sum()
    half, k = radius, 8
    center = np.zeros(4)
    best = float(phi(center))
    while half > levels_stop * max(radius, 1e-300):
        g = np.linspace(-half, half, 2 * k + 1)
        pts = np.stack(np.meshgrid(g, g, g, g, indexing="ij"), axis=-1).reshape(-1, 4) + center
        vals = phi(pts)
        i = int(np.argmin(vals))
        if vals[i] <= best:
            best = float(vals[i])
            center = pts[i]
        half = 4.0 * half / k
    return best


def inverse_iteration(s_matrix, shift, solve, iters=6, seed=0):
    """Unit eigen-direction near ``shift`` of a Hermitian matrix acting on rows."""
    rng = np.random.default_rng(seed)
    n = s_matrix.shape[0]
    shifted = s_matrix.copy()
    shifted[np.arange(n), np.arange(n), 0] -= shift
    v = rng.normal(size=(n, 4))
    for _ in range(iters):
        v = solve(shifted, v)
        v = v / np.sqrt(np.sum(v * v))
    return v
