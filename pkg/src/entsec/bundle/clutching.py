"""Quaternions, the Hopf clutching map and derived clutching functions.

Every clutching function here is a vectorized callable taking an array of
points ``(..., n)`` on an equatorial sphere and returning ``(..., k, k)``
unitary matrices.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import InputError

Clutching = Callable[[np.ndarray], np.ndarray]

# orthonormal basis of sym^2(C^2) inside C^2 (x) C^2: |00>, (|01>+|10>)/sqrt2, |11>
SYM_BASIS = np.array(
    [[1, 0, 0], [0, 1 / np.sqrt(2), 0], [0, 1 / np.sqrt(2), 0], [0, 0, 1]], dtype=complex
)
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product of ``(w, x, y, z)`` arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    w1, x1, y1, z1 = np.moveaxis(p, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )


def quat_pow(q: np.ndarray, n: int) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if n < 0:
        q = q * np.array([1.0, -1.0, -1.0, -1.0])
        n = -n
    out = np.zeros_like(q)
    out[..., 0] = 1.0
    for _ in range(n):
        out = quat_mul(out, q)
    return out


def hopf_clutching(q: np.ndarray, check: bool = True) -> np.ndarray:
    """``w + xi + yj + zk -> [[w+ix, y+iz], [-y+iz, w-ix]]``, in SU(2)."""
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != 4:
        raise InputError("quaternions are arrays with a trailing axis of length 4")
    if check and np.max(np.abs(np.linalg.norm(q, axis=-1) - 1.0), initial=0.0) > 1e-12:
        raise InputError("hopf_clutching needs unit quaternions")
    w, x, y, z = np.moveaxis(q, -1, 0)
    out = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = w + 1j * x
    out[..., 0, 1] = y + 1j * z
    out[..., 1, 0] = -y + 1j * z
    out[..., 1, 1] = w - 1j * x
    return out


def su2_to_quat(g: np.ndarray) -> np.ndarray:
    """Inverse of :func:`hopf_clutching`."""
    g = np.asarray(g, dtype=complex)
    return np.stack([g[..., 0, 0].real, g[..., 0, 0].imag, g[..., 0, 1].real, g[..., 0, 1].imag], axis=-1)


def power_map(n: int) -> Clutching:
    """``q -> hopf(q^n)``; degree ``n`` under the fixed orientation."""
    return lambda q: hopf_clutching(quat_pow(q, n), check=False)


def constant_map(k: int = 2) -> Clutching:
    return lambda pts: np.broadcast_to(np.eye(k, dtype=complex), np.shape(pts)[:-1] + (k, k)).copy()


def phase_map(n: int) -> Clutching:
    """``u = (cos t, sin t) -> [[exp(i n t)]]`` on the equatorial circle."""

    def c(u):
        u = np.asarray(u, dtype=float)
        z = (u[..., 0] + 1j * u[..., 1]) ** n if n >= 0 else np.conj(u[..., 0] + 1j * u[..., 1]) ** (-n)
        return z[..., None, None]

    return c


def tensor_clutching(c1: Clutching, c2: Clutching) -> Clutching:
    """Pointwise Kronecker product (row index of factor 1 is slowest)."""

    def c(pts):
        a, b = c1(pts), c2(pts)
        k1, k2 = a.shape[-1], b.shape[-1]
        return np.einsum("...ij,...kl->...ikjl", a, b).reshape(a.shape[:-2] + (k1 * k2, k1 * k2))

    return c


def conj_clutching(c1: Clutching) -> Clutching:
    return lambda pts: np.conj(c1(pts))


def sym2_matrix(g: np.ndarray) -> np.ndarray:
    """Restriction of ``g (x) g`` to sym^2 in the basis :data:`SYM_BASIS`."""
    g = np.asarray(g, dtype=complex)
    gg = np.einsum("...ij,...kl->...ikjl", g, g).reshape(g.shape[:-2] + (4, 4))
    return SYM_BASIS.conj().T @ gg @ SYM_BASIS


def sym2_clutching(c1: Clutching) -> Clutching:
    return lambda pts: sym2_matrix(c1(pts))


def lambda2_clutching(c1: Clutching) -> Clutching:
    """Determinant line: ``Lambda^2`` of a rank-2 clutching function."""
    return lambda pts: np.linalg.det(c1(pts))[..., None, None]


def as_quaternion(u: np.ndarray) -> np.ndarray:
    """Equatorial S^3 points are read directly as ``(w, x, y, z)``."""
    u = np.asarray(u, dtype=float)
    return u / np.linalg.norm(u, axis=-1, keepdims=True)


def hopf_transition(u: np.ndarray) -> np.ndarray:
    return hopf_clutching(as_quaternion(u), check=False)
