"""Meshes over the base spaces S^2, S^3, S^4 and T^4.

Product-grid meshes place vertices at cell centers, so refining a
resolution ``n`` by a factor of 3 contains the coarse vertices. S^2 is
triangulated separately because the Berry-phase count needs faces.

Sphere embeddings put the height coordinate first: the north pole of S^n
is ``(1, 0, ..., 0)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ..errors import InputError

VOLUMES = {
    "S2": 4 * np.pi,
    "S3": 2 * np.pi**2,
    "S4": 8 * np.pi**2 / 3,
    "T4": (2 * np.pi) ** 4,
}
DEFAULT_RESOLUTION = {"S2": 24, "S3": 48, "S4": 8, "T4": 8}


@dataclass(frozen=True)
class Mesh:
    base: str
    resolution: int
    coords: np.ndarray
    points: np.ndarray
    weights: np.ndarray
    shape: tuple[int, ...] | None = None
    spacing: tuple[float, ...] | None = None
    faces: np.ndarray | None = None
    # +1 when the chart coordinate order matches the base orientation
    orientation: int = 1

    @property
    def n_vertices(self) -> int:
        return self.points.shape[0]

    @property
    def volume(self) -> float:
        return float(self.weights.sum())


def _centers(lo: float, hi: float, n: int) -> np.ndarray:
    h = (hi - lo) / n
    return lo + h * (np.arange(n) + 0.5)


def _edges(lo: float, hi: float, n: int) -> np.ndarray:
    return lo + (hi - lo) * np.arange(n + 1) / n


def _int_sin3(lo, hi):
    # antiderivative of sin^3 is cos^3/3 - cos
    F = lambda t: np.cos(t) ** 3 / 3 - np.cos(t)
    return F(hi) - F(lo)


def _int_sincos(lo, hi):
    return 0.5 * (np.sin(hi) ** 2 - np.sin(lo) ** 2)


def hopf_embed(eta, xi1, xi2) -> np.ndarray:
    """Hopf coordinates -> unit quaternion ``(w, x, y, z)``."""
    return np.stack(
        [np.cos(eta) * np.cos(xi1), np.cos(eta) * np.sin(xi1), np.sin(eta) * np.cos(xi2), np.sin(eta) * np.sin(xi2)],
        axis=-1,
    )


def s3_mesh(n: int) -> Mesh:
    """Hopf-coordinate grid ``eta in [0, pi/2]``, ``xi1, xi2 in [0, 2 pi)``."""
    spans = ((0.0, np.pi / 2), (0.0, 2 * np.pi), (0.0, 2 * np.pi))
    axes = [_centers(lo, hi, n) for lo, hi in spans]
    eta, xi1, xi2 = np.meshgrid(*axes, indexing="ij")
    h = tuple((hi - lo) / n for lo, hi in spans)
    coords = np.stack([eta, xi1, xi2], axis=-1).reshape(-1, 3)
    pts = hopf_embed(coords[:, 0], coords[:, 1], coords[:, 2])
    e = _edges(0.0, np.pi / 2, n)
    w_eta = _int_sincos(e[:-1], e[1:])
    w = np.broadcast_to(w_eta[:, None, None] * h[1] * h[2], (n, n, n)).ravel().copy()
    return Mesh("S3", n, coords, pts, w, (n, n, n), h, orientation=S3_ORIENTATION)


# (eta, xi1, xi2) is negatively oriented against the boundary orientation of
# the unit ball in R^4 = (w, x, y, z); checked in the test suite.
S3_ORIENTATION = -1


def s4_embed(chi, eta, xi1, xi2) -> np.ndarray:
    q = hopf_embed(eta, xi1, xi2)
    return np.concatenate([np.cos(chi)[..., None], np.sin(chi)[..., None] * q], axis=-1)


def s4_mesh(n: int) -> Mesh:
    """``chi`` (polar angle from the north pole) times the S^3 Hopf grid."""
    n_eta = max(1, n // 2)
    spans = ((0.0, np.pi), (0.0, np.pi / 2), (0.0, 2 * np.pi), (0.0, 2 * np.pi))
    counts = (n, n_eta, n, n)
    axes = [_centers(lo, hi, c) for (lo, hi), c in zip(spans, counts)]
    grid = np.meshgrid(*axes, indexing="ij")
    coords = np.stack(grid, axis=-1).reshape(-1, 4)
    h = tuple((hi - lo) / c for (lo, hi), c in zip(spans, counts))
    pts = s4_embed(*coords.T)
    ec, ee = _edges(0.0, np.pi, n), _edges(0.0, np.pi / 2, n_eta)
    w_chi = _int_sin3(ec[:-1], ec[1:])
    w_eta = _int_sincos(ee[:-1], ee[1:])
    w = (w_chi[:, None, None, None] * w_eta[None, :, None, None] * h[2] * h[3]) * np.ones(counts)
    w = w.ravel()
    return Mesh("S4", n, coords, pts, w, counts, h)


def t4_mesh(n: int) -> Mesh:
    axes = [_centers(0.0, 2 * np.pi, n)] * 4
    coords = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 4)
    h = (2 * np.pi / n,) * 4
    w = np.full(coords.shape[0], np.prod(h))
    return Mesh("T4", n, coords, coords.copy(), w, (n,) * 4, h)


def s2_embed(theta, phi) -> np.ndarray:
    return np.stack([np.cos(theta), np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi)], axis=-1)


def s2_mesh(n: int) -> Mesh:
    """Latitude-longitude triangulation with single pole vertices.

    ``n`` latitude bands and ``2n`` longitudes; faces are oriented with
    outward normals. Vertex weights are one third of the adjacent spherical
    triangle areas, so they sum to 4 pi up to rounding.
    """
    if n < 2:
        raise InputError("S2 mesh needs at least 2 latitude bands")
    m = 2 * n
    thetas = np.pi * np.arange(1, n) / n
    phis = 2 * np.pi * np.arange(m) / m
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    coords = np.concatenate([[[0.0, 0.0]], np.stack([th, ph], -1).reshape(-1, 2), [[np.pi, 0.0]]])
    pts = s2_embed(coords[:, 0], coords[:, 1])
    north, south = 0, coords.shape[0] - 1

    def vid(ring, j):
        return 1 + ring * m + (j % m)

    faces = []
    for j in range(m):
        faces.append((north, vid(0, j), vid(0, j + 1)))
        faces.append((south, vid(n - 2, j + 1), vid(n - 2, j)))
    for r in range(n - 2):
        for j in range(m):
            a, b = vid(r, j), vid(r, j + 1)
            c, d = vid(r + 1, j), vid(r + 1, j + 1)
            faces.append((a, c, d))
            faces.append((a, d, b))
    faces = np.array(faces)
    faces = _orient_outward(pts, faces)
    areas = spherical_triangle_area(pts[faces[:, 0]], pts[faces[:, 1]], pts[faces[:, 2]])
    w = np.zeros(pts.shape[0])
    for k in range(3):
        np.add.at(w, faces[:, k], areas / 3)
    return Mesh("S2", n, coords, pts, w, faces=faces)


def _orient_outward(pts, faces):
    a, b, c = pts[faces[:, 0]], pts[faces[:, 1]], pts[faces[:, 2]]
    normal = np.cross(b - a, c - a)
    flip = np.einsum("ij,ij->i", normal, a + b + c) < 0
    faces = faces.copy()
    faces[flip] = faces[flip][:, [0, 2, 1]]
    return faces


def spherical_triangle_area(a, b, c) -> np.ndarray:
    """Spherical excess of unit-vector triangles (Van Oosterom-Strackee)."""
    num = np.abs(np.einsum("ij,ij->i", a, np.cross(b, c)))
    den = 1 + np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) + np.einsum("ij,ij->i", c, a)
    return 2 * np.arctan2(num, den)


_BUILDERS = {"S2": s2_mesh, "S3": s3_mesh, "S4": s4_mesh, "T4": t4_mesh}


def build_mesh(base: str, resolution: int | None = None) -> Mesh:
    if base not in _BUILDERS:
        raise InputError(f"unknown base {base!r}; choose from {sorted(_BUILDERS)}")
    n = DEFAULT_RESOLUTION[base] if resolution is None else int(resolution)
    if n < 1:
        raise InputError("resolution must be positive")
    return _BUILDERS[base](n)


def load_mesh(base: str, resolution: int | None = None, cache_dir: str | None = None) -> Mesh:
    """Build a mesh, reading/writing an ``.npz`` cache keyed by (base, resolution)."""
    n = DEFAULT_RESOLUTION.get(base, 0) if resolution is None else int(resolution)
    if cache_dir is None:
        return build_mesh(base, n)
    path = os.path.join(cache_dir, f"mesh_{base}_{n}.npz")
    if os.path.exists(path):
        with np.load(path) as z:
            return Mesh(
                base,
                n,
                z["coords"],
                z["points"],
                z["weights"],
                tuple(z["shape"]) if z["shape"].size else None,
                tuple(z["spacing"]) if z["spacing"].size else None,
                z["faces"] if z["faces"].size else None,
                int(z["orientation"]),
            )
    mesh = build_mesh(base, n)
    os.makedirs(cache_dir, exist_ok=True)
    tmp = path + ".tmp.npz"
    np.savez(
        tmp,
        coords=mesh.coords,
        points=mesh.points,
        weights=mesh.weights,
        shape=np.array(mesh.shape or (), dtype=int),
        spacing=np.array(mesh.spacing or (), dtype=float),
        faces=np.array(mesh.faces if mesh.faces is not None else np.empty((0, 3), int)),
        orientation=mesh.orientation,
    )
    os.replace(tmp, path)
    return mesh


_PERIODIC_AXES = {"S3": (False, True, True), "S4": (False, False, True, True), "T4": (True,) * 4}


def grid_edges(mesh: Mesh) -> tuple[np.ndarray, np.ndarray]:
    """Axis-neighbour vertex pairs of a product grid and their base lengths.

    Angular axes wrap around; lengths are chordal on spheres and flat on T^4.
    """
    if mesh.shape is None or mesh.base not in _PERIODIC_AXES:
        raise InputError(f"{mesh.base} mesh has no product-grid structure")
    idx = np.arange(mesh.n_vertices).reshape(mesh.shape)
    pairs = []
    for axis, periodic in enumerate(_PERIODIC_AXES[mesh.base]):
        n = mesh.shape[axis]
        if n < 2:
            continue
        if periodic and n > 2:
            nb = np.roll(idx, -1, axis=axis)
            pairs.append(np.stack([idx.ravel(), nb.ravel()], axis=1))
        else:
            a = np.take(idx, np.arange(n - 1), axis=axis)
            b = np.take(idx, np.arange(1, n), axis=axis)
            pairs.append(np.stack([a.ravel(), b.ravel()], axis=1))
    edges = np.concatenate(pairs)
    if mesh.base == "T4":
        d = mesh.coords[edges[:, 0]] - mesh.coords[edges[:, 1]]
        d = (d + np.pi) % (2 * np.pi) - np.pi
        length = np.linalg.norm(d, axis=1)
    else:
        length = np.linalg.norm(mesh.points[edges[:, 0]] - mesh.points[edges[:, 1]], axis=1)
    return edges, length
