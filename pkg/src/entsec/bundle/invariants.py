"""Integer characteristic numbers computed on meshes."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import InputError, ResolutionError
from .clutching import Clutching
from .mesh import Mesh, hopf_embed, s3_mesh

ALIAS_GUARD = 0.75 * np.pi
DEGREE_RESIDUAL_MAX = 0.2


@dataclass(frozen=True)
class DegreeResult:
    degree: int
    residual: float
    raw: float

    def to_dict(self) -> dict:
        return {"degree": self.degree, "residual": self.residual}


def winding_c1(t: Callable[[np.ndarray], np.ndarray], n_samples: int = 256, alias_guard: float = ALIAS_GUARD) -> int:
    """Winding number of ``t: S^1 -> U(1)`` sampled at ``n_samples`` angles."""
    if n_samples < 64:
        raise InputError("winding_c1 needs at least 64 samples")
    theta = 2 * np.pi * np.arange(n_samples + 1) / n_samples
    z = np.asarray(t(theta), dtype=complex).ravel()
    if np.min(np.abs(z)) == 0:
        raise InputError("U(1)-valued map vanishes")
    dphi = np.angle(z[1:] / z[:-1])
    if np.max(np.abs(dphi)) > alias_guard:
        raise ResolutionError("phase increment near pi; increase n_samples")
    return int(np.rint(dphi.sum() / (2 * np.pi)))


# sum of tr((c^-1 dc)^3) over the positively oriented SU(2) equals this sign
# times 24 pi^2 once SU(2) is oriented through hopf_clutching; fixed so the
# Hopf clutching map has degree +1.
_SU2_SIGN = -1


def clutching_degree(c: Clutching, mesh: Mesh | None = None, resolution: int = 48,
                     residual_max: float = DEGREE_RESIDUAL_MAX) -> DegreeResult:
    """Degree of ``c: S^3 -> SU(2)`` from ``(1/24 pi^2) int tr((c^-1 dc)^3)``.

    Derivatives are centered differences across each cell of the Hopf grid,
    evaluated at the cell faces, so no sample leaves the chart.
    """
    if mesh is None:
        mesh = s3_mesh(resolution)
    if mesh.base != "S3" or mesh.spacing is None:
        raise InputError("clutching_degree needs a product S3 mesh")
    x = mesh.coords
    h = np.asarray(mesh.spacing)
    A = []
    for i in range(3):
        dx = np.zeros(3)
        dx[i] = h[i] / 2
        cp = c(hopf_embed(*(x + dx).T))
        cm = c(hopf_embed(*(x - dx).T))
        c0 = 0.5 * (cp + cm)
        A.append(np.linalg.solve(c0, (cp - cm) / h[i]))
    a1, a2, a3 = A
    comm = a2 @ a3 - a3 @ a2
    dens = 3.0 * np.trace(a1 @ comm, axis1=-2, axis2=-1).real
    raw = mesh.orientation * _SU2_SIGN * dens.sum() * np.prod(h) / (24 * np.pi**2)
    deg = int(np.rint(raw))
    res = float(abs(raw - deg))
    if res > residual_max:
        raise ResolutionError(f"degree integral {raw:.4f} is not near an integer; refine the mesh")
    return DegreeResult(deg, res, float(raw))


def chern1_berry(values: np.ndarray, mesh: Mesh, alias_guard: float = ALIAS_GUARD) -> int:
    """First Chern number of the line spanned by a projective section over S^2.

    ``values`` holds one nonzero vector per mesh vertex; the phase of each
    is irrelevant. Plaquette Berry phases come from the gauge-invariant
    triple product ``<v0|v1><v1|v2><v2|v0>`` on every outward-oriented
    triangle. The sign is fixed so the spin-coherent field
    ``(cos(t/2), e^{i p} sin(t/2))`` counts +1.
    """
    if mesh.faces is None:
        raise InputError("chern1_berry needs a triangulated S2 mesh")
    v = np.asarray(values, dtype=complex)
    if v.ndim == 1:
        v = v[:, None]
    if v.shape[0] != mesh.n_vertices:
        raise InputError("one fiber vector per vertex is required")
    nrm = np.linalg.norm(v, axis=-1)
    if np.min(nrm) == 0:
        raise InputError("projective section vanishes at a vertex")
    v = v / nrm[:, None]
    f = mesh.faces
    v0, v1, v2 = v[f[:, 0]], v[f[:, 1]], v[f[:, 2]]
    ov = lambda a, b: np.einsum("ij,ij->i", a.conj(), b)
    z = ov(v0, v1) * ov(v1, v2) * ov(v2, v0)
    if np.min(np.abs(z)) < 1e-12:
        raise ResolutionError("orthogonal neighbours; refine the mesh")
    flux = np.angle(z)
    if np.max(np.abs(flux)) > alias_guard:
        raise ResolutionError("plaquette Berry phase near pi; refine the mesh")
    return int(np.rint(flux.sum() / (2 * np.pi)))


def coherent_section(points: np.ndarray) -> np.ndarray:
    """``(cos(t/2), e^{i p} sin(t/2))`` at S^2 points ``(cos t, sin t cos p, sin t sin p)``."""
    p = np.asarray(points, dtype=float)
    t = np.arccos(np.clip(p[:, 0], -1, 1))
    ph = np.arctan2(p[:, 2], p[:, 1])
    return np.stack([np.cos(t / 2), np.exp(1j * ph) * np.sin(t / 2)], axis=-1)


def simple_factors(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split rank-one vectors of C^2 (x) C^2 into factors (phases arbitrary)."""
    m = np.asarray(values, dtype=complex).reshape(-1, 2, 2)
    u, s, vh = np.linalg.svd(m)
    return u[:, :, 0] * s[:, :1], vh[:, 0, :]
