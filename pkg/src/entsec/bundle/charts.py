"""Two-chart vector bundles over spheres and their pullbacks to T^4.

A sphere S^n is covered by a north chart (polar angle ``chi <= 3 pi/4``)
and a south chart (``chi >= pi/4``); on the collar between them the fiber
coordinates are related by ``v_north = c(u) v_south`` where ``u`` is the
direction of the point's projection onto the equatorial S^{n-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import InputError
from . import clutching as cl

COLLAR = (np.pi / 4, 3 * np.pi / 4)
# "plain" fibers carry no tensor structure, so entanglement is undefined there
FIBER_KINDS = ("plain", "tensor", "sym2", "lambda2")


def polar_angle(x: np.ndarray) -> np.ndarray:
    return np.arccos(np.clip(np.asarray(x)[..., 0], -1.0, 1.0))


def equator_direction(x: np.ndarray) -> np.ndarray:
    """Unit vector ``x[1:] / |x[1:]|``; undefined (NaN-free, arbitrary) at the poles."""
    x = np.asarray(x, dtype=float)
    u = x[..., 1:]
    n = np.linalg.norm(u, axis=-1, keepdims=True)
    fallback = np.zeros_like(u)
    fallback[..., 0] = 1.0
    return np.where(n > 1e-300, u / np.where(n > 1e-300, n, 1.0), fallback)


@dataclass(frozen=True)
class ChartedBundle:
    """Vector bundle given by one clutching function on the equator.

    ``to_sphere`` maps base points to sphere points; it is the identity for
    sphere bases and the collapse map for pulled-back bundles.
    """

    base: str
    fiber_dim: int
    kind: str
    clutching: Callable[[np.ndarray], np.ndarray]
    name: str = ""
    sphere_dim: int = 4
    to_sphere: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in FIBER_KINDS:
            raise InputError(f"fiber kind must be one of {FIBER_KINDS}")

    def sphere_points(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return pts if self.to_sphere is None else self.to_sphere(pts)

    def chi(self, pts) -> np.ndarray:
        return polar_angle(self.sphere_points(pts))

    def transition(self, pts) -> np.ndarray:
        """``c(u)`` at the given base points; meaningful on the collar."""
        return self.clutching(equator_direction(self.sphere_points(pts)))

    def north_mask(self, pts) -> np.ndarray:
        return self.chi(pts) <= COLLAR[1]

    def south_mask(self, pts) -> np.ndarray:
        return self.chi(pts) >= COLLAR[0]

    def overlap_mask(self, pts) -> np.ndarray:
        chi = self.chi(pts)
        return (chi >= COLLAR[0]) & (chi <= COLLAR[1])

    def home_is_north(self, pts) -> np.ndarray:
        return self.chi(pts) <= np.pi / 2

    def check_unitary(self, pts, tol: float = 1e-10) -> float:
        t = self.transition(np.asarray(pts)[self.overlap_mask(pts)])
        if t.size == 0:
            return 0.0
        eye = np.eye(self.fiber_dim)
        err = float(np.max(np.abs(t @ np.conj(np.swapaxes(t, -1, -2)) - eye)))
        if err > tol:
            raise InputError(f"transition values are not unitary (error {err:.2e})")
        return err


@dataclass(frozen=True)
class SectionField:
    """Per-chart fiber values at base points; NaN rows outside a chart."""

    bundle: ChartedBundle
    points: np.ndarray
    north: np.ndarray
    south: np.ndarray

    def home_values(self) -> np.ndarray:
        home = self.bundle.home_is_north(self.points)
        return np.where(home[:, None], self.north, self.south)

    def min_norm(self) -> float:
        return float(np.min(np.linalg.norm(self.home_values(), axis=-1)))


def seam_check(section: SectionField) -> float:
    """Max over overlap points of ``|v_north - c v_south|``."""
    b = section.bundle
    ov = b.overlap_mask(section.points)
    if not np.any(ov):
        return 0.0
    t = b.transition(section.points[ov])
    diff = section.north[ov] - np.einsum("vij,vj->vi", t, section.south[ov])
    return float(np.max(np.linalg.norm(diff, axis=-1)))


def section_from_charts(bundle: ChartedBundle, points, north_fn, south_fn) -> SectionField:
    """Sample chart-local functions on the points of each chart domain."""
    points = np.asarray(points, dtype=float)
    k = bundle.fiber_dim
    north = np.full((points.shape[0], k), np.nan, dtype=complex)
    south = np.full((points.shape[0], k), np.nan, dtype=complex)
    nm, sm = bundle.north_mask(points), bundle.south_mask(points)
    if np.any(nm):
        north[nm] = north_fn(points[nm])
    if np.any(sm):
        south[sm] = south_fn(points[sm])
    return SectionField(bundle, points, north, south)


# -- bundle constructors -----------------------------------------------------


def line_bundle_s2(c1: int = 1) -> ChartedBundle:
    return ChartedBundle("S2", 1, "plain", cl.phase_map(c1), f"L({c1})", sphere_dim=2)


def line_tensor_s2(c1: int = 1, c2: int = -1) -> ChartedBundle:
    c = cl.tensor_clutching(cl.phase_map(c1), cl.phase_map(c2))
    return ChartedBundle("S2", 1, "plain", c, f"L({c1})xL({c2})", sphere_dim=2)


def hopf_bundle() -> ChartedBundle:
    """Rank-2 bundle over S^4 clutched by ``hopf_clutching`` (c_2 = 1)."""
    return ChartedBundle("S4", 2, "plain", cl.hopf_transition, "Hopf")


def trivial_bundle(base: str = "S4", k: int = 4, kind: str = "tensor") -> ChartedBundle:
    dim = 2 if base == "S2" else 4
    return ChartedBundle(base, k, kind, cl.constant_map(k), f"trivial C^{k}", sphere_dim=dim)


def _rank2(b: ChartedBundle) -> None:
    if b.fiber_dim != 2:
        raise InputError("a rank-2 bundle is required")


def tensor_bundle(b1: ChartedBundle, b2: ChartedBundle) -> ChartedBundle:
    _rank2(b1)
    _rank2(b2)
    c = cl.tensor_clutching(b1.clutching, b2.clutching)
    return ChartedBundle(b1.base, 4, "tensor", c, f"{b1.name}x{b2.name}", b1.sphere_dim, b1.to_sphere)


def conj_bundle(b: ChartedBundle) -> ChartedBundle:
    return ChartedBundle(b.base, b.fiber_dim, b.kind, cl.conj_clutching(b.clutching), f"conj({b.name})", b.sphere_dim, b.to_sphere)


def sym2_bundle(b: ChartedBundle) -> ChartedBundle:
    _rank2(b)
    return ChartedBundle(b.base, 3, "sym2", cl.sym2_clutching(b.clutching), f"sym2({b.name})", b.sphere_dim, b.to_sphere)


def lambda2_bundle(b: ChartedBundle) -> ChartedBundle:
    _rank2(b)
    return ChartedBundle(b.base, 1, "lambda2", cl.lambda2_clutching(b.clutching), f"L2({b.name})", b.sphere_dim, b.to_sphere)


# -- T^4 -> S^4 collapse -----------------------------------------------------

COLLAPSE_FRACTION = 0.9
R_MAX = np.pi


def collapse_profile(r: np.ndarray) -> np.ndarray:
    """Polar angle as a function of distance from the cube center.

    Monotone, zero slope at both ends, and identically pi for
    ``r >= 0.9 * r_max`` so the cube faces all land on the south pole.
    """
    t = np.clip(np.asarray(r, dtype=float) / (COLLAPSE_FRACTION * R_MAX), 0.0, 1.0)
    return np.pi * (t - np.sin(2 * np.pi * t) / (2 * np.pi))


def collapse_radius(chi: float) -> float:
    """Inverse of :func:`collapse_profile` by bisection."""
    lo, hi = 0.0, COLLAPSE_FRACTION * R_MAX
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if collapse_profile(mid) < chi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def collapse_map(theta: np.ndarray) -> np.ndarray:
    """Degree-one map from the fundamental domain ``[0, 2 pi]^4`` to S^4.

    Points come back as 5-vectors. No wrapping is applied, so identified
    faces reach the south pole independently.
    """
    theta = np.asarray(theta, dtype=float)
    y = theta - np.pi
    r = np.linalg.norm(y, axis=-1)
    chi = collapse_profile(r)
    u = y / np.where(r > 0, r, 1.0)[..., None]
    return np.concatenate([np.cos(chi)[..., None], np.sin(chi)[..., None] * u], axis=-1)


def pullback_t4(bundle: ChartedBundle) -> ChartedBundle:
    """Pull an S^4 bundle back along :func:`collapse_map`."""
    if bundle.base != "S4":
        raise InputError("pullback_t4 needs a bundle over S4")
    return ChartedBundle("T4", bundle.fiber_dim, bundle.kind, bundle.clutching, f"pullback({bundle.name})", 4, collapse_map)


def pullback_section(bundle_t4: ChartedBundle, theta, north_fn, south_fn) -> SectionField:
    """Transport chart-local S^4 section functions to T^4 points."""
    theta = np.asarray(theta, dtype=float)
    return section_from_charts(
        bundle_t4, theta, lambda p: north_fn(collapse_map(p)), lambda p: south_fn(collapse_map(p))
    )


def torus_seam_check(bundle_t4: ChartedBundle, south_fn, n: int = 8, seed: int = 0) -> float:
    """Compare south-chart values on identified faces ``theta_i = 0 ~ 2 pi``."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(4):
        pts = rng.uniform(0, 2 * np.pi, size=(n**2, 4))
        lo, hi = pts.copy(), pts.copy()
        lo[:, i] = 0.0
        hi[:, i] = 2 * np.pi
        # both copies lie where the collapse map is constant, in the south chart
        a = south_fn(collapse_map(lo))
        b = south_fn(collapse_map(hi))
        worst = max(worst, float(np.max(np.linalg.norm(a - b, axis=-1))))
    return worst
