"""The Borromean-rings state of a rank-2 TQFT and its SLOCC class.

Filling each of the three boundary tori so that either the meridian (0)
or the longitude (1) bounds a disk gives eight closed 3-manifolds; their
partition functions are the coordinates of the state in that (non
orthonormal) basis. Everything here is exact polynomial algebra in
``delta = 1 / D`` evaluated in double precision.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalInconsistencyError
from .slocc import SloccClass, analyze3
from .states import PureState, partial_trace

PHI = (1 + np.sqrt(5)) / 2

# quantum dimensions of the two particle types
PRESETS = {
    "semion": (1.0, 1.0),
    "fibonacci": (1.0, PHI),
}

SWEEP = np.arange(1, 1000) / 1000.0
SPAN_TOL = 1e-10


@dataclass(frozen=True)
class TqftParams:
    delta: float
    preset: str | None = None

    def __post_init__(self):
        d = float(self.delta)
        if not (0.0 < d < 1.0) or not np.isfinite(d):
            raise InputError(f"delta must lie in (0, 1), got {self.delta!r}")

    @classmethod
    def from_preset(cls, name: str) -> TqftParams:
        if name not in PRESETS:
            raise InputError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        dims = np.asarray(PRESETS[name])
        return cls(float(1.0 / np.sqrt(np.sum(dims**2))), name)


def _params(p) -> TqftParams:
    return p if isinstance(p, TqftParams) else TqftParams(float(p))


@dataclass(frozen=True)
class FillingTable:
    """Partition functions keyed by filling words such as ``"mml"``."""

    values: dict

    @classmethod
    def build(cls, params) -> FillingTable:
        d = _params(params).delta
        # number of longitude fillings -> manifold -> Z
        # 0: S^3, 1: S^1 x S^2, 2: (S^1 x S^2) # (S^1 x S^2), 3: T^3 (rank 2)
        by_count = {0: d, 1: 1.0, 2: d, 3: 2.0}
        words = [f"{a}{b}{c}" for a in "ml" for b in "ml" for c in "ml"]
        return cls({w: by_count[w.count("l")] for w in words})

    def amps(self) -> np.ndarray:
        order = sorted(self.values, key=lambda w: int(w.replace("m", "0").replace("l", "1"), 2))
        return np.array([self.values[w] for w in order])


def borromean_state(params) -> PureState:
    """``(d, 1, 1, d, 1, d, d, 2)`` indexed by ``|abc>``, 0 = meridian."""
    return PureState((2, 2, 2), FillingTable.build(params).amps().astype(complex))


def gram_matrix(params) -> np.ndarray:
    d = _params(params).delta
    return np.array([[1.0, d], [d, 1.0]])


def rho_bc(params) -> np.ndarray:
    """Coordinate-wise ``tr_A |psi><psi|`` written out entry by entry."""
    d = _params(params).delta
    d2 = d * d
    return np.array(
        [
            [d2 + 1, 2 * d, 2 * d, d2 + 2],
            [2 * d, d2 + 1, d2 + 1, 3 * d],
            [2 * d, d2 + 1, d2 + 1, 3 * d],
            [d2 + 2, 3 * d, 3 * d, d2 + 4],
        ]
    )


def column_reduction(params) -> tuple[np.ndarray, np.ndarray]:
    """Derive the spanning pair from the columns of :func:`rho_bc`.

    ``(col0 + col1) / (d + 1) = (d+1, d+1, d+1, d+2)``; subtracting it from
    ``col0`` and dividing by ``d - 1`` leaves ``(d, 1, 1, d)``, and the
    difference of the two gives ``(1, d, d, 2)``.
    """
    d = _params(params).delta
    rho = rho_bc(params)
    s = (rho[:, 0] + rho[:, 1]) / (d + 1)
    v1 = (rho[:, 0] - s) / (d - 1)
    v2 = s - v1
    return v1, v2


def range_span(params) -> tuple[np.ndarray, np.ndarray]:
    """``(d, 1, 1, d)`` and ``(1, d, d, 2)``, each checked against range(rho_BC)."""
    d = _params(params).delta
    v1 = np.array([d, 1.0, 1.0, d])
    v2 = np.array([1.0, d, d, 2.0])
    rho = rho_bc(params)
    w, vecs = np.linalg.eigh(rho)
    top = vecs[:, w > 1e-9 * w.max()]
    for v in (v1, v2):
        res = np.linalg.norm(v - top @ (top.T @ v)) / np.linalg.norm(v)
        if res > SPAN_TOL:
            raise NumericalInconsistencyError(f"spanning vector leaves range(rho_BC) by {res:.2e}")
    return v1, v2


@dataclass(frozen=True)
class SimpleQuadratic:
    """``lead p^2 + mid p + const = 0`` for simple vectors ``(1, p, p, p^2)``."""

    lead: float
    mid: float
    const: float

    @property
    def discriminant(self) -> float:
        return self.mid**2 - 4 * self.lead * self.const

    def roots(self) -> np.ndarray:
        return np.roots([self.lead, self.mid, self.const])


def simple_quadratic(params, check: bool = True) -> SimpleQuadratic:
    """Quadratic in ``p`` whose roots give the simple vectors of R_BC.

    Matching ``x v1 + y v2`` to ``|0>+p|1>`` tensor ``|0>+p|1>`` gives
    ``d x + y = 1``, ``y = p^2 - 1`` and ``x = d - d p^2 + p``; the last
    component then forces ``(1 - d^2) p^2 + d p + d^2 - 2 = 0``.
    """
    d = _params(params).delta
    q = SimpleQuadratic(1 - d * d, d, d * d - 2)
    if check:
        v1, v2 = range_span(params)
        for p in q.roots():
            y = p * p - 1
            x = d - d * p * p + p
            theta = x * v1 + y * v2
            target = np.array([1.0, p, p, p * p])
            if abs(d * x + y - 1) > 1e-10 or np.max(np.abs(theta - target)) > 1e-9 * max(1, abs(p) ** 2):
                raise NumericalInconsistencyError("substitution steps do not reproduce a simple vector")
    return q


def discriminant(delta) -> np.ndarray:
    """``d^2 - 4 (1 - d^2)(d^2 - 2)``, vectorized."""
    d = np.asarray(delta, dtype=float)
    return d * d - 4 * (1 - d * d) * (d * d - 2)


def double_root_locus() -> tuple[tuple[int, int, int], np.ndarray]:
    """Coefficients of ``4 a^2 - 11 a + 8`` in ``a = d^2`` and its two roots."""
    coeffs = (4, -11, 8)
    disc = coeffs[1] ** 2 - 4 * coeffs[0] * coeffs[2]  # 121 - 128 = -7
    roots = (-coeffs[1] + np.array([1, -1]) * 1j * np.sqrt(-disc)) / (2 * coeffs[0])
    return coeffs, roots


def classify_borromean(params) -> SloccClass:
    """GHZ via the quadratic route, cross-checked with the generic classifier."""
    params = _params(params)
    q = simple_quadratic(params)
    # rank 2 range plus two distinct simple vectors means GHZ
    own = SloccClass.GHZ if q.discriminant != 0 else SloccClass.W
    generic = analyze3(borromean_state(params)).cls
    if own is not generic:
        raise NumericalInconsistencyError(
            f"quadratic route gives {own.value}, generic classifier gives {generic.value}"
        )
    return own


def report(params) -> dict:
    params = _params(params)
    q = simple_quadratic(params)
    psi = borromean_state(params)
    return {
        "delta": params.delta,
        "preset": params.preset,
        "state": psi.amps.real.tolist(),
        "rho_bc": rho_bc(params).tolist(),
        "span": [v.tolist() for v in range_span(params)],
        "quadratic": [q.lead, q.mid, q.const],
        "discriminant": q.discriminant,
        "class": classify_borromean(params).value,
    }


def sweep(deltas=SWEEP) -> dict:
    """Classify on a grid of ``delta``; returns the minimum discriminant and classes."""
    classes = [classify_borromean(float(d)).value for d in deltas]
    disc = discriminant(deltas)
    return {
        "n": len(classes),
        "all_ghz": all(c == SloccClass.GHZ.value for c in classes),
        "min_discriminant": float(np.min(np.abs(disc))),
        "classes": sorted(set(classes)),
    }
