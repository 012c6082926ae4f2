"""Projectivized symmetric two-qubit states as symmetric 2x2 matrices.

``a|00> + b(|01>+|10>) + c|11>`` corresponds to ``M = [[a, b], [b, c]]``
normalized to Hilbert-Schmidt norm sqrt(2). Product states are the singular
``M``, maximally entangled ones the unitary ``M``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError, InvariantViolation

HS_NORM = np.sqrt(2.0)
SYM_TOL = 1e-10
SINGULAR_RTOL = 1e-9
MAX_TOL = 1e-8
# beyond this s the flows refuse points outside their retraction domain
LARGE_S = 10.0


@dataclass(frozen=True)
class SymState:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        n2 = abs(self.a) ** 2 + 2 * abs(self.b) ** 2 + abs(self.c) ** 2
        if abs(n2 - 2.0) > 1e-10:
            raise InvariantViolation(f"|a|^2+2|b|^2+|c|^2 = {n2!r}, expected 2")

    @classmethod
    def normalized(cls, a: complex, b: complex, c: complex) -> SymState:
        n = np.sqrt((abs(a) ** 2 + 2 * abs(b) ** 2 + abs(c) ** 2) / 2.0)
        if n == 0:
            raise InputError("zero symmetric state")
        return cls(complex(a) / n, complex(b) / n, complex(c) / n)

    def amps(self) -> np.ndarray:
        """Two-qubit amplitudes ``(a, b, b, c)`` (norm sqrt(2))."""
        return np.array([self.a, self.b, self.b, self.c], dtype=complex)


def _check_m(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise InputError(f"M must be 2x2, got {m.shape}")
    if np.max(np.abs(m - m.T)) > SYM_TOL:
        raise InputError("M must be symmetric")
    hs = np.linalg.norm(m)
    if abs(hs - HS_NORM) > 1e-10:
        raise InvariantViolation(f"Hilbert-Schmidt norm {hs!r}, expected sqrt(2)")
    return m


def to_m(state: SymState) -> np.ndarray:
    return np.array([[state.a, state.b], [state.b, state.c]], dtype=complex)


def from_m(m) -> SymState:
    m = _check_m(m)
    return SymState(complex(m[0, 0]), complex(0.5 * (m[0, 1] + m[1, 0])), complex(m[1, 1]))


def normalize_m(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    m = 0.5 * (m + m.T)
    return m * (HS_NORM / np.linalg.norm(m))


class Stratum(enum.Enum):
    PRODUCT = "Product"
    MAX = "Max"
    INTERMEDIATE = "Intermediate"


@dataclass(frozen=True)
class StratumInfo:
    stratum: Stratum
    sigma_min: float
    unitarity_defect: float


def unitarity_defect(m) -> float:
    m = np.asarray(m, dtype=complex)
    return float(np.linalg.norm(m @ m.conj().T - np.eye(2)))


def stratum(m, singular_rtol: float = SINGULAR_RTOL, max_tol: float = MAX_TOL) -> StratumInfo:
    m = _check_m(m)
    s = np.linalg.svd(m, compute_uv=False)
    defect = unitarity_defect(m)
    if s[1] < singular_rtol * s[0]:
        st = Stratum.PRODUCT
    elif defect < max_tol:
        st = Stratum.MAX
    else:
        st = Stratum.INTERMEDIATE
    return StratumInfo(st, float(s[1]), defect)


def entanglement(m) -> float:
    """``2 l1 l2`` of the normalized two-qubit state; equals ``|det M|``."""
    m = np.asarray(m, dtype=complex)
    return float(2.0 * abs(np.linalg.det(m)) / np.linalg.norm(m) ** 2)


def _matrix_function(m: np.ndarray, fn) -> np.ndarray:
    """``fn(M M*) M`` through the eigendecomposition of the positive ``M M*``.

    ``fn`` receives the eigenvalues and returns the diagonal to apply.
    """
    h = m @ m.conj().T
    mu, w = np.linalg.eigh(0.5 * (h + h.conj().T))
    mu = np.clip(mu, 0.0, None)
    out = (w * fn(mu)) @ w.conj().T @ m
    return normalize_m(out)


def f_s(x, s: float):
    return (1.0 + s * np.sqrt(x)) / (1.0 + s * x)


def flow_to_max(m, s: float, singular_rtol: float = SINGULAR_RTOL, large_s: float = LARGE_S) -> np.ndarray:
    """``Z_s f_s(M M*) M`` with ``f_s(x) = (1 + s sqrt x) / (1 + s x)``."""
    m = _check_m(m)
    if s < 0:
        raise InputError("flow parameter must be nonnegative")
    if s == 0:
        return m.copy()
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[1] < singular_rtol * sv[0] and s > large_s:
        raise DomainError("flow_to_max is undefined on the product quadric for large s")
    return _matrix_function(m, lambda mu: f_s(mu, s))


def flow_to_product(m, s: float, gap_rtol: float = SINGULAR_RTOL, large_s: float = LARGE_S) -> np.ndarray:
    """``Z'_s exp(s M M*) M``; the largest eigenvalue is factored out first."""
    m = _check_m(m)
    if s < 0:
        raise InputError("flow parameter must be nonnegative")
    if s == 0:
        return m.copy()
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] - sv[1] <= gap_rtol * sv[0]:
        if s > large_s:
            raise DomainError("flow_to_product is undefined on Max for large s")
        return m.copy()
    return _matrix_function(m, lambda mu: np.exp(s * (mu - mu.max())))


@dataclass(frozen=True)
class RP2Point:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = np.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(n - 1.0) > 1e-12:
            raise InvariantViolation(f"RP2 point must be a unit vector, norm {n!r}")

    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def distance(self, other: RP2Point) -> float:
        """Sign-insensitive Euclidean distance."""
        u, v = self.vec(), other.vec()
        return float(min(np.linalg.norm(u - v), np.linalg.norm(u + v)))

    def __eq__(self, other):
        if not isinstance(other, RP2Point):
            return NotImplemented
        return self.distance(other) < 1e-10

    def __hash__(self):
        v = self.vec()
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        return hash(tuple(np.round(v, 8)))


def max_to_rp2(m, max_tol: float = MAX_TOL) -> RP2Point:
    """Unit-determinant normal form ``[[a, b], [b, a*]]`` with b imaginary."""
    m = _check_m(m)
    if unitarity_defect(m) >= max_tol:
        raise DomainError("max_to_rp2 needs a point of Max (unitary M)")
    m1 = m / np.sqrt(np.linalg.det(m))
    a, b = m1[0, 0], 0.5 * (m1[0, 1] + m1[1, 0])
    v = np.array([a.real, a.imag, b.imag])
    v /= np.linalg.norm(v)
    return RP2Point(*map(float, v))


def rp2_to_max(p: RP2Point) -> np.ndarray:
    a = complex(p.x, p.y)
    b = 1j * p.z
    return normalize_m(np.array([[a, b], [b, a.conjugate()]]))
