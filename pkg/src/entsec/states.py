"""Tensor-factored pure states, reduced density matrices and Schmidt data.

Amplitudes are stored with the first tensor factor as the slowest-varying
index, so ``amps.reshape(dims)[i0, i1, ...]`` addresses ``|i0 i1 ...>``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import ContractViolation, InputError, InvariantViolation

MAX_FACTORS = 4
RANK_RTOL = 1e-9
ENTROPY_CUTOFF = 1e-12
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    """Unnormalized vector in ``H_1 (x) ... (x) H_n``."""

    dims: tuple[int, ...]
    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or len(dims) > MAX_FACTORS:
            raise InputError(f"need 1..{MAX_FACTORS} tensor factors, got {len(dims)}")
        if any(d < 2 for d in dims):
            raise InputError(f"every factor dimension must be >= 2, got {dims}")
        amps = np.asarray(self.amps, dtype=complex).ravel()
        if amps.size != math.prod(dims):
            raise InputError(
                f"amplitude length {amps.size} does not match prod(dims)={math.prod(dims)}"
            )
        if not np.all(np.isfinite(amps)):
            raise InputError("amplitudes must be finite")
        nrm = np.linalg.norm(amps)
        if nrm == 0.0:
            raise InputError("the zero vector is not a state")
        if self.normalized and abs(nrm - 1.0) > 1e-12:
            raise InvariantViolation(f"state flagged normalized but has norm {nrm!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", _frozen(amps))

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def normalize(self) -> PureState:
        return PureState(self.dims, self.amps / self.norm, normalized=True)

    @classmethod
    def from_tensor(cls, t: np.ndarray) -> PureState:
        t = np.asarray(t, dtype=complex)
        return cls(t.shape, t.ravel())

    @classmethod
    def basis(cls, label: str, dims: Sequence[int] | None = None) -> PureState:
        """Computational basis vector, e.g. ``PureState.basis("010")``."""
        digits = [int(ch) for ch in label]
        dims = tuple(dims) if dims is not None else (2,) * len(digits)
        t = np.zeros(dims, dtype=complex)
        t[tuple(digits)] = 1.0
        return cls.from_tensor(t)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian positive-semidefinite matrix; the trace is not forced to 1."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (self.dim, self.dim):
            raise InputError(f"expected a {self.dim}x{self.dim} matrix, got shape {e.shape}")
        if np.max(np.abs(e - e.conj().T)) > HERMITIAN_TOL:
            raise InvariantViolation("density matrix is not Hermitian")
        ev = np.linalg.eigvalsh(e)
        if ev.min() < -PSD_TOL:
            raise InvariantViolation(f"negative eigenvalue {ev.min()!r}")
        object.__setattr__(self, "entries", _frozen(e))

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in nonincreasing order."""
        return np.linalg.eigvalsh(self.entries)[::-1]

    def rank(self, rtol: float = RANK_RTOL) -> int:
        s = np.linalg.svd(self.entries, compute_uv=False)
        if s[0] == 0.0:
            return 0
        return int(np.count_nonzero(s > rtol * s[0]))


@dataclass(frozen=True)
class SchmidtData:
    coeffs: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray
    left: tuple[int, ...] = field(default=())
    right: tuple[int, ...] = field(default=())

    def reconstruct(self, dims: Sequence[int]) -> PureState:
        """Rebuild the state in the original factor order."""
        mat = (self.left_basis * self.coeffs) @ self.right_basis.T
        order = list(self.left) + list(self.right)
        t = mat.reshape([dims[i] for i in order])
        t = np.transpose(t, np.argsort(order))
        return PureState.from_tensor(t)


def _check_subset(psi: PureState, idx: Iterable[int]) -> tuple[int, ...]:
    idx = tuple(sorted(set(int(i) for i in idx)))
    if any(i < 0 or i >= psi.n_factors for i in idx):
        raise InputError(f"factor indices {idx} out of range for {psi.n_factors} factors")
    return idx


def _as_matrix(psi: PureState, left: Sequence[int]) -> tuple[np.ndarray, tuple[int, ...]]:
    rest = tuple(i for i in range(psi.n_factors) if i not in left)
    t = np.transpose(psi.tensor(), list(left) + list(rest))
    dl = math.prod(psi.dims[i] for i in left)
    return t.reshape(dl, -1), rest


def partial_trace(psi: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the factors in ``keep`` (ascending order).

    The contraction is coordinate-wise over the traced indices; no Gram
    matrix enters, which is what a non-orthonormal basis calls for when only
    the SLOCC class matters.
    """
    keep = _check_subset(psi, keep)
    if not keep or len(keep) == psi.n_factors:
        raise ContractViolation("keep must be a nonempty proper subset of the factors")
    x, _ = _as_matrix(psi, keep)
    rho = x @ x.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho.shape[0], rho)


def _bipartition(psi: PureState, bipartition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    left, right = bipartition
    left = _check_subset(psi, left)
    right = _check_subset(psi, right)
    if not left or not right:
        raise ContractViolation("both sides of a bipartition must be nonempty")
    if set(left) & set(right) or len(left) + len(right) != psi.n_factors:
        raise ContractViolation(f"{left} | {right} is not a partition of the factors")
    return left, right


def schmidt(psi: PureState, bipartition) -> SchmidtData:
    left, right = _bipartition(psi, bipartition)
    dl = math.prod(psi.dims[i] for i in left)
    x = np.transpose(psi.tensor(), list(left) + list(right)).reshape(dl, -1)
    u, s, vh = np.linalg.svd(x, full_matrices=False)
    return SchmidtData(s, u, vh.T, left, right)


def schmidt_rank(psi: PureState, bipartition, rtol: float = RANK_RTOL) -> int:
    """Number of Schmidt coefficients above ``rtol`` times the largest."""
    s = schmidt(psi, bipartition).coeffs
    return int(np.count_nonzero(s > rtol * s[0]))


def entropy(rho: DensityMatrix, cutoff: float = ENTROPY_CUTOFF) -> float:
    """Von Neumann entropy (natural log) of ``rho / tr(rho)``."""
    ev = np.linalg.eigvalsh(rho.entries)
    if ev.min() < -PSD_TOL * max(1.0, rho.trace):
        raise InvariantViolation(f"negative eigenvalue {ev.min()!r}")
    ev = ev / ev.sum()
    ev = ev[ev > cutoff]
    return float(-np.sum(ev * np.log(ev)))


def two_qubit_concurrence_like(psi: PureState) -> float:
    """``2 * l1 * l2`` from the Schmidt coefficients of the normalized state."""
    if psi.dims != (2, 2):
        raise InputError(f"need a two-qubit state, got dims {psi.dims}")
    s = schmidt(psi.normalize(), ((0,), (1,))).coeffs
    return float(min(1.0, 2.0 * s[0] * s[1]))


# -- serialization ---------------------------------------------------------


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def state_to_json(psi: PureState) -> str:
    re = ",".join(_fmt_float(v) for v in psi.amps.real)
    im = ",".join(_fmt_float(v) for v in psi.amps.imag)
    dims = ",".join(str(d) for d in psi.dims)
    return f'{{"dims":[{dims}],"re":[{re}],"im":[{im}]}}\n'


def state_from_json(text: str) -> PureState:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed state JSON: {exc}") from exc
    if not isinstance(obj, dict) or not {"dims", "re"} <= obj.keys():
        raise InputError('state JSON needs at least "dims" and "re"')
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape or re.ndim != 1:
        raise InputError('"re" and "im" must be flat arrays of equal length')
    return PureState(tuple(obj["dims"]), re + 1j * im)


def read_state(src: str | IO[str]) -> PureState:
    if hasattr(src, "read"):
        return state_from_json(src.read())
    with open(src, encoding="utf-8") as fh:
        return state_from_json(fh.read())


def write_state(psi: PureState, dst: str | IO[str]) -> None:
    text = state_to_json(psi)
    if hasattr(dst, "write"):
        dst.write(text)
        return
    with open(dst, "w", encoding="utf-8") as fh:
        fh.write(text)
