"""SLOCC classification of two- and three-qubit pure states.

Three-qubit states are sorted by the ranks of their one-body reduced
matrices and, when all three are 2, by how many projective simple vectors
``|b>|c>`` lie in ``range(rho_BC)``: two for GHZ, one double root for W.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ClassificationError, InputError, NumericalInconsistencyError
from .states import RANK_RTOL, PureState, partial_trace, schmidt_rank

DISC_TOL = 1e-8
DEGENERATE_TOL = 1e-10
DEPENDENCE_TOL = 1e-8
MAX_COND = 20.0


class SloccClass(enum.Enum):
    PRODUCT_ABC = "A-B-C"
    BISEP_A_BC = "A-BC"
    BISEP_B_CA = "B-CA"
    BISEP_C_AB = "C-AB"
    W = "W"
    GHZ = "GHZ"

    @property
    def level(self) -> int:
        return _LEVEL[self]

    def geq(self, other: SloccClass) -> bool:
        """Partial order: ``self >= other`` (reachable by local maps)."""
        if self is other:
            return True
        return self.level > other.level


_LEVEL = {
    SloccClass.PRODUCT_ABC: 0,
    SloccClass.BISEP_A_BC: 1,
    SloccClass.BISEP_B_CA: 1,
    SloccClass.BISEP_C_AB: 1,
    SloccClass.W: 2,
    SloccClass.GHZ: 2,
}

BISEP_BY_FACTOR = (SloccClass.BISEP_A_BC, SloccClass.BISEP_B_CA, SloccClass.BISEP_C_AB)

REPRESENTATIVES = {
    SloccClass.GHZ: ("000", "111"),
    SloccClass.W: ("001", "010", "100"),
    SloccClass.BISEP_A_BC: ("000", "011"),
    SloccClass.BISEP_B_CA: ("000", "101"),
    SloccClass.BISEP_C_AB: ("000", "110"),
    SloccClass.PRODUCT_ABC: ("000",),
}


def representative(cls: SloccClass) -> PureState:
    """Unnormalized canonical representative, e.g. ``|000> + |111>``."""
    amps = np.zeros(8, dtype=complex)
    for label in REPRESENTATIVES[cls]:
        amps[int(label, 2)] = 1.0
    return PureState((2, 2, 2), amps)


class RootKind(enum.Enum):
    TWO_DISTINCT = "TwoDistinct"
    DOUBLE_ROOT = "DoubleRoot"
    IDENTICALLY_DEGENERATE = "IdenticallyDegenerate"


@dataclass(frozen=True)
class SimpleVectorCount:
    kind: RootKind
    a: complex
    b: complex
    c: complex

    @property
    def discriminant(self) -> complex:
        return self.b * self.b - 4.0 * self.a * self.c

    @property
    def scale(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c))


def binary_quadratic(m1: np.ndarray, m2: np.ndarray) -> tuple[complex, complex, complex]:
    """Coefficients of ``det(x*m1 + y*m2) = a x^2 + b x y + c y^2``."""
    a = m1[0, 0] * m1[1, 1] - m1[0, 1] * m1[1, 0]
    c = m2[0, 0] * m2[1, 1] - m2[0, 1] * m2[1, 0]
    b = m1[0, 0] * m2[1, 1] + m2[0, 0] * m1[1, 1] - m1[0, 1] * m2[1, 0] - m2[0, 1] * m1[1, 0]
    return complex(a), complex(b), complex(c)


def _unit_pair(v1, v2) -> tuple[np.ndarray, np.ndarray]:
    v1 = np.asarray(v1, dtype=complex).ravel()
    v2 = np.asarray(v2, dtype=complex).ravel()
    if v1.shape != (4,) or v2.shape != (4,):
        raise InputError("simple_vector_count expects two 4-vectors")
    s = np.linalg.svd(np.column_stack([v1, v2]), compute_uv=False)
    if s[0] == 0.0 or s[1] <= DEPENDENCE_TOL * s[0]:
        raise InputError("the two vectors do not span a 2-plane")
    return v1 / np.linalg.norm(v1), v2 / np.linalg.norm(v2)


def simple_vector_count(v1, v2, disc_tol: float = DISC_TOL) -> SimpleVectorCount:
    """Count projective simple vectors in ``span(v1, v2)`` inside C^2 (x) C^2.

    Vectors are reshaped row = B index, column = C index, so a vector is
    simple exactly when the 2x2 determinant vanishes.
    """
    v1, v2 = _unit_pair(v1, v2)
    a, b, c = binary_quadratic(v1.reshape(2, 2), v2.reshape(2, 2))
    scale = max(abs(a), abs(b), abs(c))
    if scale <= DEGENERATE_TOL:
        kind = RootKind.IDENTICALLY_DEGENERATE
    elif abs(b * b - 4 * a * c) <= disc_tol * scale**2:
        kind = RootKind.DOUBLE_ROOT
    else:
        kind = RootKind.TWO_DISTINCT
    return SimpleVectorCount(kind, a, b, c)


def quadratic_roots(a: complex, b: complex, c: complex) -> list[np.ndarray]:
    """Projective roots ``(x, y)`` of ``a x^2 + b x y + c y^2``.

    Dehomogenizes in whichever of ``p = y/x`` or ``q = x/y`` has the larger
    leading coefficient; the other chart's point at infinity is the
    ``x = 0`` (resp. ``y = 0``) root.
    """
    if a == 0 and c == 0:
        return [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    if abs(c) >= abs(a):
        # c p^2 + b p + a = 0, p = y / x
        ps = _solve(c, b, a)
        pts = [np.array([1.0, p]) for p in ps]
    else:
        qs = _solve(a, b, c)
        pts = [np.array([q, 1.0]) for q in qs]
    return [pt / np.linalg.norm(pt) for pt in pts]


def _solve(lead: complex, mid: complex, const: complex) -> list[complex]:
    sq = np.sqrt(complex(mid * mid - 4 * lead * const))
    # pick the sign avoiding cancellation
    den = -mid - sq if abs(-mid - sq) >= abs(-mid + sq) else -mid + sq
    if den == 0:
        return [0.0, 0.0]
    r1 = den / (2 * lead)
    r2 = (2 * const) / den
    return [complex(r1), complex(r2)]


def polish_root(a: complex, b: complex, c: complex, p: complex, steps: int = 3) -> complex:
    """Newton-polish a root of ``c p^2 + b p + a`` (stops at a double root)."""
    for _ in range(steps):
        f = c * p * p + b * p + a
        df = 2 * c * p + b
        if df == 0:
            break
        p = p - f / df
    return p


def range_basis_bc(psi: PureState) -> np.ndarray:
    """Top-2 eigenvectors of rho_BC as columns (4x2), eigenvalue order."""
    rho = partial_trace(psi, (1, 2)).entries
    _, vecs = np.linalg.eigh(rho)
    return vecs[:, ::-1][:, :2]


@dataclass(frozen=True)
class Classification:
    cls: SloccClass
    ranks: tuple[int, int, int]
    count: SimpleVectorCount | None = None

    @property
    def discriminant(self) -> float:
        if self.count is None:
            return 0.0
        return float(abs(self.count.discriminant) / self.count.scale**2)

    def to_dict(self) -> dict:
        return {"class": self.cls.value, "ranks": list(self.ranks), "discriminant": self.discriminant}


def _check_three_qubits(psi: PureState) -> None:
    if psi.dims != (2, 2, 2):
        raise InputError(f"three-qubit state required, got dims {psi.dims}")


def one_body_ranks(psi: PureState, rtol: float = RANK_RTOL) -> tuple[int, int, int]:
    _check_three_qubits(psi)
    return tuple(
        schmidt_rank(psi, ((k,), tuple(j for j in range(3) if j != k)), rtol) for k in range(3)
    )


def analyze3(psi: PureState, rtol: float = RANK_RTOL, disc_tol: float = DISC_TOL) -> Classification:
    ranks = one_body_ranks(psi, rtol)
    n_one = ranks.count(1)
    if n_one == 3:
        return Classification(SloccClass.PRODUCT_ABC, ranks)
    if n_one == 1:
        return Classification(BISEP_BY_FACTOR[ranks.index(1)], ranks)
    if n_one == 2:
        raise NumericalInconsistencyError(f"impossible rank pattern {ranks}")
    basis = range_basis_bc(psi)
    count = simple_vector_count(basis[:, 0], basis[:, 1], disc_tol)
    if count.kind is RootKind.IDENTICALLY_DEGENERATE:
        raise NumericalInconsistencyError(
            "range(rho_BC) looks entirely simple while all ranks are 2; tolerance failure"
        )
    cls = SloccClass.GHZ if count.kind is RootKind.TWO_DISTINCT else SloccClass.W
    return Classification(cls, ranks, count)


def classify3(psi: PureState, rtol: float = RANK_RTOL, disc_tol: float = DISC_TOL) -> SloccClass:
    return analyze3(psi, rtol, disc_tol).cls


def classify2(psi: PureState, rtol: float = RANK_RTOL) -> int:
    """Two-factor SLOCC class, which is just the Schmidt rank."""
    if psi.n_factors != 2:
        raise InputError("classify2 needs a bipartite state")
    return schmidt_rank(psi, ((0,), (1,)), rtol)


@dataclass(frozen=True)
class GhzNormalForm:
    """``psi = a1 b1 c1 + a2 b2 c2``; the order of the two terms is arbitrary."""

    a: tuple[np.ndarray, np.ndarray]
    b: tuple[np.ndarray, np.ndarray]
    c: tuple[np.ndarray, np.ndarray]

    def term(self, i: int) -> np.ndarray:
        return np.einsum("i,j,k->ijk", self.a[i], self.b[i], self.c[i]).ravel()

    def reconstruct(self) -> np.ndarray:
        return self.term(0) + self.term(1)


def simple_vectors_in_range(psi: PureState) -> list[np.ndarray]:
    """The two simple vectors of ``range(rho_BC)`` as 4-vectors (GHZ only)."""
    basis = range_basis_bc(psi)
    r1, r2 = basis[:, 0], basis[:, 1]
    m1, m2 = r1.reshape(2, 2), r2.reshape(2, 2)
    a, b, c = binary_quadratic(m1, m2)
    out = []
    for x, y in quadratic_roots(a, b, c):
        if abs(x) >= abs(y):
            p = polish_root(a, b, c, y / x)
            x, y = 1.0, p
        else:
            q = polish_root(c, b, a, x / y)
            x, y = q, 1.0
        out.append(x * r1 + y * r2)
    return out


def ghz_normal_form(psi: PureState) -> GhzNormalForm:
    """Two-term tensor-rank decomposition of a GHZ-class state.

    The ``a_i`` come from the biorthogonal dual of the simple vectors
    ``b_i (x) c_i``; each simple vector is re-factorized by SVD so that the
    returned terms are exactly rank one.
    """
    info = analyze3(psi)
    if info.cls is not SloccClass.GHZ:
        raise ClassificationError(f"state is {info.cls.value}, not GHZ")
    bs, cs, ws = [], [], []
    for w in simple_vectors_in_range(psi):
        u, s, vh = np.linalg.svd(w.reshape(2, 2))
        b = u[:, 0] * s[0]
        c = vh[0]
        bs.append(b)
        cs.append(c)
        ws.append(np.kron(b, c))
    W = np.column_stack(ws)
    dual = np.linalg.pinv(W)  # rows xi_i with xi_i . w_j = delta_ij
    big = psi.amps.reshape(2, 4)
    a = big @ dual.T
    nf = GhzNormalForm((a[:, 0], a[:, 1]), tuple(bs), tuple(cs))
    err = np.linalg.norm(nf.reconstruct() - psi.amps) / psi.norm
    if err > 1e-8:
        raise NumericalInconsistencyError(f"GHZ normal form reconstruction error {err:.3e}")
    return nf


def apply_local(psi: PureState, mats) -> PureState:
    """``(M_1 (x) ... (x) M_n) psi``."""
    t = psi.tensor()
    for k, m in enumerate(mats):
        m = np.asarray(m, dtype=complex)
        t = np.moveaxis(np.tensordot(m, t, axes=([1], [k])), 0, k)
    return PureState.from_tensor(t)


def random_invertible(rng: np.random.Generator, n: int = 2, max_cond: float = MAX_COND) -> np.ndarray:
    while True:
        m = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        if np.linalg.cond(m) <= max_cond:
            return m


def random_slocc_orbit(psi: PureState, seed: int, max_cond: float = MAX_COND) -> PureState:
    _check_three_qubits(psi)
    rng = np.random.default_rng(seed)
    mats = [random_invertible(rng, 2, max_cond) for _ in range(3)]
    return apply_local(psi, mats)


def permute_factors(psi: PureState, perm) -> PureState:
    """New state whose factor ``k`` is the old factor ``perm[k]``."""
    return PureState.from_tensor(np.transpose(psi.tensor(), perm))


def relabel(cls: SloccClass, perm) -> SloccClass:
    """Class label after :func:`permute_factors` with the same ``perm``."""
    if cls in BISEP_BY_FACTOR:
        old = BISEP_BY_FACTOR.index(cls)
        return BISEP_BY_FACTOR[list(perm).index(old)]
    return cls
