"""Searching for nonvanishing sections of low entanglement.

A section is decoded from two chart-local fields, ``G`` on the north chart
and ``H`` on the south chart, blended across the collar with a smoothstep
``beta``:

    north = (1 - beta) G + beta c H,    south = (1 - beta) c^-1 G + beta H.

``north = c south`` then holds identically on the overlap, so every decoded
section passes the seam check by construction. Both fields are low-degree
polynomials in the base coordinates, which keeps the search space smooth
and prevents per-vertex escapes from the obstruction.

The pointwise measure is differentiated by central finite differences in the
fiber, then pulled back exactly through the linear decoder.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .bundle import charts as ch
from .bundle import clutching as cl
from .bundle.invariants import winding_c1
from .bundle.mesh import Mesh, build_mesh, grid_edges
from .errors import InputError

MEASURES = ("concurrence", "entropy")
OBJECTIVES = ("min_max_entanglement", "max_min_entanglement")
EXPERIMENTS = (
    "example1_line",
    "example2_tensor",
    "example2p_sym2",
    "example2p_singlet",
    "t4_pullback_control",
    "trivial_control",
)
SEAM_TOL = 1e-8
FD_STEP = 1e-5
REEVAL_TOL = 1e-9


# -- pointwise measures ------------------------------------------------------


def _as_two_qubit(values: np.ndarray) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    if v.shape[-1] == 3:
        return v @ cl.SYM_BASIS.T
    if v.shape[-1] == 4:
        return v
    raise InputError(f"entanglement needs fiber dimension 3 (sym2) or 4, got {v.shape[-1]}")


def concurrence(values: np.ndarray) -> np.ndarray:
    """``2 |det F| / |F|^2`` for each row ``F`` reshaped to 2x2.

    Rank-3 rows are sym^2 coordinates in :data:`SYM_BASIS`, for which the
    embedded determinant is ``a c - b^2 / 2``.
    """
    f = np.asarray(values, dtype=complex)
    if f.shape[-1] == 3:
        det = f[..., 0] * f[..., 2] - 0.5 * f[..., 1] ** 2
    elif f.shape[-1] == 4:
        det = f[..., 0] * f[..., 3] - f[..., 1] * f[..., 2]
    else:
        raise InputError(f"entanglement needs fiber dimension 3 (sym2) or 4, got {f.shape[-1]}")
    n2 = (f.real**2 + f.imag**2).sum(axis=-1)
    return 2 * np.abs(det) / n2


def entropy_measure(values: np.ndarray) -> np.ndarray:
    """Entanglement entropy (nats) as a function of the concurrence."""
    e = np.clip(concurrence(values), 0.0, 1.0)
    p = 0.5 * (1 + np.sqrt(1 - e * e))
    q = 1 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -p * np.log(p) - np.where(q > 0, q * np.log(np.where(q > 0, q, 1)), 0.0)
    return out


_MEASURE_FN = {"concurrence": concurrence, "entropy": entropy_measure}


def measure_fn(name: str):
    if name not in _MEASURE_FN:
        raise InputError(f"unknown measure {name!r}; choose from {MEASURES}")
    return _MEASURE_FN[name]


def schmidt_concurrence(values: np.ndarray) -> np.ndarray:
    """Same as :func:`concurrence`, via singular values (independent path)."""
    f = _as_two_qubit(values)
    s = np.linalg.svd(f.reshape(-1, 2, 2), compute_uv=False)
    s = s / np.linalg.norm(s, axis=-1, keepdims=True)
    return 2 * s[:, 0] * s[:, 1]


def entanglement_profile(section: ch.SectionField, measure: str = "concurrence") -> np.ndarray:
    """Pointwise entanglement of a section at its home-chart values."""
    if section.bundle.kind == "plain":
        raise InputError("entanglement is not defined for a fiber without tensor structure")
    vals = section.home_values()
    if section.bundle.kind == "lambda2":
        vals = vals * cl.SINGLET  # Lambda^2 sits inside A (x) A as multiples of the singlet
    fn = measure_fn(measure)
    if measure == "concurrence":
        return schmidt_concurrence(vals)
    return fn(vals)


def fd_gradient(fn, values: np.ndarray, step: float = FD_STEP) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise measure and its complex gradient ``dE/dRe + i dE/dIm``.

    Central differences per fiber component, step relative to ``|F_v|``;
    all perturbations are evaluated in one batch.
    """
    v = np.asarray(values, dtype=complex)
    k = v.shape[-1]
    h = step * np.linalg.norm(v, axis=-1)
    if fn is concurrence and k in (3, 4):
        return _concurrence_fd(v, h)
    dirs = np.concatenate([np.eye(k), 1j * np.eye(k)])  # (2k, k)
    pert = dirs[:, None, :] * h[None, :, None]
    e = fn(np.concatenate([v[None], v[None] + pert, v[None] - pert]))
    ep, em = e[1 : 2 * k + 1], e[2 * k + 1 :]
    d = (ep - em) / (2 * h)
    grad = (d[:k] + 1j * d[k:]).T
    return e[0], grad


def _concurrence_fd(v: np.ndarray, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Same central differences as the generic path, for the concurrence.

    A single-entry perturbation ``z`` changes ``det`` by ``z * cof_k``
    (plus ``-z^2 / 2`` on the sym^2 middle entry) and ``|F|^2`` by
    ``2 Re(conj(v_k) z) + |z|^2``, so the perturbed values are formed
    directly instead of re-evaluating whole rows.
    """
    k = v.shape[-1]
    if k == 3:
        det = v[:, 0] * v[:, 2] - 0.5 * v[:, 1] ** 2
        cof = np.stack([v[:, 2], -v[:, 1], v[:, 0]], axis=1)
        quad = np.array([0.0, -0.5, 0.0])
    else:
        det = v[:, 0] * v[:, 3] - v[:, 1] * v[:, 2]
        cof = np.stack([v[:, 3], -v[:, 2], -v[:, 1], v[:, 0]], axis=1)
        quad = np.zeros(4)
    n2 = (v.real**2 + v.imag**2).sum(axis=1)
    e = 2 * np.abs(det) / n2
    hh = h[:, None]
    grad = np.empty_like(v)
    for unit, part in ((1.0, 0), (1j, 1)):
        z = unit * hh
        zc = (np.conj(v) * z).real
        plus = 2 * np.abs(det[:, None] + z * cof + quad * z * z) / (n2[:, None] + 2 * zc + hh * hh)
        minus = 2 * np.abs(det[:, None] - z * cof + quad * z * z) / (n2[:, None] - 2 * zc + hh * hh)
        d = (plus - minus) / (2 * hh)
        if part == 0:
            grad.real = d
        else:
            grad.imag = d
    return e, grad


# -- decoder -----------------------------------------------------------------


def smoothstep(chi: np.ndarray) -> np.ndarray:
    t = np.clip((np.asarray(chi) - ch.COLLAR[0]) / (ch.COLLAR[1] - ch.COLLAR[0]), 0.0, 1.0)
    return t * t * (3 - 2 * t)


def _monomials(x: np.ndarray, degree: int) -> np.ndarray:
    cols = [np.ones(x.shape[0])]
    for d in range(1, degree + 1):
        for idx in itertools.combinations_with_replacement(range(x.shape[1]), d):
            cols.append(np.prod(x[:, idx], axis=1))
    return np.stack(cols, axis=1)


def _features(bundle: ch.ChartedBundle, pts: np.ndarray, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis functions for the north field ``G`` and the south field ``H``."""
    if bundle.base == "T4":
        y = (pts - np.pi) / np.pi
        trig = np.concatenate([np.cos(pts), np.sin(pts)], axis=1)
        return _monomials(y, degree), _monomials(trig, degree)
    sp = bundle.sphere_points(pts)
    m = _monomials(sp, degree)
    return m, m


@dataclass(frozen=True)
class Decoder:
    """Linear map from parameters to fiber values (arrays only, picklable).

    Values are produced in the north frame, ``(1 - beta) phi_G . G +
    beta c (phi_H . H)``, at every vertex. Home-chart values differ from
    these by the unitary local transition, which changes neither the norm
    nor the entanglement, so the optimizer never needs the south frame.
    """

    phi_g: np.ndarray
    phi_h: np.ndarray
    beta: np.ndarray
    c: np.ndarray
    k: int
    edges: np.ndarray | None = None
    edge_len: np.ndarray | None = None
    # compare endpoints in the south frame (continuous near the south pole)
    edge_south: np.ndarray | None = None

    @property
    def n_params(self) -> int:
        return 2 * self.k * (self.phi_g.shape[1] + self.phi_h.shape[1])

    def unpack(self, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mg, mh, k = self.phi_g.shape[1], self.phi_h.shape[1], self.k
        z = theta[: len(theta) // 2] + 1j * theta[len(theta) // 2 :]
        return z[: mg * k].reshape(mg, k), z[mg * k :].reshape(mh, k)

    def pack_grad(self, gg: np.ndarray, gh: np.ndarray) -> np.ndarray:
        z = np.concatenate([gg.ravel(), gh.ravel()])
        return np.concatenate([z.real, z.imag])

    def values(self, theta: np.ndarray) -> np.ndarray:
        g, h = self.unpack(theta)
        hv = (self.c @ (self.phi_h @ h)[:, :, None])[:, :, 0]
        return (1 - self.beta)[:, None] * (self.phi_g @ g) + self.beta[:, None] * hv

    def backward(self, grad: np.ndarray) -> np.ndarray:
        """Adjoint of :meth:`values` applied to a complex gradient."""
        gg = self.phi_g.T @ ((1 - self.beta)[:, None] * grad)
        ch_ = (np.conj(np.swapaxes(self.c, -1, -2)) @ grad[:, :, None])[:, :, 0]
        gh = self.phi_h.T @ (self.beta[:, None] * ch_)
        return self.pack_grad(gg, gh)


def build_decoder(bundle: ch.ChartedBundle, pts: np.ndarray, degree: int = 2, mesh: Mesh | None = None) -> Decoder:
    pts = np.asarray(pts, dtype=float)
    phi_g, phi_h = _features(bundle, pts, degree)
    chi = bundle.chi(pts)
    beta = smoothstep(chi)
    # c is only consulted where beta > 0, away from the north pole
    c = np.ascontiguousarray(bundle.transition(pts))
    edges = length = south = None
    if mesh is not None:
        edges, length = grid_edges(mesh)
        keep = length > 0
        edges, length = edges[keep], length[keep]
        south = (chi[edges[:, 0]] > np.pi / 2) & (chi[edges[:, 1]] > np.pi / 2)
    return Decoder(phi_g, phi_h, beta, c, bundle.fiber_dim, edges, length, south)


def decode_section(bundle: ch.ChartedBundle, pts: np.ndarray, theta: np.ndarray, degree: int = 2) -> ch.SectionField:
    """Chart values of the section, each renormalized to unit fiber norm."""
    pts = np.asarray(pts, dtype=float)
    phi_g, phi_h = _features(bundle, pts, degree)
    dec = Decoder(phi_g, phi_h, np.zeros(len(pts)), np.zeros((len(pts), 1, 1)), bundle.fiber_dim)
    g, h = dec.unpack(np.asarray(theta, dtype=float))
    gv, hv = phi_g @ g, phi_h @ h
    beta = smoothstep(bundle.chi(pts))[:, None]
    c = bundle.transition(pts)
    cinv = np.conj(np.swapaxes(c, -1, -2))
    north = (1 - beta) * gv + beta * np.einsum("vij,vj->vi", c, hv)
    south = (1 - beta) * np.einsum("vij,vj->vi", cinv, gv) + beta * hv
    # one scale per point keeps north = c south exact after normalizing
    home = np.where(bundle.home_is_north(pts)[:, None], north, south)
    scale = np.linalg.norm(home, axis=-1, keepdims=True)
    nm, sm = bundle.north_mask(pts), bundle.south_mask(pts)
    north = np.where(nm[:, None], north / scale, np.nan)
    south = np.where(sm[:, None], south / scale, np.nan)
    return ch.SectionField(bundle, pts, north, south)


# -- optimizer ---------------------------------------------------------------


@dataclass(frozen=True)
class OptConfig:
    resolution: int | None = None
    restarts: int = 20
    iterations: int = 5000
    seed: int = 0
    degree: int = 2
    lr: float = 0.02
    temperatures: tuple[float, ...] = (1.0, 0.3, 0.1, 0.03, 0.01)
    # relative squared-norm floor for raw values, and its penalty weight
    norm_floor: float = 0.05
    penalty: float = 10.0
    # projective Lipschitz bound across mesh edges, and its penalty weight
    lipschitz: float = 1.0
    smooth_penalty: float = 10.0
    stall_window: int = 200
    stall_tol: float = 1e-5
    trace_every: int = 25
    measure: str = "concurrence"
    workers: int | None = None

    def __post_init__(self):
        if self.restarts < 1 or self.iterations < 1:
            raise InputError("restarts and iterations must be positive")
        if self.measure not in MEASURES:
            raise InputError(f"unknown measure {self.measure!r}")
        if self.lr <= 0 or self.norm_floor < 0 or self.penalty < 0:
            raise InputError("lr must be positive, floor and penalty nonnegative")
        if not self.temperatures or min(self.temperatures) <= 0:
            raise InputError("temperatures must be positive")


@dataclass
class RestartResult:
    seed: int
    objective: float
    iterations: int
    converged: bool
    theta: np.ndarray
    trace: list = field(default_factory=list)


def _smooth(e: np.ndarray, t: float, sign: float) -> tuple[float, np.ndarray]:
    """``t log sum exp(sign e / t)`` and its derivative in ``e``."""
    z = sign * e / t
    zm = z.max()
    w = np.exp(z - zm)
    s = w.sum()
    return float(t * (zm + np.log(s))), sign * w / s


def _penalty(raw: np.ndarray, floor: float, weight: float) -> tuple[float, np.ndarray]:
    """Hinge on relative squared norms ``r_v = |z_v|^2 / mean |z|^2``."""
    n2 = np.sum(np.abs(raw) ** 2, axis=-1)
    m = n2.mean()
    r = n2 / m
    gap = np.maximum(floor - r, 0.0)
    val = weight * float(np.mean(gap**2))
    if val == 0.0:
        return 0.0, np.zeros_like(raw)
    w = -2 * weight * gap / len(r)
    grad = (w[:, None] * 2 * raw) / m - (np.dot(w, n2) * 2 * raw) / (m * m * len(r))
    return val, grad


def _scatter(idx: np.ndarray, vals: np.ndarray, n: int) -> np.ndarray:
    out = np.empty((n, vals.shape[1]), dtype=complex)
    for k in range(vals.shape[1]):
        out[:, k] = np.bincount(idx, vals[:, k].real, n) + 1j * np.bincount(idx, vals[:, k].imag, n)
    return out


def _smoothness(raw: np.ndarray, dec: Decoder, lipschitz: float, weight: float) -> tuple[float, np.ndarray]:
    """Hinge on projective distances across mesh edges.

    ``d^2 = 1 - |<a,b>|^2 / (|a|^2 |b|^2)`` may not exceed
    ``(lipschitz * length)^2``. This keeps the normalized section
    continuous at mesh scale, so its bad set cannot hide between vertices.
    """
    if dec.edges is None or weight == 0:
        return 0.0, np.zeros_like(raw)
    n = raw.shape[0]
    # north values in rows [0, n), south-frame values in [n, 2n)
    shift = n * dec.edge_south.astype(np.intp)
    i, j = dec.edges[:, 0] + shift, dec.edges[:, 1] + shift
    ext = np.concatenate([raw, np.einsum("vji,vj->vi", dec.c.conj(), raw)])
    a, b = ext[i], ext[j]
    s = np.einsum("ek,ek->e", a.conj(), b)
    na = (a.real**2 + a.imag**2).sum(axis=1)
    nb = (b.real**2 + b.imag**2).sum(axis=1)
    s2 = s.real**2 + s.imag**2
    d2 = 1 - s2 / (na * nb)
    gap = np.maximum(d2 - (lipschitz * dec.edge_len) ** 2, 0.0)
    val = weight * float(np.sum(gap**2))
    if val == 0.0:
        return 0.0, np.zeros_like(raw)
    live = gap > 0
    i, j, a, b, s, na, nb, s2 = i[live], j[live], a[live], b[live], s[live], na[live], nb[live], s2[live]
    coef = 4 * weight * gap[live] / (na * nb)
    ga = -coef[:, None] * (b * s.conj()[:, None] - a * (s2 / na)[:, None])
    gb = -coef[:, None] * (a * s[:, None] - b * (s2 / nb)[:, None])
    g = _scatter(np.concatenate([i, j]), np.concatenate([ga, gb]), 2 * n)
    grad = g[:n] + np.einsum("vij,vj->vi", dec.c, g[n:])
    return val, grad


def _objective_sign(objective: str) -> float:
    if objective not in OBJECTIVES:
        raise InputError(f"unknown objective {objective!r}; choose from {OBJECTIVES}")
    return 1.0 if objective == "min_max_entanglement" else -1.0


def _true_value(e: np.ndarray, sign: float) -> float:
    return float(e.max() if sign > 0 else e.min())


def _run_restart(dec: Decoder, objective: str, cfg: OptConfig, seed: int) -> RestartResult:
    sign = _objective_sign(objective)
    fn = measure_fn(cfg.measure)
    rng = np.random.default_rng(seed)
    theta = rng.standard_normal(dec.n_params)
    theta /= np.linalg.norm(theta)
    m1 = np.zeros_like(theta)
    m2 = np.zeros_like(theta)
    b1, b2, eps = 0.9, 0.999, 1e-12
    best, best_theta = np.inf, theta.copy()
    trace = []
    per_stage = max(1, cfg.iterations // len(cfg.temperatures))
    it = 0
    stalled = False
    for stage, t in enumerate(cfg.temperatures):
        last = len(cfg.temperatures) - 1
        limit = cfg.iterations if stage == last else min(cfg.iterations, it + per_stage)
        history = []
        stalled = False
        while it < limit:
            raw = dec.values(theta)
            e, de = fd_gradient(fn, raw)
            val = _true_value(e, sign)
            score = sign * val
            if score < best:
                best, best_theta = score, theta.copy()
            if it % cfg.trace_every == 0:
                trace.append(val)
            smooth, w = _smooth(e, t, sign)
            pen, dpen = _penalty(raw, cfg.norm_floor, cfg.penalty)
            lip, dlip = _smoothness(raw, dec, cfg.lipschitz, cfg.smooth_penalty)
            grad = dec.backward(w[:, None] * de + dpen + dlip)
            it += 1
            m1 = b1 * m1 + (1 - b1) * grad
            m2 = b2 * m2 + (1 - b2) * grad * grad
            step = cfg.lr * (m1 / (1 - b1**it)) / (np.sqrt(m2 / (1 - b2**it)) + eps)
            theta = theta - step
            # the objective is scale invariant, so stay on the unit sphere
            theta /= np.linalg.norm(theta)
            history.append(smooth + pen + lip)
            if len(history) > cfg.stall_window:
                old = history[-cfg.stall_window - 1]
                if old - min(history[-cfg.stall_window :]) < cfg.stall_tol * max(1.0, abs(old)):
                    stalled = True
                    break
    raw = dec.values(theta)
    e = fn(raw)
    if sign * _true_value(e, sign) < best:
        best, best_theta = sign * _true_value(e, sign), theta.copy()
    return RestartResult(int(seed), float(sign * best), it, stalled, best_theta, trace)


def _restart_seeds(seed: int, n: int) -> list[int]:
    ss = np.random.SeedSequence(seed)
    return [int(s.generate_state(1)[0]) for s in ss.spawn(n)]


def _workers(cfg: OptConfig) -> int:
    if cfg.workers is not None:
        return max(1, int(cfg.workers))
    return max(1, min(cfg.restarts, os.cpu_count() or 1))


@dataclass
class OptReport:
    experiment: str
    bundle: str
    objective: str
    measure: str
    best_objective: float | None
    profile_min: float | None
    profile_max: float | None
    witness: dict | None
    seam_error: float
    converged: bool
    restarts: list
    seeds: list
    config: dict
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _mesh_points(mesh: Mesh) -> np.ndarray:
    return mesh.coords if mesh.base == "T4" else mesh.points


def optimize_section(bundle: ch.ChartedBundle, objective: str = "min_max_entanglement",
                     config: OptConfig | None = None, mesh: Mesh | None = None,
                     name: str = "custom") -> OptReport:
    """Best-of-restarts local search; deterministic for a fixed seed."""
    cfg = config or OptConfig()
    sign = _objective_sign(objective)
    if bundle.fiber_dim not in (3, 4) or bundle.kind not in ("tensor", "sym2"):
        raise InputError("optimize_section needs a tensor (rank 4) or sym2 (rank 3) bundle")
    if mesh is None:
        mesh = build_mesh(bundle.base, cfg.resolution)
    pts = _mesh_points(mesh)
    dec = build_decoder(bundle, pts, cfg.degree, mesh)
    seeds = _restart_seeds(cfg.seed, cfg.restarts)
    nw = _workers(cfg)
    if nw > 1:
        with ProcessPoolExecutor(nw) as pool:
            results = list(pool.map(_run_restart, [dec] * len(seeds), [objective] * len(seeds),
                                    [cfg] * len(seeds), seeds))
    else:
        results = [_run_restart(dec, objective, cfg, s) for s in seeds]
    order = sorted(range(len(results)), key=lambda i: sign * results[i].objective)
    best = results[order[0]]
    section = decode_section(bundle, pts, best.theta, cfg.degree)
    seam = ch.seam_check(section)
    prof = entanglement_profile(section, cfg.measure)
    reeval = _true_value(prof, sign)
    if abs(reeval - best.objective) > REEVAL_TOL:
        raise AssertionError(f"re-evaluated objective {reeval!r} differs from optimizer value {best.objective!r}")
    iw = int(np.argmax(prof))
    raw = dec.values(best.theta)
    rel = np.sum(np.abs(raw) ** 2, axis=-1)
    return OptReport(
        experiment=name,
        bundle=bundle.name,
        objective=objective,
        measure=cfg.measure,
        best_objective=reeval,
        profile_min=float(prof.min()),
        profile_max=float(prof.max()),
        witness={"vertex": iw, "point": pts[iw].tolist(), "value": float(prof[iw])},
        seam_error=seam,
        converged=bool(best.converged),
        restarts=[
            {"seed": r.seed, "objective": r.objective, "iterations": r.iterations,
             "converged": r.converged, "trace": r.trace}
            for r in results
        ],
        seeds=seeds,
        config={**asdict(cfg), "resolution": mesh.resolution, "n_vertices": mesh.n_vertices,
                "temperatures": list(cfg.temperatures), "workers": nw},
        extra={"min_relative_raw_norm": float(np.sqrt(rel.min() / rel.mean()))},
    )


# -- named experiments -------------------------------------------------------


def _hopf_tensor_conj() -> ch.ChartedBundle:
    h = ch.hopf_bundle()
    return ch.tensor_bundle(h, ch.conj_bundle(h))


def experiment_bundle(name: str) -> ch.ChartedBundle:
    if name == "example2_tensor":
        return _hopf_tensor_conj()
    if name == "example2p_sym2":
        return ch.sym2_bundle(ch.hopf_bundle())
    if name == "t4_pullback_control":
        return ch.pullback_t4(_hopf_tensor_conj())
    if name == "trivial_control":
        return ch.trivial_bundle("S4", 4, "tensor")
    raise InputError(f"experiment {name!r} has no optimization bundle")


def _example1_line() -> OptReport:
    bundle = ch.line_tensor_s2(1, -1)
    mesh = build_mesh("S2")
    one = lambda p: np.ones((len(p), 1), dtype=complex)
    section = ch.section_from_charts(bundle, mesh.points, one, one)
    seam = ch.seam_check(section)
    winding = winding_c1(lambda t: bundle.clutching(np.stack([np.cos(t), np.sin(t)], -1))[:, 0, 0])
    return OptReport(
        "example1_line", bundle.name, "none", "none", None, None, None, None, seam, True, [], [],
        {"resolution": mesh.resolution, "n_vertices": mesh.n_vertices},
        {"entanglement": "undefined for fiber dimension 1", "transition_winding": winding,
         "min_norm": section.min_norm()},
    )


def _example2p_singlet(resolution: int | None = None) -> OptReport:
    h = ch.hopf_bundle()
    a2 = ch.tensor_bundle(h, h)
    mesh = build_mesh("S4", resolution)
    singlet = lambda p: np.broadcast_to(cl.SINGLET, (len(p), 4)).copy()
    section = ch.section_from_charts(a2, mesh.points, singlet, singlet)
    seam = ch.seam_check(section)
    prof = entanglement_profile(section)
    # the same section viewed in the determinant line
    l2 = ch.lambda2_bundle(h)
    one = lambda p: np.ones((len(p), 1), dtype=complex)
    seam_l2 = ch.seam_check(ch.section_from_charts(l2, mesh.points, one, one))
    iw = int(np.argmax(prof))
    return OptReport(
        "example2p_singlet", a2.name, "none", "concurrence", float(prof.max()), float(prof.min()),
        float(prof.max()), {"vertex": iw, "point": mesh.points[iw].tolist(), "value": float(prof[iw])},
        seam, True, [], [], {"resolution": mesh.resolution, "n_vertices": mesh.n_vertices},
        {"lambda2_seam_error": seam_l2},
    )


def experiment(name: str, config: OptConfig | None = None) -> OptReport:
    """Run one of :data:`EXPERIMENTS`."""
    if name not in EXPERIMENTS:
        raise InputError(f"unknown experiment {name!r}; choose from {EXPERIMENTS}")
    cfg = config or OptConfig()
    if name == "example1_line":
        return _example1_line()
    if name == "example2p_singlet":
        return _example2p_singlet(cfg.resolution)
    return optimize_section(experiment_bundle(name), "min_max_entanglement", cfg, name=name)
