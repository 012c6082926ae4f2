import numpy as np
import pytest

from entsec import secopt
from entsec.bundle import charts as ch
from entsec.bundle import clutching as cl
from entsec.bundle.mesh import build_mesh
from entsec.errors import InputError

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)
SMALL = dict(resolution=4, restarts=2, iterations=60, seed=5)


def random_rows(rng, n, k):
    return rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))


def test_concurrence_examples():
    assert secopt.concurrence(BELL[None])[0] == pytest.approx(1.0)
    assert secopt.concurrence(np.array([[1, 0, 0, 0]]))[0] == 0.0
    assert secopt.concurrence(cl.SINGLET[None])[0] == pytest.approx(1.0)
    # sym^2 coordinates: (1, 0, 1)/sqrt2 is |00>+|11>, (0, 1, 0) is the symmetric Bell state
    np.testing.assert_allclose(secopt.concurrence(np.array([[1, 0, 1], [0, 1, 0], [1, 0, 0]])), [1, 1, 0])


def test_concurrence_matches_svd_path(rng):
    for k in (3, 4):
        v = random_rows(rng, 500, k)
        np.testing.assert_allclose(secopt.concurrence(v), secopt.schmidt_concurrence(v), atol=1e-12)
        e = secopt.concurrence(v)
        assert np.all((e >= 0) & (e <= 1 + 1e-12))


def test_entropy_measure(rng):
    assert secopt.entropy_measure(BELL[None])[0] == pytest.approx(np.log(2))
    assert secopt.entropy_measure(np.array([[1, 0, 0, 0]]))[0] == 0.0
    from entsec.states import PureState, entropy, partial_trace

    v = random_rows(rng, 20, 4)
    for row, e in zip(v, secopt.entropy_measure(v)):
        assert e == pytest.approx(entropy(partial_trace(PureState((2, 2), row), (0,))), abs=1e-10)
    with pytest.raises(InputError):
        secopt.measure_fn("negativity")


def test_fd_gradient_generic_and_fast_agree(rng):
    for k in (3, 4):
        v = random_rows(rng, 200, k)
        e1, g1 = secopt.fd_gradient(secopt.concurrence, v)
        e2, g2 = secopt.fd_gradient(lambda x: secopt.concurrence(x), v)
        np.testing.assert_array_equal(e1, e2)
        np.testing.assert_allclose(g1, g2, atol=1e-9)


def test_fd_gradient_is_a_directional_derivative(rng):
    v = random_rows(rng, 50, 4)
    e, g = secopt.fd_gradient(secopt.entropy_measure, v)
    d = random_rows(rng, 50, 4) * 1e-6
    lin = (np.conj(g) * d).real.sum(axis=1)
    actual = secopt.entropy_measure(v + d) - e
    np.testing.assert_allclose(actual, lin, atol=1e-10)


def test_decoder_backward_is_adjoint(rng):
    b = secopt.experiment_bundle("example2_tensor")
    pts = build_mesh("S4", 4).points
    dec = secopt.build_decoder(b, pts)
    theta = rng.standard_normal(dec.n_params)
    grad = random_rows(rng, len(pts), 4)
    # <grad, D theta> (real part) == <D^T grad, theta>
    lhs = (np.conj(grad) * dec.values(theta)).real.sum()
    rhs = dec.backward(grad) @ theta
    assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("name", ["example2_tensor", "example2p_sym2", "trivial_control"])
def test_decoded_section_seams_and_norm(rng, name):
    b = secopt.experiment_bundle(name)
    pts = build_mesh("S4", 6).points
    dec = secopt.build_decoder(b, pts)
    theta = rng.standard_normal(dec.n_params)
    sec = secopt.decode_section(b, pts, theta)
    assert ch.seam_check(sec) < secopt.SEAM_TOL
    np.testing.assert_allclose(np.linalg.norm(sec.home_values(), axis=1), 1.0, atol=1e-12)
    # the optimizer's north-frame values have the same entanglement as the home values
    np.testing.assert_allclose(secopt.concurrence(dec.values(theta)), secopt.entanglement_profile(sec), atol=1e-10)


def test_t4_decoder_seams(rng):
    b = secopt.experiment_bundle("t4_pullback_control")
    pts = build_mesh("T4", 4).coords
    dec = secopt.build_decoder(b, pts)
    sec = secopt.decode_section(b, pts, rng.standard_normal(dec.n_params))
    assert ch.seam_check(sec) < secopt.SEAM_TOL


def test_profile_examples():
    pts = build_mesh("S4", 6).points
    triv = ch.trivial_bundle("S4", 4, "tensor")
    prod = lambda p: np.broadcast_to(np.array([1, 0, 0, 0], complex), (len(p), 4)).copy()
    prof = secopt.entanglement_profile(ch.section_from_charts(triv, pts, prod, prod))
    assert prof.max() == 0.0
    bell = lambda p: np.broadcast_to(BELL.astype(complex), (len(p), 4)).copy()
    np.testing.assert_allclose(secopt.entanglement_profile(ch.section_from_charts(triv, pts, bell, bell)), 1.0)
    with pytest.raises(InputError):
        plain = ch.trivial_bundle("S4", 2, "plain")
        one = lambda p: np.ones((len(p), 2), dtype=complex)
        secopt.entanglement_profile(ch.section_from_charts(plain, pts, one, one))


def test_identity_section_of_tensor_conj_is_maximal():
    pts = build_mesh("S4", 6).points
    b = secopt.experiment_bundle("example2_tensor")
    ident = lambda p: np.broadcast_to(BELL.astype(complex), (len(p), 4)).copy()
    sec = ch.section_from_charts(b, pts, ident, ident)
    assert ch.seam_check(sec) < 1e-12
    np.testing.assert_allclose(secopt.entanglement_profile(sec), 1.0, atol=1e-12)


def test_singlet_experiment():
    r = secopt.experiment("example2p_singlet", secopt.OptConfig(resolution=6))
    assert r.seam_error < 1e-12 and r.extra["lambda2_seam_error"] < 1e-12
    assert r.profile_min == pytest.approx(1.0) and r.profile_max == pytest.approx(1.0)


def test_line_experiment():
    r = secopt.experiment("example1_line")
    assert r.seam_error < 1e-12
    assert r.extra["transition_winding"] == 0
    assert r.extra["min_norm"] == pytest.approx(1.0)


def test_small_optimize_is_deterministic():
    cfg = secopt.OptConfig(**SMALL)
    a = secopt.experiment("trivial_control", cfg).to_dict()
    b = secopt.experiment("trivial_control", cfg).to_dict()
    assert a == b
    assert a["seeds"] == secopt._restart_seeds(5, 2)
    assert len(a["restarts"]) == 2 and all(len(r["trace"]) > 0 for r in a["restarts"])
    assert a["seam_error"] < secopt.SEAM_TOL
    assert a["best_objective"] == pytest.approx(min(r["objective"] for r in a["restarts"]), abs=secopt.REEVAL_TOL)


def test_small_optimize_improves_trivial():
    cfg = secopt.OptConfig(resolution=4, restarts=1, iterations=400, seed=1)
    r = secopt.experiment("trivial_control", cfg)
    trace = r.restarts[0]["trace"]
    assert r.best_objective < trace[0]
    assert r.best_objective < 0.3


def test_max_min_objective():
    b = secopt.experiment_bundle("trivial_control")
    r = secopt.optimize_section(b, "max_min_entanglement", secopt.OptConfig(**SMALL))
    assert r.best_objective == pytest.approx(r.profile_min, abs=1e-9)
    with pytest.raises(InputError):
        secopt.optimize_section(b, "median", secopt.OptConfig(**SMALL))


def test_entropy_measure_run():
    r = secopt.experiment("trivial_control", secopt.OptConfig(measure="entropy", **SMALL))
    assert r.measure == "entropy" and 0 <= r.best_objective <= np.log(2) + 1e-12


def test_t4_small_run():
    r = secopt.experiment("t4_pullback_control", secopt.OptConfig(resolution=4, restarts=1, iterations=20))
    assert r.seam_error < secopt.SEAM_TOL and r.config["n_vertices"] == 4**4


def test_config_validation():
    with pytest.raises(InputError):
        secopt.OptConfig(restarts=0)
    with pytest.raises(InputError):
        secopt.OptConfig(measure="bogus")
    with pytest.raises(InputError):
        secopt.experiment("nope")
    with pytest.raises(InputError):
        secopt.optimize_section(ch.trivial_bundle("S4", 2, "plain"))


def test_lipschitz_penalty_gradient(rng):
    b = secopt.experiment_bundle("example2p_sym2")
    m = build_mesh("S4", 4)
    dec = secopt.build_decoder(b, m.points, 2, m)
    raw = random_rows(rng, m.n_vertices, 3)
    val, g = secopt._smoothness(raw, dec, 0.3, 10.0)
    assert val > 0
    h = 1e-6
    for _ in range(10):
        v, k = rng.integers(m.n_vertices), rng.integers(3)
        for unit, comp in ((1, g[v, k].real), (1j, g[v, k].imag)):
            rp, rm = raw.copy(), raw.copy()
            rp[v, k] += unit * h
            rm[v, k] -= unit * h
            fd = (secopt._smoothness(rp, dec, 0.3, 10.0)[0] - secopt._smoothness(rm, dec, 0.3, 10.0)[0]) / (2 * h)
            assert fd == pytest.approx(comp, rel=1e-4, abs=1e-6)


def test_lipschitz_penalty_is_frame_invariant(rng):
    # a globally continuous section built from charts has no penalty on a fine enough bound
    b = secopt.experiment_bundle("example2_tensor")
    m = build_mesh("S4", 6)
    dec = secopt.build_decoder(b, m.points, 2, m)
    theta = rng.standard_normal(dec.n_params)
    val, _ = secopt._smoothness(dec.values(theta), dec, 1e3, 1.0)
    assert val == 0.0


def test_trivial_sym2_max_section_profile():
    pts = build_mesh("S4", 6).points
    triv = ch.trivial_bundle("S4", 3, "sym2")
    # a|00> + b(|01>+|10>) + c|11> with M = identity, in sym^2 coordinates
    coords = cl.SYM_BASIS.conj().T @ np.array([1, 0, 0, 1]) / np.sqrt(2)
    const = lambda p: np.broadcast_to(coords.astype(complex), (len(p), 3)).copy()
    prof = secopt.entanglement_profile(ch.section_from_charts(triv, pts, const, const))
    np.testing.assert_allclose(prof, 1.0, atol=1e-12)


@pytest.mark.slow
def test_sym2_floor_does_not_drop_under_refinement():
    floors = []
    for res in (6, 8):
        cfg = secopt.OptConfig(resolution=res, restarts=2, iterations=1500, seed=11)
        floors.append(secopt.experiment("example2p_sym2", cfg).best_objective)
    assert floors[1] >= floors[0]
