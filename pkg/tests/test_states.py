import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entsec.errors import ContractViolation, InputError, InvariantViolation
from entsec.states import (
    DensityMatrix,
    PureState,
    entropy,
    partial_trace,
    read_state,
    schmidt,
    schmidt_rank,
    state_from_json,
    state_to_json,
    two_qubit_concurrence_like,
    write_state,
)
from entsec.tqft import borromean_state

from helpers import random_state

BELL = PureState((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_purestate_validation():
    with pytest.raises(InputError):
        PureState((2, 2), np.ones(3))
    with pytest.raises(InputError):
        PureState((2, 2), np.zeros(4))
    with pytest.raises(InputError):
        PureState((1, 2), np.ones(2))
    with pytest.raises(InputError):
        PureState((2,) * 5, np.ones(32))
    with pytest.raises(InvariantViolation):
        PureState((2, 2), np.ones(4), normalized=True)
    assert PureState((2, 2), np.ones(4) / 2, normalized=True).norm == pytest.approx(1.0)


def test_purestate_is_immutable():
    psi = PureState.basis("01")
    with pytest.raises(ValueError):
        psi.amps[0] = 1.0


def test_basis_ordering_first_factor_slowest():
    assert np.argmax(np.abs(PureState.basis("100").amps)) == 4
    assert np.argmax(np.abs(PureState.basis("001").amps)) == 1


def test_partial_trace_bell_is_half_identity():
    rho = partial_trace(BELL, {0})
    np.testing.assert_allclose(rho.entries, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_product_is_projector():
    rho = partial_trace(PureState.basis("000"), {1, 2})
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    np.testing.assert_allclose(rho.entries, expected)


def test_partial_trace_borromean_table():
    d = 0.5
    rho = partial_trace(borromean_state(d), {1, 2}).entries.real
    d2 = d * d
    table = np.array(
        [
            [d2 + 1, 2 * d, 2 * d, d2 + 2],
            [2 * d, d2 + 1, d2 + 1, 3 * d],
            [2 * d, d2 + 1, d2 + 1, 3 * d],
            [d2 + 2, 3 * d, 3 * d, d2 + 4],
        ]
    )
    np.testing.assert_allclose(rho, table, atol=1e-14)


def test_partial_trace_contract():
    psi = PureState.basis("000")
    with pytest.raises(ContractViolation):
        partial_trace(psi, set())
    with pytest.raises(ContractViolation):
        partial_trace(psi, {0, 1, 2})
    with pytest.raises(InputError):
        partial_trace(psi, {3})


def test_partial_trace_trace_is_squared_norm(rng):
    psi = PureState((2, 3, 2), rng.standard_normal(12) * 3)
    for keep in ({0}, {1}, {0, 2}):
        assert partial_trace(psi, keep).trace == pytest.approx(psi.norm**2, rel=1e-12)


def test_density_matrix_invariants():
    with pytest.raises(InvariantViolation):
        DensityMatrix(2, np.array([[1, 1j], [0, 1]]))
    with pytest.raises(InvariantViolation):
        DensityMatrix(2, np.diag([1.0, -0.1]))
    with pytest.raises(InputError):
        DensityMatrix(3, np.eye(2))


@pytest.mark.parametrize(
    "amps, coeffs",
    [
        (np.array([1, 0, 0, 1]) / np.sqrt(2), (1 / np.sqrt(2), 1 / np.sqrt(2))),
        (np.array([0, 1, 0, 0]), (1.0, 0.0)),
        (np.array([np.cos(np.pi / 6), 0, 0, np.sin(np.pi / 6)]), (np.cos(np.pi / 6), np.sin(np.pi / 6))),
    ],
)
def test_schmidt_examples(amps, coeffs):
    sd = schmidt(PureState((2, 2), amps), ({0}, {1}))
    np.testing.assert_allclose(sd.coeffs, coeffs, atol=1e-15)


def test_schmidt_shapes_and_errors():
    psi = PureState((2, 3, 2), np.arange(1, 13))
    sd = schmidt(psi, ({1}, {0, 2}))
    assert len(sd.coeffs) == 3
    assert np.all(np.diff(sd.coeffs) <= 0)
    with pytest.raises(ContractViolation):
        schmidt(psi, ({0}, {1}))
    with pytest.raises(ContractViolation):
        schmidt(psi, ({0, 1}, {1, 2}))


def test_schmidt_reconstruction_many(rng):
    worst = 0.0
    for _ in range(1000):
        dims = tuple(rng.integers(2, 4, size=rng.integers(2, 4)))
        psi = PureState(dims, rng.standard_normal(math.prod(dims)) + 1j * rng.standard_normal(math.prod(dims)))
        k = int(rng.integers(1, len(dims)))
        left = tuple(sorted(rng.choice(len(dims), size=k, replace=False)))
        right = tuple(i for i in range(len(dims)) if i not in left)
        sd = schmidt(psi, (left, right))
        assert np.sum(sd.coeffs**2) == pytest.approx(psi.norm**2, abs=1e-10)
        worst = max(worst, np.max(np.abs(sd.reconstruct(dims).amps - psi.amps)))
    assert worst < 1e-9


def test_schmidt_rank_examples():
    assert schmidt_rank(PureState.basis("00"), ({0}, {1})) == 1
    assert schmidt_rank(BELL, ({0}, {1})) == 2


def test_entropy_examples():
    assert entropy(partial_trace(BELL, {0})) == pytest.approx(np.log(2), abs=1e-12)
    assert entropy(partial_trace(PureState.basis("01"), {0})) == 0.0
    rho = DensityMatrix(2, np.diag([0.64, 0.36]))
    oracle = -0.64 * np.log(0.64) - 0.36 * np.log(0.36)
    assert entropy(rho) == pytest.approx(oracle, abs=1e-14)
    assert entropy(rho) == pytest.approx(0.65342, abs=1e-5)


def test_entropy_normalizes_trace():
    assert entropy(DensityMatrix(2, np.eye(2) * 7)) == pytest.approx(np.log(2))


def test_entropy_bounds(rng):
    for _ in range(50):
        psi = random_state(rng, (2, 3))
        s = entropy(partial_trace(psi, {1}))
        assert 0 <= s <= np.log(2) + 1e-12


def test_complementary_spectra_and_entropies(rng):
    for _ in range(1000):
        psi = random_state(rng)
        for left in ({0}, {1}, {2}):
            right = {0, 1, 2} - left
            a, b = partial_trace(psi, left), partial_trace(psi, right)
            ea, eb = a.eigenvalues(), b.eigenvalues()
            np.testing.assert_allclose(ea[:2], eb[:2], atol=1e-9)
            assert np.all(np.abs(eb[2:]) < 1e-9)
            assert entropy(a) == pytest.approx(entropy(b), abs=1e-9)


def test_rank_rho_a_equals_rank_rho_bc(rng):
    states = [random_state(rng), PureState.basis("010"), PureState((2, 2, 2), np.eye(8)[0] + np.eye(8)[3])]
    for psi in states:
        assert partial_trace(psi, {0}).rank() == partial_trace(psi, {1, 2}).rank()


def test_concurrence_like_examples():
    assert two_qubit_concurrence_like(PureState.basis("00")) == pytest.approx(0.0, abs=1e-15)
    assert two_qubit_concurrence_like(BELL) == pytest.approx(1.0)
    psi = PureState((2, 2), [np.cos(np.pi / 6), 0, 0, np.sin(np.pi / 6)])
    assert two_qubit_concurrence_like(psi) == pytest.approx(np.sin(np.pi / 3), abs=1e-14)
    with pytest.raises(InputError):
        two_qubit_concurrence_like(PureState.basis("000"))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=16, max_size=16))
def test_json_round_trip_bit_exact(vals):
    v = np.array(vals[:8]) + 1j * np.array(vals[8:])
    if not np.any(v):
        return
    psi = PureState((2, 2, 2), v)
    back = state_from_json(state_to_json(psi))
    assert back.dims == psi.dims
    assert np.array_equal(back.amps, psi.amps)


def test_read_write_files(tmp_path):
    ghz = PureState((2, 2, 2), np.eye(8)[0] + np.eye(8)[7])
    path = tmp_path / "ghz.json"
    write_state(ghz, str(path))
    again = read_state(str(path))
    buf = io.StringIO()
    write_state(again, buf)
    assert buf.getvalue() == path.read_text()


def test_read_errors():
    with pytest.raises(InputError):
        state_from_json('{"dims":[2,2],"re":[1,0,0]}')
    with pytest.raises(InputError):
        state_from_json("{not json")
    with pytest.raises(InputError):
        state_from_json('{"dims":[2,2]}')


def test_borromean_serialization_values():
    text = state_to_json(borromean_state(0.5))
    assert '"re":[0.5,1,1,0.5,1,0.5,0.5,2]' in text
