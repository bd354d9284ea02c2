import numpy as np
import pytest

from conftest import oracle_gate_matrix
from walkforge import kernels
from walkforge.circuit_ir import MCSWAP, MCX, UnitaryBlock, control_mask
from walkforge.numerics import HADAMARD

BACKENDS = kernels.available_backends()


def _random_state(rng, nq, batch=3):
    s = rng.normal(size=(1 << nq, batch)) + 1j * rng.normal(size=(1 << nq, batch))
    return np.ascontiguousarray(s)


def test_compiled_backend_is_built_and_active():
    assert "cython" in BACKENDS
    assert kernels.BACKEND in ("cython", "python")


def test_get_backend_errors():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("trial", range(10))
def test_mcx_matches_oracle(backend, trial, rng):
    k = kernels.get_backend(backend)
    nq = 5
    qubits = rng.permutation(nq)
    nctl = int(rng.integers(0, 4))
    target, ctl_qubits = int(qubits[0]), qubits[1:1 + nctl]
    g = MCX(tuple((int(q), bool(rng.integers(2))) for q in ctl_qubits), target)
    s = _random_state(rng, nq)
    expected = oracle_gate_matrix(g, nq) @ s
    mask, value = control_mask(g.controls)
    k.apply_mcx(s, mask, value, target)
    assert np.allclose(s, expected, atol=1e-14)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("trial", range(10))
def test_mcswap_matches_oracle(backend, trial, rng):
    k = kernels.get_backend(backend)
    nq = 5
    qubits = rng.permutation(nq)
    nctl = int(rng.integers(0, 3))
    a, b, ctl_qubits = int(qubits[0]), int(qubits[1]), qubits[2:2 + nctl]
    g = MCSWAP(tuple((int(q), bool(rng.integers(2))) for q in ctl_qubits), a, b)
    s = _random_state(rng, nq)
    expected = oracle_gate_matrix(g, nq) @ s
    mask, value = control_mask(g.controls)
    k.apply_mcswap(s, mask, value, a, b)
    assert np.allclose(s, expected, atol=1e-14)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("target", range(4))
def test_1q_matches_oracle(backend, target, rng):
    k = kernels.get_backend(backend)
    theta = rng.uniform(0, 2 * np.pi)
    mat = np.array([[np.cos(theta), -np.sin(theta) * 1j], [-np.sin(theta) * 1j, np.cos(theta)]])
    s = _random_state(rng, 4)
    expected = oracle_gate_matrix(UnitaryBlock((target,), mat), 4) @ s
    k.apply_1q(s, target, np.ascontiguousarray(mat))
    assert np.allclose(s, expected, atol=1e-14)


@pytest.mark.parametrize("qubits", [(0, 1), (2, 0), (3, 1, 0), (1, 3)])
def test_dense_matches_oracle(qubits, rng):
    d = 1 << len(qubits)
    q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    s = _random_state(rng, 4)
    expected = oracle_gate_matrix(UnitaryBlock(qubits, q), 4) @ s
    kernels.apply_dense(s, qubits, q)
    assert np.allclose(s, expected, atol=1e-13)


def test_backends_agree_on_hadamard(rng):
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    s1 = _random_state(rng, 6)
    s2 = s1.copy()
    for q in range(6):
        kernels.get_backend("python").apply_1q(s1, q, HADAMARD)
        kernels.get_backend("cython").apply_1q(s2, q, HADAMARD)
    assert np.allclose(s1, s2, atol=1e-14)


def test_pure_python_env_var_selects_fallback():
    import subprocess
    import sys

    code = "import walkforge.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"WALKFORGE_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
