from __future__ import annotations

import numpy as np
import pytest

from walkforge.circuit_ir import H, MCMT, MCSWAP, MCX, SWAP, UnitaryBlock, X
from walkforge.numerics import HADAMARD

# ---------------------------------------------------------------- reference semantics
# Built from explicit bit manipulation, one basis column at a time, so they
# share nothing with the kernels under test.


def _fires(controls, idx):
    return all(((idx >> c.qubit) & 1) == int(c.positive) for c in controls)


def _perm_image(g, idx):
    if isinstance(g, X):
        return idx ^ (1 << g.target)
    if isinstance(g, MCX):
        return idx ^ (1 << g.target) if _fires(g.controls, idx) else idx
    if isinstance(g, MCMT):
        if not _fires(g.controls, idx):
            return idx
        for t in g.targets:
            idx ^= 1 << t
        return idx
    if isinstance(g, (SWAP, MCSWAP)):
        if isinstance(g, MCSWAP) and not _fires(g.controls, idx):
            return idx
        ba, bb = (idx >> g.a) & 1, (idx >> g.b) & 1
        if ba != bb:
            idx ^= (1 << g.a) | (1 << g.b)
        return idx
    return None


def oracle_gate_matrix(g, num_qubits):
    dim = 1 << num_qubits
    out = np.zeros((dim, dim), dtype=complex)
    if isinstance(g, (H, UnitaryBlock)):
        qubits = (g.target,) if isinstance(g, H) else g.qubits
        mat = HADAMARD if isinstance(g, H) else g.matrix
        for col in range(dim):
            sub = sum(((col >> q) & 1) << j for j, q in enumerate(qubits))
            rest = col
            for q in qubits:
                rest &= ~(1 << q)
            for r in range(1 << len(qubits)):
                row = rest
                for j, q in enumerate(qubits):
                    row |= ((r >> j) & 1) << q
                out[row, col] += mat[r, sub]
        return out
    for col in range(dim):
        out[_perm_image(g, col), col] = 1
    return out


def oracle_circuit_matrix(circuit):
    u = np.eye(circuit.dim, dtype=complex)
    for g in circuit.gates:
        u = oracle_gate_matrix(g, circuit.num_qubits) @ u
    return u


def perm_oracle(circuit):
    """Permutation realized by a classical (X-type/SWAP) circuit, as a list ``image[v]``."""
    image = []
    for v in range(circuit.dim):
        x = v
        for g in circuit.gates:
            x = _perm_image(g, x)
            assert x is not None, f"non-classical gate {g}"
        image.append(x)
    return image


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# ---------------------------------------------------------------- acceptance report

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, title = marker
    if report.when == "call" or report.outcome != "passed":
        prev = _ACCEPTANCE.get(number, (title, "PASS"))[1]
        status = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
        _ACCEPTANCE[number] = (title, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
