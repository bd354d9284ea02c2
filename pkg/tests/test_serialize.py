import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from test_circuit_ir import gates
from walkforge.builders import build_hypercube_shift, build_k_cycle_shift
from walkforge.circuit_ir import (
    H,
    MCX,
    Circuit,
    CircuitFormatError,
    X,
    compile,
    cx,
    from_qasm,
    from_text,
    neg,
    pos,
    to_qasm,
    to_text,
)
from walkforge.circuit_ir.serialize import _eval_angle


@settings(max_examples=60, deadline=None)
@given(st.lists(gates(), max_size=8))
def test_text_round_trip(gs):
    c = Circuit(2, 2, gs)
    back = from_text(to_text(c))
    assert back == c


@settings(max_examples=40, deadline=None)
@given(st.lists(gates(classical=True), max_size=8))
def test_qasm_round_trip_unitary(gs):
    c = Circuit(2, 2, gs)
    q = from_qasm(to_qasm(c))
    assert np.allclose(compile(q), compile(c), atol=1e-12)


def test_text_lines():
    c = Circuit(3, 2, [cx(3, 0), MCX((pos(3), neg(4)), 0), X(1), H(2)])
    lines = to_text(c).splitlines()
    assert lines[0].startswith("# walkforge")
    assert lines[1:] == ["CX q3 -> q0", "MCX +q3 -q4 -> q0", "X -> q1", "H -> q2"]


def test_text_without_header_infers_width():
    c = from_text("MCX +q3 -q4 -> q0\n\n# comment\nSWAP -> q1, q2\n")
    assert c.num_qubits == 5
    assert from_text("X -> q0", position_qubits=2, coin_qubits=1).num_qubits == 3


@pytest.mark.parametrize(
    "bad",
    ["FOO -> q0", "X q1", "X -> q0, q1", "SWAP -> q0", "X +q1 -> q0", "MCX ?q1 -> q0", "CX q1 -> r0", "UNITARY -> q0",
     "MCX +q0 -> q0", "UNITARY -> q0 : [[1]]"],
)
def test_text_errors(bad):
    with pytest.raises(CircuitFormatError):
        from_text(bad)


def test_qasm_structure():
    text = to_qasm(Circuit(2, 1, [MCX((neg(2), pos(1)), 0), H(2)]))
    assert text.startswith("OPENQASM 2.0;\ninclude \"qelib1.inc\";")
    assert "qreg q[3];" in text and "ccx q[2],q[1],q[0];" in text and "x q[2];" in text


@pytest.mark.parametrize("k", [5, 11])
def test_qasm_many_controls(k):
    c = build_k_cycle_shift(k)
    text = to_qasm(c)
    assert "cu1(" in text
    assert np.allclose(compile(from_qasm(text)), compile(c), atol=1e-12)


def test_qasm_hypercube():
    c = build_hypercube_shift(4, 0, "gray")
    assert np.allclose(compile(from_qasm(to_qasm(c))), compile(c), atol=1e-12)


def test_qasm_parse_errors():
    with pytest.raises(CircuitFormatError):
        from_qasm("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n")
    with pytest.raises(CircuitFormatError):
        from_qasm("OPENQASM 2.0;\nx q[0];\n")


def test_angle_evaluator_is_restricted():
    assert abs(_eval_angle("-pi/4") + np.pi / 4) < 1e-15
    assert abs(_eval_angle("3*pi/8") - 3 * np.pi / 8) < 1e-15
    for bad in ("__import__('os')", "pi**2", "x"):
        with pytest.raises(CircuitFormatError):
            _eval_angle(bad)
