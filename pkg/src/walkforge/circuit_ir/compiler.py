"""Gate semantics: in-place application to amplitudes and compilation to unitaries."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .. import kernels
from ..numerics import HADAMARD, direct_sum, identity
from .gates import H, MCMT, MCSWAP, MCX, SWAP, Circuit, Control, Gate, UnitaryBlock, X, control_mask


def apply_gate(state: np.ndarray, g: Gate) -> None:
    """Apply ``g`` in place to every column of ``state`` (shape ``(dim, batch)``)."""
    if isinstance(g, X):
        kernels.apply_mcx(state, 0, 0, g.target)
    elif isinstance(g, MCX):
        mask, value = control_mask(g.controls)
        kernels.apply_mcx(state, mask, value, g.target)
    elif isinstance(g, MCMT):
        mask, value = control_mask(g.controls)
        for t in g.targets:
            kernels.apply_mcx(state, mask, value, t)
    elif isinstance(g, SWAP):
        kernels.apply_mcswap(state, 0, 0, g.a, g.b)
    elif isinstance(g, MCSWAP):
        mask, value = control_mask(g.controls)
        kernels.apply_mcswap(state, mask, value, g.a, g.b)
    elif isinstance(g, H):
        kernels.apply_1q(state, g.target, HADAMARD)
    elif isinstance(g, UnitaryBlock):
        if len(g.qubits) == 1:
            kernels.apply_1q(state, g.qubits[0], g.matrix)
        else:
            kernels.apply_dense(state, g.qubits, g.matrix)
    else:
        raise TypeError(f"malformed gate {g!r}")


def apply_gates(state: np.ndarray, gates: Iterable[Gate]) -> np.ndarray:
    for g in gates:
        apply_gate(state, g)
    return state


def run_on_vector(c: Circuit, vec) -> np.ndarray:
    state = np.array(vec, dtype=np.complex128).reshape(-1, 1)
    if state.shape[0] != c.dim:
        raise ValueError(f"vector of length {state.shape[0]} does not fit a {c.num_qubits}-qubit circuit")
    return apply_gates(state, c.gates).ravel()


_CLASSICAL = (X, MCX, MCMT, SWAP, MCSWAP)


def compile(c: Circuit) -> np.ndarray:
    """Unitary of ``c``; the first gate is the rightmost factor of the product."""
    if all(isinstance(g, _CLASSICAL) for g in c.gates):
        # permutation circuits: track where each basis index goes, O(gates * dim)
        src = apply_gates(np.arange(c.dim, dtype=np.complex128).reshape(-1, 1), c.gates)
        u = np.zeros((c.dim, c.dim), dtype=np.complex128)
        u[np.arange(c.dim), src.real.astype(np.int64).ravel()] = 1.0
        return u
    return apply_gates(identity(c.dim), c.gates)


def controlled(g: Gate | Circuit | Sequence[Gate], controls: Sequence[Control]) -> list[Gate]:
    """Add ``controls`` to ``g`` (a gate, gate list, or circuit).

    Controlling a gate sequence controls each gate; this is exact because the
    new controls never coincide with a gate's qubits.
    """
    controls = tuple(controls)
    if isinstance(g, Circuit):
        g = g.gates
    if isinstance(g, (list, tuple)):
        return [h for gate in g for h in controlled(gate, controls)]
    cq = {c.qubit for c in controls}
    if cq & set(g.qubits):
        raise ValueError(f"control qubits {sorted(cq)} collide with gate qubits {list(g.qubits)}")
    if not controls:
        return [g]
    if isinstance(g, X):
        return [MCX(controls, g.target)]
    if isinstance(g, MCX):
        return [MCX(g.controls + controls, g.target)]
    if isinstance(g, MCMT):
        return [MCMT(g.controls + controls, g.targets)]
    if isinstance(g, SWAP):
        return [MCSWAP(controls, g.a, g.b)]
    if isinstance(g, MCSWAP):
        return [MCSWAP(g.controls + controls, g.a, g.b)]
    if isinstance(g, H):
        g = UnitaryBlock((g.target,), HADAMARD)
    if isinstance(g, UnitaryBlock):
        # control bits sit above the target bits, so the controlled matrix is
        # identity blocks with g.matrix at the block indexed by the polarity pattern
        pattern = sum(1 << i for i, c in enumerate(controls) if c.positive)
        d = g.matrix.shape[0]
        blocks = [g.matrix if j == pattern else identity(d) for j in range(1 << len(controls))]
        return [UnitaryBlock(g.qubits + tuple(c.qubit for c in controls), direct_sum(blocks))]
    raise TypeError(f"cannot control {g!r}")
