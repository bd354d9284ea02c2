"""Gate-level IR: gate types, compilation to unitaries, rewrites, and serialization."""

from .compiler import apply_gate, apply_gates, compile, controlled, run_on_vector
from .gates import H, MCMT, MCSWAP, MCX, SWAP, Circuit, Control, Gate, UnitaryBlock, X, control_mask, cx, gate_kind, neg, pos
from .passes import (
    DEFAULT_PIPELINE,
    GateStats,
    cancel_adjacent_x,
    commutes,
    decompose_mcswap,
    decompose_mcswaps,
    expand_multi_targets,
    gate_stats,
    lower_polarities,
    merge_control_pairs,
    optimize,
    split_multi_target,
    x_count,
)
from .serialize import CircuitFormatError, from_qasm, from_text, to_qasm, to_text

__all__ = [
    "Circuit", "CircuitFormatError", "Control", "DEFAULT_PIPELINE", "Gate", "GateStats", "H", "MCMT",
    "MCSWAP", "MCX", "SWAP", "UnitaryBlock", "X", "apply_gate", "apply_gates", "cancel_adjacent_x",
    "commutes", "compile", "control_mask", "controlled", "cx", "decompose_mcswap", "decompose_mcswaps",
    "expand_multi_targets", "from_qasm", "from_text", "gate_kind", "gate_stats", "lower_polarities",
    "merge_control_pairs", "neg", "optimize", "pos", "run_on_vector", "split_multi_target", "to_qasm",
    "to_text", "x_count",
]
