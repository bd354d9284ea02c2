"""Shift-operator circuits for line, cycle, hypercube and complete-graph walks.

Every builder returns a :class:`~walkforge.circuit_ir.Circuit` whose
position register is qubits ``0..n-1`` and coin register ``n..n+m-1``.
Gates are listed in application order, so a matrix product ``A B C`` is
emitted as ``C``'s gates, then ``B``'s, then ``A``'s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .circuit_ir import MCMT, MCSWAP, MCX, SWAP, Circuit, Control, Gate, X, controlled, cx, neg, pos
from .graphs import Complete, Cycle, Hypercube, Line, Topology, line_index, line_label

CYCLE_VARIANTS = ("full_controlled", "j_reduced_nna", "j_reduced_lra", "transposition_k")
HYPERCUBE_ORDERINGS = ("binary", "gray")
COMPLETE_MODELS = ("cnot", "swap")


@dataclass(frozen=True)
class BuilderOptions:
    """Construction choices; ``cycle_variant=None`` picks one from the cycle size."""

    cycle_variant: str | None = None
    hypercube_ordering: str = "gray"
    complete_model: str = "cnot"

    def __post_init__(self):
        if self.cycle_variant is not None and self.cycle_variant not in CYCLE_VARIANTS:
            raise ValueError(f"cycle_variant must be one of {CYCLE_VARIANTS}, got {self.cycle_variant!r}")
        if self.hypercube_ordering not in HYPERCUBE_ORDERINGS:
            raise ValueError(f"hypercube_ordering must be one of {HYPERCUBE_ORDERINGS}")
        if self.complete_model not in COMPLETE_MODELS:
            raise ValueError(f"complete_model must be one of {COMPLETE_MODELS}")


def _pattern_controls(qubits, value: int) -> tuple[Control, ...]:
    """Controls on ``qubits`` whose polarities spell ``value`` (``qubits[0]`` is the low bit)."""
    return tuple(Control(q, bool((value >> j) & 1)) for j, q in enumerate(qubits))


def _mcx(controls: tuple[Control, ...], target: int) -> Gate:
    return MCX(controls, target) if controls else X(target)


# ------------------------------------------------------------ increment / decrement


def build_increment(n: int) -> Circuit:
    """``|v> -> |v+1 mod 2**n>``: MCX ladder from the widest gate down, then X on qubit 0."""
    if n < 1:
        raise ValueError("increment needs n >= 1")
    gates = [MCX(tuple(pos(q) for q in range(j)), j) for j in range(n - 1, 0, -1)]
    return Circuit(n, 0, tuple(gates) + (X(0),))


def build_decrement(n: int) -> Circuit:
    """``|v> -> |v-1 mod 2**n>``, the increment gates in reverse order."""
    if n < 1:
        raise ValueError("decrement needs n >= 1")
    return Circuit(n, 0, tuple(reversed(build_increment(n).gates)))


# ------------------------------------------------------------ 2**n cycle


def controlled_j_lra(n: int) -> list[Gate]:
    """Coin-controlled reversal ``J = X^{(x)n}``: one CNOT from the coin to each position qubit."""
    return [cx(n, q) for q in range(n)]


def controlled_j_nna(n: int) -> list[Gate]:
    """Coin-controlled ``J`` using only nearest-neighbour CNOTs (``2n - 1`` gates)."""
    up = [cx(q + 1, q) for q in range(n - 1)]
    return up + [cx(n, n - 1)] + list(reversed(up))


def build_cycle_shift(n: int, variant: str = "j_reduced_lra") -> Circuit:
    """Shift of the ``2**n``-cycle: coin 0 increments, coin 1 decrements.

    ``full_controlled`` controls a whole increment and decrement on the coin.
    The ``j_reduced`` variants conjugate one uncontrolled increment by the
    coin-controlled reversal ``J``, since ``J inc J = dec``.
    """
    if n < 1:
        raise ValueError("cycle shift needs n >= 1")
    if variant == "full_controlled":
        gates = controlled(build_increment(n), [neg(n)]) + controlled(build_decrement(n), [pos(n)])
    elif variant in ("j_reduced_lra", "j_reduced_nna"):
        cj = controlled_j_lra(n) if variant == "j_reduced_lra" else controlled_j_nna(n)
        gates = cj + list(build_increment(n).gates) + cj
    elif variant == "transposition_k":
        return build_k_cycle_shift(1 << n) if n >= 2 else build_cycle_shift(n, "full_controlled")
    else:
        raise ValueError(f"unknown cycle variant {variant!r}")
    return Circuit(n, 1, tuple(gates))


def build_line_walk_circuit(n: int, variant: str = "j_reduced_lra") -> Circuit:
    """The ``2**n``-cycle shift; the line lives in the two's-complement relabeling."""
    if n < 2:
        raise ValueError("line walk needs n >= 2")
    return build_cycle_shift(n, variant)


# ------------------------------------------------------------ adjacent transpositions

_Parts = tuple[tuple[Gate, ...], tuple[Gate, ...], tuple[Gate, ...]]


def _basis_gate(r: int) -> _Parts:
    """Swap of ``|0 1^(r+1)>`` and ``|1 0^(r+1)>`` on qubits ``0..r+1``.

    A CNOT echelon from qubit ``r`` clears the low ``r`` bits of the first
    state, turning the pair into ``|01 0^r>``, ``|10 0^r>``; a SWAP of qubits
    ``r``, ``r+1`` controlled on the low ``r`` bits being zero exchanges them.
    """
    pre = tuple(cx(r, q) for q in range(r - 1, -1, -1))
    core = (MCSWAP(tuple(neg(q) for q in range(r)), r, r + 1),)
    return pre, core, tuple(reversed(pre))


def _control_core(parts: _Parts, ctl: Control) -> _Parts:
    pre, core, post = parts
    return pre, tuple(controlled(list(core), [ctl])), post


@lru_cache(maxsize=None)
def _sequence_4j3(n: int) -> tuple[_Parts, ...]:
    """Transpositions ``T_3, T_7, ...`` on ``n >= 3`` qubits, in index order.

    The middle element is the basis gate on all ``n`` qubits; the ``n-1``
    qubit sequence appears on each side with its core gates controlled by
    the top qubit, negatively on the left and positively on the right.
    """
    if n < 3:
        return ()
    if n == 3:
        return (_basis_gate(1),)
    sub = _sequence_4j3(n - 1)
    top = n - 1
    return (
        tuple(_control_core(p, neg(top)) for p in sub)
        + (_basis_gate(n - 2),)
        + tuple(_control_core(p, pos(top)) for p in sub)
    )


def transposition_class(i: int) -> str:
    if i % 2 == 0:
        return "2j"
    return "4j+1" if i % 4 == 1 else "4j+3"


def _transposition_parts(i: int, n: int) -> _Parts:
    if n < 1 or not 0 <= i <= (1 << n) - 2:
        raise ValueError(f"transposition index {i} outside [0, {(1 << n) - 2}] for n={n}")
    cls = transposition_class(i)
    if cls == "2j":
        # i, i+1 differ only in bit 0
        return (), (_mcx(_pattern_controls(range(1, n), i >> 1), 0),), ()
    if cls == "4j+1":
        # ...01 <-> ...10: swap bits 0 and 1 under the shared prefix
        return (), (MCSWAP(_pattern_controls(range(2, n), i >> 2), 0, 1),), ()
    return _sequence_4j3(n)[i >> 2]


def build_transposition(i: int, n: int) -> Circuit:
    """Circuit exchanging basis states ``i`` and ``i+1`` of an ``n``-qubit register."""
    pre, core, post = _transposition_parts(i, n)
    return Circuit(n, 0, pre + core + post)


def _controlled_transposition(i: int, n: int, controls) -> list[Gate]:
    # the echelons are self-inverse, so only the core needs the extra controls
    pre, core, post = _transposition_parts(i, n)
    return list(pre) + controlled(list(core), controls) + list(post)


def truncated_increment_order(k: int) -> list[int]:
    """Application order of ``T_0 T_1 ... T_{k-2}``: rightmost factor first."""
    return list(range(k - 2, -1, -1))


def truncated_decrement_order(k: int) -> list[int]:
    """Application order of ``T_{k-2} ... T_1 T_0``."""
    return list(range(k - 1))


def build_truncated_increment(k: int, n: int) -> Circuit:
    """``v -> v+1 mod k`` on states below ``k``; states ``>= k`` fixed."""
    gates: list[Gate] = []
    for i in truncated_increment_order(k):
        gates += _controlled_transposition(i, n, ())
    return Circuit(n, 0, tuple(gates))


def build_truncated_decrement(k: int, n: int) -> Circuit:
    gates: list[Gate] = []
    for i in truncated_decrement_order(k):
        gates += _controlled_transposition(i, n, ())
    return Circuit(n, 0, tuple(gates))


def build_k_cycle_shift(k: int) -> Circuit:
    """Shift of the ``k``-cycle embedded in ``ceil(log2 k)`` position qubits.

    Coin 0 applies the truncated increment and coin 1 the truncated
    decrement, both made from coin-controlled adjacent transpositions.
    """
    if k < 3:
        raise ValueError("k-cycle needs k >= 3")
    n = (k - 1).bit_length()
    gates: list[Gate] = []
    for i in truncated_increment_order(k):
        gates += _controlled_transposition(i, n, [neg(n)])
    for i in truncated_decrement_order(k):
        gates += _controlled_transposition(i, n, [pos(n)])
    return Circuit(n, 1, tuple(gates))


# ------------------------------------------------------------ hypercube


def gray_sequence(m: int) -> list[int]:
    """All ``m``-bit values, consecutive ones one bit apart, starting from all ones."""
    ones = (1 << m) - 1
    return [ones ^ k ^ (k >> 1) for k in range(1 << m)]


def build_hypercube_shift(dimension: int, self_loops: int = 0, ordering: str = "gray") -> Circuit:
    """Coin value ``c < dimension`` flips position bit ``c``; the remaining coin values are loops.

    ``ordering`` only changes the order of the (mutually commuting) gates:
    natural binary order of the control patterns, or a gray-code walk from
    the all-ones pattern so that polarity-lowering X gates cancel.
    """
    total = dimension + self_loops
    if dimension < 1 or self_loops < 0 or total & (total - 1):
        raise ValueError(f"dimension + self_loops must be a power of two, got {dimension} + {self_loops}")
    m = total.bit_length() - 1
    coin = range(dimension, dimension + m)
    if ordering == "binary":
        order = list(range(total))
    elif ordering == "gray":
        order = gray_sequence(m)
    else:
        raise ValueError(f"unknown hypercube ordering {ordering!r}")
    gates = [_mcx(_pattern_controls(coin, c), c) for c in order if c < dimension]
    return Circuit(dimension, m, tuple(gates))


# ------------------------------------------------------------ complete graph


def build_complete_shift(m: int, model: str = "cnot") -> Circuit:
    """``K_{2**m}`` shift on ``m`` position and ``m`` coin qubits.

    ``cnot``: coin qubit ``m+i`` controls position qubit ``i``, giving
    ``|c>|v> -> |c>|v xor c>``. ``swap``: the two registers are exchanged,
    ``|c>|v> -> |v>|c>``.
    """
    if m < 1:
        raise ValueError("complete-graph shift needs m >= 1")
    if model == "cnot":
        gates: list[Gate] = [cx(m + i, i) for i in range(m)]
    elif model == "swap":
        gates = [SWAP(m + i, i) for i in range(m)]
    else:
        raise ValueError(f"unknown complete-graph model {model!r}")
    return Circuit(m, m, tuple(gates))


def build_complete_network(m: int) -> Circuit:
    """Unsimplified ``K_{2**m}`` shift: one fully coin-controlled X-mask per coin value."""
    if m < 1:
        raise ValueError("complete-graph shift needs m >= 1")
    coin = range(m, 2 * m)
    gates = [
        MCMT(_pattern_controls(coin, c), tuple(i for i in range(m) if (c >> i) & 1)) for c in range(1, 1 << m)
    ]
    return Circuit(m, m, tuple(gates))


# ------------------------------------------------------------ dispatch


def resolve_cycle_variant(t: Topology, options: BuilderOptions) -> str:
    nodes = t.nodes
    pow2 = nodes & (nodes - 1) == 0
    if options.cycle_variant is None:
        return "j_reduced_lra" if pow2 else "transposition_k"
    if not pow2 and options.cycle_variant != "transposition_k":
        raise ValueError(
            f"a {nodes}-cycle is not a power of two; only the transposition_k variant can build it "
            f"(got {options.cycle_variant})"
        )
    return options.cycle_variant


def build_shift(t: Topology, options: BuilderOptions | None = None) -> Circuit:
    options = options or BuilderOptions()
    if isinstance(t, (Line, Cycle)):
        variant = resolve_cycle_variant(t, options)
        if variant == "transposition_k":
            return build_k_cycle_shift(t.nodes) if t.nodes >= 3 else build_cycle_shift(1, "full_controlled")
        return build_cycle_shift(t.position_qubits, variant)
    if isinstance(t, Hypercube):
        return build_hypercube_shift(t.dimension, t.self_loops, options.hypercube_ordering)
    if isinstance(t, Complete):
        return build_complete_shift(t.position_qubits, options.complete_model)
    raise TypeError(f"unsupported topology {t!r}")


__all__ = [
    "BuilderOptions",
    "COMPLETE_MODELS",
    "CYCLE_VARIANTS",
    "HYPERCUBE_ORDERINGS",
    "build_complete_network",
    "build_complete_shift",
    "build_cycle_shift",
    "build_decrement",
    "build_hypercube_shift",
    "build_increment",
    "build_k_cycle_shift",
    "build_line_walk_circuit",
    "build_shift",
    "build_transposition",
    "build_truncated_decrement",
    "build_truncated_increment",
    "controlled_j_lra",
    "controlled_j_nna",
    "gray_sequence",
    "line_index",
    "line_label",
    "resolve_cycle_variant",
    "transposition_class",
]
