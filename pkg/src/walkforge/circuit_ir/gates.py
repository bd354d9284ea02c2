"""Gate and circuit value types.

Qubit ``q`` corresponds to bit ``q`` of a basis-state index. In a walk
circuit the position register is qubits ``0..n-1`` and the coin register
``n..n+m-1``. Controls carry a polarity: a positive control fires on ``|1>``
and a negative one on ``|0>``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from ..numerics import is_unitary


class Control(NamedTuple):
    qubit: int
    positive: bool = True

    def __str__(self) -> str:
        return f"{'+' if self.positive else '-'}q{self.qubit}"


def pos(q: int) -> Control:
    return Control(q, True)


def neg(q: int) -> Control:
    return Control(q, False)


def _controls(cs: Iterable) -> tuple[Control, ...]:
    return tuple(c if isinstance(c, Control) else Control(int(c[0]), bool(c[1])) for c in cs)


def _check_distinct(qubits: Sequence[int], what: str) -> None:
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"{what}: qubit used twice in {list(qubits)}")
    if any(q < 0 for q in qubits):
        raise ValueError(f"{what}: negative qubit index in {list(qubits)}")


@dataclass(frozen=True)
class X:
    target: int

    def __post_init__(self):
        _check_distinct([self.target], "X")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class H:
    target: int

    def __post_init__(self):
        _check_distinct([self.target], "H")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class SWAP:
    a: int
    b: int

    def __post_init__(self):
        _check_distinct([self.a, self.b], "SWAP")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.a, self.b)


@dataclass(frozen=True)
class MCX:
    controls: tuple[Control, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        _check_distinct([c.qubit for c in self.controls] + [self.target], "MCX")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.controls) + (self.target,)


@dataclass(frozen=True)
class MCSWAP:
    controls: tuple[Control, ...]
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        _check_distinct([c.qubit for c in self.controls] + [self.a, self.b], "MCSWAP")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.controls) + (self.a, self.b)


@dataclass(frozen=True)
class MCMT:
    """Multi-controlled X applied to every qubit in ``targets``."""

    controls: tuple[Control, ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        object.__setattr__(self, "targets", tuple(self.targets))
        _check_distinct([c.qubit for c in self.controls] + list(self.targets), "MCMT")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.controls) + self.targets


@dataclass(frozen=True, eq=False)
class UnitaryBlock:
    """Dense unitary on ``qubits``; ``qubits[0]`` is the matrix's least-significant bit."""

    qubits: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        mat = np.array(self.matrix, dtype=np.complex128)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        _check_distinct(self.qubits, "UnitaryBlock")
        d = 1 << len(self.qubits)
        if mat.shape != (d, d):
            raise ValueError(f"UnitaryBlock on {len(self.qubits)} qubits needs a {d}x{d} matrix, got {mat.shape}")
        if not is_unitary(mat, 1e-10):
            raise ValueError("UnitaryBlock matrix is not unitary")

    def __eq__(self, other):
        if not isinstance(other, UnitaryBlock):
            return NotImplemented
        return self.qubits == other.qubits and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.qubits, self.matrix.tobytes()))


Gate = Union[X, H, SWAP, MCX, MCSWAP, MCMT, UnitaryBlock]


def cx(control: int, target: int) -> MCX:
    return MCX((pos(control),), target)


def gate_kind(g: Gate) -> str:
    if isinstance(g, MCX):
        return "CNOT" if len(g.controls) == 1 else ("X" if not g.controls else "MCX")
    return {X: "X", H: "H", SWAP: "SWAP", MCSWAP: "MCSWAP", MCMT: "MCMT", UnitaryBlock: "UNITARY"}[type(g)]


def control_mask(controls: Iterable[Control]) -> tuple[int, int]:
    """``(mask, value)`` such that the controls fire iff ``index & mask == value``."""
    mask = value = 0
    for c in controls:
        mask |= 1 << c.qubit
        if c.positive:
            value |= 1 << c.qubit
    return mask, value


@dataclass(frozen=True)
class Circuit:
    position_qubits: int
    coin_qubits: int = 0
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.position_qubits < 0 or self.coin_qubits < 0:
            raise ValueError("register sizes must be non-negative")
        n = self.num_qubits
        for g in self.gates:
            if any(q >= n for q in g.qubits):
                raise ValueError(f"gate {g} touches a qubit outside the {n}-qubit register")

    @property
    def num_qubits(self) -> int:
        return self.position_qubits + self.coin_qubits

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.position_qubits, self.coin_qubits, tuple(gates))

    def __add__(self, other: Circuit) -> Circuit:
        """Concatenation: ``self`` runs first."""
        if (self.position_qubits, self.coin_qubits) != (other.position_qubits, other.coin_qubits):
            raise ValueError("cannot concatenate circuits with different registers")
        return self.with_gates(self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)
