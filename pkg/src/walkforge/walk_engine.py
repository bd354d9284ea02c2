"""Coined discrete-time quantum walks: coins, evolution, distributions, periods.

A walk state lives on ``m`` coin qubits and ``n`` position qubits; basis
index ``c * 2**n + v`` holds coin value ``c`` at vertex ``v``. One step is
``U = S (C (x) I)``: the coin acts, then the shift moves the walker.

Two independent evaluation paths are offered. ``source="circuit"`` applies
the builder's gates directly to the state vector. ``source="operator"``
materializes ``U`` from the shunt decomposition and takes matrix powers.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from .builders import BuilderOptions, build_shift
from .circuit_ir import Circuit, Gate, H, UnitaryBlock, apply_gates, compile
from .graphs import (
    Complete,
    Cycle,
    Hypercube,
    Line,
    Topology,
    complete_swap_shift,
    line_index,
    line_label,
    shift_matrix,
    shunt_decompose,
)
from .numerics import HADAMARD, basis_vector, identity, kron, kron_all, matpow, max_abs_diff

COIN_KINDS = ("hadamard", "grover", "identity")
SOURCES = ("circuit", "operator")
DISTRIBUTION_KINDS = ("position", "full", "readout")


@dataclass(frozen=True)
class CoinSpec:
    kind: str = "hadamard"
    coin_qubits: int = 1

    def __post_init__(self):
        if self.kind not in COIN_KINDS:
            raise ValueError(f"coin kind must be one of {COIN_KINDS}, got {self.kind!r}")
        if self.coin_qubits < 0:
            raise ValueError("coin_qubits must be >= 0")


def coin_matrix(c: CoinSpec) -> np.ndarray:
    d = 1 << c.coin_qubits
    if c.kind == "hadamard":
        return kron_all([HADAMARD] * c.coin_qubits) if c.coin_qubits else identity(1)
    if c.kind == "grover":
        return np.full((d, d), 2.0 / d, dtype=np.complex128) - identity(d)
    return identity(d)


def default_coin(t: Topology) -> CoinSpec:
    """Grover on hypercubes, Hadamard elsewhere."""
    kind = "grover" if isinstance(t, Hypercube) else "hadamard"
    return CoinSpec(kind, t.coin_qubits)


@dataclass(frozen=True)
class WalkConfig:
    """A walk to run.

    ``initial_position`` is a register index, except on a :class:`Line`
    where it is the signed vertex label (the two agree for label 0).
    ``coin=None`` selects :func:`default_coin`.
    """

    topology: Topology
    coin: CoinSpec | None = None
    steps: int = 0
    initial_coin: int = 0
    initial_position: int = 0
    options: BuilderOptions = field(default_factory=BuilderOptions)

    def __post_init__(self):
        t = self.topology
        if self.coin is None:
            object.__setattr__(self, "coin", default_coin(t))
        if self.coin.coin_qubits != t.coin_qubits:
            raise ValueError(f"coin acts on {self.coin.coin_qubits} qubits but the topology has {t.coin_qubits}")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if not 0 <= self.initial_coin < (1 << t.coin_qubits):
            raise ValueError(f"initial coin {self.initial_coin} outside [0, {(1 << t.coin_qubits) - 1}]")
        n = t.position_qubits
        if isinstance(t, Line):
            line_index(self.initial_position, n)  # raises on a bad label
        elif not 0 <= self.initial_position < (1 << n):
            raise ValueError(f"initial position {self.initial_position} outside [0, {(1 << n) - 1}]")
        if isinstance(t, Cycle) and self.initial_position >= t.nodes:
            raise ValueError(f"initial position {self.initial_position} is not a vertex of the {t.nodes}-cycle")

    @property
    def position_index(self) -> int:
        t = self.topology
        if isinstance(t, Line):
            return line_index(self.initial_position, t.position_qubits)
        return self.initial_position

    @property
    def initial_index(self) -> int:
        return (self.initial_coin << self.topology.position_qubits) | self.position_index

    def with_steps(self, steps: int) -> WalkConfig:
        return WalkConfig(self.topology, self.coin, steps, self.initial_coin, self.initial_position, self.options)


@dataclass(frozen=True)
class Distribution:
    labels: tuple
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "probs", np.asarray(self.probs, dtype=float))
        if len(self.labels) != len(self.probs):
            raise ValueError("labels and probs differ in length")

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.probs.tolist()))

    def prob(self, label) -> float:
        return float(self.probs[self.labels.index(label)])

    def support(self, tol: float = 1e-12) -> list:
        return [lab for lab, p in zip(self.labels, self.probs) if p > tol]


@dataclass(frozen=True)
class WalkResult:
    distribution: Distribution
    state: np.ndarray


# ------------------------------------------------------------ operators


def reference_shift(t: Topology, options: BuilderOptions | None = None) -> np.ndarray:
    """Analytical shift operator: the direct sum of shunts, or the register exchange for the complete-graph SWAP model."""
    options = options or BuilderOptions()
    if isinstance(t, Complete) and options.complete_model == "swap":
        return complete_swap_shift(t.position_qubits)
    return shift_matrix(shunt_decompose(t))


def shift_operator(cfg: WalkConfig, source: str = "operator") -> np.ndarray:
    if source == "circuit":
        return compile(build_shift(cfg.topology, cfg.options))
    if source == "operator":
        return reference_shift(cfg.topology, cfg.options)
    raise ValueError(f"source must be one of {SOURCES}, got {source!r}")


def evolution_matrix(cfg: WalkConfig, source: str = "operator") -> np.ndarray:
    """``U = S (C (x) I)``."""
    s = shift_operator(cfg, source)
    return s @ kron(coin_matrix(cfg.coin), identity(1 << cfg.topology.position_qubits))


def coin_gates(cfg: WalkConfig) -> list[Gate]:
    n, m = cfg.topology.position_qubits, cfg.topology.coin_qubits
    if cfg.coin.kind == "identity" or m == 0:
        return []
    if cfg.coin.kind == "hadamard":
        return [H(n + j) for j in range(m)]
    return [UnitaryBlock(tuple(range(n, n + m)), coin_matrix(cfg.coin))]


def step_circuit(cfg: WalkConfig) -> Circuit:
    """One walk step as a circuit: coin gates then the shift."""
    shift = build_shift(cfg.topology, cfg.options)
    return shift.with_gates(coin_gates(cfg) + list(shift.gates))


def initial_state(cfg: WalkConfig) -> np.ndarray:
    t = cfg.topology
    return basis_vector(1 << (t.position_qubits + t.coin_qubits), cfg.initial_index)


# ------------------------------------------------------------ evolution


def iter_states(cfg: WalkConfig, source: str = "circuit") -> Iterator[np.ndarray]:
    """States at ``t = 0, 1, ..., cfg.steps`` (fresh arrays)."""
    psi = initial_state(cfg)
    yield psi.copy()
    if source == "circuit":
        gates = step_circuit(cfg).gates
        buf = psi.reshape(-1, 1).copy()
        for _ in range(cfg.steps):
            apply_gates(buf, gates)
            yield buf.ravel().copy()
    else:
        u = evolution_matrix(cfg, source)
        for _ in range(cfg.steps):
            psi = u @ psi
            yield psi.copy()


def final_state(cfg: WalkConfig, source: str = "circuit") -> np.ndarray:
    if source == "operator":
        return matpow(evolution_matrix(cfg, "operator"), cfg.steps) @ initial_state(cfg)
    *_, last = iter_states(cfg, source)
    return last


def distribution(state: np.ndarray, t: Topology, kind: str = "position") -> Distribution:
    """Measurement distribution of ``state``.

    ``position`` marginalizes the coin (signed, sorted labels on a line);
    ``full`` is over every register index; ``readout`` reports the measured
    position as a zero-padded bitstring over the whole ``n + m``-bit register,
    with the unmeasured coin bits read as 0.
    """
    n, m = t.position_qubits, t.coin_qubits
    p = np.abs(np.asarray(state)) ** 2
    if kind == "full":
        return Distribution(range(len(p)), p)
    marginal = p.reshape(1 << m, 1 << n).sum(axis=0)
    if kind == "readout":
        return Distribution([format(v, f"0{n + m}b") for v in range(1 << n)], marginal)
    if kind != "position":
        raise ValueError(f"distribution kind must be one of {DISTRIBUTION_KINDS}, got {kind!r}")
    if isinstance(t, Line):
        order = sorted(range(1 << n), key=lambda v: line_label(v, n))
        return Distribution([line_label(v, n) for v in order], marginal[order])
    return Distribution(range(1 << n), marginal)


def run_walk(cfg: WalkConfig, source: str = "circuit", kind: str = "position") -> WalkResult:
    psi = final_state(cfg, source)
    return WalkResult(distribution(psi, cfg.topology, kind), psi)


def walk_history(cfg: WalkConfig, source: str = "circuit", kind: str = "position") -> list[Distribution]:
    return [distribution(psi, cfg.topology, kind) for psi in iter_states(cfg, source)]


def l1_distance(p: Distribution, q: Distribution) -> float:
    """Half the summed absolute difference; labels are matched, not positions."""
    if set(p.labels) != set(q.labels) or len(p.labels) != len(q.labels):
        raise ValueError("distributions are over different label sets")
    qd = q.as_dict()
    return 0.5 * float(sum(abs(pp - qd[lab]) for lab, pp in zip(p.labels, p.probs)))


# ------------------------------------------------------------ periods and bounds


def cycle_length(cfg: WalkConfig, t_max: int = 64, tol: float = 1e-9, source: str = "operator") -> int | None:
    """Smallest ``T <= t_max`` with ``max|U^T - I| <= tol``, else ``None``."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    u = evolution_matrix(cfg, source)
    eye = identity(u.shape[0])
    power = u.copy()
    for t in range(1, t_max + 1):
        if max_abs_diff(power, eye) <= tol:
            return t
        power = u @ power
    return None


def state_period(cfg: WalkConfig, t_max: int = 64, tol: float = 1e-9) -> int | None:
    """Smallest ``T <= t_max`` at which the initial state recurs, by gate application.

    A necessary condition for ``U^T = I`` that stays cheap at sizes where
    the full matrix is out of reach.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    psi0 = initial_state(cfg)
    for t, psi in enumerate(iter_states(cfg.with_steps(t_max), "circuit")):
        if t and np.max(np.abs(psi - psi0)) <= tol:
            return t
    return None


def line_step_bound(n: int, n0: int) -> int:
    """``2**(n-1) - n0 - 1``: steps from label ``n0`` before the walker can pass the positive end.

    For ``n0 >= 0`` the positive end is the nearer one, so this is also the
    no-wraparound guarantee. For ``n0 < 0`` the negative end is nearer and
    the bound overstates the safe horizon.
    """
    if n < 2:
        raise ValueError("line needs n >= 2")
    line_index(n0, n)
    return (1 << (n - 1)) - n0 - 1


def sample_counts(d: Distribution, shots: int, seed: int | None = None) -> dict:
    """Seeded multinomial sample of ``d``; post-processing only."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.clip(d.probs, 0.0, None)
    counts = np.random.default_rng(seed).multinomial(shots, p / p.sum())
    return {lab: int(k) for lab, k in zip(d.labels, counts) if k}


__all__ = [
    "COIN_KINDS",
    "CoinSpec",
    "DISTRIBUTION_KINDS",
    "Distribution",
    "SOURCES",
    "WalkConfig",
    "WalkResult",
    "coin_gates",
    "coin_matrix",
    "cycle_length",
    "default_coin",
    "distribution",
    "evolution_matrix",
    "final_state",
    "initial_state",
    "iter_states",
    "l1_distance",
    "line_step_bound",
    "reference_shift",
    "run_walk",
    "sample_counts",
    "shift_operator",
    "state_period",
    "step_circuit",
    "walk_history",
]
