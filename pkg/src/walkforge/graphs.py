"""Walk topologies, their adjacency matrices, and shunt decompositions.

A shunt is a permutation of the vertex set; the shunts of a decomposition
sum (as matrices) to the transposed adjacency matrix, and the shift operator
is their direct sum with coin value ``c`` selecting shunt ``c``.

Basis convention used everywhere: the composite index of ``|c>|v>`` is
``c * 2**n + v`` (coin register in the high-order bits).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .numerics import as_matrix, direct_sum, permutation_matrix


def _is_pow2(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


def _log2(x: int) -> int:
    return x.bit_length() - 1


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


@dataclass(frozen=True)
class Line:
    """Line on ``nodes = 2**n`` vertices, realized as a relabeled ``nodes``-cycle."""

    nodes: int

    def __post_init__(self):
        if self.nodes < 2 or not _is_pow2(self.nodes):
            raise ValueError(f"Line needs a power-of-two node count >= 2, got {self.nodes}")

    @property
    def position_qubits(self) -> int:
        return _log2(self.nodes)

    @property
    def coin_qubits(self) -> int:
        return 1


@dataclass(frozen=True)
class Cycle:
    """``nodes``-cycle; embedded in the smallest ``2**n >= nodes`` states."""

    nodes: int

    def __post_init__(self):
        if self.nodes < 3:
            raise ValueError(f"Cycle needs at least 3 nodes, got {self.nodes}")

    @property
    def position_qubits(self) -> int:
        return _ceil_log2(self.nodes)

    @property
    def coin_qubits(self) -> int:
        return 1


@dataclass(frozen=True)
class Hypercube:
    """``dimension``-cube with ``self_loops`` loops per vertex; the two must sum to ``2**m``."""

    dimension: int
    self_loops: int = 0

    def __post_init__(self):
        if self.dimension < 1 or self.self_loops < 0:
            raise ValueError(f"invalid hypercube dimension={self.dimension} self_loops={self.self_loops}")
        if not _is_pow2(self.dimension + self.self_loops):
            raise ValueError(
                f"dimension + self_loops must be a power of two, got {self.dimension} + {self.self_loops}"
            )

    @property
    def position_qubits(self) -> int:
        return self.dimension

    @property
    def coin_qubits(self) -> int:
        return _log2(self.dimension + self.self_loops)


@dataclass(frozen=True)
class Complete:
    """Complete graph with a self-loop at every vertex, on ``nodes = 2**m`` vertices."""

    nodes: int
    self_loops: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.nodes < 2 or not _is_pow2(self.nodes):
            raise ValueError(f"Complete needs a power-of-two node count >= 2, got {self.nodes}")

    @property
    def position_qubits(self) -> int:
        return _log2(self.nodes)

    @property
    def coin_qubits(self) -> int:
        return _log2(self.nodes)


Topology = Union[Line, Cycle, Hypercube, Complete]


@dataclass(frozen=True)
class Shunt:
    """Permutation ``map[v]`` = head of the arc leaving ``v``."""

    map: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.map) != list(range(len(self.map))):
            raise ValueError("shunt map is not a bijection")

    @property
    def dim(self) -> int:
        return len(self.map)

    def matrix(self) -> np.ndarray:
        return permutation_matrix(self.map)


@dataclass(frozen=True)
class ShuntDecomposition:
    shunts: tuple[Shunt, ...]

    def __post_init__(self):
        if not self.shunts or not _is_pow2(len(self.shunts)):
            raise ValueError(f"shunt count must be a power of two, got {len(self.shunts)}")
        dims = {s.dim for s in self.shunts}
        if len(dims) != 1:
            raise ValueError(f"shunts disagree on dimension: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.shunts[0].dim

    @property
    def coin_qubits(self) -> int:
        return _log2(len(self.shunts))

    @property
    def position_qubits(self) -> int:
        return _log2(self.dim)


def _cycle_block(k: int, dim: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    inc = tuple((v + 1) % k if v < k else v for v in range(dim))
    dec = tuple((v - 1) % k if v < k else v for v in range(dim))
    return inc, dec


def shunt_decompose(t: Topology) -> ShuntDecomposition:
    if isinstance(t, (Line, Cycle)):
        k = t.nodes
        inc, dec = _cycle_block(k, 1 << t.position_qubits)
        return ShuntDecomposition((Shunt(inc), Shunt(dec)))
    if isinstance(t, Hypercube):
        dim = 1 << t.dimension
        maps = [tuple(v ^ (1 << i) for v in range(dim)) for i in range(t.dimension)]
        maps += [tuple(range(dim))] * t.self_loops
        return ShuntDecomposition(tuple(Shunt(m) for m in maps))
    if isinstance(t, Complete):
        dim = t.nodes
        return ShuntDecomposition(tuple(Shunt(tuple(v ^ c for v in range(dim))) for c in range(dim)))
    raise TypeError(f"unsupported topology {t!r}")


def adjacency(t: Topology) -> np.ndarray:
    """Adjacency matrix of the graph the walk is realized on.

    ``Line`` returns the ``2**n``-cycle it is realized as (see
    :func:`path_adjacency` for the bare path). A ``Cycle`` whose size is not a
    power of two is returned embedded: the cycle block followed by isolated
    vertices. Hypercube self-loops put ``self_loops`` on the diagonal.
    """
    if isinstance(t, (Line, Cycle)):
        k = t.nodes
        dim = 1 << t.position_qubits
        a = np.zeros((dim, dim))
        for v in range(k):
            # accumulate so the 2-cycle keeps both parallel edges
            a[v, (v + 1) % k] += 1
            a[(v + 1) % k, v] += 1
        return as_matrix(a)
    if isinstance(t, Hypercube):
        a = np.zeros((1, 1))
        for _ in range(t.dimension):
            eye = np.eye(a.shape[0])
            a = np.block([[a, eye], [eye, a]])
        return as_matrix(a + t.self_loops * np.eye(a.shape[0]))
    if isinstance(t, Complete):
        return as_matrix(np.ones((t.nodes, t.nodes)))
    raise TypeError(f"unsupported topology {t!r}")


def path_adjacency(nodes: int) -> np.ndarray:
    a = np.zeros((nodes, nodes))
    for v in range(nodes - 1):
        a[v, v + 1] = a[v + 1, v] = 1
    return as_matrix(a)


def validate_decomposition(d: ShuntDecomposition, a) -> bool:
    """Whether the shunt matrices sum to ``a.T``.

    Register padding (states fixed by every shunt and isolated in ``a``, as
    in an embedded ``k``-cycle) is left out of the comparison.
    """
    a = as_matrix(a)
    if a.shape != (d.dim, d.dim):
        raise ValueError(f"adjacency shape {a.shape} does not match shunt dimension {d.dim}")
    total = sum(s.matrix() for s in d.shunts)
    fixed = np.all([np.asarray(s.map) == np.arange(d.dim) for s in d.shunts], axis=0)
    isolated = ~a.any(axis=0) & ~a.any(axis=1)
    keep = ~(fixed & isolated)
    return bool(np.array_equal(total[np.ix_(keep, keep)], a.T[np.ix_(keep, keep)]))


def shift_matrix(d: ShuntDecomposition) -> np.ndarray:
    return direct_sum([s.matrix() for s in d.shunts])


def complete_swap_shift(m: int) -> np.ndarray:
    """Register-exchange shift ``|c>|v> -> |v>|c>`` on ``m`` coin and ``m`` position qubits.

    Not block diagonal: it is the reference operator for the SWAP model of
    the complete graph, which does not come from a shunt decomposition.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    size = 1 << m
    mapping = [0] * (size * size)
    for c in range(size):
        for v in range(size):
            mapping[c * size + v] = v * size + c
    return permutation_matrix(mapping)


def line_label(index: int, n: int) -> int:
    """Signed node label of position state ``index`` on an ``n``-qubit line (two's complement)."""
    if not 0 <= index < (1 << n):
        raise ValueError(f"index {index} outside a {n}-qubit register")
    return index - (1 << n) if index >> (n - 1) else index


def line_index(label: int, n: int) -> int:
    half = 1 << (n - 1)
    if not -half <= label < half:
        raise ValueError(f"label {label} outside [{-half}, {half - 1}]")
    return label % (1 << n)


def line_window(n: int) -> range:
    """Labels of the reported line subgraph, ``[-(2**(n-1) - 1), 2**(n-1) - 1]``."""
    half = (1 << (n - 1)) - 1
    return range(-half, half + 1)
