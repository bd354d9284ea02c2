"""Circuit-to-circuit rewrites that preserve the compiled unitary."""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .gates import MCMT, MCSWAP, MCX, SWAP, Circuit, Control, Gate, X, cx, gate_kind, pos


def lower_polarities(c: Circuit) -> Circuit:
    """Replace every negative control by a positive one flanked by X gates."""
    out: list[Gate] = []
    for g in c.gates:
        ctrls = getattr(g, "controls", ())
        negs = [ctl.qubit for ctl in ctrls if not ctl.positive]
        if not negs:
            out.append(g)
            continue
        flipped = tuple(Control(ctl.qubit, True) for ctl in ctrls)
        if isinstance(g, MCX):
            core: Gate = MCX(flipped, g.target)
        elif isinstance(g, MCSWAP):
            core = MCSWAP(flipped, g.a, g.b)
        else:
            core = MCMT(flipped, g.targets)
        out.extend(X(q) for q in negs)
        out.append(core)
        out.extend(X(q) for q in reversed(negs))
    return c.with_gates(out)


def cancel_adjacent_x(c: Circuit) -> Circuit:
    """Drop pairs of X on the same qubit with no gate touching that qubit in between."""
    out: list[Gate | None] = []
    last_on: dict[int, int] = {}  # qubit -> index in ``out`` of the latest gate touching it
    for g in c.gates:
        if isinstance(g, X):
            j = last_on.get(g.target)
            if j is not None and isinstance(out[j], X):
                out[j] = None
                # recover the previous toucher of this qubit, if any
                k = j - 1
                while k >= 0 and (out[k] is None or g.target not in out[k].qubits):
                    k -= 1
                if k >= 0:
                    last_on[g.target] = k
                else:
                    del last_on[g.target]
                continue
        out.append(g)
        for q in g.qubits:
            last_on[q] = len(out) - 1
    return c.with_gates(g for g in out if g is not None)


def decompose_mcswap(g: MCSWAP) -> list[Gate]:
    """Controlled SWAP as CNOT(b->a), MCX(controls + a -> b), CNOT(b->a)."""
    return [cx(g.b, g.a), MCX(g.controls + (pos(g.a),), g.b), cx(g.b, g.a)]


def decompose_mcswaps(c: Circuit) -> Circuit:
    out: list[Gate] = []
    for g in c.gates:
        if isinstance(g, MCSWAP):
            out.extend(decompose_mcswap(g))
        elif isinstance(g, SWAP):
            out.extend(decompose_mcswap(MCSWAP((), g.a, g.b)))
        else:
            out.append(g)
    return c.with_gates(out)


def split_multi_target(controls: Sequence[Control] | MCMT, targets: Sequence[int] = ()) -> list[Gate]:
    """One single-target MCX per target, all sharing ``controls``."""
    if isinstance(controls, MCMT):
        controls, targets = controls.controls, controls.targets
    return [MCX(tuple(controls), t) for t in targets]


def expand_multi_targets(c: Circuit) -> Circuit:
    out: list[Gate] = []
    for g in c.gates:
        out.extend(split_multi_target(g) if isinstance(g, MCMT) else [g])
    return c.with_gates(out)


def _x_like(g: Gate) -> tuple[set[int], set[int]] | None:
    """``(targets, controls)`` for gates that are controlled bit flips."""
    if isinstance(g, X):
        return {g.target}, set()
    if isinstance(g, MCX):
        return {g.target}, {c.qubit for c in g.controls}
    if isinstance(g, MCMT):
        return set(g.targets), {c.qubit for c in g.controls}
    return None


def commutes(a: Gate, b: Gate) -> bool:
    """Conservative commutation test (``False`` means "not known to commute")."""
    if not set(a.qubits) & set(b.qubits):
        return True
    xa, xb = _x_like(a), _x_like(b)
    if xa is None or xb is None:
        return False
    return not (xa[0] & xb[1]) and not (xb[0] & xa[1])


def _merge(a: Gate, b: Gate) -> Gate | None:
    if not (isinstance(a, MCX) and isinstance(b, MCX)) or a.target != b.target:
        return None
    pa = {c.qubit: c.positive for c in a.controls}
    pb = {c.qubit: c.positive for c in b.controls}
    if pa.keys() != pb.keys():
        return None
    differ = [q for q in pa if pa[q] != pb[q]]
    if len(differ) != 1:
        return None
    kept = tuple(ctl for ctl in a.controls if ctl.qubit != differ[0])
    return MCX(kept, a.target) if kept else X(a.target)


def _merge_once(gates: list[Gate]) -> bool:
    for i, a in enumerate(gates):
        if not isinstance(a, MCX):
            continue
        for j in range(i + 1, len(gates)):
            b = gates[j]
            merged = _merge(a, b)
            if merged is not None:
                gates[j] = merged
                del gates[i]
                return True
            if not commutes(a, b):
                break
    return False


def merge_control_pairs(c: Circuit) -> Circuit:
    """Fuse MCX pairs that differ only in one control's polarity, to a fixpoint.

    The pair need not be adjacent: the earlier gate is moved forward past
    gates it provably commutes with.
    """
    gates = list(c.gates)
    while _merge_once(gates):
        pass
    return c.with_gates(gates)


DEFAULT_PIPELINE: tuple[Callable[[Circuit], Circuit], ...] = (
    expand_multi_targets,
    merge_control_pairs,
    lower_polarities,
    cancel_adjacent_x,
)


def optimize(c: Circuit, passes: Sequence[Callable[[Circuit], Circuit]] = DEFAULT_PIPELINE) -> Circuit:
    for p in passes:
        c = p(c)
    return c


@dataclass(frozen=True)
class GateStats:
    total: int
    by_kind: dict[str, int] = field(default_factory=dict)
    cnot_equivalent: int = 0

    def as_dict(self) -> dict:
        return {"total": self.total, "by_kind": dict(self.by_kind), "cnot_equivalent": self.cnot_equivalent}


def gate_stats(c: Circuit) -> GateStats:
    """Gate counts per kind.

    ``cnot_equivalent`` counts a CNOT as 1 and a SWAP as 3; gates with two or
    more controls are reported under their own kinds and not converted.
    """
    kinds = Counter(gate_kind(g) for g in c.gates)
    return GateStats(
        total=len(c.gates),
        by_kind=dict(sorted(kinds.items())),
        cnot_equivalent=kinds.get("CNOT", 0) + 3 * kinds.get("SWAP", 0),
    )


def x_count(c: Circuit) -> int:
    return sum(1 for g in c.gates if isinstance(g, X) or (isinstance(g, MCX) and not g.controls))


__all__ = [
    "DEFAULT_PIPELINE",
    "GateStats",
    "cancel_adjacent_x",
    "commutes",
    "decompose_mcswap",
    "decompose_mcswaps",
    "expand_multi_targets",
    "gate_stats",
    "lower_polarities",
    "merge_control_pairs",
    "optimize",
    "split_multi_target",
    "x_count",
]
