"""Circuit text format and OpenQASM 2.0 export/import.

Text format, one gate per line (``#`` starts a comment)::

    # walkforge position_qubits=2 coin_qubits=1
    X -> q0
    H -> q2
    CX q2 -> q0
    MCX +q2 -q3 -> q0
    SWAP -> q0, q1
    MCSWAP -q2 -> q0, q1
    MCMT +q2 +q3 -> q0, q1
    UNITARY -> q0, q1 : [[[re, im], ...], ...]

A control written without a sign is positive. ``CX`` is accepted as a
synonym of ``MCX`` and is emitted for single positive-control MCX gates.

OpenQASM export lowers negative controls first and expands gates that
``qelib1.inc`` lacks: controlled SWAPs become CNOT/MCX triples, and an MCX
with three or more controls becomes an ancilla-free network of ``cx``,
``h`` and ``cu1`` gates built from the recursion

    C^k(P(t)) = cu1(t/2)[c_k,x] . C^{k-1}X[c_k] . cu1(-t/2)[c_k,x]
                . C^{k-1}X[c_k] . C^{k-1}(P(t/2))[x]

with ``C^k X = H . C^k(P(pi)) . H`` on the target.
"""

from __future__ import annotations

import ast
import json
import math
import operator
import re
from fractions import Fraction

import numpy as np

from .gates import H, MCMT, MCSWAP, MCX, SWAP, Circuit, Control, Gate, UnitaryBlock, X, cx
from .passes import decompose_mcswap, lower_polarities, split_multi_target

_HEADER_RE = re.compile(r"walkforge\s+position_qubits=(\d+)\s+coin_qubits=(\d+)")


class CircuitFormatError(ValueError):
    pass


# ---------------------------------------------------------------- text format


def _fmt_targets(qs) -> str:
    return ", ".join(f"q{q}" for q in qs)


def _fmt_gate(g: Gate) -> str:
    if isinstance(g, X):
        return f"X -> q{g.target}"
    if isinstance(g, H):
        return f"H -> q{g.target}"
    if isinstance(g, SWAP):
        return f"SWAP -> {_fmt_targets((g.a, g.b))}"
    if isinstance(g, MCX):
        if len(g.controls) == 1 and g.controls[0].positive:
            return f"CX q{g.controls[0].qubit} -> q{g.target}"
        return f"MCX {' '.join(map(str, g.controls))} -> q{g.target}".replace("MCX  ", "MCX ")
    if isinstance(g, MCSWAP):
        return f"MCSWAP {' '.join(map(str, g.controls))} -> {_fmt_targets((g.a, g.b))}"
    if isinstance(g, MCMT):
        return f"MCMT {' '.join(map(str, g.controls))} -> {_fmt_targets(g.targets)}"
    if isinstance(g, UnitaryBlock):
        entries = [[[float(z.real), float(z.imag)] for z in row] for row in g.matrix]
        return f"UNITARY -> {_fmt_targets(g.qubits)} : {json.dumps(entries)}"
    raise TypeError(f"cannot serialize {g!r}")


def to_text(c: Circuit) -> str:
    lines = [f"# walkforge position_qubits={c.position_qubits} coin_qubits={c.coin_qubits}"]
    lines += [_fmt_gate(g) for g in c.gates]
    return "\n".join(lines) + "\n"


_QUBIT_RE = re.compile(r"^q(\d+)$")
_CTRL_RE = re.compile(r"^([+-]?)q(\d+)$")


def _parse_qubit(tok: str, lineno: int) -> int:
    m = _QUBIT_RE.match(tok.strip())
    if not m:
        raise CircuitFormatError(f"line {lineno}: bad qubit {tok!r}")
    return int(m.group(1))


def _parse_gate(line: str, lineno: int) -> Gate:
    payload = None
    if ":" in line:
        line, payload = line.split(":", 1)
    if "->" not in line:
        raise CircuitFormatError(f"line {lineno}: missing '->'")
    head, tail = line.split("->", 1)
    words = head.split()
    if not words:
        raise CircuitFormatError(f"line {lineno}: missing gate name")
    name, ctrl_toks = words[0].upper(), words[1:]
    controls = []
    for tok in ctrl_toks:
        m = _CTRL_RE.match(tok)
        if not m:
            raise CircuitFormatError(f"line {lineno}: bad control {tok!r}")
        controls.append(Control(int(m.group(2)), m.group(1) != "-"))
    targets = [_parse_qubit(t, lineno) for t in tail.split(",")]

    def want(k):
        if len(targets) != k:
            raise CircuitFormatError(f"line {lineno}: {name} takes {k} target(s), got {len(targets)}")

    def no_controls():
        if controls:
            raise CircuitFormatError(f"line {lineno}: {name} takes no controls")

    try:
        if name == "X":
            want(1)
            no_controls()
            return X(targets[0])
        if name == "H":
            want(1)
            no_controls()
            return H(targets[0])
        if name == "SWAP":
            want(2)
            no_controls()
            return SWAP(*targets)
        if name in ("MCX", "CX"):
            want(1)
            return MCX(tuple(controls), targets[0])
        if name == "MCSWAP":
            want(2)
            return MCSWAP(tuple(controls), *targets)
        if name == "MCMT":
            return MCMT(tuple(controls), tuple(targets))
        if name == "UNITARY":
            no_controls()
            if payload is None:
                raise CircuitFormatError(f"line {lineno}: UNITARY needs a ': <matrix>' payload")
            entries = np.array(json.loads(payload), dtype=float)
            if entries.ndim != 3 or entries.shape[-1] != 2:
                raise CircuitFormatError(f"line {lineno}: UNITARY payload must be rows of [re, im] pairs")
            return UnitaryBlock(tuple(targets), entries[..., 0] + 1j * entries[..., 1])
    except (ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, CircuitFormatError):
            raise
        raise CircuitFormatError(f"line {lineno}: {exc}") from exc
    raise CircuitFormatError(f"line {lineno}: unknown gate {name!r}")


def from_text(text: str, position_qubits: int | None = None, coin_qubits: int | None = None) -> Circuit:
    """Parse the text format; register sizes come from the header unless given."""
    gates: list[Gate] = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            m = _HEADER_RE.search(line)
            if m and header is None:
                header = (int(m.group(1)), int(m.group(2)))
            continue
        if not line:
            continue
        gates.append(_parse_gate(line, lineno))
    if position_qubits is None:
        if header is not None:
            position_qubits, coin_qubits = header[0], header[1] if coin_qubits is None else coin_qubits
        else:
            position_qubits = 1 + max((q for g in gates for q in g.qubits), default=-1)
    return Circuit(position_qubits, coin_qubits or 0, tuple(gates))


# ---------------------------------------------------------------- OpenQASM 2.0


def _fmt_angle(turns: Fraction) -> str:
    """Format ``turns * pi``."""
    if turns == 0:
        return "0"
    sign = "-" if turns < 0 else ""
    t = abs(turns)
    num = "pi" if t.numerator == 1 else f"{t.numerator}*pi"
    return f"{sign}{num}" if t.denominator == 1 else f"{sign}{num}/{t.denominator}"


def _qasm_mcphase(turns: Fraction, ctrls: list[int], t: int) -> list[str]:
    if len(ctrls) == 1:
        return [f"cu1({_fmt_angle(turns)}) q[{ctrls[0]}],q[{t}];"]
    *rest, last = ctrls
    half = turns / 2
    return (
        [f"cu1({_fmt_angle(half)}) q[{last}],q[{t}];"]
        + _qasm_mcx(rest, last)
        + [f"cu1({_fmt_angle(-half)}) q[{last}],q[{t}];"]
        + _qasm_mcx(rest, last)
        + _qasm_mcphase(half, rest, t)
    )


def _qasm_mcx(ctrls: list[int], t: int) -> list[str]:
    if not ctrls:
        return [f"x q[{t}];"]
    if len(ctrls) == 1:
        return [f"cx q[{ctrls[0]}],q[{t}];"]
    if len(ctrls) == 2:
        return [f"ccx q[{ctrls[0]}],q[{ctrls[1]}],q[{t}];"]
    return [f"h q[{t}];"] + _qasm_mcphase(Fraction(1), ctrls, t) + [f"h q[{t}];"]


def _qasm_lines(g: Gate) -> list[str]:
    if isinstance(g, X):
        return [f"x q[{g.target}];"]
    if isinstance(g, H):
        return [f"h q[{g.target}];"]
    if isinstance(g, SWAP):
        return [f"swap q[{g.a}],q[{g.b}];"]
    if isinstance(g, MCX):
        return _qasm_mcx([c.qubit for c in g.controls], g.target)
    if isinstance(g, MCSWAP):
        if not g.controls:
            return [f"swap q[{g.a}],q[{g.b}];"]
        return [line for h in decompose_mcswap(g) for line in _qasm_lines(h)]
    if isinstance(g, MCMT):
        return [line for h in split_multi_target(g) for line in _qasm_lines(h)]
    raise CircuitFormatError(f"{type(g).__name__} has no OpenQASM 2.0 export")


def to_qasm(c: Circuit) -> str:
    lowered = lower_polarities(c)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// walkforge position_qubits={c.position_qubits} coin_qubits={c.coin_qubits}",
        f"qreg q[{c.num_qubits}];",
    ]
    for g in lowered.gates:
        lines.extend(_qasm_lines(g))
    return "\n".join(lines) + "\n"


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_angle(expr: str) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise CircuitFormatError(f"unsupported angle expression {expr!r}")

    return ev(ast.parse(expr, mode="eval"))


_STMT_RE = re.compile(r"^(\w+)\s*(?:\(([^)]*)\))?\s+(.+)$")
_ARG_RE = re.compile(r"^(\w+)\[(\d+)\]$")


def _cu1(control: int, target: int, angle: float) -> UnitaryBlock:
    return UnitaryBlock((target, control), np.diag([1, 1, 1, np.exp(1j * angle)]))


def from_qasm(text: str) -> Circuit:
    """Parse the OpenQASM 2.0 subset written by :func:`to_qasm`."""
    header = _HEADER_RE.search(text)
    body = re.sub(r"//[^\n]*", "", text)
    nq = None
    reg = None
    gates: list[Gate] = []
    for stmt in body.split(";"):
        stmt = " ".join(stmt.split())
        if not stmt or stmt.startswith("OPENQASM") or stmt.startswith("include"):
            continue
        if stmt.startswith("qreg"):
            m = re.match(r"qreg\s+(\w+)\[(\d+)\]", stmt)
            if not m or nq is not None:
                raise CircuitFormatError(f"unsupported register declaration {stmt!r}")
            reg, nq = m.group(1), int(m.group(2))
            continue
        if stmt.startswith(("creg", "barrier", "measure")):
            continue
        m = _STMT_RE.match(stmt)
        if not m or nq is None:
            raise CircuitFormatError(f"cannot parse statement {stmt!r}")
        name, params, args = m.group(1), m.group(2), m.group(3)
        qs = []
        for a in args.split(","):
            am = _ARG_RE.match(a.strip())
            if not am or am.group(1) != reg:
                raise CircuitFormatError(f"bad argument {a!r} in {stmt!r}")
            qs.append(int(am.group(2)))
        if name == "x":
            gates.append(X(qs[0]))
        elif name == "h":
            gates.append(H(qs[0]))
        elif name == "cx":
            gates.append(cx(qs[0], qs[1]))
        elif name == "ccx":
            gates.append(MCX((Control(qs[0]), Control(qs[1])), qs[2]))
        elif name == "swap":
            gates.append(SWAP(qs[0], qs[1]))
        elif name in ("cu1", "cp"):
            gates.append(_cu1(qs[0], qs[1], _eval_angle(params)))
        else:
            raise CircuitFormatError(f"unsupported gate {name!r}")
    if nq is None:
        raise CircuitFormatError("no qreg declaration")
    if header:
        n, m = int(header.group(1)), int(header.group(2))
        if n + m != nq:
            raise CircuitFormatError("header register sizes disagree with qreg")
        return Circuit(n, m, tuple(gates))
    return Circuit(nq, 0, tuple(gates))
