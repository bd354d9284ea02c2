"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--qubits 12 16 20] [--repeat 5] [--quick]

Reports the best-of-``repeat`` time per kernel call and a full walk step
(coin plus shift) for each backend, and the speedup of the compiled core.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from walkforge import kernels
from walkforge.builders import build_cycle_shift
from walkforge.circuit_ir import H, MCX, MCSWAP, control_mask, pos, neg
from walkforge.numerics import HADAMARD


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _state(nq: int) -> np.ndarray:
    rng = np.random.default_rng(0)
    s = rng.normal(size=(1 << nq, 1)) + 1j * rng.normal(size=(1 << nq, 1))
    return np.ascontiguousarray(s / np.linalg.norm(s))


def _cases(nq: int):
    mcx = MCX(tuple(pos(q) for q in range(1, nq - 1)) + (neg(nq - 1),), 0)
    swp = MCSWAP((pos(2), neg(3)), 0, 1)
    m1, v1 = control_mask(mcx.controls)
    m2, v2 = control_mask(swp.controls)
    return {
        "mcx": lambda k, s: k.apply_mcx(s, m1, v1, 0),
        "mcswap": lambda k, s: k.apply_mcswap(s, m2, v2, 0, 1),
        "1q": lambda k, s: k.apply_1q(s, nq // 2, HADAMARD),
    }


def _walk_step(k, s, gates):
    for g in gates:
        if isinstance(g, H):
            k.apply_1q(s, g.target, HADAMARD)
        elif isinstance(g, MCSWAP):
            m, v = control_mask(g.controls)
            k.apply_mcswap(s, m, v, g.a, g.b)
        else:
            m, v = control_mask(g.controls)
            k.apply_mcx(s, m, v, g.target)


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--qubits", type=int, nargs="+", default=[12, 16, 20])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--quick", action="store_true", help="tiny sizes, for smoke tests")
    ns = p.parse_args(argv)
    if ns.quick:
        ns.qubits, ns.repeat = [8], 1
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (active: {kernels.BACKEND})")
    print(f"{'qubits':>6} {'kernel':>10} " + " ".join(f"{b + ' [ms]':>14}" for b in backends) + ("  speedup" if len(backends) > 1 else ""))
    for nq in ns.qubits:
        rows = dict(_cases(nq))
        shift = build_cycle_shift(nq - 1, "full_controlled")
        gates = [H(nq - 1)] + list(shift.gates)
        rows["walk step"] = lambda k, s: _walk_step(k, s, gates)
        for name, fn in rows.items():
            timings = {}
            for b in backends:
                k = kernels.get_backend(b)
                s = _state(nq)
                timings[b] = _best(lambda: fn(k, s), ns.repeat)
            line = f"{nq:>6} {name:>10} " + " ".join(f"{1e3 * timings[b]:>14.3f}" for b in backends)
            if len(backends) > 1:
                line += f"  {timings['python'] / timings['cython']:7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
