"""Amplitude-update kernels with a compiled core and a numpy fallback.

The Cython extension ``_ckernels`` is used when it was built; otherwise (or
when ``WALKFORGE_PURE_PYTHON=1`` is set) the numpy implementation in
``_pykernels`` is selected. ``BACKEND`` names the active choice.

Every kernel mutates ``state`` in place. ``state`` must be a C-contiguous
``complex128`` array of shape ``(2**num_qubits, batch)``.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()

if _compiled is not None and os.environ.get("WALKFORGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    _active: ModuleType = _compiled
    BACKEND = "cython"
else:
    _active = _pykernels
    BACKEND = "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module for ``name`` (``"cython"``/``"python"``), or the active one."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def apply_mcx(state: np.ndarray, ctrl_mask: int, ctrl_value: int, target: int) -> None:
    _active.apply_mcx(state, ctrl_mask, ctrl_value, target)


def apply_mcswap(state: np.ndarray, ctrl_mask: int, ctrl_value: int, a: int, b: int) -> None:
    _active.apply_mcswap(state, ctrl_mask, ctrl_value, a, b)


def apply_1q(state: np.ndarray, target: int, mat: np.ndarray) -> None:
    _active.apply_1q(state, target, np.ascontiguousarray(mat, dtype=np.complex128))


def apply_dense(state: np.ndarray, qubits: tuple[int, ...], mat: np.ndarray) -> None:
    """Apply a ``2**k`` matrix to ``qubits`` (``qubits[0]`` is the matrix's low bit)."""
    k = len(qubits)
    dim, batch = state.shape
    nq = dim.bit_length() - 1
    # tensor axes run from the most significant qubit down to qubit 0
    axes = [nq - 1 - q for q in reversed(qubits)]
    t = state.reshape([2] * nq + [batch])
    t = np.moveaxis(t, axes, list(range(k)))
    moved_shape = t.shape
    t = mat @ t.reshape(2**k, -1)
    t = np.moveaxis(t.reshape(moved_shape), list(range(k)), axes)
    state[...] = t.reshape(dim, batch)
