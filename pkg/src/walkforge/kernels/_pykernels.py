"""Pure-numpy versions of the amplitude kernels in ``_ckernels.pyx``.

Same in-place contract: ``state`` has shape ``(2**num_qubits, batch)``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=512)
def _mcx_rows(dim: int, ctrl_mask: int, ctrl_value: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(dim)
    bit = 1 << target
    lo = idx[((idx & bit) == 0) & ((idx & ctrl_mask) == ctrl_value)]
    return lo, lo | bit


@lru_cache(maxsize=512)
def _mcswap_rows(dim: int, ctrl_mask: int, ctrl_value: int, a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(dim)
    bit_a, bit_b = 1 << a, 1 << b
    sel = ((idx & bit_a) != 0) & ((idx & bit_b) == 0) & ((idx & ctrl_mask) == ctrl_value)
    src = idx[sel]
    return src, (src ^ bit_a) | bit_b


def apply_mcx(state: np.ndarray, ctrl_mask: int, ctrl_value: int, target: int) -> None:
    lo, hi = _mcx_rows(state.shape[0], ctrl_mask, ctrl_value, target)
    state[np.concatenate([lo, hi])] = state[np.concatenate([hi, lo])]


def apply_mcswap(state: np.ndarray, ctrl_mask: int, ctrl_value: int, a: int, b: int) -> None:
    src, dst = _mcswap_rows(state.shape[0], ctrl_mask, ctrl_value, a, b)
    state[np.concatenate([src, dst])] = state[np.concatenate([dst, src])]


def apply_1q(state: np.ndarray, target: int, mat: np.ndarray) -> None:
    lo, hi = _mcx_rows(state.shape[0], 0, 0, target)
    a0 = state[lo]
    a1 = state[hi]
    state[lo] = mat[0, 0] * a0 + mat[0, 1] * a1
    state[hi] = mat[1, 0] * a0 + mat[1, 1] * a1
