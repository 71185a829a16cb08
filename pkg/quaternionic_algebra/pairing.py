"""
Positive pairings for su(2) (x) su(n) acting on C^2 (x) C^n.

Vectors are flattened with the C^2 index outermost, matching np.kron.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from core.exceptions import PairingDegenerateError, PreconditionError

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-14

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True, eq=False)
class PairingResult:
    matrix: np.ndarray
    label: str
    sign: int
    value: float


def su2_basis() -> List[Tuple[str, np.ndarray]]:
    return [(f"i*sigma{k + 1}", 1j * sigma) for k, sigma in enumerate(PAULI)]


@lru_cache(maxsize=8)
def _su_n_basis(n: int):
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            real = np.zeros((n, n), dtype=complex)
            real[i, j], real[j, i] = 1.0, -1.0
            basis.append((f"E{i}{j}-E{j}{i}", real))
            imag = np.zeros((n, n), dtype=complex)
            imag[i, j] = imag[j, i] = 1j
            basis.append((f"i(E{i}{j}+E{j}{i})", imag))
    for i in range(n - 1):
        diag = np.zeros((n, n), dtype=complex)
        diag[i, i], diag[i + 1, i + 1] = 1j, -1j
        basis.append((f"i(E{i}{i}-E{i + 1}{i + 1})", diag))
    return tuple(basis)


def su_n_basis(n: int) -> List[Tuple[str, np.ndarray]]:
    """Elementary anti-Hermitian traceless matrices, n^2 - 1 of them."""
    if n < 2:
        raise PreconditionError(f"su(n) needs n >= 2, got {n}")
    return [(label, matrix.copy()) for label, matrix in _su_n_basis(n)]


def tensor_basis(n: int) -> List[Tuple[str, np.ndarray]]:
    return [
        (f"{a}(x){b}", np.kron(s, t))
        for a, s in su2_basis()
        for b, t in su_n_basis(n)
    ]


def find_positive_pairing(v, w) -> PairingResult:
    """
    Find b in su(2) (x) su(n) with Re<bv, w> > 0.

    Scans the 3(n^2 - 1) tensor basis elements, keeps the one with the
    largest |Re<bv, w>| and flips its sign if needed.

    Args:
        v, w: Nonzero complex vectors of length 2n, n >= 2

    Returns:
        PairingResult with the chosen matrix and the attained pairing

    Raises:
        PreconditionError: for zero vectors or bad lengths
        PairingDegenerateError: if every basis pairing is numerically zero
    """
    v = np.asarray(v, dtype=complex).ravel()
    w = np.asarray(w, dtype=complex).ravel()
    if v.shape != w.shape or v.size % 2 or v.size < 4:
        raise PreconditionError(f"vectors must share an even length of at least 4, got {v.size} and {w.size}")
    norm_v, norm_w = np.linalg.norm(v), np.linalg.norm(w)
    if norm_v == 0.0 or norm_w == 0.0:
        raise PreconditionError("pairing vectors must be nonzero")

    best = None
    for label, b in tensor_basis(v.size // 2):
        value = float(np.vdot(b @ v, w).real)
        if best is None or abs(value) > abs(best[2]):
            best = (label, b, value)

    label, b, value = best
    if abs(value) < DEGENERACY_TOL * norm_v * norm_w:
        raise PairingDegenerateError(f"all basis pairings vanish (largest {abs(value):.3e})")
    sign = 1 if value > 0 else -1
    logger.debug(f"Positive pairing via {label} with value {abs(value):.3e}")
    return PairingResult(sign * b, label, sign, abs(value))
