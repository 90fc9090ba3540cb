"""Density matrices of qubit registers: outer products and partial traces."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .algebra import AlgebraElement

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-10


def sites_of(rho: np.ndarray) -> int:
    """Number of qubit sites of a square matrix, validating the shape."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    n = int(round(np.log2(rho.shape[0])))
    if 2**n != rho.shape[0]:
        raise ValueError(f"matrix dimension {rho.shape[0]} is not a power of 2")
    return n


def density_matrix(psi) -> np.ndarray:
    """Rank-one density matrix |psi><psi| of a pure qubit state."""
    if isinstance(psi, AlgebraElement):
        if psi.d != 2:
            raise ValueError("density matrices here are for qubit registers")
        amps = psi.coeffs
    else:
        amps = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(amps, amps.conj())


def check_density(rho: np.ndarray, psd: bool = False) -> None:
    """Validate hermiticity (and optionally positivity) of a density matrix."""
    rho = np.asarray(rho)
    sites_of(rho)
    scale = max(float(np.abs(rho).max()), 1e-300)
    if np.abs(rho - rho.conj().T).max() > HERMITICITY_TOL * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    if psd:
        evals = np.linalg.eigvalsh(rho)
        if evals.min() < -PSD_TOL * max(scale, 1.0):
            raise ValueError(f"matrix has negative eigenvalue {evals.min():.3e}")


def partial_trace(rho: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Trace out all sites not in `keep` (1-based); kept sites stay in
    ascending order.  The trace is preserved exactly.
    """
    rho = np.asarray(rho, dtype=complex)
    n = sites_of(rho)
    keep = sorted(set(int(s) for s in keep))
    if not keep:
        raise ValueError("must keep at least one site")
    if keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"kept sites {keep} outside 1..{n}")
    t = rho.reshape((2,) * (2 * n))
    ket = list(range(n))
    bra = [i + n if (i + 1) in keep else i for i in range(n)]
    out = [i for i in ket if (i + 1) in keep] + [i + n for i in ket if (i + 1) in keep]
    reduced = np.einsum(t, ket + bra, out)
    k = len(keep)
    return np.ascontiguousarray(reduced).reshape(2**k, 2**k)
