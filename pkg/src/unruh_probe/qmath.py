"""Dense complex-matrix helpers for one- and two-qubit operators.

Everything is sized for the 2x2 and 4x4 Hermitian matrices this package
works with. The eigensolver is a cyclic Jacobi iteration on the real
symmetric embedding of the Hermitian input; at these dimensions that is
essentially free and has no failure modes worth guarding against.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_HERMITICITY_TOL = 1e-12

_SIGMA = (
    np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
for _m in _SIGMA:
    _m.setflags(write=False)


def pauli(i: int) -> np.ndarray:
    """Pauli matrix sigma_i, with sigma_0 the identity.

    Returns a read-only array; copy before mutating.
    """
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in 0..3, got {i!r}")
    return _SIGMA[i]


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    for m in (a, b):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"tensor expects square matrices, got shape {m.shape}")
    return np.kron(a, b)


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of m from its conjugate transpose."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def _symmetric_jacobi_eigenvalues(sym: np.ndarray, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(sym, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0]])
    scale = max(1.0, float(np.max(np.abs(a))))
    # quadratic convergence makes the last sweep land far below this
    off_tol = 10.0 * n * np.finfo(float).eps * scale
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= off_tol:
            return np.diag(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-30 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise ArithmeticError("Jacobi iteration did not converge")


def hermitian_eigenvalues(
    m: np.ndarray, tol: float = DEFAULT_HERMITICITY_TOL
) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, sorted ascending.

    Inputs whose asymmetry exceeds ``tol`` are rejected rather than
    symmetrized; asymmetry below ``tol`` is treated as rounding noise and
    the Hermitian part is diagonalized. Complex matrices go through the
    real symmetric embedding [[Re, -Im], [Im, Re]], which carries every
    eigenvalue twice.
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(
            f"matrix is not Hermitian: asymmetry {defect:.3e} exceeds tol {tol:.3e}"
        )
    h = 0.5 * (m + m.conj().T)
    if not h.imag.any():
        return np.sort(_symmetric_jacobi_eigenvalues(h.real))
    embed = np.block([[h.real, -h.imag], [h.imag, h.real]])
    doubled = np.sort(_symmetric_jacobi_eigenvalues(embed))
    return 0.5 * (doubled[0::2] + doubled[1::2])


def trace_norm(m: np.ndarray, tol: float = DEFAULT_HERMITICITY_TOL) -> float:
    """Sum of the absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m, tol))))
