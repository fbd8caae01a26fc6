"""Dense complex linear algebra for small registers of two-level modes.

Matrices are plain ``numpy`` arrays of shape ``(dim, dim)``. Mode 0 is the
most significant bit of a basis index, so ``|q0 q1 ... q{n-1}>`` sits at
index ``q0*2**(n-1) + ... + q{n-1}``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

EIG_TOL = 1e-10
HERMITIAN_TOL = 1e-10
MAX_MODES = 6


class DimensionError(ValueError):
    """Matrix size does not match the mode layout it is used with."""

    def __init__(self, expected: int, actual: int, what: str = "matrix dimension"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected {expected}, got {actual}")


class NotHermitianError(ValueError):
    """Raised when ``m - m^H`` exceeds the Hermiticity tolerance."""

    def __init__(self, defect: float, tol: float):
        self.defect = defect
        self.tol = tol
        super().__init__(f"matrix is not Hermitian: ||m - m^H||_F = {defect:.3e} > {tol:.1e}")


def _square(m, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``a (x) b`` of two square matrices.

    Entry ``[i*db + k, j*db + l]`` of the result is ``a[i, j] * b[k, l]``.
    """
    a = _square(a, "a")
    b = _square(b, "b")
    return np.kron(a, b)


def kron_all(factors: Iterable) -> np.ndarray:
    """Left-to-right Kronecker product of vectors or matrices."""
    out = np.ones((1,), dtype=complex)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def partial_trace(rho, mode_dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reduce ``rho`` onto the modes listed in ``keep``.

    Parameters
    ----------
    rho : (D, D) array_like
        Operator on the full register, ``D = prod(mode_dims)``.
    mode_dims : sequence of int
        Local dimension of each mode. Only 2 is supported.
    keep : iterable of int
        Indices of the modes to retain. Kept modes stay in register order
        regardless of the order given. An empty ``keep`` traces everything
        and returns the 1x1 matrix ``[[tr rho]]``.

    Returns
    -------
    (2**len(keep), 2**len(keep)) ndarray
    """
    rho = _square(rho, "rho")
    mode_dims = list(mode_dims)
    if any(d != 2 for d in mode_dims):
        raise ValueError(f"only two-level modes are supported, got dims {mode_dims}")
    n = len(mode_dims)
    expected = 2**n
    if rho.shape[0] != expected:
        raise DimensionError(expected, rho.shape[0])
    keep = sorted(set(keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} modes")
    drop = [i for i in range(n) if i not in keep]

    t = rho.reshape((2,) * (2 * n))
    perm = keep + drop + [n + i for i in keep] + [n + i for i in drop]
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    t = t.transpose(perm).reshape(dk, dd, dk, dd)
    return np.einsum("ijkj->ik", t)


def hermiticity_defect(m) -> float:
    m = _square(m, "m")
    return float(np.linalg.norm(m - m.conj().T))


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL, return_defect: bool = False):
    """Real spectrum of a Hermitian matrix, sorted descending.

    ``m`` is symmetrized as ``(m + m^H)/2`` before solving; the Frobenius norm
    of ``m - m^H`` is the recorded defect and must not exceed ``tol``.
    """
    m = _square(m, "m")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(defect, tol)
    h = 0.5 * (m + m.conj().T)
    values = np.linalg.eigvalsh(h)[::-1].copy()
    if return_defect:
        return values, defect
    return values


def jacobi_eigenvalues(m, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi eigenvalues of a Hermitian matrix, sorted descending.

    Each rotation first strips the phase of the pivot element and then applies
    the classical real rotation. Iterates until the off-diagonal Frobenius
    norm drops below ``tol * max(1, ||m||_F)``.
    """
    m = _square(m, "m")
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_TOL:
        raise NotHermitianError(defect, HERMITIAN_TOL)
    a = 0.5 * (m + m.conj().T)
    n = a.shape[0]
    target = tol * max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    for _ in range(max_sweeps):
        if off(a) < target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
    else:
        if off(a) >= target:
            raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(a).real)[::-1]
