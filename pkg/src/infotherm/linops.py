"""Dense complex linear algebra shared by every other module.

Everything downstream (states, measurements, bounds, ledgers) funnels its
matrix work through the three operations here, so tolerances and phase
conventions are decided once, in this file.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeEigenvalue,
    NotHermitian,
    NumericalFailure,
    ValidationError,
)

#: Max-entry tolerance for accepting a matrix as Hermitian.
HERMITICITY_TOL = 1e-9
#: Eigenvalues above -PSD_CLIP_TOL are treated as zero rounding noise.
PSD_CLIP_TOL = 1e-9
#: Spectral cutoff below which an eigenvalue counts as part of the kernel.
PSD_EPSILON = 1e-12
#: Max-entry tolerance for eigendecomposition postconditions.
RECONSTRUCTION_TOL = 1e-10


def as_complex_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square complex ndarray, validating shape and finiteness."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValidationError("empty matrix")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError("matrix has non-finite entries")
    return a


def max_abs(a) -> float:
    """Largest absolute entry of an array (0 for an empty array)."""
    a = np.asarray(a)
    return 0.0 if a.size == 0 else float(np.max(np.abs(a)))


def is_hermitian(m, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return max_abs(m - m.conj().T) <= tol


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    matching orthonormal eigenvectors as columns, each rotated so that its
    largest-magnitude component is real and positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-|entry| component is real positive.

    Ties go to the first index (np.argmax), which keeps the output
    deterministic for identical input.
    """
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = int(np.argmax(np.abs(col)))
        pivot = col[idx]
        mag = abs(pivot)
        if mag > 0.0:
            out[:, k] = col * (pivot.conjugate() / mag)
    return out


def hermitian_eig(m) -> HermitianEigen:
    """Full eigendecomposition of a Hermitian matrix.

    Wraps a guaranteed-convergent dense Hermitian solver and then enforces
    the package conventions: ascending eigenvalues, the phase rule above,
    and a reconstruction check so a silently wrong decomposition can never
    leak downstream.
    """
    m = as_complex_matrix(m)
    if not is_hermitian(m):
        raise NotHermitian(
            f"matrix deviates from Hermitian by {max_abs(m - m.conj().T):.3e} "
            f"(tolerance {HERMITICITY_TOL:.1e})"
        )
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - eigh rarely fails
        raise NumericalFailure(f"eigendecomposition failed: {exc}") from exc
    eigenvectors = _fix_phases(eigenvectors.astype(complex))
    result = HermitianEigen(eigenvalues.astype(float), eigenvectors)
    # Postcondition check; the tolerance is absolute, so scale it for
    # matrices with entries far above unit size.
    scale = max(1.0, max_abs(m))
    if max_abs(result.reconstruct() - m) > RECONSTRUCTION_TOL * scale:
        raise NumericalFailure("eigendecomposition failed reconstruction check")
    return result


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the first factor on the slow (outer) index.

    Entry ((i*db + k), (j*db + l)) equals a[i, j] * b[k, l].
    """
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    return np.kron(a, b)


def psd_function(m, f: Callable, pseudo: bool = False) -> np.ndarray:
    """Apply a scalar function to a positive semidefinite matrix.

    Eigenvalues in [-PSD_CLIP_TOL, 0) are clipped to zero before ``f`` is
    applied; anything more negative raises ``NegativeEigenvalue``.  With
    ``pseudo=True`` the function only acts on the support (eigenvalues above
    ``PSD_EPSILON``) and the kernel maps to zero, which is how the pseudo
    inverse square root used by the measurement code is built.
    """
    eig = hermitian_eig(m)
    w = eig.eigenvalues
    if w[0] < -PSD_CLIP_TOL:
        raise NegativeEigenvalue(
            f"matrix has eigenvalue {w[0]:.3e} below -{PSD_CLIP_TOL:.1e}"
        )
    w = np.clip(w, 0.0, None)
    fw = np.zeros_like(w)
    if pseudo:
        mask = w > PSD_EPSILON
    else:
        mask = np.ones_like(w, dtype=bool)
    if np.any(mask):
        fw[mask] = np.asarray(f(w[mask]), dtype=float)
    if not np.all(np.isfinite(fw)):
        raise NumericalFailure("function produced non-finite eigenvalues")
    v = eig.eigenvectors
    return (v * fw) @ v.conj().T


def require_same_shape(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{what}: {a.shape} vs {b.shape}")
