"""States, ensembles, and the entropy quantities defined on them.

All entropies are in bits (log base 2), matching the convention that one
bit of work at temperature T is kT ln 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .linops import as_complex_matrix, hermitian_eig, is_hermitian, max_abs

#: Tolerance on trace-1 and probability normalization checks.
TRACE_TOL = 1e-9
#: Eigenvalues above -PSD_TOL count as rounding noise around zero.
PSD_TOL = 1e-9
#: Probabilities this close below zero are clipped to zero.
PROB_CLIP = 1e-12


def _entropy_of_spectrum(values: np.ndarray) -> float:
    """-sum(v log2 v) over the nonzero entries, tiny negatives clipped."""
    w = np.clip(np.asarray(values, dtype=float), 0.0, None)
    w = w[w > 0.0]
    if w.size == 0:
        return 0.0
    return float(max(0.0, -np.dot(w, np.log2(w))))


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, PSD."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        if not is_hermitian(m):
            raise ValidationError(
                f"density matrix deviates from Hermitian by "
                f"{max_abs(m - m.conj().T):.3e}"
            )
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"density matrix has trace {tr:.12g}, expected 1")
        w = np.linalg.eigvalsh(m)
        if w[0] < -PSD_TOL:
            raise ValidationError(
                f"density matrix has eigenvalue {w[0]:.3e} below -{PSD_TOL:.1e}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self) -> np.ndarray:
        """Eigenvalues, ascending, clipped to be nonnegative."""
        return np.clip(np.linalg.eigvalsh(self.matrix), 0.0, None)


def pure_state(amplitudes) -> DensityMatrix:
    """Rank-1 density matrix |psi><psi| from a (not necessarily normalized) ket."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    norm = np.linalg.norm(psi)
    if norm == 0.0:
        raise ValidationError("zero vector cannot be normalized to a state")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


@dataclass(frozen=True)
class Ensemble:
    """A classical source of quantum states: priors p_i and states rho_i."""

    probs: np.ndarray
    states: tuple[DensityMatrix, ...] = field()

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).reshape(-1)
        states = tuple(self.states)
        if p.size == 0 or len(states) != p.size:
            raise ValidationError(
                f"{p.size} priors for {len(states)} states"
            )
        if np.any(p < -PROB_CLIP):
            raise ValidationError(f"negative prior {p.min():.3e}")
        p = np.clip(p, 0.0, None)
        if abs(p.sum() - 1.0) > TRACE_TOL:
            raise ValidationError(f"priors sum to {p.sum():.12g}, expected 1")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatch(f"states have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "states", states)

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim


def average_state(e: Ensemble) -> DensityMatrix:
    """The source average sum_i p_i rho_i."""
    acc = np.zeros((e.dim, e.dim), dtype=complex)
    for p, s in zip(e.probs, e.states):
        acc += p * s.matrix
    return DensityMatrix(acc)


def von_neumann_entropy(r: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, in bits."""
    return _entropy_of_spectrum(r.spectrum())


def shannon_entropy(p) -> float:
    """H(p) = -sum p_i log2 p_i for a probability vector, in bits."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(p < -PROB_CLIP):
        raise ValidationError(f"negative probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    if abs(p.sum() - 1.0) > TRACE_TOL:
        raise ValidationError(f"probabilities sum to {p.sum():.12g}, expected 1")
    return _entropy_of_spectrum(p)


def holevo_chi(e: Ensemble) -> float:
    """chi = S(avg) - sum_i p_i S(rho_i), clipped to be nonnegative.

    Concavity of S makes the true value nonnegative; floating error on a
    saturating ensemble can land a hair below zero, which we clip.
    """
    avg = von_neumann_entropy(average_state(e))
    cond = sum(
        p * von_neumann_entropy(s) for p, s in zip(e.probs, e.states) if p > 0.0
    )
    return float(max(0.0, avg - cond))


def ensemble_commutes(e: Ensemble, tol: float = 1e-9) -> bool:
    """True when every pair of member states commutes within ``tol``."""
    mats = [s.matrix for s in e.states]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if max_abs(mats[i] @ mats[j] - mats[j] @ mats[i]) > tol:
                return False
    return True


def shared_eigenbasis(e: Ensemble, tol: float = 1e-9) -> np.ndarray:
    """A unitary whose columns diagonalize every state of a commuting ensemble.

    Diagonalizes a generic positive mixture of the members (weights chosen
    deterministically and pairwise distinct), which breaks any degeneracy
    that a plain average would leave; the result's columns then jointly
    diagonalize each member.  Raises ``ValidationError`` if the ensemble
    does not commute.
    """
    if not ensemble_commutes(e, tol=tol):
        raise ValidationError("ensemble states do not commute")
    weights = np.pi ** np.arange(1, e.size + 1)
    weights /= weights.sum()
    probe = sum(w * s.matrix for w, s in zip(weights, e.states))
    basis = hermitian_eig(probe).eigenvectors
    for s in e.states:
        off = basis.conj().T @ s.matrix @ basis
        if max_abs(off - np.diag(np.diag(off))) > 1e-7:
            raise ValidationError(
                "failed to find a joint eigenbasis (degenerate probe mixture)"
            )
    return basis
