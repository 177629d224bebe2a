"""Measurements and what they do to information and to states.

Covers POVM validation, outcome statistics and mutual information, the
post-measurement (dephased) state, the entropy increase it carries, and the
explicit record/memory constructions: Naimark dilation of a general POVM
into a projective measurement on a larger space, and the measure-then-reset
pipeline for a memory that stores the outcome.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BlockFormViolation,
    DimensionMismatch,
    NotProjective,
    NumericalFailure,
    ValidationError,
)
from .linops import as_complex_matrix, is_hermitian, max_abs, psd_function, tensor_product
from .quantum import PROB_CLIP, DensityMatrix, Ensemble, _entropy_of_spectrum

#: Max-entry tolerance for the completeness relation sum_j E_j = I.
POVM_SUM_TOL = 1e-8
#: Max-entry tolerance for the orthogonality check E_j E_k = delta_jk E_j.
PROJECTIVE_TOL = 1e-8
#: Element eigenvalues above -ELEMENT_PSD_TOL count as zero.
ELEMENT_PSD_TOL = 1e-9
#: Tolerance on probability normalization checks.
PROB_SUM_TOL = 1e-9


def _detect_projective(elements: Sequence[np.ndarray]) -> bool:
    for j, ej in enumerate(elements):
        for k, ek in enumerate(elements):
            target = ej if j == k else 0.0
            if max_abs(ej @ ek - target) > PROJECTIVE_TOL:
                return False
    return True


@dataclass(frozen=True)
class Povm:
    """A validated measurement: PSD elements resolving the identity.

    ``projective`` may be passed explicitly; when omitted it is detected
    from the elements.  Passing ``projective=True`` for elements that fail
    the orthogonality check is a validation error.
    """

    elements: tuple[np.ndarray, ...]
    projective: bool | None = None

    def __post_init__(self):
        elements = tuple(as_complex_matrix(el) for el in self.elements)
        if len(elements) == 0:
            raise ValidationError("measurement needs at least one element")
        dims = {el.shape[0] for el in elements}
        if len(dims) != 1:
            raise DimensionMismatch(f"elements have mixed dimensions {sorted(dims)}")
        for j, el in enumerate(elements):
            if not is_hermitian(el):
                raise ValidationError(f"element {j} is not Hermitian")
            w = np.linalg.eigvalsh(el)
            if w[0] < -ELEMENT_PSD_TOL:
                raise ValidationError(
                    f"element {j} has eigenvalue {w[0]:.3e} below -{ELEMENT_PSD_TOL:.1e}"
                )
        total = sum(elements)
        residual = max_abs(total - np.eye(elements[0].shape[0]))
        if residual > POVM_SUM_TOL:
            raise ValidationError(
                f"elements sum to identity only within {residual:.3e} "
                f"(tolerance {POVM_SUM_TOL:.1e})"
            )
        detected = _detect_projective(elements)
        if self.projective is None:
            flag = detected
        else:
            flag = bool(self.projective)
            if flag and not detected:
                raise ValidationError(
                    "measurement declared projective but elements are not orthogonal projectors"
                )
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "projective", flag)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def basis_measurement(unitary, blocks: Sequence[Sequence[int]] | None = None) -> Povm:
    """Projective measurement built from the columns of a unitary.

    With ``blocks`` the columns are grouped into coarse-grained projectors;
    by default each column becomes its own rank-1 projector.
    """
    u = as_complex_matrix(unitary)
    d = u.shape[0]
    if max_abs(u.conj().T @ u - np.eye(d)) > 1e-8:
        raise ValidationError("matrix is not unitary")
    if blocks is None:
        blocks = [[j] for j in range(d)]
    elements = []
    for block in blocks:
        cols = u[:, list(block)]
        elements.append(cols @ cols.conj().T)
    return Povm(tuple(elements), projective=True)


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome table p(i, j) = p_i * tr(E_j rho_i).

    Rows index preparations, columns index outcomes.  Entries a hair below
    zero (rounding) are clipped; anything below -1e-12 is an error.
    """

    matrix: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.matrix, dtype=float)
        if p.ndim != 2 or p.size == 0:
            raise ValidationError(f"expected a 2-d table, got shape {p.shape}")
        if np.any(p < -PROB_CLIP):
            raise ValidationError(f"joint probability {p.min():.3e} below -1e-12")
        p = np.clip(p, 0.0, None)
        if abs(p.sum() - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"joint probabilities sum to {p.sum():.12g}")
        p.setflags(write=False)
        object.__setattr__(self, "matrix", p)

    @property
    def priors(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    @property
    def outcome_probs(self) -> np.ndarray:
        return self.matrix.sum(axis=0)


def joint_distribution(e: Ensemble, v: Povm) -> JointDistribution:
    """Outcome statistics of measuring each ensemble member."""
    if e.dim != v.dim:
        raise DimensionMismatch(f"ensemble dim {e.dim} vs measurement dim {v.dim}")
    table = np.empty((e.size, v.size), dtype=float)
    for i, (p, s) in enumerate(zip(e.probs, e.states)):
        for j, el in enumerate(v.elements):
            table[i, j] = p * float(np.trace(el @ s.matrix).real)
    jd = JointDistribution(table)
    if max_abs(jd.priors - e.probs) > PROB_SUM_TOL:
        raise NumericalFailure("joint distribution rows do not reproduce the priors")
    return jd


def outcome_distribution(r: DensityMatrix, v: Povm) -> np.ndarray:
    """Outcome probabilities tr(E_j rho) for a single state."""
    if r.dim != v.dim:
        raise DimensionMismatch(f"state dim {r.dim} vs measurement dim {v.dim}")
    q = np.array([float(np.trace(el @ r.matrix).real) for el in v.elements])
    q = np.clip(q, 0.0, None)
    if abs(q.sum() - 1.0) > PROB_SUM_TOL:
        raise NumericalFailure(f"outcome probabilities sum to {q.sum():.12g}")
    return q


def mutual_information(j: JointDistribution) -> float:
    """I(A:B) = H(A) + H(B) - H(A,B) in bits, clipped to be nonnegative."""
    p = j.matrix
    info = (
        _entropy_of_spectrum(p.sum(axis=1))
        + _entropy_of_spectrum(p.sum(axis=0))
        - _entropy_of_spectrum(p.reshape(-1))
    )
    if info < -PROB_CLIP:
        raise NumericalFailure(f"mutual information came out {info:.3e}")
    return max(0.0, info)


def _record_ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros((dim, 1), dtype=complex)
    v[index, 0] = 1.0
    return v


def _sqrt_elements(v: Povm) -> list[np.ndarray]:
    return [psd_function(el, np.sqrt) for el in v.elements]


def post_measurement_state(r: DensityMatrix, v: Povm) -> DensityMatrix:
    """State after an unread (non-selective) measurement.

    Projective case: sum_j P_j rho P_j on the original space.  General
    case: the measurement is run through its record construction, giving
    sum_j (sqrt(E_j) rho sqrt(E_j)) (x) |j><j| on the system-record space
    of dimension dim * n_outcomes.
    """
    if r.dim != v.dim:
        raise DimensionMismatch(f"state dim {r.dim} vs measurement dim {v.dim}")
    if v.projective:
        acc = np.zeros_like(r.matrix)
        for el in v.elements:
            acc += el @ r.matrix @ el
        return DensityMatrix(acc)
    m = v.size
    acc = np.zeros((r.dim * m, r.dim * m), dtype=complex)
    for j, root in enumerate(_sqrt_elements(v)):
        branch = root @ r.matrix @ root
        ket = _record_ket(j, m)
        acc += tensor_product(branch, ket @ ket.conj().T)
    return DensityMatrix(acc)


def delta_s(r: DensityMatrix, v: Povm) -> float:
    """Entropy increase S(post-measurement) - S(rho), in bits.

    Nonnegative by construction (dephasing never lowers entropy); values a
    hair below zero are clipped, anything below -1e-9 raises.
    """
    sigma = post_measurement_state(r, v)
    ds = _entropy_of_spectrum(sigma.spectrum()) - _entropy_of_spectrum(r.spectrum())
    if ds < -1e-9:
        raise NumericalFailure(f"entropy increase came out {ds:.3e}")
    return max(0.0, ds)


def naimark_dilation(v: Povm) -> tuple[np.ndarray, Povm]:
    """Isometry and projective measurement reproducing a POVM's statistics.

    Returns ``(V, P)`` with ``V = sum_j sqrt(E_j) (x) |j>`` mapping the
    system space into system (x) record, and ``P`` the projective
    measurement {I (x) |j><j|} on that larger space.  For any state rho,
    tr(P_j V rho V+) = tr(E_j rho).
    """
    d, m = v.dim, v.size
    iso = np.zeros((d * m, d), dtype=complex)
    for j, root in enumerate(_sqrt_elements(v)):
        iso += np.kron(root, _record_ket(j, m))
    if max_abs(iso.conj().T @ iso - np.eye(d)) > 1e-9:
        raise NumericalFailure("dilation isometry failed V+V = I check")
    eye = np.eye(d, dtype=complex)
    projectors = []
    for j in range(m):
        ket = _record_ket(j, m)
        projectors.append(tensor_product(eye, ket @ ket.conj().T))
    return iso, Povm(tuple(projectors), projective=True)


def partial_trace_record(matrix: np.ndarray, system_dim: int, record_dim: int) -> np.ndarray:
    """Trace out the record factor of an operator on system (x) record."""
    m = as_complex_matrix(matrix)
    if m.shape[0] != system_dim * record_dim:
        raise DimensionMismatch(
            f"operator dim {m.shape[0]} is not {system_dim}*{record_dim}"
        )
    blocks = m.reshape(system_dim, record_dim, system_dim, record_dim)
    return np.einsum("ikjk->ij", blocks)


def partial_trace_system(matrix: np.ndarray, system_dim: int, record_dim: int) -> np.ndarray:
    """Trace out the system factor, leaving the record marginal."""
    m = as_complex_matrix(matrix)
    if m.shape[0] != system_dim * record_dim:
        raise DimensionMismatch(
            f"operator dim {m.shape[0]} is not {system_dim}*{record_dim}"
        )
    blocks = m.reshape(system_dim, record_dim, system_dim, record_dim)
    return np.einsum("ikil->kl", blocks)


def demon_record_state(r: DensityMatrix, v: Povm) -> DensityMatrix:
    """Joint system-memory state after a projective measurement is recorded.

    sum_m (P_m rho P_m) (x) |m><m| on system (x) memory, with the memory
    dimension equal to the number of outcomes.  Tracing out the memory
    recovers the dephased state.
    """
    if not v.projective:
        raise NotProjective("recording requires a projective measurement")
    if r.dim != v.dim:
        raise DimensionMismatch(f"state dim {r.dim} vs measurement dim {v.dim}")
    m = v.size
    acc = np.zeros((r.dim * m, r.dim * m), dtype=complex)
    for idx, proj in enumerate(v.elements):
        ket = _record_ket(idx, m)
        acc += tensor_product(proj @ r.matrix @ proj, ket @ ket.conj().T)
    return DensityMatrix(acc)


def _cyclic_shift(dim: int) -> np.ndarray:
    """Unitary taking |k> to |k+1 mod dim>."""
    s = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        s[(k + 1) % dim, k] = 1.0
    return s


def demon_reset(r_pm: DensityMatrix, v: Povm) -> tuple[np.ndarray, DensityMatrix]:
    """Logically reversible erasure of the memory register.

    Builds the controlled shift U = sum_m P_m (x) Shift^(-m) (control on
    the system in the measurement basis) and applies it to the recorded
    state.  For a state with the record structure produced by
    ``demon_record_state`` the result factorizes as sigma (x) |0><0|: the
    memory is blank again and no entropy was produced (U is unitary).
    """
    if not v.projective:
        raise NotProjective("reset is defined for projective records")
    m = v.size
    if r_pm.dim % m != 0 or r_pm.dim // m != v.dim:
        raise DimensionMismatch(
            f"recorded state dim {r_pm.dim} does not factor as {v.dim}*{m}"
        )
    shift = _cyclic_shift(m)
    unitary = np.zeros((r_pm.dim, r_pm.dim), dtype=complex)
    for idx, proj in enumerate(v.elements):
        unshift = np.linalg.matrix_power(shift, (m - idx) % m)
        unitary += tensor_product(proj, unshift)
    if max_abs(unitary @ unitary.conj().T - np.eye(r_pm.dim)) > 1e-9:
        raise NumericalFailure("reset unitary failed the unitarity check")
    after = unitary @ r_pm.matrix @ unitary.conj().T
    sigma = partial_trace_record(after, v.dim, m)
    ket = _record_ket(0, m)
    expected = tensor_product(sigma, ket @ ket.conj().T)
    if max_abs(after - expected) > 1e-9:
        raise BlockFormViolation(
            "recorded state lacks the system-memory correlation the reset needs"
        )
    return unitary, DensityMatrix(after)
