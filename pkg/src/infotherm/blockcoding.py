"""Block coding: product ensembles, the pretty good measurement, and
how the per-letter information budget behaves as blocks grow.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, ValidationError
from .linops import PSD_EPSILON, psd_function, tensor_product
from .measurement import Povm, joint_distribution, mutual_information
from .measurement import delta_s as measurement_delta_s
from .quantum import DensityMatrix, Ensemble, average_state, holevo_chi

#: Default caps: sequence states of dimension at most 32, at most 4096 sequences.
DIM_CAP = 32
SEQUENCE_CAP = 4096


def sequence_ensemble(
    e: Ensemble, m: int, dim_cap: int = DIM_CAP, sequence_cap: int = SEQUENCE_CAP
) -> Ensemble:
    """All length-``m`` sequences of ensemble members as one product ensemble.

    Priors multiply and states tensor, so the result has n^m members of
    dimension d^m; the caps keep that from exploding.
    """
    if m < 1:
        raise ValidationError(f"block length must be at least 1, got {m}")
    seq_dim = e.dim**m
    seq_count = e.size**m
    if seq_dim > dim_cap:
        raise BudgetExceeded(
            f"sequence dimension {e.dim}^{m} = {seq_dim} exceeds the cap {dim_cap}"
        )
    if seq_count > sequence_cap:
        raise BudgetExceeded(
            f"sequence count {e.size}^{m} = {seq_count} exceeds the cap {sequence_cap}"
        )
    probs = np.empty(seq_count)
    states = []
    for idx, seq in enumerate(itertools.product(range(e.size), repeat=m)):
        probs[idx] = float(np.prod([e.probs[i] for i in seq]))
        mat = e.states[seq[0]].matrix
        for i in seq[1:]:
            mat = tensor_product(mat, e.states[i].matrix)
        states.append(DensityMatrix(mat))
    # Product priors can drift from summing to exactly 1; renormalize the
    # rounding away rather than letting it trip validation downstream.
    probs /= probs.sum()
    return Ensemble(probs, tuple(states))


def pretty_good_measurement(e: Ensemble) -> Povm:
    """The square-root measurement of an ensemble.

    E_i = rho^(-1/2) (p_i rho_i) rho^(-1/2) with the inverse square root
    taken on the support of rho; when rho is rank deficient the projector
    onto its kernel is appended as a final element so the elements resolve
    the identity exactly.
    """
    rho = average_state(e)
    inv_root = psd_function(rho.matrix, lambda x: 1.0 / np.sqrt(x), pseudo=True)
    elements = [
        inv_root @ (p * s.matrix) @ inv_root for p, s in zip(e.probs, e.states)
    ]
    support_rank = int(np.sum(rho.spectrum() > PSD_EPSILON))
    if support_rank < rho.dim:
        kernel = np.eye(rho.dim, dtype=complex) - psd_function(
            rho.matrix, np.ones_like, pseudo=True
        )
        elements.append(kernel)
    return Povm(tuple(elements))


@dataclass(frozen=True)
class BlockReport:
    """Per-letter budget of one block length.

    ``chi`` is the single-letter value, so ``per_letter_info <= chi`` (up
    to tolerance) is exactly the single-letter ceiling applied to blocks.
    """

    m: int
    per_letter_info: float
    per_letter_delta_s: float
    chi: float
    sequence_count: int

    def __post_init__(self):
        if self.m < 1 or self.sequence_count < 1:
            raise ValidationError("block length and sequence count must be positive")
        if self.per_letter_info > self.chi + 1e-9:
            raise ValidationError(
                f"per-letter information {self.per_letter_info:.12g} exceeds "
                f"the single-letter ceiling {self.chi:.12g}"
            )


def block_scan(
    e: Ensemble,
    m_max: int,
    dim_cap: int = DIM_CAP,
    sequence_cap: int = SEQUENCE_CAP,
) -> list[BlockReport]:
    """Measure blocks of length 1..m_max with their square-root measurement.

    Each block length gets its sequence ensemble, the pretty good
    measurement of that ensemble, and a report of information and entropy
    increase per letter after measuring.
    """
    if m_max < 1:
        raise ValidationError(f"m_max must be at least 1, got {m_max}")
    chi = holevo_chi(e)
    reports = []
    for m in range(1, m_max + 1):
        seq = sequence_ensemble(e, m, dim_cap=dim_cap, sequence_cap=sequence_cap)
        povm = pretty_good_measurement(seq)
        info = mutual_information(joint_distribution(seq, povm))
        ds = measurement_delta_s(average_state(seq), povm)
        reports.append(
            BlockReport(
                m=m,
                per_letter_info=info / m,
                per_letter_delta_s=ds / m,
                chi=chi,
                sequence_count=seq.size,
            )
        )
    return reports
