"""Work ledgers for the measurement engine cycle.

Every stage is modeled as isothermal moves of an ideal gas of "state
molecules" in a vessel of total volume 1, with work measured in bits
(1 bit = kT ln 2).  A full cycle runs three stages:

1. extraction   -- measure and cash in the correlations; nets +I(A:B)
2. sigma -> rho -- undo the measurement dephasing; nets -(S(sigma) - S(rho))
3. rho -> start -- rebuild the original ensemble; nets -chi

Each entry's work comes from ``work_isothermal`` volume ratios, so stage
totals provide an arithmetic path to I, delta_s and chi that is
independent of the entropy formulas in the other modules; the cycle
invariant net = I - delta_s - chi <= 0 is checked at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import log2

import numpy as np

from .errors import NonPositiveVolume, SecondLawViolation, ValidationError
from .linops import tensor_product
from .measurement import (
    Povm,
    joint_distribution,
    mutual_information,
    post_measurement_state,
)
from .measurement import delta_s as measurement_delta_s
from .quantum import DensityMatrix, Ensemble, average_state, holevo_chi

#: Net work above this counts as a second-law violation.
CYCLE_TOL = 1e-9

STAGE_EXTRACTION = "extraction"
STAGE_SIGMA_COMPRESSION = "sigma_compression"
STAGE_ISENTROPIC = "isentropic_transform"
STAGE_RHO_EXPANSION = "rho_expansion"
STAGE_RHO_COMPRESSION = "rho_compression"
STAGE_ENSEMBLE_RECOMPRESSION = "ensemble_recompression"

STAGES = (
    STAGE_EXTRACTION,
    STAGE_SIGMA_COMPRESSION,
    STAGE_ISENTROPIC,
    STAGE_RHO_EXPANSION,
    STAGE_RHO_COMPRESSION,
    STAGE_ENSEMBLE_RECOMPRESSION,
)

#: Spectrum weights below this carry no molecules and no ledger entry.
_WEIGHT_FLOOR = 1e-15


def work_isothermal(fraction: float, v_initial: float, v_final: float) -> float:
    """Work, in bits, extracted by ``fraction`` of the gas expanding
    isothermally from ``v_initial`` to ``v_final`` (negative for compression)."""
    if v_initial <= 0.0 or v_final <= 0.0:
        raise NonPositiveVolume(
            f"volumes must be positive, got {v_initial!r} -> {v_final!r}"
        )
    if not 0.0 <= fraction <= 1.0 + 1e-12:
        raise ValidationError(f"molecule fraction {fraction!r} outside [0, 1]")
    if fraction == 0.0:
        return 0.0
    return fraction * log2(v_final / v_initial)


@dataclass(frozen=True)
class LedgerEntry:
    """One isothermal move: which stage it belongs to, what moved, and the
    work in bits (positive = extracted)."""

    stage: str
    description: str
    work_bits: float

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValidationError(f"unknown stage label {self.stage!r}")
        if self.stage == STAGE_ISENTROPIC and self.work_bits != 0.0:
            raise ValidationError("isentropic transforms exchange no work")


@dataclass(frozen=True)
class CycleLedger:
    """Every entry of one full cycle plus the quantities it must reconcile with."""

    entries: tuple[LedgerEntry, ...]
    net_bits: float
    i_ab: float
    chi: float
    delta_s: float


def stage_total(entries, stage: str | None = None) -> float:
    """Sum of work over entries, optionally restricted to one stage label."""
    return float(
        sum(en.work_bits for en in entries if stage is None or en.stage == stage)
    )


def extraction_stage(e: Ensemble, v: Povm) -> list[LedgerEntry]:
    """Measure, then cash the correlations in; nets I(A:B).

    Realized as the difference of two membrane processes: expanding every
    preparation's gas from its p_i slot to the full vessel pays out H(A);
    re-sorting the gas inside each outcome compartment by preparation costs
    H(A|B) back.  Both run on ``work_isothermal`` volume ratios only.
    """
    jd = joint_distribution(e, v)
    entries = []
    for i, p in enumerate(e.probs):
        if p <= _WEIGHT_FLOOR:
            continue
        entries.append(
            LedgerEntry(
                STAGE_EXTRACTION,
                f"preparation {i}: expand from volume {p:.6g} to 1",
                work_isothermal(p, p, 1.0),
            )
        )
    outcome_probs = jd.outcome_probs
    for j, q in enumerate(outcome_probs):
        if q <= _WEIGHT_FLOOR:
            continue
        for i in range(e.size):
            cond = jd.matrix[i, j] / q
            if cond <= _WEIGHT_FLOOR:
                continue
            entries.append(
                LedgerEntry(
                    STAGE_EXTRACTION,
                    f"outcome {j}: sort preparation {i} into its sub-volume",
                    work_isothermal(q * cond, q, cond * q),
                )
            )
    return entries


def sigma_to_rho_stage(sigma: DensityMatrix, rho: DensityMatrix) -> list[LedgerEntry]:
    """Turn the dephased state back into rho; nets -(S(sigma) - S(rho)).

    Attaching the empty twin vessel and separating the eigencomponents is
    free; compressing component j from the full vessel into its c_j slot
    costs S(sigma); an isentropic transform lines the components up with
    rho's eigenbasis for free; expanding rho's eigencomponents back to the
    full vessel pays out S(rho).
    """
    if sigma.dim != rho.dim:
        raise ValidationError(
            f"states live on different dimensions ({sigma.dim} vs {rho.dim})"
        )
    entries = [
        LedgerEntry(
            STAGE_SIGMA_COMPRESSION,
            "attach empty vessel and separate eigencomponents (no work)",
            0.0,
        )
    ]
    for j, c in enumerate(sigma.spectrum()):
        if c <= _WEIGHT_FLOOR:
            continue
        entries.append(
            LedgerEntry(
                STAGE_SIGMA_COMPRESSION,
                f"compress component {j} from volume 1 to {c:.6g}",
                work_isothermal(c, 1.0, c),
            )
        )
    entries.append(
        LedgerEntry(STAGE_ISENTROPIC, "rotate eigencomponents into the target basis", 0.0)
    )
    for k, lam in enumerate(rho.spectrum()):
        if lam <= _WEIGHT_FLOOR:
            continue
        entries.append(
            LedgerEntry(
                STAGE_RHO_EXPANSION,
                f"expand component {k} from volume {lam:.6g} to 1",
                work_isothermal(lam, lam, 1.0),
            )
        )
    return entries


def rho_to_initial_stage(e: Ensemble) -> list[LedgerEntry]:
    """Rebuild the labeled ensemble from its average state; nets -chi.

    Runs the reversible preparation path backwards: compress rho's
    eigencomponents into their lambda_k slots (costs S(rho)), isentropically
    rotate each slot's gas into the right member eigenbasis (free), then let
    every member's eigencomponents expand inside its p_i compartment
    (pays out sum_i p_i S(rho_i))."""
    rho = average_state(e)
    entries = []
    for k, lam in enumerate(rho.spectrum()):
        if lam <= _WEIGHT_FLOOR:
            continue
        entries.append(
            LedgerEntry(
                STAGE_RHO_COMPRESSION,
                f"compress component {k} from volume 1 to {lam:.6g}",
                work_isothermal(lam, 1.0, lam),
            )
        )
    entries.append(
        LedgerEntry(
            STAGE_ISENTROPIC, "rotate components into the member eigenbases", 0.0
        )
    )
    for i, (p, s) in enumerate(zip(e.probs, e.states)):
        if p <= _WEIGHT_FLOOR:
            continue
        for k, mu in enumerate(s.spectrum()):
            if mu <= _WEIGHT_FLOOR:
                continue
            entries.append(
                LedgerEntry(
                    STAGE_ENSEMBLE_RECOMPRESSION,
                    f"preparation {i}: expand component {k} from volume "
                    f"{mu * p:.6g} to {p:.6g}",
                    work_isothermal(p * mu, mu * p, p),
                )
            )
    return entries


def _record_ground_state(dim: int) -> np.ndarray:
    ket = np.zeros((dim, 1), dtype=complex)
    ket[0, 0] = 1.0
    return ket @ ket.conj().T


def run_cycle(e: Ensemble, v: Povm) -> CycleLedger:
    """Run the full engine cycle and reconcile its books.

    For a general (non-projective) measurement the dephased state lives on
    the system-record space, so the return leg starts from rho (x) |0><0|
    there -- same entropy, matching dimension.  Raises
    ``SecondLawViolation`` if the net work comes out positive beyond
    tolerance.
    """
    jd = joint_distribution(e, v)
    info = mutual_information(jd)
    chi = holevo_chi(e)
    rho = average_state(e)
    ds = measurement_delta_s(rho, v)

    sigma = post_measurement_state(rho, v)
    if v.projective:
        rho_effective = rho
    else:
        rho_effective = DensityMatrix(
            tensor_product(rho.matrix, _record_ground_state(v.size))
        )

    entries = []
    entries += extraction_stage(e, v)
    entries += sigma_to_rho_stage(sigma, rho_effective)
    entries += rho_to_initial_stage(e)
    net = stage_total(entries)
    if net > CYCLE_TOL:
        raise SecondLawViolation(
            f"cycle netted {net:.3e} bits of extracted work (> {CYCLE_TOL:.1e})"
        )
    return CycleLedger(
        entries=tuple(entries), net_bits=net, i_ab=info, chi=chi, delta_s=ds
    )
