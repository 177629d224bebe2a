"""Accessible information, entropy ceilings, and measurement-engine
work ledgers for finite-dimensional quantum sources."""

from .blockcoding import BlockReport, block_scan, pretty_good_measurement, sequence_ensemble
from .bounds import (
    BoundReport,
    OptimizerConfig,
    evaluate_bounds,
    maximize_accessible_information,
    random_instance,
)
from .errors import (
    BlockFormViolation,
    BudgetExceeded,
    DimensionMismatch,
    NegativeEigenvalue,
    NonPositiveVolume,
    NotHermitian,
    NotProjective,
    NumericalFailure,
    SecondLawViolation,
    ToolkitError,
    UnsupportedDimension,
    ValidationError,
)
from .linops import HermitianEigen, hermitian_eig, psd_function, tensor_product
from .measurement import (
    JointDistribution,
    Povm,
    basis_measurement,
    delta_s,
    demon_record_state,
    demon_reset,
    joint_distribution,
    mutual_information,
    naimark_dilation,
    outcome_distribution,
    post_measurement_state,
)
from .quantum import (
    DensityMatrix,
    Ensemble,
    average_state,
    ensemble_commutes,
    holevo_chi,
    maximally_mixed,
    pure_state,
    shannon_entropy,
    shared_eigenbasis,
    von_neumann_entropy,
)
from .thermo import (
    STAGE_ENSEMBLE_RECOMPRESSION,
    STAGE_EXTRACTION,
    STAGE_ISENTROPIC,
    STAGE_RHO_COMPRESSION,
    STAGE_RHO_EXPANSION,
    STAGE_SIGMA_COMPRESSION,
    STAGES,
    CycleLedger,
    LedgerEntry,
    extraction_stage,
    rho_to_initial_stage,
    run_cycle,
    sigma_to_rho_stage,
    stage_total,
    work_isothermal,
)

__version__ = "0.1.0"

__all__ = [
    "BlockFormViolation",
    "BlockReport",
    "BoundReport",
    "BudgetExceeded",
    "CycleLedger",
    "DensityMatrix",
    "DimensionMismatch",
    "Ensemble",
    "HermitianEigen",
    "JointDistribution",
    "LedgerEntry",
    "NegativeEigenvalue",
    "NonPositiveVolume",
    "NotHermitian",
    "NotProjective",
    "NumericalFailure",
    "OptimizerConfig",
    "Povm",
    "STAGES",
    "STAGE_ENSEMBLE_RECOMPRESSION",
    "STAGE_EXTRACTION",
    "STAGE_ISENTROPIC",
    "STAGE_RHO_COMPRESSION",
    "STAGE_RHO_EXPANSION",
    "STAGE_SIGMA_COMPRESSION",
    "SecondLawViolation",
    "ToolkitError",
    "UnsupportedDimension",
    "ValidationError",
    "average_state",
    "basis_measurement",
    "block_scan",
    "delta_s",
    "demon_record_state",
    "demon_reset",
    "ensemble_commutes",
    "evaluate_bounds",
    "extraction_stage",
    "hermitian_eig",
    "holevo_chi",
    "joint_distribution",
    "maximally_mixed",
    "maximize_accessible_information",
    "mutual_information",
    "naimark_dilation",
    "outcome_distribution",
    "post_measurement_state",
    "pretty_good_measurement",
    "psd_function",
    "pure_state",
    "random_instance",
    "rho_to_initial_stage",
    "run_cycle",
    "sequence_ensemble",
    "shannon_entropy",
    "shared_eigenbasis",
    "sigma_to_rho_stage",
    "stage_total",
    "tensor_product",
    "von_neumann_entropy",
    "work_isothermal",
]
