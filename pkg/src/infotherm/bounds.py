"""Accessible information against its entropic ceilings.

``evaluate_bounds`` checks a concrete (ensemble, measurement) pair against
both ceilings: the measurement-independent one (chi) and the looser one
that credits the measurement's own entropy production (chi + delta_s).
``maximize_accessible_information`` searches over measurements, and
``random_instance`` manufactures reproducible test cases.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UnsupportedDimension, ValidationError
from .linops import psd_function
from .measurement import Povm, basis_measurement, joint_distribution, mutual_information
from .measurement import delta_s as measurement_delta_s
from .quantum import DensityMatrix, Ensemble, average_state, holevo_chi

#: Slack below which a bound counts as violated.
BOUND_TOL = 1e-9

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class BoundReport:
    """One (ensemble, measurement) pair scored against both ceilings.

    ``holevo_slack = chi - I`` and ``thermo_slack = holevo_slack + delta_s``,
    so the two slacks always differ by exactly ``delta_s``.
    """

    accessible_info: float
    chi: float
    delta_s: float
    holevo_slack: float
    thermo_slack: float
    holevo_satisfied: bool
    thermo_satisfied: bool


def _report(info: float, chi: float, ds: float) -> BoundReport:
    info, chi, ds = float(info), float(chi), float(ds)
    holevo_slack = chi - info
    thermo_slack = holevo_slack + ds
    return BoundReport(
        accessible_info=info,
        chi=chi,
        delta_s=ds,
        holevo_slack=holevo_slack,
        thermo_slack=thermo_slack,
        holevo_satisfied=bool(holevo_slack >= -BOUND_TOL),
        thermo_satisfied=bool(thermo_slack >= -BOUND_TOL),
    )


def evaluate_bounds(e: Ensemble, v: Povm) -> BoundReport:
    """Score a concrete measurement of an ensemble against both ceilings."""
    info = mutual_information(joint_distribution(e, v))
    chi = holevo_chi(e)
    ds = measurement_delta_s(average_state(e), v)
    return _report(info, chi, ds)


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for ``maximize_accessible_information``.

    ``method`` is ``"qubit_grid"`` (dense Bloch-angle sweep, qubits only)
    or ``"random_restart_ascent"`` (coordinate ascent on a dilation
    unitary, any dimension).
    """

    method: str = "qubit_grid"
    grid_points: int = 100
    restarts: int = 8
    max_iterations: int = 200
    convergence_tol: float = 1e-7
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("qubit_grid", "random_restart_ascent"):
            raise ValidationError(f"unknown optimizer method {self.method!r}")
        if self.grid_points < 2:
            raise ValidationError("grid_points must be at least 2")
        if self.restarts < 1 or self.max_iterations < 1:
            raise ValidationError("restarts and max_iterations must be positive")
        if self.convergence_tol <= 0:
            raise ValidationError("convergence_tol must be positive")


def _binary_entropy(x: np.ndarray) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    out = np.zeros_like(x)
    for val in (x, 1.0 - x):
        mask = val > 0.0
        out[mask] -= val[mask] * np.log2(val[mask])
    return out


def _bloch_vector(r: DensityMatrix) -> np.ndarray:
    m = r.matrix
    return np.array(
        [
            float(np.trace(m @ _PAULI_X).real),
            float(np.trace(m @ _PAULI_Y).real),
            float(np.trace(m @ _PAULI_Z).real),
        ]
    )


def _qubit_basis_povm(theta: float, phi: float) -> Povm:
    e1 = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    e2 = np.array([np.sin(theta / 2), -np.exp(1j * phi) * np.cos(theta / 2)])
    return Povm((np.outer(e1, e1.conj()), np.outer(e2, e2.conj())), projective=True)


def _qubit_grid_search(e: Ensemble, cfg: OptimizerConfig) -> Povm:
    """Dense sweep of projective qubit measurements over Bloch angles.

    The lattice covers theta in [0, pi) and phi in [0, 2*pi) with
    ``grid_points`` samples each; ties go to the first lattice point in
    row-major (theta-major) order.  Works entirely through Bloch vectors,
    so the whole grid is one vectorized pass.
    """
    if e.dim != 2:
        raise UnsupportedDimension("qubit_grid requires dimension-2 states")
    g = cfg.grid_points
    thetas = np.linspace(0.0, np.pi, g, endpoint=False)
    phis = np.linspace(0.0, 2.0 * np.pi, g, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    axes = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    ).reshape(-1, 3)

    bloch = np.stack([_bloch_vector(s) for s in e.states])  # (n, 3)
    # P(first outcome | state i) at every lattice point
    p_first = np.clip((1.0 + axes @ bloch.T) / 2.0, 0.0, 1.0)  # (g*g, n)
    q_first = p_first @ e.probs
    # I = H(outcome) - H(outcome | preparation), both binary
    info = _binary_entropy(q_first) - _binary_entropy(p_first) @ e.probs
    best = int(np.argmax(info))
    return _qubit_basis_povm(tt.reshape(-1)[best], pp.reshape(-1)[best])


def _povm_from_generator(params: np.ndarray, dim: int, outcomes: int) -> Povm:
    """POVM carved out of U = exp(iH) acting on system (x) record.

    ``params`` packs a Hermitian generator H on the dilated space; the
    isometry V |psi> = U(|psi> (x) |0>) then defines E_j = V+ P_j V, which
    is automatically a valid POVM for any parameter vector.
    """
    n = dim * outcomes
    h = np.zeros((n, n), dtype=complex)
    diag = params[:n]
    rest = params[n:]
    iu, ju = np.triu_indices(n, k=1)
    npairs = iu.size
    h[iu, ju] = rest[:npairs] + 1j * rest[npairs:]
    h = h + h.conj().T
    h[np.arange(n), np.arange(n)] = diag
    w, vec = np.linalg.eigh(h)
    unitary = (vec * np.exp(1j * w)) @ vec.conj().T
    iso = unitary[:, 0::outcomes]  # columns U (|i> (x) |0>)
    elements = []
    for j in range(outcomes):
        block = iso[j::outcomes, :]
        elements.append(block.conj().T @ block)
    return Povm(tuple(elements))


def _ascent_objective(params: np.ndarray, e: Ensemble, outcomes: int) -> float:
    v = _povm_from_generator(params, e.dim, outcomes)
    return mutual_information(joint_distribution(e, v))


def _random_restart_ascent(e: Ensemble, cfg: OptimizerConfig) -> Povm:
    """Coordinate-wise hill climb on the dilation unitary's generator.

    Each restart draws a random generator, then sweeps the parameters one
    at a time with a step that halves whenever a full sweep fails to gain
    ``convergence_tol``.  Uses dim^2 outcomes, which is enough to express
    an optimal measurement.  The best restart wins; everything is driven
    by one seeded generator, so results are reproducible.
    """
    rng = np.random.default_rng(cfg.seed)
    outcomes = e.dim * e.dim
    nparams = (e.dim * outcomes) ** 2
    best_params = None
    best_value = -np.inf
    for _ in range(cfg.restarts):
        params = rng.uniform(-np.pi, np.pi, size=nparams)
        value = _ascent_objective(params, e, outcomes)
        step = 0.5
        for _ in range(cfg.max_iterations):
            gained = 0.0
            for idx in range(nparams):
                base = params[idx]
                for delta in (step, -step):
                    params[idx] = base + delta
                    trial = _ascent_objective(params, e, outcomes)
                    if trial > value:
                        gained += trial - value
                        value = trial
                        base = params[idx]
                        break
                    params[idx] = base
            if gained < cfg.convergence_tol:
                step *= 0.5
                if step < 1e-4:
                    break
        if value > best_value:
            best_value = value
            best_params = params.copy()
    return _povm_from_generator(best_params, e.dim, outcomes)


def maximize_accessible_information(
    e: Ensemble, cfg: OptimizerConfig | None = None
) -> tuple[Povm, BoundReport]:
    """Search for the measurement extracting the most mutual information.

    Returns the best measurement found and its bound report.  Both methods
    are heuristic searches: the reported value is a certified lower bound
    on the true optimum, not a certificate of optimality.
    """
    cfg = cfg or OptimizerConfig()
    if cfg.method == "qubit_grid":
        best = _qubit_grid_search(e, cfg)
    else:
        best = _random_restart_ascent(e, cfg)
    return best, evaluate_bounds(e, best)


def _haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _random_density(dim: int, kind: str, rng: np.random.Generator) -> DensityMatrix:
    if kind == "pure":
        psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        psi /= np.linalg.norm(psi)
        return DensityMatrix(np.outer(psi, psi.conj()))
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    w = g @ g.conj().T
    return DensityMatrix(w / np.trace(w).real)


def _column_blocks(dim: int, outcomes: int) -> list[list[int]]:
    return [list(chunk) for chunk in np.array_split(np.arange(dim), outcomes)]


def _random_general_povm(dim: int, outcomes: int, rng: np.random.Generator) -> Povm:
    raw = []
    for _ in range(outcomes):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        raw.append(g @ g.conj().T)
    total = sum(raw)
    inv_root = psd_function(total, lambda x: 1.0 / np.sqrt(x), pseudo=True)
    return Povm(tuple(inv_root @ a @ inv_root for a in raw))


def random_instance(
    dim: int, n_states: int, m_outcomes: int, kind: str, seed
) -> tuple[Ensemble, Povm]:
    """Reproducible random (ensemble, measurement) pair.

    ``kind`` selects the ensemble flavor: ``pure`` (uniform random kets),
    ``mixed`` (normalized Wishart matrices), or ``commuting`` (random
    diagonal states conjugated by one shared unitary, measured in that
    shared basis).  Priors are a flat simplex draw.  For the non-commuting
    kinds the measurement is a coin flip between a random projective basis
    (column blocks of a fresh unitary, only possible when m <= dim) and
    random PSD elements normalized to resolve the identity.
    """
    if dim < 2:
        raise ValidationError("dimension must be at least 2")
    if n_states < 1:
        raise ValidationError("need at least one state")
    if m_outcomes < 2:
        raise ValidationError("need at least two outcomes")
    if kind not in ("pure", "mixed", "commuting"):
        raise ValidationError(f"unknown ensemble kind {kind!r}")
    if kind == "commuting" and m_outcomes > dim:
        raise ValidationError(
            "a commuting instance is measured in its shared basis, "
            f"so outcomes ({m_outcomes}) cannot exceed the dimension ({dim})"
        )
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(n_states))

    if kind == "commuting":
        shared = _haar_unitary(dim, rng)
        states = []
        for _ in range(n_states):
            diag = rng.dirichlet(np.ones(dim))
            states.append(DensityMatrix((shared * diag) @ shared.conj().T))
        ensemble = Ensemble(probs, tuple(states))
        povm = basis_measurement(shared, _column_blocks(dim, m_outcomes))
        return ensemble, povm

    states = tuple(_random_density(dim, kind, rng) for _ in range(n_states))
    ensemble = Ensemble(probs, states)
    use_projective = m_outcomes <= dim and rng.random() < 0.5
    if use_projective:
        povm = basis_measurement(_haar_unitary(dim, rng), _column_blocks(dim, m_outcomes))
    else:
        povm = _random_general_povm(dim, m_outcomes, rng)
    return ensemble, povm
