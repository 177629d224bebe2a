"""Shared fixtures and frozen reference values.

The constants below were recomputed from closed forms with an independent
scalar script before any library code existed, then frozen here:

    b(x)  = -x log2 x - (1-x) log2 (1-x)
    chi   = b((1 + 1/sqrt 2)/2)          for the |0>,|+> equal-prior pair
    I     = b(3/4) - 1/2                 measured in the computational basis
    I_opt = 1 - b((1 + 1/sqrt 2)/2)      at the optimal (Helstrom) basis
"""
import numpy as np
import pytest

import infotherm as it

CHI_TWO_STATE = 0.6008760366928562
H_THREE_QUARTERS = 0.8112781244591328
INFO_COMPUTATIONAL = 0.3112781244591328
DS_COMPUTATIONAL = 0.2104020877662767
INFO_HELSTROM = 0.3991239633071438
DS_HELSTROM = 0.3991239633071438
P_HELSTROM_CORRECT = 0.8535533905932737
NET_COMPUTATIONAL = -0.5
NET_HELSTROM = -0.6008760366928562


@pytest.fixture
def two_state_ensemble():
    """|0> and |+> with equal priors."""
    return it.Ensemble(
        [0.5, 0.5], (it.pure_state([1.0, 0.0]), it.pure_state([1.0, 1.0]))
    )


@pytest.fixture
def orthogonal_ensemble():
    """|0> and |1> with equal priors: a classical bit."""
    return it.Ensemble(
        [0.5, 0.5], (it.pure_state([1.0, 0.0]), it.pure_state([0.0, 1.0]))
    )


@pytest.fixture
def computational_basis():
    return it.basis_measurement(np.eye(2))


@pytest.fixture
def helstrom_basis():
    """Projective basis along the Bloch axis (-1, 0, 1)/sqrt(2)."""
    theta, phi = np.pi / 4, np.pi
    e1 = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    e2 = np.array([np.sin(theta / 2), -np.exp(1j * phi) * np.cos(theta / 2)])
    return it.Povm((np.outer(e1, e1.conj()), np.outer(e2, e2.conj())))
