"""Frequency-averaged ("fuzzy") ladder operators for the harmonic oscillator.

Quick start::

    from fuzzyladder import DistributionSpec, coefficients, fuzzy_ladder

    c = coefficients(DistributionSpec.lorentzian(0.3))
    c.C                       # 1/sqrt(1 + 0.3**2)
    ls = fuzzy_ladder(64, c)  # truncated matrices for a, a_dag and their fuzzy versions
"""
from ._backend import BACKEND
from .branch import branch_sqrt, inv_branch_sqrt
from .dispersion import (
    GammaModel,
    ModeOccupation,
    constraint_report,
    dispersion_curve,
    excitation_energy,
    multimode_energy,
    zeta_of,
)
from .distributions import KINDS, DistributionSpec, density, normalization_residual
from .errors import *  # noqa: F401,F403
from .fock import (
    FockVector,
    HamiltonianSpec,
    LadderSet,
    annihilator_at_frequency,
    cross_commutator_value,
    eigenstates,
    fuzzy_fock_state,
    fuzzy_ladder,
    fuzzy_vacuum,
    hamiltonian,
    number_operator,
    sharp_ladder,
    spectrum,
)
from .moments import (
    FuzzyCoefficients,
    MomentPair,
    Prop1Report,
    coefficients,
    commutation_function,
    moments,
    moments_analytic,
    moments_quadrature,
    prop1_check,
)
from .states import (
    DisplacementArg,
    Grid,
    coherent_displaced,
    coherent_sum,
    displacement_matrix,
    fidelity,
    hermite_wavefunction,
    position_density,
    rescale_displacement,
)
from .symmetry import (
    SymmetryTransform,
    SymmetryVerdict,
    invariance_verdict,
    parity_transform,
    time_reversal_transform,
    transform_operator,
)

__version__ = "0.1.0"
