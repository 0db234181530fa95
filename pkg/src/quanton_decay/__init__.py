"""Relativistic decay kinematics of unstable quantons.

Survival amplitudes and lifetimes of velocity and space-like momentum (SLM)
eigenstates, no-decay hyperplane geometry, the contracted coordinate-time
lifetime of sharp-velocity states, and the classification of time-like
dependencies of mixed projector matrix elements.
"""
from .dynamics import (
    LifetimeResult,
    SlmLabel,
    SurvivalCurve,
    instantaneous_velocity_expectation,
    lifetime_closed_form,
    lifetime_numeric,
    mean_inverse_energy,
    shirokov_time,
    survival_amplitude,
    survival_curve,
    velocity_eigenstate_half_life,
    velocity_eigenstate_survival,
    velocity_expectation_and_spread,
)
from .minkowski import (
    REST,
    FourVector,
    Hyperplane,
    UnitTimelike,
    Velocity3,
    boost,
    boost_from_rest,
    eta_from_velocity,
    lorentz_inner,
    orthogonal_spacelike_family,
    project_spacelike,
    time_gap_between_parallel,
    velocity_from_eta,
)
from .relations import (
    CaseReport,
    VelocityPairVerdict,
    classify_triple,
    classify_velocity_pair,
    support_condition_check,
)
from .spectra import (
    SpectralDensity,
    expectation,
    load_tabulated,
    make_breit_wigner,
    make_gaussian,
    make_tabulated,
    normalize,
)

__version__ = "0.1.0"
