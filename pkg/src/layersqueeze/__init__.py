"""Squeezed double-layer potentials and their resonant-tunneling point interactions."""

from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    ExcludedValueError,
    LayerSqueezeError,
    NoBoundStateError,
    PoleError,
    RegionError,
    StepSizeError,
)
from .numerics import Bracket, cos_kernel, find_root, sinc_kernel
from .regions import Region, base_region, classify_region
from .resonance import (
    CharacteristicPoints,
    ResonanceCurve,
    characteristic_points,
    cleared_residual,
    gamma_delta_prime_points,
    omega_curve,
    perfect_points,
    residual,
    trace_curve,
)
from .scattering import (
    DoubleLayerPotential,
    ScatteringResult,
    TransferMatrix,
    double_layer_closed_form,
    double_layer_product,
    free_matrix,
    ode_matrix,
    perfect_transmission_conditions,
    slab_matrix,
    transmission,
)
from .seba import Transition, TwoDeltaModel, bound_state_energy, transition_classify, two_delta_matrix
from .squeeze import (
    ConvergenceReport,
    InteractionKind,
    PointInteraction,
    SqueezeSpec,
    a_arguments,
    delta_limit,
    delta_prime_strength,
    epsilon_sweep,
    finite_eps_residual,
    fit_order,
    kurasov_intensities,
    kurasov_theta,
    limit_interaction,
    realize_potential,
)

__version__ = "0.1.0"
