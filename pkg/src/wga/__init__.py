"""Light propagation in infinite waveguide arrays and E(2) coherent states.

Modules
-------
specfun     Bessel, spherical Bessel, Gamma and Bochner-Riesz kernels.
lattice     Truncated Fock space, Hamiltonians, propagators, displacement.
coherent    Coherent states, overlaps, Cauchy and circle families.
helmholtz   Cartesian and polar Helmholtz propagators and reconstruction.
resolution  Cartesian, polar and naive resolutions of the identity.
cli         ``wga`` command-line front end.
"""
from ._kernels import BACKEND
from .coherent import (
    CauchyFamily,
    CoherentLabel,
    cauchy_line_states,
    circle_state,
    coherent_coeffs,
    differential_realization_check,
    overlap_closed,
    overlap_sum,
    rotated_cauchy_states,
)
from .helmholtz import (
    CauchyLineData,
    CircleData,
    cauchy_reconstruct,
    circle_reconstruct,
    delta_cartesian,
    delta_polar,
    helmholtz_residual,
)
from .lattice import (
    AmplitudeVector,
    OperatorMatrix,
    TruncationWindow,
    WindowTooSmall,
    displacement_matrix,
    hamiltonian_matrix,
    number_matrix,
    propagate_analytic,
    propagate_ode,
    propagator_matrix,
    step_down_matrix,
    step_up_matrix,
)
from .quadrature import QuadratureSpec
from .resolution import (
    KernelPair,
    PolarKernel,
    cartesian_roi_cross_overlap,
    cartesian_roi_element,
    convolution_identity_check,
    naive_diag_closed,
    naive_diag_quadrature,
    polar_kernel,
    polar_roi_element,
    polar_roi_overlap,
)
from .specfun import (
    DomainError,
    EvaluationPolicy,
    KernelOrder,
    bessel_j,
    bessel_j_band,
    bessel_zero,
    bochner_riesz,
    gamma_fn,
    norm_const,
    spherical_j,
)

__version__ = "0.1.0"
