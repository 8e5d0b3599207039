"""Trigonometric multipole series for the two-electron Coulomb kernel and a
screened-charge pseudopotential solved in a B-spline radial basis."""

from .errors import (
    ConfigurationError,
    DomainError,
    ModelDomainError,
    OverlapNotPositiveDefiniteError,
    SingularityError,
    UnsupportedConfigurationError,
)
from .expansion import (
    ErrorScanReport,
    Geometry,
    alternative_multipole,
    classical_multipole,
    direct_coulomb,
    error_scan,
    exponential_form,
    first_term_series,
    hyperradial,
)
from .helium import (
    DESK_BASIS,
    HARTREE_EV,
    NUCLEAR_MASS_RATIO,
    CorrectionLevel,
    EnergyBreakdown,
    ModelParams,
    StateLabel,
    analytic_h0_energy,
    chi,
    excitation_energy_ev,
    mass_correction,
    potential_coefficients,
    reproduce_table,
    screen_constant,
    single_particle_energy,
    total_energy,
)
from .radial import (
    BasisSpec,
    Geometric,
    GeometricThenLinear,
    InversePower,
    InvRKinetic,
    Kinetic,
    KnotSequence,
    Linear,
    OperatorMatrix,
    Overlap,
    assemble,
    bspline_eval,
    build_knots,
    combine,
    solve,
)
from .specfun import (
    BesselCoefficientTable,
    SeriesTruncation,
    bessel_coefficients,
    bessel_eval,
    bessel_projection_oracle,
    beta,
    double_factorial,
    kernel_sum_by_multipoles,
    kernel_sum_by_powers,
    legendre,
)

__version__ = "0.1.0"
