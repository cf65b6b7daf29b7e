"""Heat-kernel side: normal-coordinate jets, the parametrix recursion and spectral oracles."""
from .jets import (
    FrameCurvature,
    GaussianRational,
    JetPoly,
    constant_curvature,
    metric_jet,
    radial_gauge,
    round_sphere,
    sphere_metric_jet,
    taylor_A_inverse,
    taylor_connection,
    uniform_field,
)
from .parametrix import (
    HeatCoefficient,
    ModelOperator,
    SymbolTerm,
    free_laplacian,
    gaussian_moment,
    heat_coefficients,
    magnetic_laplacian,
    parametrix_recursion,
    schrodinger,
)
from .spectral import (
    DivergenceFit,
    HeatFit,
    ScalingReport,
    fit_divergent_terms,
    fit_heat_expansion,
    fit_schrodinger_coefficients,
    free_dirac_spectrum,
    heat_trace,
    landau_dirac_spectrum,
    landau_levels,
    scaling_check,
    schrodinger_torus_trace,
    torus_spectral_supertrace,
    torus_spectral_trace,
)

__all__ = [name for name in dir() if not name.startswith("_")]
