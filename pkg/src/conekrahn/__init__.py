"""Faber-Krahn type eigenvalue bounds on cone domains, with a verification harness."""
from .comparison import (
    ComparisonProblem,
    bessel_comparison_solution,
    comparison_eigenvalue_closed_form,
    comparison_eigenvalue_shooting,
    comparison_profile,
    rayleigh_lower_bound,
    verify_main_theorem,
)
from .eigensolver import SpectralResult, domain_eigenvalue
from .geometry import (
    HalfBall,
    Polygon,
    RadialGraphDomain,
    halfspace_functionals,
    halfspace_isoperimetric_check,
    isoperimetric_check,
    weighted_perimeter,
    weighted_volume,
)
from .link import LinkSpec, LinkSpectrum, link_spectrum
from .rearrange import IntervalUnion, SlabDomain, steiner_symmetrize, symmetrization_check, szego_check
from .report import VerificationReport
from .sector import sector_eigenvalue, sector_eigenvalue_from_volume
from .specfun import bessel_j, first_bessel_zero
from .weight import ConeGeometry, cone, sector_weighted_volume

__version__ = "0.1.0"
