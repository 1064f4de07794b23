"""Exact rotation-coded binary sequences and their zero-energy lattice-gas models."""

__version__ = "0.1.0"

from .exact_angle import (
    GOLDEN,
    QuadIrrational,
    RotationParams,
    continued_fraction,
    convergents,
    parse_qi,
    qi_compare,
    qi_floor,
    qi_frac,
    qi_make,
    rotate,
)
from .sturmian_gen import (
    ApproxRotation,
    Word,
    fibonacci_substitution,
    generate,
    generate_approx,
    symbol_at,
)
from .order_analysis import (
    BalanceVerdict,
    ComplexityReport,
    DistanceProfile,
    HomogeneityVerdict,
    ProfileStructure,
    distance_profile,
    ensure_horizon,
    factor_complexity,
    factor_set,
    is_balanced,
    is_most_homogeneous,
    profile_structure,
)
from .discrepancy import (
    ComponentIntervals,
    DiscrepancyReport,
    component_intervals,
    count_occurrences,
    frequency,
    strict_boundary_check,
)
from .characterization import (
    FactVerdict,
    LegalityVerdict,
    check_enclosed_ones,
    check_follower_ones,
    enumerate_legal,
    enumerate_legal_stable,
    is_locally_legal,
    periodic_exclusion,
)
from .lattice_gas import (
    EnergyBreakdown,
    GroundStateResult,
    InteractionSpec,
    PeriodicDensity,
    build_interaction,
    energy_open,
    ground_state_search,
    periodic_energy_density,
)

__all__ = [
    "__version__",
    "GOLDEN",
    "QuadIrrational",
    "RotationParams",
    "continued_fraction",
    "convergents",
    "parse_qi",
    "qi_compare",
    "qi_floor",
    "qi_frac",
    "qi_make",
    "rotate",
    "ApproxRotation",
    "Word",
    "fibonacci_substitution",
    "generate",
    "generate_approx",
    "symbol_at",
    "BalanceVerdict",
    "ComplexityReport",
    "DistanceProfile",
    "HomogeneityVerdict",
    "ProfileStructure",
    "distance_profile",
    "ensure_horizon",
    "factor_complexity",
    "factor_set",
    "is_balanced",
    "is_most_homogeneous",
    "profile_structure",
    "ComponentIntervals",
    "DiscrepancyReport",
    "component_intervals",
    "count_occurrences",
    "frequency",
    "strict_boundary_check",
    "FactVerdict",
    "LegalityVerdict",
    "check_enclosed_ones",
    "check_follower_ones",
    "enumerate_legal",
    "enumerate_legal_stable",
    "is_locally_legal",
    "periodic_exclusion",
    "EnergyBreakdown",
    "GroundStateResult",
    "InteractionSpec",
    "PeriodicDensity",
    "build_interaction",
    "energy_open",
    "ground_state_search",
    "periodic_energy_density",
]
