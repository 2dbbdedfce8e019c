"""Analog network coding in layered amplify-and-forward relay networks.

Models directed layered relay networks, computes optimal per-relay scaling
vectors and end-to-end achievable rates, quantifies the cost of using only
k of the N relays per layer, and ships an independent brute-force oracle
plus a cross-check suite that validates every closed form.
"""

from .config import ConfigError, ScenarioConfig, load_scenario, parse_ecgal, parse_model, parse_network, parse_scenario
from .diamond import (
    DegenerateAsymmetryError,
    DegenerateRelayError,
    DiamondGapBounds,
    DiamondSolution,
    EmpiricalGapReport,
    diamond_gap_bounds,
    diamond_optimal,
    diamond_snr,
    empirical_gap,
    harmonic_number,
    hyperplane_solution,
    unconstrained_hyperplane_snr,
)
from .ecgal import (
    EcgalGapBounds,
    EcgalSpec,
    asymptotic_ratio,
    ecgal_betas,
    ecgal_gap_bounds,
    ecgal_snr,
    ecgal_snr_ratio,
    gap_constants,
    to_layered_network,
    two_layer_ratio,
    uniform_scaling,
)
from .network import (
    LayeredNetwork,
    ModifiedGains,
    PathBudgetError,
    ScalingVector,
    beta_max,
    enumerate_paths,
    induced_subnetwork,
    modified_gains,
    sequential_beta_caps,
    total_path_count,
    validate_network,
)
from .oracle import (
    OracleBudgetError,
    OracleResult,
    SubsetSearchReport,
    best_subset,
    grid_search,
    hybrid_search,
    refine_ascent,
)
from .rate import FeasibilityReport, SnrReport, destination_snr, feasibility_check, rate_from_snr
from .verify import CheckResult, run_suite

__version__ = "0.1.0"
