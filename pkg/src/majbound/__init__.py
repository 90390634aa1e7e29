"""Optimal direct-sum majorization uncertainty bounds on finite-dimensional systems."""

from .bounds import (
    BoundResult,
    SnRecord,
    SubsetChoice,
    compute_s_n,
    enumerate_compositions,
    least_upper_bound,
    maximizer_state,
    omega_differences,
    rpz_bound,
    subset_operator,
    tau_n,
)
from .entropy import (
    corollary2_check,
    entropic_bound,
    improved_entropic_bound,
    lattice_metric,
    relative_entropy,
    renyi,
    shannon,
)
from .lattice import (
    DistVector,
    Relation,
    beta_vector,
    compare,
    flatten_once,
    join,
    join_many,
    majorizes,
    meet,
    meet_many,
    sort_descending,
)
from .lorenz import LorenzCurve, envelope_check, export_curves, lorenz_curve
from .quantum import (
    Measurement,
    QuantumState,
    direct_sum_distribution,
    outcome_distribution,
    random_pure_state,
    random_state_with_spectrum,
    spectral_decompose,
)
from .verify import grid_oracle_qubit, verify_tightness, verify_upper_bound

__version__ = "0.1.0"
