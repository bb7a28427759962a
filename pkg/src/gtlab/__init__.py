"""gtlab: zero-error adaptive group testing for non-identical priors."""

from .algorithms import (
    ALGORITHMS,
    RunRecord,
    run_algorithm,
    run_kealy,
    run_li_improved,
    run_li_laminar,
    run_refined_laminar_me,
    run_refined_laminar_sfh,
    verify_zero_error,
)
from .bounds import (
    DEFAULT_THETA,
    BoundSet,
    bound_formulas,
    compute_bounds,
    expected_clean_groups_bound,
    expected_items_to_clean_set,
    iid_saturated_size,
)
from .errors import ConfigError, InvariantViolation, ZeroErrorViolation
from .harness import (
    CSV_COLUMNS,
    AlgorithmStats,
    SweepConfig,
    SweepRow,
    experiment1_config,
    experiment2_config,
    read_csv,
    run_sweep,
    write_csv,
)
from .oracle import LOG_HALF, OracleState, Pool, conditional_contamination
from .population import (
    InfectionVector,
    PriorSpec,
    PriorVector,
    entropy,
    generate_prior,
    sample_infections,
)
from .saturation import UnclassifiedPopulation, mean_spread_bound_holds, saturate
from .trees import SfhTree, TreeNode, build_sfh_tree, me_split, shannon_lengths

__version__ = "0.1.0"
