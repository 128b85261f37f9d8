"""Zero-sum mutual-information games on Gaussian state channels with a jammer.

The package computes exact Gaussian utilities for the channel
Y = X + S + J + Z, solves best-response dynamics to the Nash saddle point,
evaluates the closed-form capacities, and verifies each step of the
equilibrium argument numerically, with Monte Carlo cross-checks of every
closed form.
"""

from .claims import (
    ClaimReport,
    check_beta_zero_optimal,
    check_costa_le_si,
    check_det_bound,
    check_memoryless_dominance,
    check_wprime_indep_yprime,
    check_zero_mean_invariance,
    default_claim_suite,
)
from .game import (
    BestResponse,
    EquilibriumReport,
    Game,
    NonConvergence,
    ProbeReport,
    best_response_jammer,
    best_response_user,
    capacity_costa,
    capacity_costa_jammer,
    capacity_si_jammer,
    costa_utility,
    game_utility,
    si_utility,
    solve_saddle,
    verify_equilibrium,
)
from .gauss import (
    CovarianceMatrix,
    IllConditioned,
    JointCovariance,
    LlseResult,
    RidgeApplied,
    SingularCovariance,
    differential_entropy,
    llse_error_covariance,
    mutual_information,
    schur_conditional_cov,
)
from .sampling import (
    DegenerateSample,
    NonGaussianProbe,
    PluginMi,
    SampleBatch,
    nongaussian_probe,
    plugin_mi,
    read_sample_dump,
    sample_system,
    write_sample_dump,
)
from .strategies import (
    ChannelParams,
    FeasibilityReport,
    InfeasiblePower,
    JammerStrategy,
    UserStrategy,
    dpc_user,
    feasible,
    iid_gaussian_jammer,
    joint_covariance,
    linear_jammer,
    random_feasible_jammer,
    random_feasible_user,
)

__version__ = "0.1.0"
