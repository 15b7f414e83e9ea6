"""Numerical verification of eigenvalue and norm extensions of Bohr's inequality.

The package is layered bottom-up:

- :mod:`bohrcheck.linalg`: validated complex matrices, Hermitian
  eigendecomposition, matrix absolute value, seeded random inputs;
- :mod:`bohrcheck.calculus`: scalar convex-function registry with scanned
  hypothesis flags and Hermitian functional calculus;
- :mod:`bohrcheck.majorization`: weak majorization verdicts, Ky Fan and
  Schatten norms;
- :mod:`bohrcheck.cpmaps`: structured positive maps with Choi/Kraus/
  Stinespring machinery;
- :mod:`bohrcheck.inequalities`: the inequality checkers;
- :mod:`bohrcheck.harness` / :mod:`bohrcheck.cli`: seeded fuzzing
  campaigns, replay, demo, and the command-line front end.
"""

from .linalg import (
    DimensionError,
    EigenConvergenceError,
    EigenDecomposition,
    Interval,
    abs_matrix,
    eig_hermitian,
    hermitize,
    make_rng,
    random_hermitian,
    random_map_family,
    random_unitary,
)
from .calculus import (
    ConvexFunctionSpec,
    DomainError,
    abs_power,
    apply_fun,
    function_registry,
    make_function_spec,
    validate_function_spec,
)
from .majorization import (
    MajorizationVerdict,
    ky_fan_dominates,
    ky_fan_max_estimate,
    ky_fan_norm,
    schatten_norm,
    singular_values,
    weakly_majorized_by,
)
from .cpmaps import (
    BlockExtraction,
    Congruence,
    DiagonalPOVM,
    MapSpec,
    SpecError,
    StinespringDilation,
    Transpose,
    WeightedSum,
    apply_map,
    choi_matrix,
    is_completely_positive,
    kraus_from_choi,
    kraus_operators,
    map_dims,
    normalize_unital,
    stinespring,
)
from .inequalities import (
    CheckReport,
    WeightVector,
    check_cor_congruence,
    check_eigen_bohr,
    check_increasing_convex_eigen,
    check_jensen_map,
    check_jensen_vector,
    check_norm_bohr,
    check_pointwise_bohr_r2,
    check_scalar_bohr,
    check_sum_square,
    check_thm_weak_major,
    check_vasic_keckic,
)
from .harness import (
    CampaignConfig,
    CampaignResult,
    GenerationError,
    TrialRecord,
    demo,
    replay,
    run_campaign,
    run_instance,
)

__version__ = "0.1.0"
