"""Box norms on Z^D, PET induction with direction tracking, and exact
multilinear solution counting, backed by the C++ core."""

from petbox._core import (  # noqa: F401
    CapExceeded,
    DomainError,
    LatticeFunction,
    Multiset,
    PetTrace,
    VectorPoly,
    averaged_counting_operator,
    box_norm_power,
    box_norm_power_direct,
    calK_size,
    count_congruence_solutions,
    count_linear_solutions,
    counting_operator,
    fejer_weights,
    gap_expand,
    gcs_inner,
    in_calH,
    linear_bound_rhs,
    multiset_diff,
    multiset_negate,
    multiset_sum,
    normalized_count_max,
    pet_run,
    progression,
    run_scenario,
    verify_descendence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
