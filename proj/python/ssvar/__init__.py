"""Standard symmetrized variance: coherence, its convex roof and concave bottom, entanglement."""

from ._ssvar import (
    SsvarError,
    adjudicate_assistance_gap,
    bloch_to_density,
    concurrence_pure,
    dephase,
    entanglement_from_expectations,
    entanglement_vc,
    haar_random_pure,
    kappa,
    linear_entropy,
    min_average_variance,
    optimize_roof,
    qfi,
    qubit_optimal_decomposition,
    random_density,
    schmidt_coefficients,
    ssv_bipartite,
    ssv_mixed,
    ssv_mixed_bruteforce,
    ssv_pure,
    symmetrized_variance,
    uncertainty_split,
    variance,
    vc_lower_bound,
    vc_qubit,
)

__all__ = [name for name in dir() if not name.startswith("_")]
