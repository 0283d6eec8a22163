"""Resolutions, Ext, complexity, cohomology rings and Carlson modules."""
from .carlson import (BlockCut, CarlsonModule, block_cut, carlson_family, carlson_module,
                      fg_truncated_check, random_class, realize_variety, ses_complexity_check,
                      split_sequence_check, tensor_theorem_check, zeta_hat)
from .cohomology import (ChainLift, CohomologyClass, CohomologyRing, TruncatedCohomologyRing,
                         class_from_basis, cohomology_ring)
from .complexity import (ComplexityEstimator, ComplexityReport, complexity_estimate,
                         dual_estimates, module_complexity)
from .resolution import (BettiTable, MinimalResolution, ResolutionTrace, cochain_matrix,
                         ext_dim, ext_dims, ext_dims_via_dual, resolve)

__all__ = [
    "BettiTable", "BlockCut", "CarlsonModule", "ChainLift", "CohomologyClass", "CohomologyRing",
    "ComplexityEstimator", "ComplexityReport", "MinimalResolution", "ResolutionTrace",
    "TruncatedCohomologyRing", "block_cut", "carlson_family", "carlson_module",
    "class_from_basis", "cochain_matrix", "cohomology_ring", "complexity_estimate",
    "dual_estimates", "ext_dim", "ext_dims", "ext_dims_via_dual", "fg_truncated_check",
    "module_complexity", "random_class", "realize_variety", "resolve", "ses_complexity_check",
    "split_sequence_check", "tensor_theorem_check", "zeta_hat",
]
