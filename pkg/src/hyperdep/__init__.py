"""Multi-variable dependency detection and hypergraph inference for
discrete tabular data.

Detects collective dependencies (patterns visible only when all members
of a variable subset are considered together) from joint plug-in
entropies, scores them with a target-symmetric differential measure,
aggregates normalized per-subset components into set complexity, and
infers weighted dependency hypergraphs with permutation-null thresholds.
"""

__version__ = "0.1.0"

from .dataset import (DataError, Dataset, Variable, VariableSubset,
                      column_view, load, write)
from .entropy import CacheMiss, EntropyCache, joint_entropy, populate
from .measures import (MeasureReport, delta, entropy_from_interactions,
                       interaction_information, interaction_map,
                       measure_report, mutual_information, symmetric_delta)
from .complexity import (ComplexityReport, information_distance, phi_pair,
                         phi_subset, phi_total, psi)
from .hypergraph import (Hyperedge, Hypergraph, NullDistribution, build_null,
                         enumerate_subsets, export, infer, to_dot)
from .simulator import (DependencySpec, NoiseSpec, add_noise,
                        correlation_matrix, generate, noise_experiment,
                        pearson, sample_size_experiment, spearman, triplet_scores)

__all__ = [
    "__version__",
    "DataError", "Dataset", "Variable", "VariableSubset", "column_view",
    "load", "write",
    "CacheMiss", "EntropyCache", "joint_entropy", "populate",
    "MeasureReport", "delta", "entropy_from_interactions",
    "interaction_information", "interaction_map", "measure_report",
    "mutual_information", "symmetric_delta",
    "ComplexityReport", "information_distance", "phi_pair", "phi_subset",
    "phi_total", "psi",
    "Hyperedge", "Hypergraph", "NullDistribution", "build_null",
    "enumerate_subsets", "export", "infer", "to_dot",
    "DependencySpec", "NoiseSpec", "add_noise", "correlation_matrix",
    "generate", "noise_experiment", "pearson", "sample_size_experiment",
    "spearman", "triplet_scores",
]
