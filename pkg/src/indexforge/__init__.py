"""indexforge: exact index densities, indices and elliptic gradients of chiral geometric operators."""
from .algebra import GradedClass, Monomial, Partition, ahat_class, l_class, partitions
from .index import (
    CoefficientVector,
    StructureError,
    coefficient_match,
    evaluate_index,
    index_oracle,
    induced_oracle,
    thom_matrix,
)
from .manifolds import ManifoldDescriptor, ManifoldLibrary, pair
from .operators import OperatorSpec, higher_signature_integrand
from .spin_rep import DominantWeight, GradientSelector, classify_minimal_elliptic, weyl_dim

__version__ = "0.1.0"

__all__ = [
    "GradedClass", "Monomial", "Partition", "ahat_class", "l_class", "partitions",
    "CoefficientVector", "StructureError", "coefficient_match", "evaluate_index",
    "index_oracle", "induced_oracle", "thom_matrix",
    "ManifoldDescriptor", "ManifoldLibrary", "pair",
    "OperatorSpec", "higher_signature_integrand",
    "DominantWeight", "GradientSelector", "classify_minimal_elliptic", "weyl_dim",
]
