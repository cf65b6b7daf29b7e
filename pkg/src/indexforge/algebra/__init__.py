"""Exact characteristic-class algebra."""
from .graded import GradedClass, Monomial
from .partitions import Partition, partition_count, partitions
from .roots import (
    RootConst,
    RootExpr,
    RootPolynomial,
    RootProduct,
    RootSum,
    ahat_class,
    ahat_expr,
    ahat_inverse_expr,
    chern_root_expression,
    expand_roots,
    exterior_power_character,
    exterior_power_expr,
    l_class,
    l_expr,
    multiplicative_sequence,
    power_sums,
    tangent_character,
)
from .series import PowerSeries, Rational, ahat_series, l_series

__all__ = [
    "GradedClass", "Monomial", "Partition", "partition_count", "partitions",
    "RootConst", "RootExpr", "RootPolynomial", "RootProduct", "RootSum",
    "ahat_class", "ahat_expr", "ahat_inverse_expr", "chern_root_expression",
    "expand_roots", "exterior_power_character", "exterior_power_expr",
    "l_class", "l_expr", "multiplicative_sequence", "power_sums",
    "tangent_character", "PowerSeries", "Rational", "ahat_series", "l_series",
]
