"""Exact reduction operators: lattice, confluence, completion and presentations."""
from .basis import (
    InvalidOperatorError,
    LinearMap,
    ReducedBasis,
    ReductionMatrixError,
    ReductionOperator,
    apply,
    from_matrix,
    kernel_basis,
    reduce_basis,
    theta,
)
from .core import (
    AmbientMismatch,
    GenSet,
    Vector,
    ZeroVectorError,
    leading_coefficient,
    leading_generator,
    multiset_leq,
    vec_add,
    vec_scale,
)
from .kernels import BACKEND
from .lattice import OperatorFamily, intersect, is_confluent, join, leq, meet, obstructions, red_family

__version__ = "0.1.0"
