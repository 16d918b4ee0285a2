"""Exact R-polynomial families on Bruhat intervals of finite Coxeter groups.

The package enumerates type A and dihedral Coxeter groups, computes the
classic, nonnegative and shifted R-polynomial of any interval by memoized
descent recursions, cross-checks them against weighted counts of
label-increasing Bruhat paths, and verifies the regularity criteria and
dihedral bound polynomials attached to these families.
"""

from .coxeter import (
    CoxeterDescriptor,
    EmptyIntervalError,
    GroupTable,
    Interval,
    SizeLimitError,
    enumerate_group,
)
from .graph import (
    BruhatEdge,
    BruhatGraph,
    BruhatPath,
    ReflectionOrder,
    absolute_distance,
    all_paths,
    build_graph,
    default_reflection_order,
    distinct_reflection_orders,
    edge_weight,
    increasing_paths,
    path_weight,
    reflection_order_from_word,
    short_paths,
    to_dot,
    validate_reflection_order,
)
from .poly import (
    BiPoly,
    IntPoly,
    Monomial,
    average,
    coeffwise_leq,
    monomial,
    monomialize,
    shift_plus_one,
    size,
    total,
)
from .rpoly import (
    GammaVector,
    RContext,
    gamma_form_text,
    reassemble_r,
    rtilde_via_paths,
    shifted_r_via_weights,
)

__version__ = "0.1.0"
