"""Locally-Delta graphs from partial linear spaces with 3-point lines.

The package builds the catalog of spaces, their binary quotient Cayley
graphs, certifies the local structure through the two GF(2) column-space
conditions, enumerates coset tables for the presented groups, and reproduces
the reference table and distribution diagrams.
"""

from .analysis import (
    CayleyGraphView,
    Graph,
    IntersectionArray,
    QuotientDiagram,
    antipodal_check,
    bfs_distances,
    diameter,
    diameter_vt,
    equitable_refinement,
    intersection_array,
    is_locally,
    isomorphic,
    srg_params,
)
from .cayley import CayleyGamma, DegenerateQuotientError, build_gamma
from .cosetenum import Presentation, enumerate_cosets, order_report
from .gf2 import BitMatrix, BitVector, in_row_space, kernel_basis, rank, rref
from .quotient import (
    HyperplaneComplement,
    QuotientData,
    build_quotient,
    check_weight2,
    check_weight3,
    hyperplane_complements,
    infinitude_witness,
    sufficient_condition,
)
from .spaces import PartialLinearSpace, check_lambda1, collinearity_graph, incidence_matrix, validate

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CayleyGamma",
    "CayleyGraphView",
    "DegenerateQuotientError",
    "Graph",
    "HyperplaneComplement",
    "IntersectionArray",
    "PartialLinearSpace",
    "Presentation",
    "QuotientData",
    "QuotientDiagram",
    "antipodal_check",
    "bfs_distances",
    "build_gamma",
    "build_quotient",
    "check_lambda1",
    "check_weight2",
    "check_weight3",
    "collinearity_graph",
    "diameter",
    "diameter_vt",
    "enumerate_cosets",
    "equitable_refinement",
    "hyperplane_complements",
    "in_row_space",
    "incidence_matrix",
    "infinitude_witness",
    "intersection_array",
    "is_locally",
    "isomorphic",
    "kernel_basis",
    "order_report",
    "rank",
    "rref",
    "srg_params",
    "sufficient_condition",
    "validate",
]
