"""Toolkit for lower-bounding the dimension threshold of monochromatic
coplanar-K4 avoidance: exact counting, symmetry quotients, difficulty
estimates, and stochastic colouring search on hypercube complete graphs."""

from .colourings import (
    Colouring,
    VerificationReport,
    count_solutions,
    is_symmetric,
    read_colouring,
    verify,
    write_colouring,
)
from .cube import (
    CountRow,
    PlanarQuad,
    count_row,
    edge_count,
    edge_endpoints,
    edge_index,
    enumerate_planar_quads,
    is_coplanar,
    quad_count,
)
from .estimate import DifficultyRow, exact_fraction, naive_row, quotient_nf
from .groups import (
    GroupSpec,
    OrbitMap,
    Permutation,
    apply_edge,
    apply_quad,
    apply_vertex,
    catalog,
    direct_product,
    edge_orbits,
    enumerate_elements,
    identity_group,
    lookup,
    parse_cycles,
    wreath,
)
from .quotient import QuotientProblem, build_quotient, expand_assignment
from .solver import (
    SolveConfig,
    SolveResult,
    SolverStats,
    run_attempts,
    solve,
    solve_basic,
    solve_cutoff,
)

__version__ = "0.1.0"
