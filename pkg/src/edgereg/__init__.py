"""Exact Castelnuovo-Mumford regularity of edge ideals and their powers."""

from .errors import (BoundViolationError, BudgetExceededError, EdgeRegError,
                     InternalConsistencyError, ParseError, PreconditionError,
                     SizeGateError)
from .graphs import (Graph, bits, complement, encode_graph6, induced_subgraph,
                     is_bipartite, is_chordal, is_cochordal, is_gap_free,
                     make_graph, mask_of, parse_graph, suspension_graph)
from .ideals import (MonomialIdeal, PolarizationMap, bipartite_colon_graph,
                     colon, colon_square_formula, edge_ideal, format_ideal,
                     minimalize, parse_ideal, polarize, power,
                     strip_linear_generators)
from .complexes import (SimplicialComplex, antistar, clique_complex,
                        closed_star, format_complex, independence_complex,
                        induced_subcomplex, is_cone, join, link, make_complex,
                        parse_complex, stanley_reisner, suspension,
                        verify_decomposition_thm31)
from .homology import (HomologyVector, MatrixGF, boundary_matrix,
                       reduced_betti_vector)
from .regularity import (BettiTable, Budget, Certificate, RegularityResult,
                         koszul_oracle_reg, reg_edge_power, reg_monomial,
                         reg_sequence, reg_squarefree_hochster,
                         ses_upper_bound, verify_bounds)

__version__ = "0.1.0"
