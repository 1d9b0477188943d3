"""Exact tools for k-regular polynomial maps.

A map f: F^m -> F^N is k-regular when the images of any k distinct points
are linearly independent.  The package builds such maps from projected
Veronese embeddings, tests them with exact rank computations, and evaluates
the secant-variety, Gorenstein and bound computations that govern how small
N can be.
"""

from .bounds import (BoundsCell, alpha_p, hypersurface_bound, lower_bound_min_N, table,
                     upper_bound_min_N)
from .construct import ConstructedMap, construct_k_regular, paper_example
from .errors import *  # noqa: F401,F403
from .exactmath import RationalMatrix, certified_rank, kernel_basis, rank, rank_mod_p
from .gorenstein import (HilbertProfile, NegligibilityReport, SymmetricDecomposition,
                         annihilator_generators, apolar_profile, compressed_dimension,
                         enumerate_decompositions, expected_dimension, negligibility_audit,
                         partials_space, socle4_param_dim)
from .poly import (Polynomial, PolyMap, contract, evaluate, format_poly, parse_poly,
                   veronese_map)
from .regularity import (Counterexample, DomainBall, PointConfiguration, RegularityReport,
                         check_jet, check_regularity, convert, evaluation_matrix,
                         verify_counterexample)
from .secant import (SecantDimResult, ah_dimension, strongly_regular_feasible,
                     terracini_dimension)

__version__ = "0.1.0"
