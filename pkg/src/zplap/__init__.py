"""Exact reductions between sparse linear systems over Z_p.

Any system can be turned into a graph Laplacian system, then into a
unit-weight, low-degree Laplacian, a walk matrix, or a normalized Laplacian
over a quadratic extension, each with an executable map taking solutions back.
"""
from .field import (ExtElement, ExtField, FieldElement, PrimeField, conjugate, find_nonresidue,
                    inv, is_prime, neg, sqrt_ext)
from .matrix import SpSymMatrix, add_padded, degrees, is_laplacian, is_unit_weight
from .solve import AffineSpace, LinSystem, enumerate_solutions, solve_all, spaces_equal_under_map
from .schur import check_commutativity, replace_edge, schur, star_mesh
from .gadget import (Circuit, build_near_fraction, build_ratio, build_resistance,
                     build_resistance_naive, para, rev_crt, seri, unit)
from .reduce import (decrease_combinatorial_degree, ensure_nonzero_diagonal, general_to_laplacian,
                     general_to_walk, laplacian_to_lowdegree, laplacian_to_normalized_walk,
                     laplacian_to_unitweight, stretch)
from .symbolic import (SymMatrix, Poly, det_zero_exact, det_zero_randomized, edmonds,
                       reduce_to_mult3, tutte)

__version__ = "0.1.0"
