"""Exact graded Betti numbers of the toric surfaces X_delta embedded by L_d.

The Hirzebruch surface F_t is X_{2t}.  Rows 1 and 2 of the Betti table are
computed exactly, checked against Koszul cohomology over a prime field, and
compared with a Gaussian profile as d grows.
"""
from .asymptotics import (clt_value, decay_fit, effective_a, lemma_lhs, scale_factor_F1,
                          scaled_row, theorem_check)
from .errors import (DomainError, InsufficientData, NegativeBetti, OracleInfeasible,
                     ResourceLimit)
from .exact_betti import (ALL_VARIANTS, VALIDATED_VARIANT, FormulaVariant, N1Interpretation,
                          betti_table, binomial, hilbert_numerator, printed_row1, reconcile,
                          row1_from_numerator, row2)
from .koszul import koszul_matrix, oracle_kpq, oracle_table
from .lattice import SurfaceSpec, constants, ehrhart_count, lattice_points
from .modp import SparseMatrix, rank_mod_p
from .tables import BettiTable, Provenance

__version__ = "0.1.0"
