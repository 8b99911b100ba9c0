"""Morita invariants of blocks of symmetric groups.

The package computes p-cores and quotients, characters of symmetric groups
and of the wreath products C_p wr S_w, the matrix of p-scalar products of a
block, decomposition matrices of small weight, and uses them to bound the
number of Morita equivalence classes of blocks of a given weight.
"""

from .blocks import Block, delta_m0, eigen_m0, irr_block, m_matrix, p_scalar_oracle
from .decomp import DecompositionMatrix, decomposition_matrix, js_bound_matrix, row_col_sum_key
from .errors import (
    CacheInvalidError,
    InternalConsistencyError,
    InvalidCoreError,
    SymBlocksError,
    UnsupportedRegimeError,
    UsageError,
)
from .exact import Cyclotomic, RationalMatrix
from .matequiv import classify, permutation_similarity, transforming_permutations
from .partitions import core_quotient_sign, from_core_quotient, multipartitions
from .pipeline import EquivalenceReport, RunConfig, conjecture_suite, count_morita
from .scopes import conjugation_pairing, enumerate_representatives, reduce_core
from .wreath import wreath_char_value, wreath_classes, x_matrix

__version__ = "0.1.0"
