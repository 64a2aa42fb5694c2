"""Few-weight p-ary linear codes from functions with few Walsh values.

Exact arithmetic throughout: field elements are integer codes, Walsh values
live in Z[w_p], weight distributions are integer maps.
"""

from .codes import (CodeSummary, DefiningSet, WeightEnumerator, build_code_direct,
                    build_code_via_walsh, build_gold_code_via_weil, defining_set_db,
                    defining_set_gold, dual_a2, griesmer_max_d, half_set, pless_check)
from .cyclotomic import CycInt
from .field import FieldCtx, FieldElement, make_field
from .walsh import classify, tabulate, walsh_full, walsh_naive

__version__ = "0.1.0"

__all__ = [
    "CodeSummary", "CycInt", "DefiningSet", "FieldCtx", "FieldElement", "WeightEnumerator",
    "build_code_direct", "build_code_via_walsh", "build_gold_code_via_weil", "classify",
    "defining_set_db", "defining_set_gold", "dual_a2", "griesmer_max_d", "half_set",
    "make_field", "pless_check", "tabulate", "walsh_full", "walsh_naive",
]
