"""Exact group inverses for idempotent expressions in rings."""

from .errors import *  # noqa: F401,F403
from .rings import (Element, Idempotent, MatrixRing, ModularIntRing, ProductRing, Rationals, Residues,
                    Ring, diag, make_idempotent, make_ring, matrix)
from .group_inverse import (DrazinResult, GroupInverseResult, brute_force_group_inverse, corner_pi,
                            drazin_inverse, ginv, group_inverse, index, is_15_inverse, is_group_inverse,
                            spectral_idempotent)
from .pierce import PierceBlocks, assumption_profile, decompose, recompose
from .formulas import FORMULA_NAMES, PAIR_FORMULAS, FormulaOutcome
from .encoding import element_from_json, element_to_json
from .checker import GeneratorConfig, SplitMix64, TheoremReport, check_theorem, search_counterexample

__version__ = "0.1.0"
