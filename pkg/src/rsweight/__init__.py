"""Exact weights of rotation-invariant and finite-field trace function families.

The same offset-tuple data defines a Boolean function on n-bit cyclic
inputs and a trace function on GF(2^n) for every n. This package computes
their weights three independent ways -- truth-table enumeration, periodic
points of a finite-type shift via an integer transfer matrix, and exact
power sums of characteristic values -- and cross-verifies the structural
identities tying the three together, all in exact arithmetic.
"""

from .errors import (CapExceeded, CtxMismatch, EmptyCollection,
                     InsufficientData, MismatchWithPaper, NonIntegral,
                     NonIntegralMultiplicity, NonQuadratic, RsWeightError,
                     SplitNotFound, ZeroA)
from .families import (TupleCollection, WeightSequence, curve_point_count,
                       rs_eval, rs_pair_count, rs_weight_oracle,
                       trace_weight_oracle, walsh_at_zero)
from .field import BinaryField, FieldElement, eval_monomial_sum
from .gf2 import (Gf2Laurent, Gf2Poly, folded_offset_poly, gf2_gcd,
                  min_irreducible, plateau_param, plateau_period)
from .intpoly import (CharValueSet, IntPoly, PowerSumSeq, berlekamp_massey,
                      charpoly_exact, cyclotomic, mobius, newton_power_sums,
                      poly_from_power_sums, power_poly_factors,
                      scaled_cyclotomic, scaled_cyclotomic_factors,
                      sqrt2_transform)
from .quadratic import (ScaledRootMultiset, check_plateau,
                        check_recurrence_order, monomial_root_multiset,
                        monomial_weight_formula, recurrence_matrix,
                        recurrence_matrix_char_values,
                        recurrence_matrix_min_poly)
from .sft import (LocalRule, TransferSystem, build_local_rule,
                  build_transfer_system, sft_weights, transfer_system_for)
from .verify import run_suites
from .weil import WeilReport, curve_degree, genus, recover_weil_poly, \
    weil_modulus_check

__version__ = "0.1.0"
