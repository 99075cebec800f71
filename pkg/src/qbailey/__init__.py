"""Exact verification of q-series identities at roots of unity via Bailey pairs."""

from .bailey import (BaileyPair, ChainStep, Monomial, apply_step, explicit_chain_beta, key_lemma_eval,
                     seed_pair, verify_pair)
from .catalog import (IdentitySpec, VerificationReport, evaluate_side, get_identity,
                      reduction_check_m1, verify_identity)
from .cyclotomic import (CyclotomicNumber, CyclotomicRing, cyclotomic_poly, cyclotomic_ring, inversion_map,
                         lhopital_at_root, reduce)
from .laurent import LAURENT, LaurentPoly, formal_derivative
from .qprims import (PochArgument, RationalPoint, ThetaSpec, pochhammer, pochhammer_prefix_stream, q_binomial,
                     sgn, signed_range_sum, theta_double_sum)

__version__ = "0.1.0"
