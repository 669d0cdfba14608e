"""Finite-precision p-adic power series toolkit.

Weierstrass preparation and resultants of truncated p-adic power
series, Newton polygon analysis, sharp bounds for the gcd-valuation
function phi(x) = min(v_p F(x), v_p G(x)), and digit-expansion root
finding / irreducibility testing over Q_p and its tame extensions.
"""

from .bounds import (CountingProfile, PhiReport, SandwichBounds, alpha_beta_B,
                     bound_gap, bound_small_s, canonical_form_Rn,
                     circle_sandwich, construction_31, construction_51,
                     factorial_basis_valuation, min_degree_bound, phi_eval,
                     phi_max_report, ring_cardinality_exponent)
from .errors import (CommonRoots, ContextMismatch, InvalidInput, NotApplicable,
                     NotAUnit, NotSquareFree, PadicError, PrecisionExhausted,
                     TailUncertain)
from .ffield import FField, NEG_INF, is_prime
from .newton import (CharSequence, ConvergenceInfo, characteristic_sequence,
                     circle_polynomial, convergence_mu, eval_valuation_fast,
                     roots_on_circle, tail_factor, tame_rational_between)
from .padic import PadicContext, PadicElem, digit_expand_elem
from .resultant import (CommonRootVerdict, SNFResult, common_root_test, det,
                        quotient_cardinality_exponent, res_disc,
                        resultant_poly, s_upper_bound, smith_normal_form,
                        sylvester_matrix)
from .roots import (DigitExpansion, ExpandConfig, IrredVerdict, RootReport,
                    digit_expand, irreducible_test, newton_screen,
                    padic_poly_gcd, root_find, star_map)
from .series import (DistinguishedPoly, TailCert, TruncatedSeries, ZERO_TAIL,
                     affine_tail, constant_tail, distinguished,
                     poly_divmod_monic, scale_substitute, unit_inverse,
                     washington_divide)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
