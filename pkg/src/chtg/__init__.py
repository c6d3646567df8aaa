"""Complex hyperbolic triangle groups: traces, classification, thresholds."""

from .analysis import (Certificate, NotInFamily, ScanReport, ScanRow,
                       Thresholds, alpha_of_t, bisect, family_membership,
                       family_quartic, family_type,
                       non_discreteness_certificate, rho_123_weighted,
                       scan_elliptic, sigma_lower_bound_check, t_of_alpha,
                       t_of_cos, thresholds)
from .arithmetic import (BasisRingVerdict, FieldVerdict, GroupWithRotation,
                         IllConditionedBasis, IntegralityVerdict, MostowGroup,
                         basis_ring_check, group_ring_check,
                         group_with_rotation, integer_ring_check,
                         mostow_group, mostow_trace_field_check)
from .classify import (BOUNDARY_NON_UNIPOTENT, HYPERBOLIC, INDETERMINATE,
                       REGULAR_ELLIPTIC, UNIPOTENT, IsometryClass,
                       NormalizationRequired, classify, discriminant)
from .linalg import ProjPoint, boxtimes, herm, in_u21, random_u21, rank_one
from .traces import (CapExceeded, TracePolynomial, TraceValue,
                     ZeroRadiusUnsupported, sigma_closed, sigma_word,
                     tau_123_closed, tau_2321_closed, trace_combinatorial,
                     trace_mu, trace_mu_combinatorial, trace_oracle,
                     trace_polynomial, trace_recursive)
from .triangle import (DegenerateNormalization, ExistenceViolation,
                       IdealVertexDegenerate, TriangleParams,
                       TriangleRealization, brehm_sigma, brehm_sigma_closed,
                       cartan_invariant, hakim_sandler_eta,
                       hakim_sandler_eta_closed, mu_reflection, realize,
                       realize_pinfty, reflection)
from .words import (canonical, enumerate_words, parse_word, reduce_straighten,
                    winding, word_to_str)

__version__ = "0.1.0"
