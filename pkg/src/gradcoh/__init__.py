"""Exact computations with graded modules over weighted polynomial rings:
Groebner bases, minimal resolutions, Hilbert series, Ext, canonical modules,
graded local cohomology and Matlis duality of finite-length modules."""

from .errors import (CMRequired, GradcohError, InputNotExact, NegativeIndex, NonHomogeneousInput,
                     NotFiniteLength, NotZGraded, ParseError, ResolutionTooShort,
                     WindowExceedsTruncation, ZeroModule)
from .field import GF, QQ, Field
from .ring import GREVLEX, LEX, GradingSpec, MonomialOrder, Polynomial, PolyRing, polynomial_ring
from .groebner import buchberger, colon_step, normal_form, saturation_colon, spoly, syzygies
from .modules import (GradedFree, GradedFreeMap, Presentation, QuotientRing, is_zero, kernel,
                      minimal_generators, minimal_presentation)
from .resolution import FreeResolution, free_resolution
from .hilbert import (HilbertSeries, depth_dim, dimension, hilbert_function, hilbert_polynomial,
                      hilbert_series, is_graded_artinian)
from .homological import (DualizingShift, ExtModule, canonical_module, certify_cm, ext_over_A,
                          ext_over_T, is_cohen_macaulay, omega_T)
from .localcoh import (LocalCohomologyTable, grothendieck_serre_check, h0_saturation,
                       koszul_oracle, local_cohomology_duality, local_cohomology_duality_over_A,
                       local_cohomology_table, verify_local_duality)
from .matlis import (E_A_profile, FiniteLengthModule, GradedDualProfile, double_dual_check,
                     finite_length_profile, matlis_dual, matlis_exactness_check, star_hom_check)
from .session import Session, parse_session

__version__ = "0.1.0"
