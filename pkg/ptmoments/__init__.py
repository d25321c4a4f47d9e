#
#  __init__.py
#  PartialTransposeMoments
#
__version__ = "v0.1"

import logging
logging.getLogger(__name__).addHandler(logging.NullHandler())

from .utils import PtmUsageError, InfeasibleSizeError, InexactDivisionError
from .permutations import (Permutation,
                           CycleType,
                           compose,
                           inverse,
                           cycle_count,
                           cycle_type,
                           geodesic_distance,
                           count_defect,
                           catalan,
                           adrianov_B,
                           lemma2_count_bound,
                           primitive_factorization_count,
                           enumerate_sk)
from .symmetric import Partition, partitions_of, syt_count, mn_character, schur_dim
from .weingarten import (wg_exact,
                         wg_cycle_formula,
                         gram_matrix,
                         verify_gram_inverse,
                         wg_series_truncated,
                         wg_bound_check)
from .moments import (SubspaceSpec,
                      alpha_coefficients,
                      exact_moment,
                      count_Nabc)
from .bounds import (lp_brute,
                     lp_dual_bound,
                     explicit_moment_bound,
                     thm_main_bounds,
                     weak_mult_exponent,
                     holder_exponent,
                     entropy_floor)
from .operators import (RngStream,
                        HermitianOperator,
                        ConvergenceError,
                        haar_unitary,
                        random_projector,
                        partial_transpose,
                        operator_norm,
                        antisym_projector,
                        product_state_value,
                        seesaw_hsep,
                        wishart_sample)
from .experiments import (Experiment,
                          EstimatorReport,
                          mc_moment,
                          mc_norm,
                          wishart_pt_experiment,
                          certificate)
from .verify import verify_suites
