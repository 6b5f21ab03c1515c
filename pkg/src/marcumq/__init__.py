"""Generalized Marcum functions ``Q_mu(x, y)``, ``P_mu(x, y)`` and their bounds."""

from .bessel import RatioBoundPair, bessel_i_scaled, bessel_ratio, bessel_ratio_bounds
from .bounds import (BoundEvaluation, RatioBoundsN, p_bound_better, p_bound_mas1, p_bound_mes1,
                     p_bound_sequence, p_bounds_gamma_series, p_upper_superior, q_bound,
                     ratio_p_cf_upper, ratio_p_convergent, ratio_p_simple, ratio_q_bounds,
                     turan_noncentral_check)
from .central import (CentralBoundEvaluation, GammaPoint, central_bound, monotonicity_probe,
                      turan_gamma_check, uq_crossing)
from .convexity import SignRegion, d2q_dx2_classify, d2q_dy2_classify, find_inflection
from .core import (EvalReport, MarcumPoint, c_coefficient, dq_dx, dq_dy, f_kernel,
                   is_q_positive_guaranteed, marcum_p, marcum_q, mixture_q, q_positivity_threshold)
from .errors import (ConvergenceError, DomainError, InvalidRegionError, MarcumError,
                     NoInflectionError, ToleranceError)
from .harness import TableRow, VerifyReport, run_suite, table_rows
from .incgamma import gamma_ratio_H, gamma_ratio_h, incgamma_regularized
from .logscaled import LogScaled
from .oracle import oracle_q, quadrature_pq

__version__ = "0.1.0"

__all__ = [
    "BoundEvaluation", "CentralBoundEvaluation", "ConvergenceError", "DomainError", "EvalReport",
    "GammaPoint", "InvalidRegionError", "LogScaled", "MarcumError", "MarcumPoint",
    "NoInflectionError", "RatioBoundPair", "RatioBoundsN", "SignRegion", "TableRow",
    "ToleranceError", "VerifyReport", "bessel_i_scaled", "bessel_ratio", "bessel_ratio_bounds",
    "c_coefficient", "central_bound", "d2q_dx2_classify", "d2q_dy2_classify", "dq_dx", "dq_dy",
    "f_kernel", "find_inflection", "gamma_ratio_H", "gamma_ratio_h", "incgamma_regularized",
    "is_q_positive_guaranteed", "marcum_p", "marcum_q", "mixture_q", "monotonicity_probe",
    "oracle_q", "p_bound_better", "p_bound_mas1", "p_bound_mes1", "p_bound_sequence",
    "p_bounds_gamma_series", "p_upper_superior", "q_bound", "q_positivity_threshold",
    "quadrature_pq", "ratio_p_cf_upper", "ratio_p_convergent", "ratio_p_simple",
    "ratio_q_bounds", "run_suite", "table_rows", "turan_gamma_check", "turan_noncentral_check",
    "uq_crossing",
]
