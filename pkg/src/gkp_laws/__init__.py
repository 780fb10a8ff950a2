"""Exact triangle recurrences with six parameters and the limit laws of their rows."""

__version__ = "0.1.0"

from .bgf import ClosedFormBgf, closed_form, consistency_check, pde_residual, series_coefficients
from .classifier import (AsymptoticLaw, Regime, RegimeTag, SingularityData, asymptotic_law, classify,
                         indicator_distribution, indicator_moment_expansion, indicator_probabilities,
                         nb_exact_moments, nb_s_sequence, singularity_data)
from .errors import (GkpError, NoConvergence, ResourceLimitError, Unclassifiable, WrongRegime,
                     ZeroDenominator, ZeroRowSum)
from .laws import LimitLaw, conditioned_nb_poisson, law_pmf, normal_cdf
from .params import GkpParams
from .saddle import SaddleContext, quasi_power_moments, saddle_solve
from .sturm import real_rooted
from .triangle import (Backend, GenPolynomial, MomentReport, RowDistribution, TriangleTable,
                       build_triangle, exact_moments, pgf_eval, pmf_at, polynomial_step)
from .verifier import ConvergenceReport, convergence_report, kolmogorov_to_normal, tv_distance

__all__ = [name for name in dir() if not name.startswith("_")]
