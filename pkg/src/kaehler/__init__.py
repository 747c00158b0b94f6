"""Exact curvature models for Kaehler and para-Kaehler geometry.

Everything is computed over the rationals: identity checks, contractions,
the W1/W2/W3 splitting, polynomial metrics realizing a given model at the
origin, their curvature at rational points, and formal potentials giving
constant scalar curvature.
"""

from .core import COMPLEX, PARA, CurvatureModel, Structure, ThetaTensor, model_from_components, theta_from_components
from .csc import Potential, solve_csc
from .decomposition import TVSplit, tv_project_closed_form, tv_project_gram
from .engine import curvature_at, kaehler_form_d_at, scalar_curvature_at
from .errors import KaehlerError
from .identities import check_bianchi, check_gray, check_kaehler, contractions, nijenhuis_at
from .realization import L, PolynomialMetric, apply_K, metric_from_theta, realize

__all__ = [
    "COMPLEX",
    "PARA",
    "CurvatureModel",
    "Structure",
    "ThetaTensor",
    "model_from_components",
    "theta_from_components",
    "Potential",
    "solve_csc",
    "TVSplit",
    "tv_project_closed_form",
    "tv_project_gram",
    "curvature_at",
    "kaehler_form_d_at",
    "scalar_curvature_at",
    "KaehlerError",
    "check_bianchi",
    "check_gray",
    "check_kaehler",
    "contractions",
    "nijenhuis_at",
    "L",
    "PolynomialMetric",
    "apply_K",
    "metric_from_theta",
    "realize",
]
