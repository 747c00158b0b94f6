"""Worked examples shipped with the package.

* ``gray-nonintegrable-r6``: the rotating structure on flat R^6,
  ``J d_x1 = cos(x3) d_y1 + sin(x3) d_y2`` and so on, given by its exact
  1-jet at the origin in the coordinate order ``x1, y1, x2, y2, x3, y3``.
* ``kaehler-surface-product``: ``Theta = 1/2 (e1e1 + e2e2) (x) (e1e1 + e2e2)``
  with the model ``A(1,2,2,1) = 1`` (tau = 2).
* ``para-surface-product``: ``Theta = 1/2 (e1e1 - e2e2) (x) (e1e1 - e2e2)``
  with the model ``L(Theta)``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import linalg
from .core import COMPLEX, PARA, CurvatureModel, Structure, ThetaTensor, covector_square, model_from_components, sym_product
from .errors import UnknownFixture
from .realization import L, PolynomialMetric, flat_metric

NAMES = ("gray-nonintegrable-r6", "kaehler-surface-product", "para-surface-product")
COORDINATES_R6 = ["x1", "y1", "x2", "y2", "x3", "y3"]


def rotating_structure_jet() -> tuple[np.ndarray, np.ndarray]:
    """``(J0, dJ)`` at the origin; ``J0[a, x]`` is the ``a``-component of ``J d_x``."""
    x1, y1, x2, y2, x3, y3 = range(6)
    J0 = linalg.zeros(6, 6)
    # value at x3 = 0: cos = 1, sin = 0
    for x, y in ((x1, y1), (x2, y2), (x3, y3)):
        J0[y, x] = Fraction(1)
        J0[x, y] = Fraction(-1)
    dJ = np.array([linalg.zeros(6, 6) for _ in range(6)], dtype=object)
    # d/dx3 at x3 = 0: cos' = 0, sin' = 1
    D = dJ[x3]
    D[y2, x1] = Fraction(1)
    D[x2, y1] = Fraction(1)
    D[y1, x2] = Fraction(-1)
    D[x1, y2] = Fraction(-1)
    return J0, dJ


def rotating_structure_metric() -> PolynomialMetric:
    """The flat Euclidean metric the rotating structure is compatible with."""
    return flat_metric(Structure(6, COMPLEX))


def _surface_theta(kind: str) -> ThetaTensor:
    S = Structure(4, kind)
    s = 1 if kind == COMPLEX else -1
    q = covector_square(4, {1: 1}) + s * covector_square(4, {2: 1})
    return ThetaTensor(S, Fraction(1, 2) * sym_product(q, q))


def surface_theta(kind: str = COMPLEX) -> ThetaTensor:
    return _surface_theta(kind)


def surface_model(kind: str = COMPLEX) -> CurvatureModel:
    if kind == COMPLEX:
        return model_from_components(Structure(4, COMPLEX), [(1, 2, 2, 1, Fraction(1))])
    return CurvatureModel(Structure(4, PARA), L(_surface_theta(PARA)))


def fixture(name: str) -> dict:
    """The named fixture as a dict of Python objects."""
    if name == "gray-nonintegrable-r6":
        J0, dJ = rotating_structure_jet()
        return {"jet": (J0, dJ), "metric": rotating_structure_metric()}
    if name == "kaehler-surface-product":
        return {"theta": surface_theta(COMPLEX), "model": surface_model(COMPLEX)}
    if name == "para-surface-product":
        return {"theta": surface_theta(PARA), "model": surface_model(PARA)}
    raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
