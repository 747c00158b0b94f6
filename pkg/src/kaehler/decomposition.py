"""Splitting a Kaehler curvature tensor into its W1, W2, W3 components.

Two independent routes are offered. ``tv_project_closed_form`` uses the
explicit unitary-invariant formulas (complex kind only);
``tv_project_gram`` builds the three subspaces from spanning sets by exact
intersection and orthogonalization and works for both kinds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .core import COMPLEX, CurvatureModel, Structure, pair_coords, reindex, require_eigenspace
from .errors import NotKaehler, WrongKind
from .identities import check_kaehler, contractions, coords_ip, kaehler_space_coords


def _split(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a(x,w) b(y,z) - a(x,z) b(y,w)``."""
    O = np.multiply.outer(a, b)
    return reindex(O, "xwyz", "xyzw") - reindex(O, "xzyw", "xyzw")


def _pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a(x,y) b(z,w)``."""
    return np.multiply.outer(a, b)


def _j_form(S: Structure) -> np.ndarray:
    # <Jx, y>
    return S.J.T.dot(S.g0)


def pi1(S: Structure) -> np.ndarray:
    return _split(S.g0, S.g0)


def pi2(S: Structure) -> np.ndarray:
    H = _j_form(S)
    return _split(H, H) - 2 * _pair(H, H)


def phi(theta: np.ndarray, S: Structure) -> np.ndarray:
    theta = linalg.as_matrix(theta)
    require_eigenspace(theta, S)
    return _split(S.g0, theta) + _split(theta, S.g0)


def psi(theta: np.ndarray, S: Structure) -> np.ndarray:
    theta = linalg.as_matrix(theta)
    require_eigenspace(theta, S)
    H = _j_form(S)
    T = S.J.T.dot(theta)  # theta(Jx, y)
    return _split(H, T) - 2 * _pair(H, T) + _split(T, H) - 2 * _pair(T, H)


@dataclass(eq=False)
class TVSplit:
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray

    def parts(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.p1, self.p2, self.p3

    def __eq__(self, other):
        if not isinstance(other, TVSplit):
            return NotImplemented
        return all(np.all(a == b) for a, b in zip(self.parts(), other.parts()))


def _require_kaehler(M: CurvatureModel) -> None:
    rep = check_kaehler(M)
    if not rep.holds:
        raise NotKaehler(f"Kaehler identity fails at {rep.at} (value {rep.value})")


def tv_project_closed_form(M: CurvatureModel) -> TVSplit:
    S = M.structure
    if S.kind != COMPLEX:
        raise WrongKind("closed-form projections exist only for the complex kind; use tv_project_gram")
    _require_kaehler(M)
    n = S.mbar
    c = contractions(M)
    p1 = Fraction(1, 4 * n * (n + 1)) * c.tau * (pi1(S) + pi2(S))
    theta = 2 * c.rho - (c.tau / n) * S.g0
    p2 = Fraction(1, 4 * (n + 2)) * (phi(theta, S) + psi(theta, S))
    return TVSplit(p1, p2, M.A - p1 - p2)


# -- Gram route --------------------------------------------------------------


def _independent(vectors: list[np.ndarray]) -> list[np.ndarray]:
    if not vectors:
        return []
    _, pivots, _ = linalg.rref(np.array(vectors, dtype=object).T)
    return [vectors[p] for p in pivots]


def _intersect(U: list[np.ndarray], V: list[np.ndarray]) -> list[np.ndarray]:
    """Basis of ``span(U) & span(V)``; both inputs must be independent."""
    if not U or not V:
        return []
    cols = np.array(U + [-v for v in V], dtype=object).T
    return [linalg.combine(z[: len(U)], U) for z in linalg.nullspace(cols)]


def _orthogonal_within(space: list[np.ndarray], others: list[np.ndarray], ip) -> list[np.ndarray]:
    """Vectors of ``span(space)`` ip-orthogonal to every vector in ``others``."""
    if not others:
        return list(space)
    M = [[ip(b, o) for b in space] for o in others]
    return [linalg.combine(z, space) for z in linalg.nullspace(M)]


@lru_cache(maxsize=None)
def tv_subspaces(S: Structure) -> tuple[tuple[np.ndarray, ...], ...]:
    """Bases of W1, W2, W3 in pair coordinates."""
    pc = pair_coords(S.m)
    ip = coords_ip(S)
    K = list(kaehler_space_coords(S))

    span1 = _independent([pc.to_coords(pi1(S)), pc.to_coords(pi2(S))])
    W1 = _intersect(span1, K)

    gens = []
    for theta in _eigenspace_basis(S):
        gens.append(pc.to_coords(phi(theta, S)))
        gens.append(pc.to_coords(psi(theta, S)))
    W2 = _orthogonal_within(_intersect(_independent(gens), K), W1, ip)

    W3 = _orthogonal_within(K, W1 + W2, ip)
    return tuple(W1), tuple(W2), tuple(W3)


def _eigenspace_basis(S: Structure) -> list[np.ndarray]:
    from .realization import eigenspace_basis

    return eigenspace_basis(S)


def tv_project_gram(M: CurvatureModel) -> TVSplit:
    """Orthogonal projections onto W1, W2, W3 under ``tensor_ip``.

    Raises DegenerateGram if a subspace is degenerate for the (possibly
    indefinite) tensor inner product.
    """
    _require_kaehler(M)
    S = M.structure
    pc = pair_coords(S.m)
    ip = coords_ip(S)
    x = pc.to_coords(M.A)
    parts = []
    for W in tv_subspaces(S):
        _, proj = linalg.gram_project(list(W), x, ip)
        parts.append(pc.from_coords(proj))
    return TVSplit(*parts)


def subspace_dimensions(S: Structure) -> tuple[int, int, int]:
    return tuple(len(W) for W in tv_subspaces(S))
