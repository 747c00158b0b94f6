import random
from fractions import Fraction

import numpy as np
import pytest

from kaehler.core import COMPLEX, PARA, CurvatureModel, Structure
from kaehler.csc import (
    corrected_metric,
    kaehler_form_d_series,
    kappa,
    leading_coefficient,
    residual_series,
    scalar_curvature_series,
    solve_csc,
    vanishing_through,
)
from kaehler.engine import curvature_at, scalar_curvature_at
from kaehler.errors import NotInKernel
from kaehler.fixtures import surface_theta
from kaehler.identities import contractions
from kaehler.polynomial import Poly, TruncSeries, series_invert_unit
from kaehler.realization import L, flat_metric, metric_from_theta, random_theta

F = Fraction
m = 4
u = [Poly.variable(m, i) for i in range(m)]


def test_kappa_examples():
    S = Structure(4, COMPLEX)
    k = kappa(u[0] ** 2 + u[1] ** 2, S)
    assert k[0][0] == 1 and k[1][1] == 1 and k[2][2].is_zero()
    assert all(p.is_zero() for row in kappa(u[0] ** 2 - u[1] ** 2, S) for p in row)
    k = kappa(u[3] ** 4, S)
    assert k[2][2] == 3 * u[3] ** 2 and k[3][3] == 3 * u[3] ** 2
    assert k[2][3].is_zero() and k[0][0].is_zero()


def test_kappa_para_is_anti_invariant():
    S = Structure(4, PARA)
    k = kappa(u[3] ** 4, S)
    assert k[3][3] == 3 * u[3] ** 2 and k[2][2] == -3 * u[3] ** 2


def test_leading_coefficient(S4):
    assert leading_coefficient(S4) == F(-1, 4)


def test_flat_series(S4):
    assert scalar_curvature_series(flat_metric(S4), S4, 3).is_zero()


def test_surface_series_closed_form():
    # tau = -2 lam^-2 + r^2 lam^-3 for lam = 1 + r^2/2, expanded independently
    D = 4
    r2 = TruncSeries.from_poly(u[0] ** 2 + u[1] ** 2, D)
    inv = series_invert_unit(1 + F(1, 2) * r2)
    expected = (-2 * inv * inv + r2 * inv * inv * inv).with_degree(D)
    got = scalar_curvature_series(metric_from_theta(surface_theta()), None, D)
    assert got == expected
    assert got.constant_term() == -2


def test_series_agrees_with_engine_to_truncation_order(S4):
    th = random_theta(S4, 2, kernel=True)
    g = metric_from_theta(th)
    D = 2
    s = scalar_curvature_series(g, S4, D)
    p = [F(1), F(-1, 2), F(1, 3), F(1, 2)]
    ratios = []
    for k in (10, 100, 1000):
        q = [x / k for x in p]
        ratios.append(abs(scalar_curvature_at(g, q) - s(q)) * k ** (D + 1))
    # the tail is O(|u|^(D+1)): rescaled differences stay bounded and settle
    assert ratios[-1] < 2 * ratios[-2] + 1


def test_flat_target_zero():
    th = 0 * surface_theta()
    P = solve_csc(th, 0, 6)
    assert P.phi.is_zero()


def test_flat_target_one():
    # Theta = 0, c = 1: the potential starts with the u4^4 term
    th = 0 * surface_theta()
    P = solve_csc(th, 1, 6)
    assert P.phi.to_poly() == F(-1, 6) * u[3] ** 4 + F(1, 45) * u[3] ** 6
    assert P.residual_checked_through == 2
    # independent oracle: kappa only touches the (u3,u4) plane as a conformal factor
    lam = 1 + F(1, 4) * P.phi.to_poly().diff(3).diff(3)
    lam_s = TruncSeries.from_poly(lam, 4)
    log_lam = TruncSeries(m, 4)
    x = lam_s - 1
    power = TruncSeries.constant(m, 1, 4)
    for k in range(1, 5):
        power = (power * x).with_degree(4)
        log_lam = log_lam + F((-1) ** (k + 1), k) * power
    tau = (-1 * log_lam.diff(3).diff(3) * series_invert_unit(lam_s.with_degree(2))).with_degree(2)
    assert tau == TruncSeries.constant(m, 1, 2)


@pytest.mark.parametrize("kind", [COMPLEX, PARA])
def test_surface_potential(kind):
    th = surface_theta(kind)
    S = th.structure
    P = solve_csc(th, None, 8)
    assert P.c == contractions(CurvatureModel(S, L(th))).tau == -2
    assert P.residual_checked_through == 4
    assert vanishing_through(residual_series(th, P.phi, P.c, 4)) == 4
    assert P.phi.valuation >= 5
    # Cauchy data: every monomial carries u_m to at least the fourth power
    assert all(e[-1] >= 4 for e in P.phi.terms)
    g = corrected_metric(th, P.phi.to_poly())
    assert np.all(curvature_at(g, [0] * m) == L(th))
    d = kaehler_form_d_series(g, S)
    assert all(x.is_zero() for plane in d for row in plane for x in row)


def test_solver_deterministic():
    th = random_theta(Structure(4, COMPLEX), 4, kernel=True)
    assert solve_csc(th, None, 6) == solve_csc(th, None, 6)


def test_not_in_kernel():
    with pytest.raises(NotInKernel):
        solve_csc(random_theta(Structure(4, COMPLEX), 1), None, 6)


@pytest.mark.slow
def test_m6_potential():
    th = random_theta(Structure(6, COMPLEX), 1, kernel=True)
    P = solve_csc(th, None, 6)
    assert P.residual_checked_through == 2
    assert all(e[-1] >= 4 for e in P.phi.terms)
