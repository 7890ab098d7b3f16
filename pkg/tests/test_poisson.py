#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_poisson
----------------------------------

Tests for `gwtree.poisson` module.
"""

import math

import numpy as np
import pytest

from gwtree import poisson_pmf, OffspringSchedule
from gwtree.search import build_cost_table
from gwtree.survival import build_survival_table
from gwtree.poisson import poisson_survival, poisson_cost, optimize_mu, infinite_survival, infinite_cost
from gwtree.poisson import infinite_mu_opt, lambert_w_minus1, mu_opt_limit, cost_curve, optimum_table
from gwtree.poisson import infinite_survival_lambert, _dead_end_factor
from gwtree.exceptions import DomainError, SubcriticalError, ImpossibleSearchError


def test_survival_one_level():
    assert poisson_survival(1., 1)[0] == pytest.approx(0.632121, abs=1e-6)
    assert poisson_survival(1., 0).tolist() == [1.]


@pytest.mark.parametrize('mu,k,K', [(0.7, 4, 1.), (1.5, 6, 10.), (3., 5, .5)])
def test_closed_form_matches_generic_recursion(mu, k, K):
    closed = poisson_cost(mu, k, K)
    generic = build_cost_table(OffspringSchedule.homogeneous(poisson_pmf(mu), k), k, K)
    assert closed.p == pytest.approx(generic.p, rel=1e-9)
    assert closed.D == pytest.approx(generic.D, rel=1e-8)
    assert closed.E == pytest.approx(generic.E, rel=1e-8)
    assert closed.C == pytest.approx(generic.C, rel=1e-8)


@pytest.mark.parametrize('mu', [.5, 1., 2., 5.])
@pytest.mark.parametrize('k', range(7))
def test_survival_matches_generic_table(mu, k):
    generic = build_survival_table(OffspringSchedule.homogeneous(poisson_pmf(mu), k), k)
    assert np.max(np.abs(poisson_survival(mu, k) - generic.p)) <= 1e-9


@pytest.mark.parametrize('mu', [.5, 1., 2.])
@pytest.mark.parametrize('k', range(1, 7))
@pytest.mark.parametrize('K', [1., 10.])
def test_cost_matches_generic_table(mu, k, K):
    generic = build_cost_table(OffspringSchedule.homogeneous(poisson_pmf(mu), k), k, K)
    assert abs(poisson_cost(mu, k, K).C - generic.C) <= 1e-8*generic.C


def test_cost_domain():
    with pytest.raises(DomainError):
        poisson_cost(0., 3, 1.)
    with pytest.raises(DomainError):
        poisson_cost(1., 3, -2.)


def test_large_mean_asymptote():
    k, K = 10, 10.
    assert .95 <= poisson_cost(50., k, K).C/(k*K*50.) <= 1.05
    assert poisson_cost(200., k, K).C/(k*K*200.) == pytest.approx(1., abs=.01)


def test_small_mean_asymptote():
    k, mu = 3, .01
    ratio = poisson_cost(mu, k, 1.).C*mu**k
    assert .95 <= ratio <= 1.05


def test_optimal_mean():
    optimum = optimize_mu(10, 10.)
    assert optimum.mu_opt == pytest.approx(1.68, abs=.01)
    assert not optimum.at_boundary
    for mu in (optimum.mu_opt*.9, optimum.mu_opt*1.1):
        assert poisson_cost(mu, 10, 10.).C > optimum.C_opt


def test_optimum_at_bracket_edge():
    optimum = optimize_mu(10, 10., bracket=(3., 5.))
    assert optimum.at_boundary
    assert optimum.mu_opt == pytest.approx(3.)


def test_optimum_grows_with_depth():
    rows = optimum_table([4, 8, 16], [4.])
    optima = [row[2] for row in rows]
    assert [row[0] for row in rows] == [4, 8, 16]
    assert optima == sorted(optima)


def test_infinite_survival():
    assert infinite_survival(1.) == 0.
    assert infinite_survival(.5) == 0.
    p = infinite_survival(2.)
    assert p == pytest.approx(0.796812, abs=1e-6)
    assert abs(p + math.expm1(-2.*p)) < 1e-13
    assert 1. - infinite_survival(50.) < 1e-20


def test_infinite_cost():
    result = infinite_cost(2., 1.)
    assert result.C_inf == pytest.approx(3./result.p, rel=1e-12)
    assert result.C_inf == pytest.approx(3.765, abs=1e-3)
    with pytest.raises(SubcriticalError):
        infinite_cost(1., 1.)


@pytest.mark.parametrize('mu', [1.1, 1.5, 2., 3., 5.])
@pytest.mark.parametrize('K', [1., 10., 100.])
def test_infinite_cost_identities(mu, K):
    result = infinite_cost(mu, K)
    assert abs(result.C_long - result.C_inf) <= 1e-10*result.C_inf
    assert abs(result.C_p - result.C_inf) <= 1e-10*result.C_inf
    assert abs(result.p + math.expm1(-mu*result.p)) < 1e-13


def test_infinite_optimum_approaches_limit():
    assert infinite_mu_opt(1e8).mu_opt == pytest.approx(mu_opt_limit(), abs=1e-3)
    assert infinite_mu_opt(1.).mu_opt > infinite_mu_opt(100.).mu_opt


@pytest.mark.parametrize('x', [-1./math.e + 1e-12, -.3, -2.*math.exp(-2.), -.1, -1e-5, -1e-200])
def test_lambert_residual(x):
    w = lambert_w_minus1(x)
    assert w <= -1.
    assert w*math.exp(w) == pytest.approx(x, rel=1e-12)


def test_lambert_special_values():
    assert lambert_w_minus1(-math.exp(-1.)) == -1.
    assert lambert_w_minus1(-2.*math.exp(-2.)) == pytest.approx(-2., abs=1e-12)
    for x in (0., .1, -.4, math.nan):
        with pytest.raises(DomainError):
            lambert_w_minus1(x)


def test_double_limit():
    limit = mu_opt_limit()
    assert 1.75 <= limit <= 1.76
    assert limit == pytest.approx(1.756, abs=1e-3)


def test_double_limit_matches_deep_optimum():
    assert optimize_mu(200, 1e6).mu_opt == pytest.approx(mu_opt_limit(), abs=.02)


def test_cost_curve():
    grid = np.linspace(.5, 5., 24)
    curve = cost_curve(10, 10., grid)
    rows = curve.rows()
    assert len(rows) == 24
    assert curve.mu_opt == pytest.approx(1.68, abs=.01)
    assert not curve.at_boundary
    mu, C, large, small = rows[-1]
    assert large == pytest.approx(10*10.*5.)
    assert small == pytest.approx(5.**-10)
    assert min([row[1] for row in rows]) >= curve.C_opt*(1. - 1e-6)


@pytest.mark.parametrize('k', range(100, 108))
def test_deep_small_mean_cost_is_never_nan(k):
    try:
        table = poisson_cost(.001, k, 1.)
    except ImpossibleSearchError:
        return
    assert not math.isnan(table.C)
    assert np.all(np.isfinite(table.D))


def test_dead_end_factor_is_continuous():
    cut = 1e-3
    below = _dead_end_factor(cut*(1. - 1e-9))
    above = _dead_end_factor(cut*(1. + 1e-9))
    assert below == pytest.approx(above, rel=1e-10)
    assert _dead_end_factor(0.) == .5
    assert _dead_end_factor(1e-300) == .5
    assert _dead_end_factor(1.) == pytest.approx((1. - 2.*math.exp(-1.))/(1. - math.exp(-1.)), rel=1e-12)


def test_optimum_survives_tiny_bracket_edge():
    optimum = optimize_mu(120, 10., bracket=(.001, 100.))
    assert math.isfinite(optimum.C_opt)
    assert not optimum.at_boundary
    assert math.isfinite(optimize_mu(200, 1e6).C_opt)


def test_curve_skips_out_of_range_points():
    curve = cost_curve(105, 1., [.001, 2.])
    costs = [C for _, C in curve.points]
    assert costs[0] is None
    assert math.isfinite(costs[1])


@pytest.mark.parametrize('mu', [1.5, 2., 3., 5., 10.])
def test_lambert_survival_matches_fixed_point(mu):
    assert abs(infinite_survival_lambert(mu) - infinite_survival(mu)) <= 1e-10


def test_lambert_survival_subcritical():
    assert infinite_survival_lambert(1.) == 0.
    assert infinite_survival_lambert(.5) == 0.
    with pytest.raises(DomainError):
        infinite_survival_lambert(0.)


def test_lambert_grid():
    xs = -np.geomspace(1e-8, math.exp(-1.)*(1. - 1e-12), 100)
    ws = [lambert_w_minus1(float(x)) for x in xs]
    assert all(w <= -1. for w in ws)
    assert np.all(np.diff(ws) > 0.)
    for x, w in zip(xs, ws):
        assert abs(w*math.exp(w) - x) <= 1e-12*abs(x)
