#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_search
----------------------------------

Tests for `gwtree.search` module.
"""

import numpy as np
import pytest

from gwtree import pmf_from_weights, poisson_pmf, OffspringSchedule, parse, LEAF
from gwtree.search import build_cost_table, simulate_search, search_tree, simulate_costs
from gwtree.search import summarize_costs, monte_carlo_cost, SearchOutcome
from gwtree.config import GWTreeConfig
from gwtree.exceptions import DomainError, ImpossibleSearchError, NonterminationError


def test_chain_cost(chain_schedule):
    table = build_cost_table(chain_schedule, 3, 2.)
    assert table.C == pytest.approx(10.)
    assert table.D.tolist() == pytest.approx([1. + 3.*(3 - l) for l in range(4)])
    assert table.flagged == (0, 1)
    rows = table.rows()
    assert rows[-1] == (3, 1., 1., None)


def test_binary_cost_by_hand():
    sched = OffspringSchedule.homogeneous(pmf_from_weights({0: 1, 2: 1}), 1)
    table = build_cost_table(sched, 1, 1.)
    # one failed leaf on average, then root, two inspections and the child
    assert table.p[0] == pytest.approx(.5)
    assert table.E.tolist() == [1.]
    assert table.D[0] == pytest.approx(4.)
    assert table.C == pytest.approx(5.)


def test_full_exploration_cost(binary_schedule):
    K = 1.5
    table = build_cost_table(binary_schedule, 2, K)
    # E[W | X=0] = .4 at level 0 when p[1] = .5
    assert table.E[1] == 1.
    assert table.E[0] == pytest.approx(1. + (K + 1.)*.4)
    assert table.C == pytest.approx((1./table.p[0] - 1.)*table.E[0] + table.D[0])


def test_target_at_root(small_schedule):
    table = build_cost_table(small_schedule, 0, 3.)
    assert table.C == 1.
    assert table.D.tolist() == [1.]
    assert simulate_search(small_schedule, 0, 3., 1) == SearchOutcome(1., 0, 1)


def test_unreachable_target():
    sched = OffspringSchedule.homogeneous(pmf_from_weights({0: 1}), 2)
    with pytest.raises(ImpossibleSearchError):
        build_cost_table(sched, 2, 1.)
    with pytest.raises(NonterminationError):
        simulate_search(sched, 2, 1., 1)
    with pytest.raises(NonterminationError):
        simulate_costs(sched, 2, 1., 10, 1)


def test_bad_arguments(small_schedule):
    with pytest.raises(DomainError):
        build_cost_table(small_schedule, 3, -1.)
    with pytest.raises(DomainError):
        build_cost_table(small_schedule, -1, 1.)
    with pytest.raises(DomainError):
        simulate_costs(small_schedule, 3, 1., 0, 1)


def test_chain_simulation(chain_schedule):
    outcome = simulate_search(chain_schedule, 3, 2., 123)
    assert outcome.total_cost == 10.
    assert outcome.restarts == 0
    assert outcome.nodes_visited == 4


def test_search_on_given_tree():
    assert search_tree(parse('(((())))'), 3, 2., 0) == (10., True, 4)
    assert search_tree(LEAF, 1, 2., 0) == (1., False, 1)
    cost, success, nodes = search_tree(parse('(()(()))'), 2, 1., 0)
    assert success
    # root, two inspections, then either the dead leaf first or the path directly
    assert cost in (6., 7.)


def test_restart_cap(monkeypatch):
    monkeypatch.setenv('GWTREE_MAX_RESTARTS', '5')
    GWTreeConfig.set_max_restarts(0)
    sched = OffspringSchedule.homogeneous(pmf_from_weights({0: 99, 1: 1}), 3)
    with pytest.raises(NonterminationError):
        simulate_search(sched, 3, 1., 0)


def test_simulation_is_reproducible(small_schedule):
    first = simulate_costs(small_schedule, 3, 1., 50, 42)
    again = simulate_costs(small_schedule, 3, 1., 50, np.random.SeedSequence(42))
    assert first == again
    GWTreeConfig.set_n_jobs(2)
    assert simulate_costs(small_schedule, 3, 1., 50, 42) == first


def test_summary():
    assert summarize_costs([SearchOutcome(3., 0, 3)]) == (3., 0.)
    mean, stderr = summarize_costs([SearchOutcome(1., 0, 1), SearchOutcome(3., 1, 3)])
    assert mean == 2.
    assert stderr == pytest.approx(1.)


def test_monte_carlo_small_tree():
    sched = OffspringSchedule.homogeneous(pmf_from_weights({0: 1, 2: 1}), 1)
    mean, stderr = monte_carlo_cost(sched, 1, 1., 20000, 8)
    assert abs(mean - 5.) < 5.*stderr


@pytest.mark.slow
@pytest.mark.parametrize('K', [0., 1., 4.])
def test_monte_carlo_agrees_with_recursion(small_schedule, K):
    exact = build_cost_table(small_schedule, 3, K).C
    mean, stderr = monte_carlo_cost(small_schedule, 3, K, 100000, 99)
    assert abs(mean - exact) < 4.*stderr


POISSON_GRID = [(mu, k, K) for mu in (1., 1.5, 2., 3.) for k in (2, 4, 6) for K in (1., 10.)]


@pytest.mark.slow
@pytest.mark.parametrize('mu,k,K', POISSON_GRID)
def test_monte_carlo_poisson_grid(mu, k, K):
    sched = OffspringSchedule.homogeneous(poisson_pmf(mu), k)
    exact = build_cost_table(sched, k, K).C
    mean, stderr = monte_carlo_cost(sched, k, K, 100000, 2026)
    assert abs(mean - exact) <= 3.*stderr


@pytest.mark.parametrize('mu', [.5, 1., 2., 3.])
@pytest.mark.parametrize('k', [1, 3, 6])
def test_cost_grows_with_step_cost(mu, k):
    sched = OffspringSchedule.homogeneous(poisson_pmf(mu), k)
    costs = [build_cost_table(sched, k, K).C for K in (0., .5, 1., 10., 100.)]
    assert costs == sorted(costs)
    table = build_cost_table(sched, k, 10.)
    assert np.all(table.D >= 1.)
    assert np.all(table.E >= 1.)
