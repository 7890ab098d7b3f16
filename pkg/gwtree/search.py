# @package      gwtree
# @file         search.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Expected cost of finding a node at level k by depth-first search.

The searcher pays 1 to enter a node and K per child when it looks at the
children of a node above level k. Children are tried in random order. A
node at level k ends the search. When the whole tree is explored without
success, a fresh tree is grown and the search starts over, keeping the
cost already paid.
"""

import math
import logging
import collections

import numpy as np
from joblib import Parallel, delayed

from .config import GWTreeConfig
from .offspring import expect_w_given_x0, expect_w_given_xge1, expect_deadend_ratio
from .survival import build_survival_table
from .exceptions import DomainError, ImpossibleSearchError, NonterminationError

log = logging.getLogger(__name__)

SearchOutcome = collections.namedtuple('SearchOutcome', ['total_cost', 'restarts', 'nodes_visited'])


class CostTable:
    """D[l] (cost given success, l = 0..k), E[l] (cost of a full search of a
    failing subtree, l = 0..k-1) and the total cost C with restarts.

    Levels in flagged have p[l] = 1; their E entry is never used and is 0.
    """

    def __init__(self, k, K, p, D, E, C, flagged=(), survival=None):
        self.k = k
        self.K = K
        self.p = np.array(p, dtype=float)
        self.D = np.array(D, dtype=float)
        self.E = np.array(E, dtype=float)
        for array in (self.p, self.D, self.E):
            array.setflags(write=False)
        self.C = C
        self.flagged = tuple(flagged)
        self.survival = survival

    def rows(self):
        return [(l, float(self.p[l]), float(self.D[l]), float(self.E[l]) if l < self.k else None)
                for l in range(self.k + 1)]

    def __repr__(self):
        return 'CostTable(k=%d, K=%g, C=%g)' % (self.k, self.K, self.C)


def _check_search(k, K):
    if k < 0:
        raise DomainError("target level must be nonnegative, got %d" % (k))
    if not (math.isfinite(K) and K >= 0.):
        raise DomainError("inspection price K must be finite and nonnegative, got %r" % (K))


def build_cost_table(sched, k, K):
    """Exact cost recursions.

      E[k-1] = 1,  E[l] = 1 + (K + E[l+1]) E[W | X=0]
      D[k] = 1,    D[l] = 1 + D[l+1] + K E[W | X>=1] + E[l+1] E[(W-X)/(1+X) | X>=1]
      C = (1/p[0] - 1) E[0] + D[0]

    Args:
        sched: OffspringSchedule covering levels 0..k-1.
        k: target level.
        K: price per inspected child.

    Returns:
        CostTable
    """
    _check_search(k, K)
    survival = build_survival_table(sched, k)
    p = survival.p
    if p[0] == 0.:
        raise ImpossibleSearchError("level %d is reached with probability 0; the search never ends" % (k))

    E = np.zeros(k)
    D = np.ones(k + 1)
    flagged = []
    for l in range(k - 1, -1, -1):
        pmf = sched.law(l)
        pNext = float(p[l + 1])
        if l == k - 1:
            E[l] = 1.
        elif survival.die[l] == 0.:
            flagged.append(l)
        else:
            E[l] = 1. + (K + E[l + 1])*expect_w_given_x0(pmf, pNext)
        deadEnds = expect_deadend_ratio(pmf, pNext)
        nextE = E[l + 1] if l + 1 < k else 0.
        D[l] = math.fsum([1., D[l + 1], K*expect_w_given_xge1(pmf, pNext), nextE*deadEnds])
    if flagged:
        log.debug("levels %s always reach level %d; their E entries are unused", sorted(flagged), k)

    if k == 0:
        C = 1.
    elif survival.die[0] == 0.:
        C = float(D[0])
    else:
        C = (1./p[0] - 1.)*E[0] + D[0]
    return CostTable(k, K, p, D, E, float(C), sorted(flagged), survival)


def _search_fresh_tree(sched, k, K, rng):
    # children are exchangeable and grown on entry, so generation order is a uniform order
    cost = 0.
    nodes = 0
    remaining = [1]
    while remaining:
        if remaining[-1] == 0:
            remaining.pop()
            continue
        remaining[-1] -= 1
        level = len(remaining) - 1
        cost += 1.
        nodes += 1
        if level == k:
            return cost, True, nodes
        children = sched.law(level).draw(rng)
        cost += K*children
        remaining.append(children)
    return cost, False, nodes


def _precheck(sched, k, K):
    _check_search(k, K)
    if build_survival_table(sched, k).p[0] == 0.:
        raise NonterminationError("level %d is reached with probability 0; the search would restart forever" % (k))


def _simulate(sched, k, K, rng):
    maxRestarts = GWTreeConfig.get_max_restarts()
    total = 0.
    visited = 0
    restarts = 0
    while True:
        cost, success, nodes = _search_fresh_tree(sched, k, K, rng)
        total += cost
        visited += nodes
        if success:
            return SearchOutcome(total, restarts, visited)
        restarts += 1
        if restarts > maxRestarts:
            raise NonterminationError("search gave up after %d restarts" % (maxRestarts))


def simulate_search(sched, k, K, rng_seed):
    """One run of the search protocol on lazily grown unconditioned trees."""
    _precheck(sched, k, K)
    return _simulate(sched, k, K, np.random.default_rng(rng_seed))


def search_tree(t, k, K, rng):
    """Run the protocol once on a materialized tree.

    Children of a node are tried in a uniformly random order drawn when the
    node is expanded.

    Returns:
        (cost, success, nodes)
    """
    _check_search(k, K)
    rng = np.random.default_rng(rng)
    cost = 0.
    nodes = 0
    stack = [(t, 0)]
    while stack:
        node, level = stack.pop()
        cost += 1.
        nodes += 1
        if level == k:
            return cost, True, nodes
        children = node.children
        cost += K*len(children)
        if children:
            order = rng.permutation(len(children))
            stack.extend([(children[index], level + 1) for index in order[::-1]])
    return cost, False, nodes


def _spawn(rng_seed, reps):
    if isinstance(rng_seed, np.random.SeedSequence):
        sequence = rng_seed
    elif isinstance(rng_seed, np.random.Generator):
        sequence = np.random.SeedSequence(int(rng_seed.integers(2**63)))
    else:
        sequence = np.random.SeedSequence(rng_seed)
    return sequence.spawn(reps)


def _simulate_chunk(sched, k, K, seeds):
    return [_simulate(sched, k, K, np.random.default_rng(seed)) for seed in seeds]


def simulate_costs(sched, k, K, reps, rng_seed):
    """Independent search runs, one spawned seed per replication, returned in
    replication order.

    Args:
        sched: OffspringSchedule.
        k: target level.
        K: price per inspected child.
        reps: number of replications.
        rng_seed: int, SeedSequence or Generator.

    Returns:
        list of SearchOutcome
    """
    if reps < 1:
        raise DomainError("reps must be at least 1, got %r" % (reps))
    _precheck(sched, k, K)
    seeds = _spawn(rng_seed, reps)
    nJobs = GWTreeConfig.get_n_jobs()
    chunkSize = max(1, math.ceil(reps/max(1, nJobs)))
    chunks = [seeds[start:start + chunkSize] for start in range(0, reps, chunkSize)]
    log.debug("simulating %d searches in %d chunks", reps, len(chunks))
    results = Parallel(n_jobs=nJobs)(delayed(_simulate_chunk)(sched, k, K, chunk) for chunk in chunks)
    return [outcome for chunk in results for outcome in chunk]


def summarize_costs(outcomes):
    """(mean, standard error) of the total costs; the error is 0 for one run."""
    costs = np.array([outcome.total_cost for outcome in outcomes])
    if costs.size == 1:
        return float(costs[0]), 0.
    return float(costs.mean()), float(costs.std(ddof=1)/math.sqrt(costs.size))


def monte_carlo_cost(sched, k, K, reps, rng_seed):
    """Sample mean and standard error of the total search cost."""
    return summarize_costs(simulate_costs(sched, k, K, reps, rng_seed))
