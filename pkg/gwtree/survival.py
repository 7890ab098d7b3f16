# @package      gwtree
# @file         survival.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Galton-Watson trees conditioned on reaching level k (or on dying out before it).

A node at level l is of type 1 when its subtree reaches level k, type 2
otherwise. The survival probabilities p[l] turn the conditioned tree into a
two-type, level-dependent Galton-Watson tree:

  Q (survive)  children (W, X) ~ (W, X) | X >= 1, the X surviving children
               placed uniformly at random among the W positions;
  R (die out)  W ~ W | X = 0, every child again of type 2;
  P~           p[l] Q + (1 - p[l]) R, equal to the unconditioned P_lk.
"""

import math
import logging
import collections

import numpy as np
from scipy.special import gammaln, xlogy, xlog1py

from .offspring import joint_wx, law_w_given_x0, law_wx_given_xge1
from .offspring import _some_survive, _none_survive
from .tree import LEAF, grow, reaches_level, enumerate_trees, log_prob, compare_measures
from .exceptions import DomainError, ImpossibleConditioningError

log = logging.getLogger(__name__)

# coin-toss clamp; conditioning checks use exact zeros
COIN_CLAMP = 1e-15

EquivalenceReport = collections.namedtuple('EquivalenceReport', ['tv', 'max_deviation', 'atoms'])


class SurvivalTable:
    """Survival probabilities p[l] = P_lk(A_{k-l}) for l = 0..k, with the
    conditioned offspring laws of every level cached for sampling.

    The mixture weights of P~ are p[l] and 1 - p[l], except in a copy made by
    perturbed(), where the conditioned laws keep the true p.
    """

    __slots__ = ('_k', '_p', '_die', '_mixture', '_sched', '_survivingLaws', '_extinctLaws')

    def __init__(self, k, survive, die, sched, survivingLaws, extinctLaws, mixture=None):
        survive = np.array(survive, dtype=float)
        die = np.array(die, dtype=float)
        survive.setflags(write=False)
        die.setflags(write=False)
        self._k = k
        self._p = survive
        self._die = die
        self._mixture = (survive, die) if mixture is None else mixture
        self._sched = sched
        self._survivingLaws = tuple(survivingLaws)
        self._extinctLaws = tuple(extinctLaws)

    @property
    def k(self):
        return self._k

    @property
    def p(self):
        return self._p

    @property
    def die(self):
        """P(X_lk = 0) = 1 - p[l], summed directly."""
        return self._die

    @property
    def sched(self):
        return self._sched

    def rows(self):
        return [(level, float(self._p[level])) for level in range(self._k + 1)]

    def mixture(self, l):
        """(survive, die) weights of P~ at level l."""
        return float(self._mixture[0][l]), float(self._mixture[1][l])

    def coin(self, l):
        p = float(self._mixture[0][l])
        if p < COIN_CLAMP:
            return 0.
        if p > 1. - COIN_CLAMP:
            return 1.
        return p

    def surviving_law(self, l):
        """(W, X) | X >= 1 at level l."""
        law = self._survivingLaws[l]
        if law is None:
            raise ImpossibleConditioningError("p[%d] = 0: level %d cannot survive to level %d" % (l, l, self._k))
        return law

    def extinct_law(self, l):
        """W | X = 0 at level l."""
        if l >= self._k:
            raise DomainError("the extinct measure is not defined at level k=%d" % (self._k))
        law = self._extinctLaws[l]
        if law is None:
            raise ImpossibleConditioningError("p[%d] = 1: level %d cannot die out before level %d" %
                                              (l, l, self._k))
        return law

    def log_surviving_mass(self, l, n, m):
        """log P(W=n, X=m | X>=1) at level l."""
        weight = self._sched.law(l).pmf(n)
        if weight == 0. or m < 1 or m > n or self._p[l] == 0.:
            return -math.inf
        pNext = float(self._p[l + 1])
        logComb = gammaln(n + 1.) - gammaln(m + 1.) - gammaln(n - m + 1.)
        return (math.log(weight) + logComb + xlogy(m, pNext) + xlog1py(n - m, -pNext)
                - math.log(self._p[l]))

    def log_extinct_mass(self, l, n):
        """log P(W=n | X=0) at level l."""
        weight = self._sched.law(l).pmf(n)
        if weight == 0. or self._die[l] == 0.:
            return -math.inf
        pNext = float(self._p[l + 1])
        return math.log(weight) + xlog1py(n, -pNext) - math.log(self._die[l])

    def perturbed(self, eps):
        """Copy whose mixture weight at level 0 is shifted by eps, clamped to
        [0, 1], for negative controls. Q~ and R~ are unchanged."""
        survive = self._mixture[0].copy()
        die = self._mixture[1].copy()
        survive[0] = min(1., max(0., survive[0] + eps))
        die[0] = 1. - survive[0]
        survive.setflags(write=False)
        die.setflags(write=False)
        log.warning("using a perturbed survival table (p[0] shifted by %g)", eps)
        return SurvivalTable(self._k, self._p, self._die, self._sched, self._survivingLaws, self._extinctLaws,
                             mixture=(survive, die))

    def __repr__(self):
        return 'SurvivalTable(k=%d, p=%s)' % (self._k, self._p.tolist())


def build_survival_table(sched, k):
    """Survival probabilities by the downward recursion
    p[k] = 1, p[l] = 1 - sum_n mu_l(n) (1 - p[l+1])^n.

    Args:
        sched: OffspringSchedule covering levels 0..k-1.
        k: target level.

    Returns:
        SurvivalTable
    """
    if k < 0:
        raise DomainError("target level must be nonnegative, got %d" % (k))
    if not sched.covers(k):
        raise DomainError("schedule of depth %d does not cover levels 0..%d" % (sched.depth, k - 1))

    survive = np.zeros(k + 1)
    die = np.zeros(k + 1)
    survive[k] = 1.
    survivingLaws = [None]*k
    extinctLaws = [None]*k
    for level in range(k - 1, -1, -1):
        pmf = sched.law(level)
        pNext = survive[level + 1]
        survive[level] = math.fsum(pmf.probs*_some_survive(pmf.support, pNext))
        die[level] = math.fsum(pmf.probs*_none_survive(pmf.support, pNext))

        joint = joint_wx(pmf, pNext)
        if survive[level] > 0.:
            try:
                survivingLaws[level] = law_wx_given_xge1(joint)
            except ImpossibleConditioningError:
                log.debug("level %d: surviving law underflows", level)
        if die[level] > 0.:
            try:
                extinctLaws[level] = law_w_given_x0(joint)
            except ImpossibleConditioningError:
                log.debug("level %d: extinct law underflows", level)
    log.debug("survival table k=%d p[0]=%g", k, survive[0])
    return SurvivalTable(k, survive, die, sched, survivingLaws, extinctLaws)


def _check_level(table, l):
    if not 0 <= l <= table.k:
        raise DomainError("level must satisfy 0 <= l <= k=%d, got %d" % (table.k, l))


def _require_survival(table, l):
    if l < table.k and table.p[l] == 0.:
        raise ImpossibleConditioningError("p[%d] = 0: cannot condition on reaching level %d" % (l, table.k))


def _require_extinction(table, l):
    if l == table.k:
        raise DomainError("the extinct measure at level k=%d plays no role and is undefined" % (table.k))
    if table.die[l] == 0.:
        raise ImpossibleConditioningError("p[%d] = 1: cannot condition on dying out before level %d" %
                                          (l, table.k))


def _expander(table, rng):
    k = table.k

    def expand(node):
        kind, level = node
        if kind == 'q':
            if level == k:
                return LEAF
            n, m = table.surviving_law(level).draw(rng)
            if m == n:
                return [('q', level + 1)]*n
            children = [('r', level + 1)]*n
            for position in rng.choice(n, size=m, replace=False):
                children[int(position)] = ('q', level + 1)
            return children
        n = table.extinct_law(level).draw(rng)
        return [('r', level + 1)]*n

    return expand


def sample_q(table, l, rng_seed):
    """Draw a tree from Q~_lk (conditioned to reach level k)."""
    _check_level(table, l)
    _require_survival(table, l)
    rng = np.random.default_rng(rng_seed)
    return grow(('q', l), _expander(table, rng))


def sample_r(table, l, rng_seed):
    """Draw a tree from R~_lk (conditioned not to reach level k)."""
    _check_level(table, l)
    _require_extinction(table, l)
    rng = np.random.default_rng(rng_seed)
    return grow(('r', l), _expander(table, rng))


def sample_p(table, l, rng_seed):
    """Toss a p[l]-coin, then draw from Q~_lk or R~_lk."""
    _check_level(table, l)
    rng = np.random.default_rng(rng_seed)
    if rng.random() < table.coin(l):
        return sample_q(table, l, rng)
    return sample_r(table, l, rng)


def _log_mass(table, kind, l, t):
    k = table.k
    if t.height > k - l:
        raise DomainError("tree of height %d does not fit in levels %d..%d" % (t.height, l, k))
    total = 0.
    stack = [(kind, l, t)]
    while stack:
        kind, level, node = stack.pop()
        budget = k - level
        reached = reaches_level(node, budget)
        n = len(node.children)
        if kind == 'q':
            if not reached:
                return -math.inf
            if level == k:
                continue
            reaching = [reaches_level(child, budget - 1) for child in node.children]
            m = sum(reaching)
            logComb = gammaln(n + 1.) - gammaln(m + 1.) - gammaln(n - m + 1.)
            total += table.log_surviving_mass(level, n, m) - logComb
            stack.extend([('q' if flag else 'r', level + 1, child) for flag, child in zip(reaching, node.children)])
        else:
            if reached:
                return -math.inf
            total += table.log_extinct_mass(level, n)
            stack.extend([('r', level + 1, child) for child in node.children])
        if total == -math.inf:
            return -math.inf
    return total


def log_q(table, l, t):
    _check_level(table, l)
    _require_survival(table, l)
    return _log_mass(table, 'q', l, t)


def log_r(table, l, t):
    _check_level(table, l)
    _require_extinction(table, l)
    return _log_mass(table, 'r', l, t)


def log_p_tilde(table, l, t):
    """log of p[l] Q~_lk(t) + (1 - p[l]) R~_lk(t)."""
    _check_level(table, l)
    if t.height > table.k - l:
        raise DomainError("tree of height %d does not fit in levels %d..%d" % (t.height, l, table.k))
    survive, die = table.mixture(l)
    terms = []
    if survive > 0.:
        terms.append(math.log(survive) + _log_mass(table, 'q', l, t))
    if l < table.k and die > 0.:
        terms.append(math.log(die) + _log_mass(table, 'r', l, t))
    if not terms:
        return -math.inf
    return float(np.logaddexp.reduce(terms))


def _check_support(sched, k, max_children):
    for level in range(k):
        law = sched.law(level)
        if law.max_support > max_children:
            raise DomainError("offspring law at level %d has support up to %d, beyond max_children=%d" %
                              (level, law.max_support, max_children))


def equivalence_report(table, max_children, l=0):
    """Compare P_lk with p Q~ + (1-p) R~ atom by atom on the enumerated space."""
    _check_support(table.sched, table.k, max_children)
    trees = enumerate_trees(table.k - l, max_children)
    tv, maxDeviation = compare_measures(trees,
                                        lambda t: log_prob(t, table.sched, l, table.k),
                                        lambda t: log_p_tilde(table, l, t))
    return EquivalenceReport(tv, maxDeviation, len(trees))


def check_equivalence(sched, k, max_children):
    """Total-variation distance between P_0k and P~_0k over every tree of
    height <= k with at most max_children children per node."""
    _check_support(sched, k, max_children)
    return equivalence_report(build_survival_table(sched, k), max_children).tv
