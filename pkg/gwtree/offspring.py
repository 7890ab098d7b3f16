# @package      gwtree
# @file         offspring.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Offspring laws per level and the conditional laws of (W, X).

W is the number of children of a node at level l, X the number of those
children whose subtree reaches the target level, X | W ~ Bin(W, p) with p
the survival probability one level down.
"""

import math
import numbers
import logging
import functools
import itertools
import types

import numpy as np
from scipy import stats
from scipy.special import gammaln, xlogy

from .config import GWTreeConfig
from .exceptions import InvalidDistributionError, DomainError, ImpossibleConditioningError
from .exceptions import EnumerationSizeError

log = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-9


def _readonly(array):
    array.setflags(write=False)
    return array


class Pmf:
    """Finite-support probability mass function on the nonnegative integers."""

    __slots__ = ('_support', '_probs', '_cumulative', '_lookup')

    def __init__(self, support, probs):
        support = np.asarray(support, dtype=np.int64).ravel()
        probs = np.asarray(probs, dtype=float).ravel()
        if support.size == 0 or support.size != probs.size:
            raise InvalidDistributionError("support and probabilities must be nonempty and of equal length")
        if np.any(support < 0):
            raise InvalidDistributionError("support must be nonnegative: %s" % (support.tolist()))
        if np.any(np.diff(support) <= 0):
            raise InvalidDistributionError("support must be strictly increasing: %s" % (support.tolist()))
        if not np.all(np.isfinite(probs)) or np.any(probs < 0.):
            raise InvalidDistributionError("probabilities must be finite and nonnegative")
        total = math.fsum(probs)
        if abs(total - 1.) > NORMALIZATION_TOLERANCE:
            raise InvalidDistributionError("probabilities sum to %.17g, not 1" % (total))
        probs = probs/total

        cumulative = np.cumsum(probs)
        cumulative[-1] = 1.
        self._support = _readonly(support)
        self._probs = _readonly(probs)
        self._cumulative = _readonly(cumulative)
        self._lookup = {int(n): float(prob) for n, prob in zip(support, probs)}

    @property
    def support(self):
        return self._support

    @property
    def probs(self):
        return self._probs

    @property
    def max_support(self):
        return int(self._support[-1])

    def pmf(self, n):
        """Probability of exactly n children."""
        return self._lookup.get(int(n), 0.)

    def log_pmf(self, n):
        prob = self.pmf(n)
        return math.log(prob) if prob > 0. else -math.inf

    def mean(self):
        return math.fsum(self._support*self._probs)

    def items(self):
        return self._lookup.items()

    def draw(self, rng):
        """Inverse-CDF draw with a numpy Generator."""
        index = int(np.searchsorted(self._cumulative, rng.random(), side='right'))
        return int(self._support[min(index, self._support.size - 1)])

    def __eq__(self, other):
        if not isinstance(other, Pmf):
            return NotImplemented
        return self._lookup == other._lookup

    def __hash__(self):
        return hash(tuple(sorted(self._lookup.items())))

    def __repr__(self):
        return 'Pmf(support=%s, probs=%s)' % (self._support.tolist(), self._probs.tolist())


class OffspringSchedule:
    """Offspring law for every level 0..depth-1."""

    __slots__ = ('_depth', '_laws')

    def __init__(self, depth, laws):
        depth = int(depth)
        if depth < 0:
            raise DomainError("schedule depth must be nonnegative, got %d" % (depth))
        laws = {int(level): law for level, law in dict(laws).items()}
        missing = [level for level in range(depth) if level not in laws]
        if missing:
            raise DomainError("schedule has no offspring law for levels %s" % (missing))
        for level, law in laws.items():
            if not isinstance(law, Pmf):
                raise DomainError("offspring law at level %d is not a Pmf" % (level))
        self._depth = depth
        self._laws = types.MappingProxyType({level: laws[level] for level in range(depth)})

    def __reduce__(self):
        return (OffspringSchedule, (self._depth, dict(self._laws)))

    @classmethod
    def homogeneous(cls, pmf, depth):
        """Same offspring law at every level."""
        return cls(depth, {level: pmf for level in range(depth)})

    @property
    def depth(self):
        return self._depth

    @property
    def laws(self):
        return self._laws

    def law(self, level):
        try:
            return self._laws[level]
        except KeyError:
            raise DomainError("no offspring law at level %s (schedule depth %d)" % (level, self._depth))

    def covers(self, k):
        return k <= self._depth

    def max_support(self, levels=None):
        if levels is None:
            levels = range(self._depth)
        return max([self.law(level).max_support for level in levels], default=0)

    def __repr__(self):
        return 'OffspringSchedule(depth=%d)' % (self._depth)


class JointWX:
    """Joint law of (W, X) with 0 <= X <= W."""

    __slots__ = ('_ns', '_ms', '_probs', '_cumulative')

    def __init__(self, ns, ms, probs):
        ns = np.asarray(ns, dtype=np.int64).ravel()
        ms = np.asarray(ms, dtype=np.int64).ravel()
        probs = np.asarray(probs, dtype=float).ravel()
        if not (ns.size == ms.size == probs.size) or ns.size == 0:
            raise InvalidDistributionError("joint law needs equally long, nonempty arrays")
        if np.any(ms < 0) or np.any(ms > ns):
            raise InvalidDistributionError("joint law entries must satisfy 0 <= m <= n")
        if np.any(probs < 0.):
            raise InvalidDistributionError("joint law has negative mass")
        total = math.fsum(probs)
        if abs(total - 1.) > NORMALIZATION_TOLERANCE:
            raise InvalidDistributionError("joint law sums to %.17g, not 1" % (total))

        cumulative = np.cumsum(probs)
        cumulative[-1] = 1.
        self._ns = _readonly(ns)
        self._ms = _readonly(ms)
        self._probs = _readonly(probs)
        self._cumulative = _readonly(cumulative)

    @property
    def ns(self):
        return self._ns

    @property
    def ms(self):
        return self._ms

    @property
    def probs(self):
        return self._probs

    @property
    def entries(self):
        return {(int(n), int(m)): float(prob) for n, m, prob in zip(self._ns, self._ms, self._probs)}

    def entry(self, n, m):
        mask = (self._ns == n) & (self._ms == m)
        return float(self._probs[mask].sum())

    def prob_x0(self):
        return math.fsum(self._probs[self._ms == 0])

    def prob_xge1(self):
        return math.fsum(self._probs[self._ms >= 1])

    def marginal_w(self):
        support = np.unique(self._ns)
        probs = [math.fsum(self._probs[self._ns == n]) for n in support]
        return Pmf(support, probs)

    def draw(self, rng):
        index = int(np.searchsorted(self._cumulative, rng.random(), side='right'))
        index = min(index, self._ns.size - 1)
        return int(self._ns[index]), int(self._ms[index])

    def __repr__(self):
        return 'JointWX(%s)' % (self.entries)


def pmf_from_weights(weights):
    """Normalize nonnegative weights into a Pmf.

    Args:
        weights: mapping of child count to nonnegative weight.

    Returns:
        Pmf over the counts with strictly positive weight.
    """
    cleaned = {}
    for count, weight in dict(weights).items():
        try:
            count = int(count)
            weight = float(weight)
        except (TypeError, ValueError):
            raise InvalidDistributionError("weight %r for count %r is not numeric" % (weight, count))
        if count < 0:
            raise InvalidDistributionError("child count %d is negative" % (count))
        if not math.isfinite(weight) or weight < 0.:
            raise InvalidDistributionError("weight %r for count %d is not finite and nonnegative" % (weight, count))
        if weight > 0.:
            cleaned[count] = cleaned.get(count, 0.) + weight
    if not cleaned:
        raise InvalidDistributionError("all weights are zero")

    support = sorted(cleaned)
    total = math.fsum(cleaned.values())
    return Pmf(support, [cleaned[count]/total for count in support])


def poisson_pmf(mu, tail_tol=None):
    """Poisson(mu) truncated where the remaining tail mass drops below tail_tol."""
    if tail_tol is None:
        tail_tol = GWTreeConfig.get_tail_tol()
    if isinstance(mu, bool) or not (isinstance(mu, numbers.Real) and math.isfinite(mu)) or mu <= 0.:
        raise DomainError("Poisson mean must be positive and finite, got %r" % (mu))
    if not 0. < tail_tol < 1e-6:
        raise DomainError("tail_tol must lie in (0, 1e-6), got %r" % (tail_tol))

    upper = int(mu + 12.*math.sqrt(mu)) + 40
    while True:
        counts = np.arange(upper + 1)
        below = np.flatnonzero(stats.poisson.sf(counts, mu) < tail_tol)
        if below.size:
            cutoff = int(below[0])
            break
        upper *= 2

    support = np.arange(cutoff + 1)
    probs = stats.poisson.pmf(support, mu)
    log.debug("Poisson(%g) truncated at %d", mu, cutoff)
    return Pmf(support, probs/math.fsum(probs))


def _check_probability(p):
    if not 0. <= p <= 1.:
        raise DomainError("probability must lie in [0, 1], got %r" % (p))


def joint_wx(pmf, p):
    """Joint law of W ~ pmf and X | W ~ Bin(W, p)."""
    _check_probability(p)
    ns = []
    ms = []
    probs = []
    for n, weight in pmf.items():
        successes = np.arange(n + 1)
        ns.append(np.full(n + 1, n))
        ms.append(successes)
        probs.append(weight*stats.binom.pmf(successes, n, p))
    ns = np.concatenate(ns)
    ms = np.concatenate(ms)
    probs = np.concatenate(probs)
    keep = probs > 0.
    return JointWX(ns[keep], ms[keep], probs[keep])


def law_w_given_x0(joint):
    """Law of W given that no child survives."""
    mask = joint.ms == 0
    total = math.fsum(joint.probs[mask])
    if total == 0.:
        raise ImpossibleConditioningError("P(X=0) = 0: cannot condition on no surviving child")
    return Pmf(joint.ns[mask], joint.probs[mask]/total)


def law_wx_given_xge1(joint):
    """Law of (W, X) given that at least one child survives."""
    mask = joint.ms >= 1
    total = math.fsum(joint.probs[mask])
    if total == 0.:
        raise ImpossibleConditioningError("P(X>=1) = 0: cannot condition on a null survival event")
    return JointWX(joint.ns[mask], joint.ms[mask], joint.probs[mask]/total)


def _none_survive(support, p):
    # (1-p)^n, with 0^0 = 1
    return np.power(1. - p, support.astype(float))


def _some_survive(support, p):
    # 1-(1-p)^n without cancellation for small p
    if p >= 1.:
        return (support > 0).astype(float)
    return -np.expm1(support*np.log1p(-p))


def expect_w_given_x0(pmf, p):
    _check_probability(p)
    weights = pmf.probs*_none_survive(pmf.support, p)
    total = math.fsum(weights)
    if total == 0.:
        raise ImpossibleConditioningError("P(X=0) = 0: E[W | X=0] is undefined")
    return math.fsum(weights*pmf.support)/total


def expect_w_given_xge1(pmf, p):
    _check_probability(p)
    weights = pmf.probs*_some_survive(pmf.support, p)
    total = math.fsum(weights)
    if total == 0.:
        raise ImpossibleConditioningError("P(X>=1) = 0: E[W | X>=1] is undefined")
    return math.fsum(weights*pmf.support)/total


def expect_deadend_ratio(pmf, p):
    """E[(W - X)/(1 + X) | X >= 1], the expected number of dead ends tried
    before the first surviving child."""
    joint = joint_wx(pmf, p)
    mask = joint.ms >= 1
    weights = joint.probs[mask]
    total = math.fsum(weights)
    if total == 0.:
        raise ImpossibleConditioningError("P(X>=1) = 0: dead-end ratio is undefined")
    ratios = (joint.ns[mask] - joint.ms[mask])/(1. + joint.ms[mask])
    return math.fsum(weights*ratios)/total


@functools.lru_cache(maxsize=1024)
def compositions(n, m):
    """All ways of writing n as an ordered sum of m nonnegative parts.

    Returns a read-only integer array of shape (C(n+m-1, m-1), m).
    """
    if m < 1 or n < 0:
        raise DomainError("compositions need n >= 0 and m >= 1, got n=%d m=%d" % (n, m))
    if m == 1:
        return _readonly(np.array([[n]], dtype=np.int64))
    bars = np.array(list(itertools.combinations(range(n + m - 1), m - 1)), dtype=np.int64)
    bars = bars.reshape(-1, m - 1)
    rows = bars.shape[0]
    padded = np.hstack([np.full((rows, 1), -1, dtype=np.int64), bars,
                        np.full((rows, 1), n + m - 1, dtype=np.int64)])
    return _readonly(np.diff(padded, axis=1) - 1)


def _check_type_probabilities(q):
    q = np.asarray(q, dtype=float).ravel()
    if q.size < 1:
        raise DomainError("type probability vector is empty")
    if not np.all(np.isfinite(q)) or np.any(q < 0.) or abs(math.fsum(q) - 1.) > NORMALIZATION_TOLERANCE:
        raise DomainError("%s is not a probability vector" % (q.tolist()))
    maxTypes = GWTreeConfig.get_max_types()
    if q.size > maxTypes:
        raise EnumerationSizeError("%d types exceed the composition cap of %d" % (q.size, maxTypes),
                                   projected=q.size)
    return q


def multinomial_atoms(pmf, q):
    """Counting vectors N and their probabilities when W ~ pmf and
    N | W ~ Multi(W, q). Zero-probability vectors are left out."""
    q = _check_type_probabilities(q)
    maxSupport = GWTreeConfig.get_max_support()
    if pmf.max_support > maxSupport:
        raise EnumerationSizeError("offspring support up to %d exceeds the composition cap of %d" %
                                   (pmf.max_support, maxSupport), projected=pmf.max_support)
    counts = []
    probs = []
    for n, weight in pmf.items():
        if weight == 0.:
            continue
        grid = compositions(n, q.size)
        logCoeff = gammaln(n + 1.) - gammaln(grid + 1.).sum(axis=1)
        logMass = logCoeff + xlogy(grid, q).sum(axis=1)
        mass = weight*np.exp(logMass)
        keep = mass > 0.
        counts.append(grid[keep])
        probs.append(mass[keep])
    counts = np.concatenate(counts) if counts else np.zeros((0, q.size), dtype=np.int64)
    probs = np.concatenate(probs) if probs else np.zeros(0)
    return counts, probs


def multinomial_event_prob(pmf, q, event):
    """P(N in event) for W ~ pmf and N | W ~ Multi(W, q).

    Args:
        pmf: offspring law of W.
        q: type probabilities, summing to one.
        event: predicate on a tuple of m counts.

    Returns:
        float probability.
    """
    counts, probs = multinomial_atoms(pmf, q)
    selected = [prob for row, prob in zip(counts, probs) if event(tuple(int(c) for c in row))]
    return math.fsum(selected)
