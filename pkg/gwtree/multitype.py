# @package      gwtree
# @file         multitype.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Conditioning on events described by m-type partitions.

The trees of height <= k0 are split into m classes by a base classifier.
Above the base, a tree of depth d is of type i when its counting vector
N = (number of children of each type at depth d-1) lies in B_{d,i}. The
type probabilities p[l][i] = P_lk(tree is of type i) follow a multinomial
recursion, and the measures Q~^(i) conditioned on type i build a tree
level by level: draw N given N in B_{d,i}, place the typed children in a
uniformly random order, recurse into each child with its own type.

Levels l run 0..k-k0 and the matching depth is d = k - l.
"""

import math
import logging

import numpy as np
from scipy.special import gammaln, xlogy

from .config import GWTreeConfig
from .offspring import compositions, multinomial_atoms
from .tree import enumerate_support, enumerate_trees, log_prob, compare_measures, grow
from .survival import EquivalenceReport, _check_support
from .exceptions import DomainError, ImpossibleConditioningError, InvalidSystemError
from .exceptions import EnumerationSizeError, ConfigError

log = logging.getLogger(__name__)

ROW_TOLERANCE = 1e-10


class TypeSystem:
    """m-type partition: a base classifier on trees of height <= k0 and the
    counting-vector sets B_{d,i} for every depth d > k0.

    Args:
        name: label used on the command line.
        m: number of types, at least 2.
        k0: base depth.
        base_classifier: function(tree) -> type in 1..m for trees of height <= k0.
        b_membership: function(depth, i, N) -> bool, N a tuple of m counts.
    """

    def __init__(self, name, m, k0, base_classifier, b_membership):
        if int(m) < 2:
            raise InvalidSystemError("a type system needs at least two types, got %r" % (m))
        if int(k0) < 0:
            raise InvalidSystemError("base depth must be nonnegative, got %r" % (k0))
        self.name = name
        self.m = int(m)
        self.k0 = int(k0)
        self.base_classifier = base_classifier
        self.b_membership = b_membership

    def base_type(self, t):
        i = self.base_classifier(t)
        if i not in range(1, self.m + 1):
            raise InvalidSystemError("%s: base classifier returned %r for %s" % (self.name, i, t))
        return i

    def match(self, depth, counts):
        """The unique i with counts in B_{depth,i}."""
        matches = [i for i in range(1, self.m + 1) if self.b_membership(depth, i, counts)]
        if len(matches) != 1:
            raise InvalidSystemError("%s: counting vector %s at depth %d matches types %s" %
                                     (self.name, counts, depth, matches))
        return matches[0]

    def __repr__(self):
        return 'TypeSystem(%s, m=%d, k0=%d)' % (self.name, self.m, self.k0)


def _classify(system, t, depth, memo):
    stack = [(t, depth, False)]
    while stack:
        node, d, ready = stack.pop()
        key = (node, d)
        if key in memo:
            continue
        if d == system.k0:
            memo[key] = system.base_type(node)
        elif not ready:
            stack.append((node, d, True))
            stack.extend([(child, d - 1, False) for child in node.children])
        else:
            memo[key] = system.match(d, _counts(system, node, d, memo))
    return memo[(t, depth)]


def _counts(system, node, depth, memo):
    counts = [0]*system.m
    for child in node.children:
        counts[memo[(child, depth - 1)] - 1] += 1
    return tuple(counts)


def _check_depth(system, t, depth, smallest):
    if depth < smallest:
        raise DomainError("%s: depth must be at least %d, got %d" % (system.name, smallest, depth))
    if t.height > depth:
        raise DomainError("tree of height %d is not a tree of depth %d" % (t.height, depth))


def classify(system, t, l, memo=None):
    """Type of t seen as a tree of depth l (l >= k0)."""
    _check_depth(system, t, l, system.k0)
    return _classify(system, t, l, {} if memo is None else memo)


def counting_vector(system, t, l):
    """Number of children of t of each type at depth l-1 (l > k0)."""
    _check_depth(system, t, l, system.k0 + 1)
    memo = {}
    for child in t.children:
        _classify(system, child, l - 1, memo)
    return _counts(system, t, l, memo)


def log_multinomial_coeff(counts):
    counts = np.asarray(counts, dtype=float)
    return float(gammaln(counts.sum() + 1.) - gammaln(counts + 1.).sum())


def multinomial_coeff(counts):
    """D(N) = (sum N)! / prod N_i!"""
    counts = [int(c) for c in counts]
    if any(c < 0 for c in counts):
        raise DomainError("counts must be nonnegative: %s" % (counts))
    if sum(counts) > 170:
        return math.exp(log_multinomial_coeff(counts))
    coefficient = 1
    remaining = sum(counts)
    for c in counts:
        coefficient *= math.comb(remaining, c)
        remaining -= c
    return float(coefficient)


def validate_partition(system, levels, max_sum):
    """Check that every counting vector with component sum <= max_sum lies
    in exactly one B_{d,i}, for each depth d in levels."""
    for depth in levels:
        for total in range(max_sum + 1):
            for row in compositions(total, system.m):
                system.match(depth, tuple(int(c) for c in row))


class _LevelAtoms:
    # composition grid of one level, classified once
    __slots__ = ('counts', 'probs', 'types', 'draws')

    def __init__(self, counts, probs, types):
        self.counts = counts
        self.probs = probs
        self.types = types
        self.draws = {}

    def conditioned(self, i):
        if i not in self.draws:
            mask = self.types == i
            probs = self.probs[mask]
            cumulative = np.cumsum(probs)/math.fsum(probs)
            cumulative[-1] = 1.
            self.draws[i] = (self.counts[mask], cumulative)
        return self.draws[i]


class TypeProbTable:
    """p[l][i] = P_lk(tree of depth k-l is of type i) for l = 0..k-k0."""

    def __init__(self, k, p, system, sched, atoms, baseTrees):
        p = np.array(p, dtype=float)
        p.setflags(write=False)
        self.k = k
        self.p = p
        self.system = system
        self.sched = sched
        self._atoms = atoms
        self._baseTrees = baseTrees

    @property
    def top(self):
        """Base level index k - k0."""
        return self.k - self.system.k0

    def prob(self, l, i):
        return float(self.p[l, i - 1])

    def rows(self):
        return [(l, i, float(self.p[l, i - 1]))
                for l in range(self.top + 1) for i in range(1, self.system.m + 1)]

    def __repr__(self):
        return 'TypeProbTable(%s, k=%d)' % (self.system.name, self.k)


def _check_base(system, sched, k):
    maxHeight = GWTreeConfig.get_max_base_height()
    if system.k0 > maxHeight:
        raise EnumerationSizeError("base depth k0=%d exceeds the guardrail of %d" % (system.k0, maxHeight),
                                   projected=system.k0)
    if system.k0 >= 2:
        support = sched.max_support(range(k - system.k0, k))
        maxSupport = GWTreeConfig.get_max_base_support()
        if support > maxSupport:
            raise EnumerationSizeError("base levels have support up to %d, beyond the guardrail of %d" %
                                       (support, maxSupport), projected=support)


def build_type_table(system, sched, k):
    """Type probabilities, base row by enumeration and the other rows by the
    multinomial recursion.

    Args:
        system: TypeSystem.
        sched: OffspringSchedule covering levels 0..k-1.
        k: target depth, greater than system.k0.

    Returns:
        TypeProbTable
    """
    if k <= system.k0:
        raise DomainError("k=%d must exceed the base depth k0=%d" % (k, system.k0))
    if not sched.covers(k):
        raise DomainError("schedule of depth %d does not cover levels 0..%d" % (sched.depth, k - 1))
    _check_base(system, sched, k)
    top = k - system.k0
    m = system.m
    p = np.zeros((top + 1, m))

    validate_partition(system, range(system.k0 + 1, k + 1), sched.max_support(range(top)))

    memo = {}
    baseTrees = {i: ([], []) for i in range(1, m + 1)}
    for t in enumerate_support(sched, top, k):
        i = _classify(system, t, system.k0, memo)
        baseTrees[i][0].append(t)
        baseTrees[i][1].append(math.exp(log_prob(t, sched, top, k)))
    for i, (trees, masses) in baseTrees.items():
        p[top, i - 1] = math.fsum(masses)
    log.debug("%s: base level %d holds %d trees", system.name, top, sum([len(v[0]) for v in baseTrees.values()]))

    atoms = {}
    for l in range(top - 1, -1, -1):
        depth = k - l
        counts, probs = multinomial_atoms(sched.law(l), p[l + 1])
        types = np.array([system.match(depth, tuple(int(c) for c in row)) for row in counts], dtype=np.int64)
        for i in range(1, m + 1):
            p[l, i - 1] = math.fsum(probs[types == i])
        atoms[l] = _LevelAtoms(counts, probs, types)

    for l in range(top + 1):
        total = math.fsum(p[l])
        if abs(total - 1.) > ROW_TOLERANCE:
            log.warning("%s: type probabilities at level %d sum to %.15g", system.name, l, total)
    return TypeProbTable(k, p, system, sched, atoms, baseTrees)


def _check_type(table, l, i):
    if not 0 <= l <= table.top:
        raise DomainError("level must satisfy 0 <= l <= k-k0=%d, got %d" % (table.top, l))
    if i not in range(1, table.system.m + 1):
        raise DomainError("type must lie in 1..%d, got %r" % (table.system.m, i))
    if table.prob(l, i) == 0.:
        raise ImpossibleConditioningError("p[%d][%d] = 0: cannot condition on type %d" % (l, i, i))


def sample_type(table, l, i, rng_seed):
    """Draw a tree from Q~^(i)_lk."""
    _check_type(table, l, i)
    rng = np.random.default_rng(rng_seed)
    top = table.top
    labels = np.arange(1, table.system.m + 1)

    def expand(node):
        level, kind = node
        if level == top:
            trees, masses = table._baseTrees[kind]
            cumulative = np.cumsum(masses)/math.fsum(masses)
            index = int(np.searchsorted(cumulative, rng.random(), side='right'))
            return trees[min(index, len(trees) - 1)]
        counts, cumulative = table._atoms[level].conditioned(kind)
        index = min(int(np.searchsorted(cumulative, rng.random(), side='right')), len(counts) - 1)
        arrangement = rng.permutation(np.repeat(labels, counts[index]))
        return [(level + 1, int(label)) for label in arrangement]

    return grow((l, i), expand)


def log_q_type(table, l, i, t):
    """log Q~^(i)_lk(t); -inf when t is not of type i."""
    _check_type(table, l, i)
    system = table.system
    top = table.top
    if t.height > table.k - l:
        raise DomainError("tree of height %d does not fit in levels %d..%d" % (t.height, l, table.k))
    memo = {}
    total = 0.
    stack = [(l, i, t)]
    while stack:
        level, kind, node = stack.pop()
        depth = table.k - level
        if _classify(system, node, depth, memo) != kind:
            return -math.inf
        if level == top:
            total += log_prob(node, table.sched, level, table.k) - math.log(table.prob(level, kind))
            continue
        counts = _counts(system, node, depth, memo)
        n = sum(counts)
        weight = table.sched.law(level).pmf(n)
        if weight == 0.:
            return -math.inf
        q = table.p[level + 1]
        logAtom = (math.log(weight) + log_multinomial_coeff(counts) + float(xlogy(counts, q).sum())
                   - math.log(table.prob(level, kind)))
        total += logAtom - log_multinomial_coeff(counts)
        if total == -math.inf:
            return -math.inf
        stack.extend([(level + 1, memo[(child, depth - 1)], child) for child in node.children])
    return total


def log_p_tilde_type(table, l, t):
    terms = [math.log(table.prob(l, i)) + log_q_type(table, l, i, t)
             for i in range(1, table.system.m + 1) if table.prob(l, i) > 0.]
    return float(np.logaddexp.reduce(terms)) if terms else -math.inf


def type_equivalence_report(table, max_children, l=0):
    """Compare P_lk with sum_i p[l][i] Q~^(i) atom by atom on the enumerated space."""
    _check_support(table.sched, table.k, max_children)
    trees = enumerate_trees(table.k - l, max_children)
    tv, maxDeviation = compare_measures(trees,
                                        lambda t: log_prob(t, table.sched, l, table.k),
                                        lambda t: log_p_tilde_type(table, l, t))
    return EquivalenceReport(tv, maxDeviation, len(trees))


def check_equivalence_multitype(system, sched, k, max_children):
    _check_support(sched, k, max_children)
    return type_equivalence_report(build_type_table(system, sched, k), max_children).tv


def binary_subtree_system():
    """Type 1: the tree holds a full binary subtree reaching its bottom level."""
    return TypeSystem('binary-subtree', 2, 1,
                      lambda t: 1 if len(t.children) >= 2 else 2,
                      lambda depth, i, n: (n[0] >= 2) == (i == 1))


def _grandchildren_base(t):
    grandchildren = sum([len(child.children) for child in t.children])
    if grandchildren <= 1:
        return 3
    return 1 if len(t.children) == 1 else 2


def _grandchildren_membership(depth, i, n):
    if tuple(n) == (0, 1, 0):
        return i == 1
    if n[0] + n[1] >= 2:
        return i == 2
    return i == 3


def grandchildren_system():
    """Types 1 and 2: every node above the last two levels has at least two
    grandchildren; type 1 roots have a single child."""
    return TypeSystem('grandchildren', 3, 2, _grandchildren_base, _grandchildren_membership)


def _height_band_base(t):
    return {0: 2, 1: 1, 2: 3}[t.height]


def _height_band_membership(depth, i, n):
    if n[2] >= 1:
        return i == 3
    if n[0] >= 1:
        return i == 1
    return i == 2


def height_band_system():
    """Type 1: reaches depth d-1 but not d. Type 2: too short. Type 3: reaches d."""
    return TypeSystem('height-band', 3, 2, _height_band_base, _height_band_membership)


def survival_system():
    """The two-type survival split, lifted to a base depth of one."""
    return TypeSystem('survival', 2, 1,
                      lambda t: 1 if t.height >= 1 else 2,
                      lambda depth, i, n: (n[0] >= 1) == (i == 1))


SYSTEMS = {
    'binary-subtree': binary_subtree_system,
    'grandchildren': grandchildren_system,
    'height-band': height_band_system,
    'survival': survival_system,
}


def get_system(name):
    try:
        return SYSTEMS[name]()
    except KeyError:
        raise ConfigError("unknown type system %r (choose from %s)" % (name, ', '.join(sorted(SYSTEMS))))
