# @package      gwtree
# @file         tree.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Finite rooted ordered trees, exhaustive enumeration of small tree spaces,
unconditioned Galton-Watson sampling and exact evaluation of P_lk.

Trees are serialized in nested-bracket form: the single-node tree is "()"
and a tree with children T_1..T_n is "(" + T_1 + ... + T_n + ")".
"""

import math
import logging
import itertools

import numpy as np

from .config import GWTreeConfig
from .exceptions import DomainError, EnumerationSizeError, TreeParseError

log = logging.getLogger(__name__)


class Tree:
    """Immutable rooted ordered tree.

    Height, node count and serialization are computed once at construction
    from the children, so no operation on a built tree recurses.
    """

    __slots__ = ('_children', '_text', '_height', '_size')

    def __init__(self, children=()):
        children = tuple(children)
        for child in children:
            if not isinstance(child, Tree):
                raise TypeError("children must be Tree instances, got %s" % (type(child).__name__))
        object.__setattr__(self, '_children', children)
        object.__setattr__(self, '_text', '(' + ''.join([child._text for child in children]) + ')')
        object.__setattr__(self, '_height', 1 + max([child._height for child in children]) if children else 0)
        object.__setattr__(self, '_size', 1 + sum([child._size for child in children]))

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def __reduce__(self):
        return (Tree, (self._children,))

    @property
    def children(self):
        return self._children

    @property
    def height(self):
        return self._height

    @property
    def size(self):
        return self._size

    @property
    def text(self):
        return self._text

    def __len__(self):
        return len(self._children)

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self._text == other._text

    def __hash__(self):
        return hash(self._text)

    def __lt__(self, other):
        return canonical_key(self) < canonical_key(other)

    def __repr__(self):
        return 'Tree(%s)' % (self._text)

    def __str__(self):
        return self._text


# the single-node tree
LEAF = Tree()


def canonical_key(t):
    """Sort key: node count first, then serialization."""
    return (t.size, t.text)


def height(t):
    return t.height


def reaches_level(t, l):
    """True iff t has a node at depth l.

    A_0 holds every tree and A_l holds the trees with a child in A_{l-1},
    which is exactly height(t) >= l.
    """
    if l < 0:
        raise DomainError("level must be nonnegative, got %d" % (l))
    return t.height >= l


def serialize(t):
    return t.text


def parse(text):
    """Parse the nested-bracket serialization of a tree."""
    text = text.strip()
    stack = []
    result = None
    for position, character in enumerate(text):
        if result is not None:
            raise TreeParseError("unexpected %r after the end of the tree at position %d" % (character, position),
                                 position=position)
        if character == '(':
            stack.append([])
        elif character == ')':
            if not stack:
                raise TreeParseError("unbalanced ')' at position %d" % (position), position=position)
            node = Tree(stack.pop())
            if stack:
                stack[-1].append(node)
            else:
                result = node
        else:
            raise TreeParseError("invalid character %r at position %d" % (character, position), position=position)
    if result is None:
        position = len(text)
        if stack:
            raise TreeParseError("unbalanced '(' : input ends at position %d" % (position), position=position)
        raise TreeParseError("empty input", position=0)
    return result


def dump_trees(trees):
    """Line-delimited serialization."""
    return ''.join([t.text + '\n' for t in trees])


def load_trees(text):
    return [parse(line) for line in text.splitlines() if line.strip()]


def _projected_count(h, maxChildren):
    count = 1
    for _ in range(h):
        count = 1 + sum([count**n for n in range(1, maxChildren + 1)])
    return count


def _check_enumeration(projected, what):
    maxTrees = GWTreeConfig.get_max_enum_trees()
    if projected > maxTrees:
        raise EnumerationSizeError("enumerating %s would produce %d trees (limit %d)" % (what, projected, maxTrees),
                                   projected=projected)


def enumerate_trees(h, max_children):
    """All trees of height <= h whose nodes have at most max_children children,
    in canonical order (node count, then serialization)."""
    if h < 0 or max_children < 0:
        raise DomainError("height and max_children must be nonnegative")
    projected = _projected_count(h, max_children)
    maxHeight = GWTreeConfig.get_max_enum_height()
    maxChildren = GWTreeConfig.get_max_enum_children()
    if h > maxHeight or max_children > maxChildren:
        raise EnumerationSizeError("enumeration of height %d with up to %d children exceeds the guardrail "
                                   "(height <= %d, children <= %d); projected count %d" %
                                   (h, max_children, maxHeight, maxChildren, projected), projected=projected)
    _check_enumeration(projected, "height %d, children %d" % (h, max_children))

    level = [LEAF]
    for _ in range(h):
        level = [LEAF] + [Tree(children)
                          for n in range(1, max_children + 1)
                          for children in itertools.product(level, repeat=n)]
    log.debug("enumerated %d trees of height <= %d with <= %d children", len(level), h, max_children)
    return sorted(level, key=canonical_key)


def enumerate_support(sched, l, k):
    """Every tree with positive probability under P_lk, in canonical order."""
    _check_levels(l, k)
    counts = {}
    projected = 1
    for level in range(k - 1, l - 1, -1):
        counts[level] = [int(n) for n, prob in sched.law(level).items() if prob > 0.]
        projected = sum([projected**n for n in counts[level]])
    _check_enumeration(projected, "the support of P_%d,%d" % (l, k))

    level = [LEAF]
    for depth in range(k - 1, l - 1, -1):
        level = [Tree(children)
                 for n in counts[depth]
                 for children in itertools.product(level, repeat=n)]
    return sorted(level, key=canonical_key)


def _check_levels(l, k):
    if not 0 <= l <= k:
        raise DomainError("levels must satisfy 0 <= l <= k, got l=%d k=%d" % (l, k))


def log_prob(t, sched, l, k):
    """log P_lk(t); -inf when some node's child count has zero mass."""
    _check_levels(l, k)
    if t.height > k - l:
        raise DomainError("tree of height %d does not fit in levels %d..%d" % (t.height, l, k))
    total = 0.
    stack = [(t, l)]
    while stack:
        node, level = stack.pop()
        if level == k:
            continue
        prob = sched.law(level).pmf(len(node.children))
        if prob == 0.:
            return -math.inf
        total += math.log(prob)
        stack.extend([(child, level + 1) for child in node.children])
    return total


def grow(root, expand):
    """Build a tree depth first without recursion.

    expand(node) returns either a finished Tree or a sequence of child nodes;
    children are expanded in order, so the draws of a random expand happen in
    depth-first order.
    """
    first = expand(root)
    if isinstance(first, Tree):
        return first
    stack = [(list(first), [])]
    while True:
        pending, built = stack[-1]
        if len(built) < len(pending):
            expanded = expand(pending[len(built)])
            if isinstance(expanded, Tree):
                built.append(expanded)
            elif len(expanded) == 0:
                built.append(LEAF)
            else:
                stack.append((list(expanded), []))
            continue
        stack.pop()
        node = Tree(built)
        if not stack:
            return node
        stack[-1][1].append(node)


def sample_unconditioned(sched, l, k, rng_seed):
    """Draw from P_lk; nodes at level k get no children.

    The generator is consumed in depth-first order, one uniform per node
    above level k.
    """
    _check_levels(l, k)
    rng = np.random.default_rng(rng_seed)

    def expand(level):
        if level == k:
            return LEAF
        return [level + 1]*sched.law(level).draw(rng)

    return grow(l, expand)


def compare_measures(trees, log_a, log_b):
    """Total-variation distance and largest pointwise gap between two measures
    given as log-mass functions on an enumerated space."""
    massA = np.array([math.exp(log_a(t)) for t in trees])
    massB = np.array([math.exp(log_b(t)) for t in trees])
    gaps = np.abs(massA - massB)
    return 0.5*math.fsum(gaps), float(gaps.max()) if gaps.size else 0.
