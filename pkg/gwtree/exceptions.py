# @package      gwtree
# @file         exceptions.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Exceptions raised by gwtree.

Every class carries the category printed in command line diagnostics.
"""


class GWTreeException(Exception):
    """Base class of every gwtree error."""
    category = 'error'


class InvalidDistributionError(GWTreeException, ValueError):
    """Weights do not define a probability mass function."""
    category = 'invalid-distribution'


class DomainError(GWTreeException, ValueError):
    """An argument lies outside the domain of an operation."""
    category = 'domain'


class ImpossibleConditioningError(GWTreeException, ValueError):
    """Conditioning on an event of probability zero."""
    category = 'impossible-conditioning'


class EnumerationSizeError(GWTreeException, ValueError):
    """An exhaustive enumeration would exceed its guardrail."""
    category = 'enumeration-size'

    def __init__(self, message, projected=None):
        super(EnumerationSizeError, self).__init__(message)
        self.projected = projected


class TreeParseError(GWTreeException, ValueError):
    """Malformed bracket serialization."""
    category = 'tree-parse'

    def __init__(self, message, position=None):
        super(TreeParseError, self).__init__(message)
        self.position = position


class InvalidSystemError(GWTreeException, ValueError):
    """A type system does not partition its counting vectors."""
    category = 'invalid-system'


class ImpossibleSearchError(GWTreeException, ValueError):
    """The search target level is reached with probability zero."""
    category = 'impossible-search'


class NonterminationError(GWTreeException, RuntimeError):
    """The search simulator exceeded its restart guard."""
    category = 'nontermination'


class SubcriticalError(GWTreeException, ValueError):
    """Infinite-tree quantities need an offspring mean above one."""
    category = 'subcritical'


class ConfigError(GWTreeException, ValueError):
    """Invalid run configuration document or parameter."""
    category = 'config'


class CheckFailedError(GWTreeException):
    """An equivalence check exceeded its tolerance."""
    category = 'check-failed'
