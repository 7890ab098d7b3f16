# @package      gwtree
# @file         config.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Library-wide defaults for gwtree.

Every guardrail and tolerance has a class-level default that can be
overridden through an environment variable, read at call time.
"""

import os

from .exceptions import ConfigError


class GWTreeConfig:
    """Guardrails and numerical tolerances."""

    # Truncation of infinite-support offspring laws
    TAIL_TOL_ENV_VAR = "GWTREE_TAIL_TOL"
    DEFAULT_TAIL_TOL = 1e-12

    # Multinomial composition enumeration
    MAX_TYPES_ENV_VAR = "GWTREE_MAX_TYPES"
    DEFAULT_MAX_TYPES = 6
    MAX_SUPPORT_ENV_VAR = "GWTREE_MAX_SUPPORT"
    DEFAULT_MAX_SUPPORT = 64

    # Exhaustive tree enumeration
    MAX_ENUM_HEIGHT_ENV_VAR = "GWTREE_MAX_ENUM_HEIGHT"
    DEFAULT_MAX_ENUM_HEIGHT = 4
    MAX_ENUM_CHILDREN_ENV_VAR = "GWTREE_MAX_ENUM_CHILDREN"
    DEFAULT_MAX_ENUM_CHILDREN = 3
    MAX_ENUM_TREES_ENV_VAR = "GWTREE_MAX_ENUM_TREES"
    DEFAULT_MAX_ENUM_TREES = 2000000

    # Base level of multitype systems
    MAX_BASE_HEIGHT_ENV_VAR = "GWTREE_MAX_BASE_HEIGHT"
    DEFAULT_MAX_BASE_HEIGHT = 2
    MAX_BASE_SUPPORT_ENV_VAR = "GWTREE_MAX_BASE_SUPPORT"
    DEFAULT_MAX_BASE_SUPPORT = 4

    # Search simulator
    MAX_RESTARTS_ENV_VAR = "GWTREE_MAX_RESTARTS"
    DEFAULT_MAX_RESTARTS = 10000000

    # joblib workers for grid and Monte Carlo work
    N_JOBS_ENV_VAR = "GWTREE_N_JOBS"
    DEFAULT_N_JOBS = 1

    @staticmethod
    def _get(envVar, default, cast):
        value = os.environ.get(envVar)
        if value is None or value == "":
            return default
        try:
            return cast(value)
        except ValueError:
            raise ConfigError("%s=%s is not a valid %s" % (envVar, value, cast.__name__))

    @classmethod
    def get_tail_tol(cls):
        """Get the tail mass below which infinite laws are truncated.

        Returns:
            float: The truncation tolerance
        """
        return cls._get(cls.TAIL_TOL_ENV_VAR, cls.DEFAULT_TAIL_TOL, float)

    @classmethod
    def get_max_types(cls):
        return cls._get(cls.MAX_TYPES_ENV_VAR, cls.DEFAULT_MAX_TYPES, int)

    @classmethod
    def get_max_support(cls):
        return cls._get(cls.MAX_SUPPORT_ENV_VAR, cls.DEFAULT_MAX_SUPPORT, int)

    @classmethod
    def get_max_enum_height(cls):
        return cls._get(cls.MAX_ENUM_HEIGHT_ENV_VAR, cls.DEFAULT_MAX_ENUM_HEIGHT, int)

    @classmethod
    def get_max_enum_children(cls):
        return cls._get(cls.MAX_ENUM_CHILDREN_ENV_VAR, cls.DEFAULT_MAX_ENUM_CHILDREN, int)

    @classmethod
    def get_max_enum_trees(cls):
        """Get the largest projected tree count an enumeration may produce.

        Returns:
            int: The projected count limit
        """
        return cls._get(cls.MAX_ENUM_TREES_ENV_VAR, cls.DEFAULT_MAX_ENUM_TREES, int)

    @classmethod
    def get_max_base_height(cls):
        return cls._get(cls.MAX_BASE_HEIGHT_ENV_VAR, cls.DEFAULT_MAX_BASE_HEIGHT, int)

    @classmethod
    def get_max_base_support(cls):
        return cls._get(cls.MAX_BASE_SUPPORT_ENV_VAR, cls.DEFAULT_MAX_BASE_SUPPORT, int)

    @classmethod
    def get_max_restarts(cls):
        """Get the restart cap of the search simulator.

        Returns:
            int: Maximum number of unsuccessful trees before giving up
        """
        return cls._get(cls.MAX_RESTARTS_ENV_VAR, cls.DEFAULT_MAX_RESTARTS, int)

    @classmethod
    def get_n_jobs(cls):
        return cls._get(cls.N_JOBS_ENV_VAR, cls.DEFAULT_N_JOBS, int)

    @classmethod
    def set_n_jobs(cls, nJobs):
        """Set the joblib worker count.

        Args:
            nJobs (int): Number of workers (-1 for all cores)
        """
        os.environ[cls.N_JOBS_ENV_VAR] = str(nJobs)

    @classmethod
    def set_max_restarts(cls, maxRestarts):
        os.environ[cls.MAX_RESTARTS_ENV_VAR] = str(maxRestarts)
