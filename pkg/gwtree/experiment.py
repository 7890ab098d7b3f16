# @package      gwtree
# @file         experiment.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
import os
import shutil
import logging

from .exceptions import ConfigError

log = logging.getLogger(__name__)

DEFAULT_EXPERIMENT = 'RUNS'


class Exp:
    """Experiment class without context manager"""
    def __init__(self, name, append=True):
        if not name or name.startswith('.'):
            raise ConfigError('Invalid experiment name %r' % (name))
        try:
            if append is False and os.path.exists(name):
                shutil.rmtree(name)
            if not os.path.exists(name):
                os.makedirs(name)
                log.debug("created experiment directory %s", name)
        except OSError as e:
            raise ConfigError("cannot create experiment directory %s: %s" % (name, e.strerror or e))
        self.name = name

    def path(self, filename):
        """Location of a result file inside the experiment."""
        return os.path.join(self.name, filename)

    def __str__(self):
        return self.name


class Experiment(Exp):
    """Context manager for Experiments

    Create a directory named {name} in which result files are written.
    If *append* is False, any existing directory with the same
    name is removed.

        with Experiment('fig2', append=False) as exp:
            write_curve_files(exp.path('cost_curve.csv'), ...)

    Attributes:
        name: The experiment name and directory.
        append: If True, keeps files of an existing experiment of the
            same name.  If False, removes them.
    """
    _experiments = []
    active = None

    def __init__(self, name, append=True):
        Exp.__init__(self, name, append)

    def __enter__(self):
        Experiment._experiments.append(self)
        Experiment.active = self
        return self

    def __exit__(self, type, value, traceback):
        Experiment._experiments.pop()
        if Experiment._experiments:
            Experiment.active = Experiment._experiments[-1]
        else:
            Experiment.active = None


def set_experiment(name, append=True):
    """Make {name} the current experiment, creating its directory.

    Args:
        name: The name of the experiment (and the directory).
        append: If True, keeps files of an existing experiment of the
            same name.  If False, removes them.
    """
    exp = Exp(name, append)
    Experiment._experiments = [exp]
    Experiment.active = exp
    return exp


def get_experiment():
    """Current experiment, the default 'RUNS' one when none is active."""
    if Experiment.active is None:
        return Exp(DEFAULT_EXPERIMENT)
    return Experiment.active
