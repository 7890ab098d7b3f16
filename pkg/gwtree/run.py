# @package      gwtree
# @file         run.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
import os
import copy
import logging

import yaml

from .utils import getParamsFromDictionary, schedule_from_document
from .multitype import get_system
from .exceptions import ConfigError

log = logging.getLogger(__name__)

# Declared run parameters, in the same YAML form a simulation
# declares its inputs: type, description, limits and default value.
INPUTS = yaml.safe_load("""
schedule:
    type: Dict
    description: offspring law per level ("0", "1", ...) with an optional "default"
    value: {"default": {"kind": "table", "weights": {"0": 0.3, "1": 0.3, "2": 0.4}}}
k:
    type: Integer
    description: target level
    min: 1
    value: 3
K:
    type: Number
    description: search price per inspected child
    min: 0
    value: 1
system:
    type: Choice
    description: built-in type system
    options: [binary-subtree, grandchildren, height-band, survival]
seed:
    type: Integer
    description: random seed, required by sample and simulate
    min: 0
reps:
    type: Integer
    description: Monte Carlo replications
    min: 1
    value: 1000
out:
    type: Text
    description: output file, or output directory for curve
mode:
    type: Text
    description: sampler (unconditioned, survive, extinct or type:i)
    value: survive
level:
    type: Integer
    description: level l of the sampled tree's root
    min: 0
    value: 0
count:
    type: Integer
    description: number of sampled trees
    min: 1
    value: 10
max_children:
    type: Integer
    description: largest child count in the enumerated tree space
    min: 0
    value: 2
check_tol:
    type: Number
    description: largest total-variation distance accepted by check
    min: 0
    value: 1.0e-8
perturb:
    type: Number
    description: shift applied to p[0] before checking (negative control)
    value: 0
mu:
    type: Number
    description: Poisson offspring mean
    min: 0
    value: 2
mu_grid:
    type: List
    description: Poisson means of the cost curve
    min: 0
    value: [0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0,
            2.25, 2.5, 2.75, 3.0, 3.5, 4.0, 4.5, 5.0]
ks:
    type: List
    description: target levels of the optimal-mean tables
    min: 1
    value: [4, 8, 16, 32]
Ks:
    type: List
    description: search prices of the optimal-mean tables
    min: 0
    value: [0.5, 1, 2, 4, 8, 16]
bracket:
    type: List
    description: search interval for the optimal mean
    min: 0
    value: [0.05, 100]
tol:
    type: Number
    description: tolerance on the optimal mean
    min: 0
    value: 1.0e-4
""")

SAMPLE_MODES = ('unconditioned', 'survive', 'extinct')


class RunConfig:
    """Validated run configuration.

    Values come from the declared defaults, then the configuration
    document, then command line overrides. Every declared parameter is
    available as an attribute.
    """

    def __init__(self, document=None, overrides=None):
        values = {}
        for source in (document or {}), (overrides or {}):
            if not isinstance(source, dict):
                raise ConfigError("configuration document must be a mapping")
            values.update({key: value for key, value in source.items() if value is not None})
        self.params = getParamsFromDictionary(INPUTS, values)
        for label in self.params:
            if label != 'schedule':
                setattr(self, label, self.params[label].value)
        self._validate()

    @classmethod
    def from_file(cls, path, overrides=None):
        if path is None:
            return cls(None, overrides)
        try:
            with open(path, 'r') as fp:
                document = yaml.safe_load(fp)
        except OSError as e:
            raise ConfigError("cannot read %s: %s" % (path, e.strerror))
        except yaml.YAMLError as e:
            raise ConfigError("cannot parse %s: %s" % (path, e))
        log.debug("read configuration %s", os.path.abspath(path))
        return cls(document, overrides)

    def _validate(self):
        self.type_index()
        if len(self.bracket) != 2 or not 0 < self.bracket[0] < self.bracket[1]:
            raise ConfigError("bracket must be [low, high] with 0 < low < high")
        if any(float(k) != int(k) for k in self.ks):
            raise ConfigError("ks must hold integers")
        if self.mu <= 0:
            raise ConfigError("mu must be positive")

    def type_index(self):
        """Type i of a type:i sampling mode, None for the other modes."""
        if self.mode in SAMPLE_MODES:
            return None
        kind, _, index = self.mode.partition(':')
        if kind != 'type' or not index.isdigit() or int(index) < 1:
            raise ConfigError("mode must be one of %s or type:i, got %r" % (', '.join(SAMPLE_MODES), self.mode))
        return int(index)

    def require_seed(self, command):
        if self.seed is None:
            raise ConfigError("%s needs a seed (--seed or seed in the configuration)" % (command))
        return self.seed

    def type_system(self, command):
        if self.system is None:
            raise ConfigError("%s needs a type system (system in the configuration)" % (command))
        return get_system(self.system)

    def schedule(self, depth=None):
        """Offspring schedule covering levels 0..depth-1 (default k)."""
        return schedule_from_document(copy.deepcopy(self.schedule_document), self.k if depth is None else depth)

    @property
    def schedule_document(self):
        return self.params['schedule'].value
