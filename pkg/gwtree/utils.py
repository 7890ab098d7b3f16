# @package      gwtree
# @file         utils.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
import logging

import yaml

from .params import Params
from .offspring import OffspringSchedule, pmf_from_weights, poisson_pmf
from .exceptions import ConfigError, GWTreeException

log = logging.getLogger(__name__)


def parse(inputs):
   """Convert YAML expression of run parameters into a collection
      of Params objects

      Args:
          inputs: YAML expression (already loaded) of parameter declarations

      Returns:
          parameters: dictionary of Params objects.  Each Params object
                      represents one parameter.
   """
   parameters = Params()
   for label in inputs:
      paramType = inputs[label].get('type')
      if paramType in Params.types:
         parameters[label] = Params.types[paramType](**inputs[label])
      else:
         raise ConfigError("Unknown type %s for parameter %s" % (paramType, label))
   return parameters


def getParamsFromDictionary(inputs,
                            valueDictionary,
                            missingValuesAllowed=True):
   """Convert dictionary of values to a collection of Params objects

      Args:
          inputs: dictionary expression of parameter declarations

          valueDictionary: dictionary of values. valueDictionary.keys()
                           must be a subset of inputs.keys()

          missingValuesAllowed: keep declared defaults for labels
                                missing from valueDictionary

      Returns:
          parameters: dictionary of Params objects.  Each Params object
                      represents one parameter.
   """
   parameters = parse(inputs)
   unknown = [label for label in valueDictionary if label not in inputs]
   if unknown:
      raise ConfigError("unknown parameters: %s" % (', '.join(sorted(map(str, unknown)))))

   missingValues = []
   for label in inputs:
      if label not in valueDictionary:
         missingValues.append(label)
         continue
      try:
         parameters[label].value = valueDictionary[label]
      except ConfigError as e:
         raise ConfigError("%s: %s" % (label, e))

   if not missingValuesAllowed and missingValues:
      raise ConfigError("missing parameters: %s" % (', '.join(missingValues)))

   return parameters


def parse_assignment(assignment):
   """Split NAME=VALUE; VALUE is read as YAML so numbers and lists keep their type."""
   name, separator, text = assignment.partition('=')
   name = name.strip()
   if not separator or not name:
      raise ConfigError("expected NAME=VALUE, got %r" % (assignment))
   try:
      value = yaml.safe_load(text) if text.strip() else None
   except yaml.YAMLError as e:
      raise ConfigError("cannot read value of %s: %s" % (name, e))
   return name, value


def law_from_document(document, where='default'):
   """Offspring law from {"kind": "poisson", "mu": x} or
      {"kind": "table", "weights": {"0": w0, ...}}."""
   if not isinstance(document, dict):
      raise ConfigError("schedule level %s: offspring law must be a mapping" % (where))
   kind = document.get('kind')
   try:
      if kind == 'poisson':
         extra = set(document) - {'kind', 'mu', 'tail_tol'}
         if extra or 'mu' not in document:
            raise ConfigError("poisson law takes mu and optional tail_tol")
         mu = document['mu']
         if isinstance(mu, bool) or not isinstance(mu, (int, float)):
            raise ConfigError("mu must be a number, got %r" % (mu))
         return poisson_pmf(float(mu), document.get('tail_tol'))
      if kind == 'table':
         extra = set(document) - {'kind', 'weights'}
         weights = document.get('weights')
         if extra or not isinstance(weights, dict):
            raise ConfigError("table law takes a weights mapping")
         return pmf_from_weights(weights)
      raise ConfigError("unknown offspring law kind %r" % (kind))
   except GWTreeException as e:
      raise ConfigError("schedule level %s: %s" % (where, e))


def schedule_from_document(document, depth):
   """OffspringSchedule for levels 0..depth-1 from {"default": LAW, "0": LAW, ...}."""
   if not isinstance(document, dict) or not document:
      raise ConfigError("schedule must be a nonempty mapping of levels to offspring laws")
   default = None
   laws = {}
   for key, law in document.items():
      if key == 'default':
         default = law_from_document(law, 'default')
         continue
      try:
         level = int(key)
      except (TypeError, ValueError):
         raise ConfigError("schedule level %r is not an integer" % (key))
      if level < 0:
         raise ConfigError("schedule level %d is negative" % (level))
      laws[level] = law_from_document(law, str(level))

   for level in range(depth):
      if level not in laws:
         if default is None:
            raise ConfigError("schedule level %d: no offspring law and no default" % (level))
         laws[level] = default
   log.debug("schedule with %d explicit levels over depth %d", len(laws), depth)
   return OffspringSchedule(depth, {level: laws[level] for level in range(depth)})
