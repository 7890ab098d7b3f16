# @package      gwtree
# @file         params.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
import numbers

from .exceptions import ConfigError


# A dictionary-like object that can also
# be accessed by attributes.  Note that you
# cannot access attributes by key, only keys
# can be accessed by attributes.
#
# A bare Params() is the container returned by utils.parse; the typed
# subclasses below are single parameters.
class Params:
    ATTRIBUTES = ('type', 'description', 'min', 'max', 'options', 'value')
    # which of min, max and options a parameter type accepts
    LIMITS = ()

    def __init__(self, **kwargs):
        self.__members = []
        self._value = None

        for k in kwargs:
            if k not in self.ATTRIBUTES or (k in ('min', 'max', 'options') and k not in self.LIMITS):
                raise ConfigError("Parameter type %s does not have %s attribute" % (kwargs.get('type'), k))

        for k in ('type', 'description'):
            if k in kwargs:
                self[k] = kwargs[k]
        for k in self.LIMITS:
            self[k] = kwargs.get(k)

        if 'value' in kwargs:
            self['value'] = kwargs['value']

    def __getitem__(self, key):
        try:
            return getattr(self, key)
        except AttributeError:
            raise KeyError(key)

    def __setitem__(self, key, value):
        setattr(self, key, value)
        if key not in self.__members:
            self.__members.append(key)

    def keys(self):
        return self.__members

    def __iter__(self):
        return iter(self.__members)

    def __contains__(self, key):
        return key in self.__members

    @property
    def value(self):
        return self._value

    @value.setter
    def value(self, newval):
        self._value = None if newval is None else self._convert(newval)

    def _convert(self, newval):
        return newval

    def _checkRange(self, numericValue):
        if self.min is not None and numericValue < self.min:
            raise ConfigError("Minimum value is %g" % (self.min))
        if self.max is not None and numericValue > self.max:
            raise ConfigError("Maximum value is %g" % (self.max))


class Integer(Params):
    LIMITS = ('min', 'max')

    def _convert(self, newval):
        if isinstance(newval, str):
            try:
                newval = int(newval)
            except ValueError:
                raise ConfigError("%s is not an integer" % (newval))
        elif isinstance(newval, float) and newval.is_integer():
            newval = int(newval)
        if isinstance(newval, bool) or not isinstance(newval, numbers.Integral):
            raise ConfigError("%s is not an integer" % (newval))
        newval = int(newval)
        self._checkRange(newval)
        return newval


class Number(Params):
    LIMITS = ('min', 'max')

    def _convert(self, quantity):
        if isinstance(quantity, bool):
            raise ConfigError("%s is not a number" % (str(quantity)))
        if isinstance(quantity, str):
            try:
                numericValue = float(quantity)
            except ValueError:
                raise ConfigError("%s is not a number" % (quantity))
        elif isinstance(quantity, numbers.Real):
            numericValue = float(quantity)
        else:
            raise ConfigError("%s is not a number (%s)" % (str(quantity), type(quantity).__name__))
        self._checkRange(numericValue)
        return numericValue


class Text(Params):
    def _convert(self, newval):
        if not isinstance(newval, str):
            raise ConfigError("%s is not a string" % (str(newval)))
        return newval


class Choice(Params):
    LIMITS = ('options',)

    def _convert(self, newval):
        if not isinstance(newval, str):
            raise ConfigError("%s is not a string" % (str(newval)))
        if self.options is not None and newval not in self.options:
            raise ConfigError("%s is not a valid option (%s)" % (newval, ', '.join(self.options)))
        return newval


class List(Params):
    """List of numbers; min and max apply to every element."""

    LIMITS = ('min', 'max')

    def _convert(self, newval):
        if not isinstance(newval, (list, tuple)):
            raise ConfigError("%s is not a list" % (str(newval)))
        element = Number(min=self.min, max=self.max)
        values = []
        for item in newval:
            element.value = item
            values.append(element.value)
        return values


class Dict(Params):
    def _convert(self, newval):
        if not isinstance(newval, dict):
            raise ConfigError("%s is not a dictionary" % (str(newval)))
        return newval


# register param types
# Dictionary that maps strings to class names.
Params.types = {
    'Integer': Integer,
    'Number': Number,
    'Text': Text,
    'Choice': Choice,
    'List': List,
    'Dict': Dict,
}
