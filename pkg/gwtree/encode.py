# @package      gwtree
# @file         encode.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
import io
import csv
import math
import numbers

import numpy as np
import jsonpickle

# The purpose of these classes is to abstract out
# the serialization of results so that every command
# emits numbers the same way.

SIGNIFICANT_DIGITS = 12


def format_number(value):
    """Render a number with 12 significant digits."""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, numbers.Integral):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return '%.*g' % (SIGNIFICANT_DIGITS, value)


def round_floats(value):
    """Recursively round floats to 12 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return format_number(value)
        return float(format_number(value))
    if isinstance(value, dict):
        return {key: round_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [round_floats(item) for item in value]
    return value


# abstract class (template)
class Encoder:
    def encode(self, val):
        pass

    def decode(self, val):
        pass


class JsonEncoder(Encoder):
    def encode(self, val):
        return jsonpickle.dumps(round_floats(val), unpicklable=False, indent=None)

    def decode(self, val):
        return jsonpickle.loads(val)


class CsvEncoder(Encoder):
    """Comma separated rows with a header row and LF line endings."""

    def __init__(self, header):
        self.header = list(header)

    def encode(self, rows):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.header)
        for row in rows:
            writer.writerow([format_number(item) if not isinstance(item, str) else item for item in row])
        return buffer.getvalue()

    def decode(self, val):
        reader = csv.reader(io.StringIO(val))
        rows = list(reader)
        if not rows or rows[0] != self.header:
            raise ValueError("CSV header does not match %s" % (','.join(self.header)))
        return rows[1:]
