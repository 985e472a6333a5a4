"""
Utilities for qleak
"""
import copy
import hashlib
import json

import numpy as np


def json_default(value):
    """Convert numpy values for json.dump."""
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError("Object of type %s is not JSON serializable"
                    % type(value).__name__)


def canonical_json(data):
    """Serialize with sorted keys and no whitespace."""
    return json.dumps(data, sort_keys=True, separators=(',', ':'),
                      default=json_default)


def generate_digest(data):
    """SHA-256 digest of the canonical JSON form. Dicts with the same
    content give the same digest regardless of key order.

    :data: JSON serializable data
    :returns: Hex digest
    """
    return hashlib.sha256(canonical_json(data).encode('utf-8')).hexdigest()


def merge_defaults(defaults, given, path=''):
    """
    Merge a configuration section onto its defaults. A dict given for a
    nested dict default is merged recursively, any other value replaces
    the default; a key absent from the defaults is an error.

    :defaults: Dict of default values
    :given: Dict of given values, may be None
    :path: Dotted path of the section for error messages
    :returns: New merged dict
    :raises: KeyError with the dotted path of an unknown key
    """
    merged = copy.deepcopy(defaults)
    for key, value in (given or {}).items():
        dotted = '%s.%s' % (path, key) if path else key
        if key not in defaults:
            raise KeyError(dotted)
        if isinstance(defaults[key], dict) and defaults[key] and \
                isinstance(value, dict):
            merged[key] = merge_defaults(defaults[key], value, dotted)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def list2str(lst):
    """Create a human readable list of words from list of strings.

    :param lst: list of strings
    :returns: list formatted as single string
    """
    if len(lst) == 1:
        return '"{}"'.format(lst[0])
    first_words = ['"{}"'.format(string) for string in lst[:-1]]
    last_word = '"{}"'.format(lst[-1])
    return ', '.join(first_words) + ' and ' + last_word


def format_value(value):
    """CSV cell text of a value, floats with 17 significant digits."""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return '%.17g' % value
    return str(value)
