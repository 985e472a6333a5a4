# coding=utf-8
"""Tests for the utility functions."""
import json

import numpy as np
import pytest

import qleak.utils as utils


def test_generate_digest():
    """Test that digests ignore key order but not content."""
    first = {'gate': {'alpha1': 0.5, 'dt': 0.02}, 'seed': 1}
    second = {'seed': 1, 'gate': {'dt': 0.02, 'alpha1': 0.5}}
    third = {'seed': 2, 'gate': {'dt': 0.02, 'alpha1': 0.5}}
    assert utils.generate_digest(first) == utils.generate_digest(second)
    assert utils.generate_digest(first) != utils.generate_digest(third)
    assert len(utils.generate_digest(first)) == 64


def test_json_default():
    """Test the conversion of numpy values."""
    data = {'int': np.int64(3), 'float': np.float64(0.5),
            'bool': np.bool_(True), 'array': np.arange(3)}
    assert json.loads(json.dumps(data, default=utils.json_default)) == {
        'int': 3, 'float': 0.5, 'bool': True, 'array': [0, 1, 2]}
    with pytest.raises(TypeError):
        utils.json_default(object())


def test_canonical_json():
    """Test the compact sorted serialization."""
    assert utils.canonical_json({'b': 1, 'a': [np.float64(1.5)]}) == \
        '{"a":[1.5],"b":1}'


def test_merge_defaults():
    """Test merging nested sections onto defaults."""
    defaults = {'gate': {'alpha1': 0.0, 'dt': 0.02}, 'sweep': {},
                'delays': {'start': 0, 'stop': 10}}
    merged = utils.merge_defaults(
        defaults, {'gate': {'alpha1': 0.5}, 'sweep': {'any': [1]},
                   'delays': [1, 2]})
    assert merged == {'gate': {'alpha1': 0.5, 'dt': 0.02},
                      'sweep': {'any': [1]}, 'delays': [1, 2]}
    assert defaults['gate']['alpha1'] == 0.0
    assert utils.merge_defaults(defaults, None) == defaults


@pytest.mark.parametrize(('given', 'key'), [
    ({'gates': {}}, 'gates'),
    ({'gate': {'alpha3': 1.0}}, 'gate.alpha3'),
])
def test_merge_defaults_unknown(given, key):
    """Test that unknown keys are reported with their dotted path."""
    with pytest.raises(KeyError) as error:
        utils.merge_defaults({'gate': {'alpha1': 0.0}}, given)
    assert error.value.args[0] == key


def test_list2str():
    """Test the human readable list formatting."""
    assert utils.list2str(['a']) == '"a"'
    assert utils.list2str(['a', 'b', 'c']) == '"a", "b" and "c"'


@pytest.mark.parametrize(('value', 'text'), [
    (None, ''),
    (True, '1'),
    (np.bool_(False), '0'),
    (7, '7'),
    (np.int32(-2), '-2'),
    (0.1, '0.10000000000000001'),
    (np.float64(2.5), '2.5'),
    ('pulse', 'pulse'),
])
def test_format_value(value, text):
    """Test the CSV cell formatting."""
    assert utils.format_value(value) == text
