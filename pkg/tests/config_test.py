"""Tests for the configuration module."""
import json
import os

import numpy as np
import pytest

import qleak.config as config_module
from qleak.config import ConfigError, load_config


def test_defaults(write_config):
    """Test that an empty configuration resolves to the defaults."""
    config = load_config(write_config({}), 'rb', {'lengths': [0, 10]})
    assert config['experiment'] == 'rb'
    assert config['seed'] == 0
    assert config['system']['anharmonicity'] == -212.0
    assert config['gate']['duration'] == 10.0
    assert config['noise']['t1_10'] is None
    assert config['sweep'] == {'lengths': [0, 10]}


def test_merge(write_config):
    """Test that given values override nested defaults."""
    path = write_config({
        'gate': {'alpha1': 0.5},
        'sweep': {'lengths': [1, 2, 3], 'budget': {'num_sequences': 3}}})
    config = load_config(path, 'rb', {
        'lengths': {'start': 1, 'stop': 100, 'num': 5, 'log': True},
        'budget': {'lengths': [1, 30], 'num_sequences': 20}})
    assert config['gate']['alpha1'] == 0.5
    assert config['gate']['dt'] == 0.02
    assert config['sweep']['lengths'] == [1, 2, 3]
    assert config['sweep']['budget'] == {'lengths': [1, 30],
                                         'num_sequences': 3}


@pytest.mark.parametrize(('data', 'message'), [
    ({'gate': {'durations': 10}}, 'Unknown configuration key gate.durations'),
    ({'sweeps': {}}, 'Unknown configuration key sweeps'),
    ({'sweep': {'lengths': {'first': 1}}},
     'Unknown configuration key sweep.lengths.first'),
    ({'gate': 10}, 'Section gate must be an object'),
    ({'experiment': 'heating'}, "for experiment 'heating'"),
    ({'noise': {'preset': 'cold'}},
     'Unknown noise preset \'cold\', use "noiseless" and "reference"'),
    ({'seed': -1}, 'Seed must be a non-negative integer'),
    ({'seed': 1.5}, 'Seed must be a non-negative integer'),
    ({'seed': True}, 'Seed must be a non-negative integer'),
])
def test_invalid_config(write_config, data, message):
    """Test that invalid configurations raise ConfigError."""
    with pytest.raises(ConfigError) as error:
        load_config(write_config(data), 'rb',
                    {'lengths': {'start': 1, 'stop': 10, 'num': 3}})
    assert message in str(error.value)


def test_invalid_file(testpath):
    """Test that unreadable files raise ConfigError."""
    path = os.path.join(testpath, 'broken.json')
    with open(path, 'wt') as out_file:
        out_file.write('{"gate": ')
    with pytest.raises(ConfigError) as error:
        load_config(path, 'rb')
    assert 'Invalid JSON' in str(error.value)

    with open(path, 'wt') as out_file:
        out_file.write('[1, 2]')
    with pytest.raises(ConfigError):
        load_config(path, 'rb')

    with pytest.raises(ConfigError):
        load_config(os.path.join(testpath, 'missing.json'), 'rb')


def test_noise_preset(write_config):
    """Test that presets fill the noise section and values override."""
    path = write_config({'noise': {'preset': 'reference', 't1_10': 30.0}})
    config = load_config(path, 'rb')
    assert config['noise']['t1_10'] == 30.0
    assert config['noise']['t1_21'] == 18.0
    assert config['noise']['preset'] == 'reference'

    noise = config_module.build_noise(config)
    assert noise.t1_10 == 30.0
    assert noise.tphi2 == 1.8


def test_seed_override(write_config):
    """Test that a given seed replaces the configured one."""
    path = write_config({'seed': 3})
    assert load_config(path, 'rb')['seed'] == 3
    assert load_config(path, 'rb', seed=9)['seed'] == 9


def test_calibration_path(write_config, testpath):
    """Test that calibration paths are relative to the configuration."""
    path = write_config({'gate': {'calibration': 'calibrate.json'}})
    config = load_config(path, 'rb')
    assert config['gate']['calibration'] == os.path.join(
        os.path.abspath(testpath), 'calibrate.json')


def test_manifest_as_config(write_config):
    """Test that a manifest reproduces the resolved configuration."""
    config = load_config(write_config({'gate': {'alpha1': 0.25}}), 'rb',
                         {'lengths': [0, 5]}, seed=4)
    manifest = {'name': 'rb', 'config': config, 'config_digest': 'x',
                'results': {}}
    reloaded = load_config(write_config(manifest, 'rb.manifest.json'),
                           'rb', {'lengths': [0, 10, 20]})
    assert reloaded == config


def test_build_system(write_config):
    """Test the conversion of the anharmonicity to rad/ns."""
    config = load_config(write_config({'system': {'anharmonicity': -250}}),
                         'rb')
    system = config_module.build_system(config)
    assert system.anharmonicity == pytest.approx(2 * np.pi * -0.25)
    assert system.relative_12_coupling == pytest.approx(np.sqrt(2))

    config['system']['anharmonicity'] = 0.0
    with pytest.raises(ConfigError):
        config_module.build_system(config)


def test_build_noise_invalid(write_config):
    """Test that invalid noise values raise ConfigError."""
    config = load_config(write_config({'noise': {'t1_10': -1}}), 'rb')
    with pytest.raises(ConfigError) as error:
        config_module.build_noise(config)
    assert 'Invalid noise section' in str(error.value)


def test_build_template(write_config):
    """Test the pulse template of the gate section."""
    config = load_config(write_config({
        'system': {'anharmonicity': -200.0},
        'gate': {'duration': 20.0, 'alpha1': 0.5, 'detuning': -4.0}}), 'rb')
    template = config_module.build_template(config)
    assert template.duration == 20.0
    assert template.alpha1 == 0.5
    assert template.detuning == -4.0
    assert template.anharmonicity == pytest.approx(2 * np.pi * -0.2)

    config['gate']['duration'] = -1
    with pytest.raises(ConfigError):
        config_module.build_template(config)


def test_build_gate_set_explicit(write_config):
    """Test a gate set with configured amplitudes."""
    config = load_config(write_config({
        'gate': {'pi_amplitude': 0.63, 'half_pi_amplitude': 0.31,
                 'dt': 0.01}}), 'rb')
    gate_set = config_module.build_gate_set(config, None, None)
    assert gate_set.pi_amplitude == 0.63
    assert gate_set.half_pi_amplitude == 0.31
    assert gate_set.dt == 0.01

    config['gate']['pi_amplitude'] = -0.63
    with pytest.raises(ConfigError):
        config_module.build_gate_set(config, None, None)


def test_build_gate_set_calibrated(write_config):
    """Test that missing amplitudes are calibrated."""
    config = load_config(write_config({}), 'rb')
    noise = config_module.build_noise(config)
    system = config_module.build_system(config)
    gate_set = config_module.build_gate_set(config, noise, system)
    assert gate_set.pi_amplitude == pytest.approx(2 * np.pi / 10, rel=0.05)


def test_build_gate_set_calibration_file(write_config, testpath):
    """Test that a calibration file overrides the gate section."""
    with open(os.path.join(testpath, 'calibrate.json'), 'wt') as out_file:
        json.dump({'pi_amplitude': 0.64, 'half_pi_amplitude': 0.32,
                   'detuning': -5.0, 'alpha1': 0.5}, out_file)
    config = load_config(write_config({
        'gate': {'calibration': 'calibrate.json', 'pi_amplitude': 1.0,
                 'half_pi_amplitude': 0.5}}), 'rb')
    gate_set = config_module.build_gate_set(config, None, None)
    assert gate_set.pi_amplitude == 0.64
    assert gate_set.template.detuning == -5.0
    assert gate_set.template.alpha1 == 0.5

    with open(os.path.join(testpath, 'calibrate.json'), 'wt') as out_file:
        json.dump({'pi_amplitude': 0.64}, out_file)
    with pytest.raises(ConfigError) as error:
        config_module.build_gate_set(config, None, None)
    assert 'Invalid calibration file' in str(error.value)


def test_sweep_values():
    """Test the sweep axis formats."""
    assert np.array_equal(config_module.sweep_values([0, 0.5], 'alphas'),
                          [0.0, 0.5])
    assert np.allclose(
        config_module.sweep_values({'start': 0, 'stop': 1, 'num': 5}, 'f'),
        [0, 0.25, 0.5, 0.75, 1])
    assert np.allclose(
        config_module.sweep_values(
            {'start': 1, 'stop': 100, 'num': 3, 'log': True}, 'm'),
        [1, 10, 100])
    assert np.array_equal(
        config_module.sweep_values(
            {'start': 1, 'stop': 10, 'num': 20, 'log': False}, 'm',
            integer=True),
        np.arange(1, 11))


@pytest.mark.parametrize('value', [
    [], 'abc', 5, ['a', 'b'], {'start': 0, 'stop': 1},
    {'start': 0, 'stop': 1, 'num': 3, 'step': 1},
    {'start': 0, 'stop': 1, 'num': 3, 'log': True},
])
def test_sweep_values_invalid(value):
    """Test that malformed sweep axes raise ConfigError."""
    with pytest.raises(ConfigError):
        config_module.sweep_values(value, 'axis')
