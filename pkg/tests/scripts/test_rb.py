"""Tests for :mod:`qleak.scripts.rb` module"""
import json
import os

import pytest

from qleak.artifacts import read_table
from qleak.benchmarking import RBDataset
from qleak.scripts import rb

GATE = {'pi_amplitude': 0.6283, 'half_pi_amplitude': 0.3142}


def _config(**sweep):
    """Cheap RB configuration."""
    settings = {'lengths': [0, 2, 5, 10], 'num_sequences': 3,
                'mode': 'unitary'}
    settings.update(sweep)
    return {'gate': GATE, 'sweep': settings}


def test_rb_ok(testpath, write_config, run_cli):
    """Test that the table and manifest are written."""
    path = write_config(_config())
    out = os.path.join(testpath, 'out')
    result = run_cli(rb.main, ['--config', path, '--out', out])
    assert 'r_clifford=' in result.output

    header, rows = read_table(os.path.join(out, 'rb.csv'))
    assert header == RBDataset.header
    assert [row[0] for row in rows] == ['0', '2', '5', '10']
    assert all(float(row[1]) == pytest.approx(1.0) for row in rows)

    with open(os.path.join(out, 'rb.manifest.json')) as in_file:
        manifest = json.load(in_file)
    assert manifest['name'] == 'rb'
    assert manifest['seed'] == 0
    assert manifest['files'] == ['rb.csv']
    assert manifest['failures'] == []
    assert set(manifest['results']) == {'gate_set', 'fidelity', 'leakage'}
    assert manifest['results']['gate_set']['pi_amplitude'] == 0.6283


def test_rb_manifest_rerun(testpath, write_config, run_cli):
    """Test that rerunning from a manifest reproduces the table."""
    path = write_config(_config(mode='pulse', lengths=[0, 1, 2, 3],
                                num_sequences=2))
    first = os.path.join(testpath, 'first')
    second = os.path.join(testpath, 'second')
    run_cli(rb.main, ['--config', path, '--out', first, '--seed', '11'])
    run_cli(rb.main, ['--config', os.path.join(first, 'rb.manifest.json'),
                      '--out', second, '--workers', '2'])

    with open(os.path.join(first, 'rb.csv'), 'rb') as in_file:
        expected = in_file.read()
    with open(os.path.join(second, 'rb.csv'), 'rb') as in_file:
        assert in_file.read() == expected
    with open(os.path.join(second, 'rb.manifest.json')) as in_file:
        assert json.load(in_file)['seed'] == 11


@pytest.mark.parametrize('sweep', [
    {'lenghts': [0, 1, 2, 3]},
    {'lengths': [0, 1, 2]},
    {'mode': 'analog'},
    {'num_sequences': 0},
    {'readout': 'measured'},
])
def test_rb_invalid_config(testpath, write_config, run_cli, sweep):
    """Test that invalid sweep sections exit with a usage error."""
    config = _config()
    config['sweep'].update(sweep)
    result = run_cli(rb.main, ['--config', write_config(config),
                               '--out', testpath],
                     success=False, exit_code=2)
    assert '--config' in result.output


def test_rb_missing_config(testpath, run_cli):
    """Test that a missing configuration file is a usage error."""
    run_cli(rb.main, ['--config', os.path.join(testpath, 'missing.json')],
            success=False, exit_code=2)


def test_rb_readout(testpath, write_config, run_cli):
    """Test that a reference readout adds the rates it would report."""
    path = write_config(_config(readout='reference'))
    run_cli(rb.main, ['--config', path, '--out', testpath])

    with open(os.path.join(testpath, 'rb.manifest.json')) as in_file:
        results = json.load(in_file)['results']
    rates = results['leakage']['rates']
    measured = results['readout_rates']
    assert measured['B'] == pytest.approx(2.75e-4, rel=1e-2)
    assert measured['gamma_up'] == pytest.approx(
        measured['A'] * rates['gamma_up']
        + measured['B'] * rates['gamma_down'])
    assert measured['p0'] == pytest.approx(
        measured['A'] * rates['p0'] + measured['B'] * (1 - rates['p0']))
