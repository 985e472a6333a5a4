"""Tests for :mod:`qleak.scripts.decay_rates` module"""
import json
import os

import pytest

from qleak.artifacts import read_table
from qleak.scripts import decay_rates

CONFIG = {
    'noise': {'preset': 'reference'},
    'sweep': {'alphas': [0.0, 1.0], 'calibration': 'nominal',
              'lengths': [0, 1, 2, 3], 'num_sequences': 2}
}


def test_decay_rates_ok(testpath, write_config, run_cli):
    """Test one row per DRAG weight with the decay baseline."""
    run_cli(decay_rates.main,
            ['--config', write_config(CONFIG), '--out', testpath])

    baseline = 18.75 / 18e3
    header, rows = read_table(os.path.join(testpath, 'decay-rates.csv'))
    assert header == decay_rates.HEADER
    assert [float(row[0]) for row in rows] == [0.0, 1.0]
    assert all(float(row[3]) == pytest.approx(baseline) for row in rows)

    with open(os.path.join(testpath,
                           'decay-rates.manifest.json')) as in_file:
        results = json.load(in_file)['results']
    assert results['baseline'] == pytest.approx(baseline)
    assert results['clifford_time_ns'] == pytest.approx(18.75)


def test_decay_rates_duration(testpath, write_config, run_cli):
    """Test that the baseline follows the gate duration."""
    config = dict(CONFIG, gate={'duration': 20.0},
                  sweep=dict(CONFIG['sweep'], alphas=[0.0]))
    run_cli(decay_rates.main,
            ['--config', write_config(config), '--out', testpath])

    with open(os.path.join(testpath,
                           'decay-rates.manifest.json')) as in_file:
        results = json.load(in_file)['results']
    assert results['baseline'] == pytest.approx(37.5 / 18e3)


def test_decay_rates_invalid(testpath, write_config, run_cli):
    """Test that an unknown sweep key is a usage error."""
    config = dict(CONFIG, sweep=dict(CONFIG['sweep'], order=2))
    result = run_cli(decay_rates.main,
                     ['--config', write_config(config), '--out', testpath],
                     success=False, exit_code=2)
    assert 'sweep.order' in result.output
