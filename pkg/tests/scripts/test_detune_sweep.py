"""Tests for :mod:`qleak.scripts.detune_sweep` module"""
import json
import os

import pytest

from qleak.artifacts import read_table
from qleak.scripts import detune_sweep

SWEEP = {'alphas': [0.0, 1.0], 'detunings': [-20.0, 0.0, 20.0],
         'reps': [1, 2], 'span': 40.0, 'points': 9, 'calibration': 'nominal'}


def test_detune_sweep_ok(testpath, write_config, run_cli):
    """Test the optimal detuning table and the P0 curves."""
    path = write_config({'sweep': SWEEP})
    run_cli(detune_sweep.main, ['--config', path, '--out', testpath])

    header, rows = read_table(os.path.join(testpath, 'detune-sweep.csv'))
    assert header == detune_sweep.HEADER
    assert [(float(row[0]), float(row[1])) for row in rows] == [
        (10.0, 0.0), (10.0, 1.0)]
    for row in rows:
        assert -40.0 - 5.0 <= float(row[2]) <= 40.0 + 5.0

    header, curves = read_table(
        os.path.join(testpath, 'detune-sweep-curves.csv'))
    assert header == detune_sweep.CURVE_HEADER
    assert len(curves) == 2 * 2 * 3
    assert [int(row[2]) for row in curves[:6]] == [1, 1, 1, 2, 2, 2]
    for row in curves:
        assert -1e-6 <= float(row[4]) <= 1.0 + 1e-6

    with open(os.path.join(testpath,
                           'detune-sweep.manifest.json')) as in_file:
        manifest = json.load(in_file)
    assert manifest['files'] == ['detune-sweep.csv',
                                 'detune-sweep-curves.csv']
    assert manifest['results']['linear'] == {}
    assert 'power' not in manifest['results']


def test_detune_sweep_durations(testpath, write_config, run_cli):
    """Test that durations replace the gate duration."""
    sweep = dict(SWEEP, alphas=[0.0], durations=[10.0, 20.0], reps=[1])
    run_cli(detune_sweep.main,
            ['--config', write_config({'sweep': sweep}), '--out', testpath])

    _, rows = read_table(os.path.join(testpath, 'detune-sweep.csv'))
    assert [float(row[0]) for row in rows] == [10.0, 20.0]


@pytest.mark.parametrize('sweep', [
    {'calibration': 'full'},
    {'reps': [0, 1]},
    {'detunings': {'start': -10, 'stop': 10, 'step': 1}},
])
def test_detune_sweep_invalid(testpath, write_config, run_cli, sweep):
    """Test that invalid sweeps exit with a usage error."""
    path = write_config({'sweep': dict(SWEEP, **sweep)})
    run_cli(detune_sweep.main, ['--config', path, '--out', testpath],
            success=False, exit_code=2)


@pytest.mark.slow
def test_detune_sweep_scaling(testpath, write_config, run_cli):
    """Test that the optimal detuning is linear in the DRAG weight and
    that its slope falls as the inverse square of the gate duration.
    """
    sweep = {'alphas': [0.0, 0.25, 0.5, 0.75, 1.0],
             'durations': [8.0, 10.0, 14.0, 20.0], 'detunings': [0.0],
             'reps': [1], 'refine_reps': 3, 'calibration': 'amplitude'}
    run_cli(detune_sweep.main,
            ['--config', write_config({'sweep': sweep}), '--out', testpath])

    with open(os.path.join(testpath,
                           'detune-sweep.manifest.json')) as in_file:
        results = json.load(in_file)['results']
    assert sorted(results['linear']) == ['10.0', '14.0', '20.0', '8.0']
    for line in results['linear'].values():
        assert line['r_squared'] > 0.99
    assert results['power']['exponent'] == pytest.approx(-2.0, abs=0.3)
