"""Tests for :mod:`qleak.scripts.calibrate` module"""
import json
import os

import numpy as np
import pytest

from qleak.artifacts import read_table
from qleak.calibration import CalibrationResult
from qleak.scripts import calibrate, rb


def test_calibrate_amplitude(testpath, write_config, run_cli):
    """Test the calibration file and the written envelope."""
    path = write_config({'sweep': {'calibration': 'amplitude'}})
    result = run_cli(calibrate.main, ['--config', path, '--out', testpath])
    assert 'Wrote calibration to file' in result.output

    with open(os.path.join(testpath, 'calibrate.json')) as in_file:
        calibration = CalibrationResult.from_dict(json.load(in_file))
    assert calibration.pi_amplitude == pytest.approx(2 * np.pi / 10,
                                                     rel=0.05)
    assert calibration.half_pi_amplitude == pytest.approx(
        calibration.pi_amplitude / 2, rel=0.05)

    header, rows = read_table(os.path.join(testpath,
                                           'calibrate-envelope.csv'))
    assert header == calibrate.ENVELOPE_HEADER
    assert len(rows) == 501
    assert float(rows[-1][0]) == pytest.approx(10.0)

    with open(os.path.join(testpath, 'calibrate.manifest.json')) as in_file:
        manifest = json.load(in_file)
    assert manifest['files'] == ['calibrate.json', 'calibrate.csv',
                                 'calibrate-envelope.csv']
    assert manifest['results']['calibration']['pi_amplitude'] == \
        calibration.pi_amplitude


def test_calibration_file_reuse(testpath, write_config, run_cli):
    """Test that other tools accept the written calibration file."""
    path = write_config({'gate': {'alpha1': 0.5},
                         'sweep': {'calibration': 'nominal'}})
    run_cli(calibrate.main, ['--config', path, '--out', testpath])
    _, history = read_table(os.path.join(testpath, 'calibrate.csv'))
    assert history == []

    config = write_config({
        'gate': {'calibration': 'calibrate.json'},
        'sweep': {'lengths': [0, 1, 2, 3], 'num_sequences': 2,
                  'mode': 'unitary'}}, 'rb.json')
    out = os.path.join(testpath, 'rb')
    run_cli(rb.main, ['--config', config, '--out', out])
    with open(os.path.join(out, 'rb.manifest.json')) as in_file:
        gate_set = json.load(in_file)['results']['gate_set']
    assert gate_set['pi_amplitude'] == pytest.approx(2 * np.pi / 10)
    assert gate_set['template']['alpha1'] == 0.5


def test_calibrate_failure(testpath, write_config, run_cli):
    """Test that a failed calibration exits with 1 without a file."""
    path = write_config({'gate': {'duration': 0.1},
                         'sweep': {'calibration': 'amplitude'}})
    run_cli(calibrate.main, ['--config', path, '--out', testpath],
            success=False, exit_code=1)

    assert not os.path.exists(os.path.join(testpath, 'calibrate.json'))
    with open(os.path.join(testpath, 'calibrate.manifest.json')) as in_file:
        failures = json.load(in_file)['failures']
    assert failures[0]['point'] == {'calibration': 'amplitude'}


def test_calibrate_invalid_mode(testpath, write_config, run_cli):
    """Test that an unknown calibration mode is a usage error."""
    path = write_config({'sweep': {'calibration': 'magic'}})
    run_cli(calibrate.main, ['--config', path, '--out', testpath],
            success=False, exit_code=2)
