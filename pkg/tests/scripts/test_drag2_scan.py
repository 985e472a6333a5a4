"""Tests for :mod:`qleak.scripts.drag2_scan` module"""
import json
import os

import pytest

from qleak.artifacts import read_table
from qleak.scripts import drag2_scan

SWEEP = {'alpha1s': [0.0], 'alpha2s': [0.0, 0.5], 'length': 2,
         'num_sequences': 2, 'calibration': 'nominal'}


def test_drag2_scan_ok(testpath, write_config, run_cli):
    """Test one row per weight pair and the minimum."""
    path = write_config({'sweep': SWEEP})
    run_cli(drag2_scan.main, ['--config', path, '--out', testpath])

    header, rows = read_table(os.path.join(testpath, 'drag2-scan.csv'))
    assert header == drag2_scan.HEADER
    assert [(float(row[0]), float(row[1])) for row in rows] == [
        (0.0, 0.0), (0.0, 0.5)]
    for row in rows:
        assert 0.0 <= float(row[2]) < 0.5
        assert float(row[3]) >= 0.0

    with open(os.path.join(testpath, 'drag2-scan.manifest.json')) as in_file:
        minimum = json.load(in_file)['results']['minimum']
    assert minimum['mean_p2'] == pytest.approx(
        min(float(row[2]) for row in rows))


@pytest.mark.parametrize('length', [0, 2.5, '10'])
def test_drag2_scan_invalid_length(testpath, write_config, run_cli, length):
    """Test that the sequence length must be a positive integer."""
    path = write_config({'sweep': dict(SWEEP, length=length)})
    run_cli(drag2_scan.main, ['--config', path, '--out', testpath],
            success=False, exit_code=2)
