"""Helpers shared by the experiment command line tools."""
import sys

import click

from qleak.analysis import (fit_leakage, fit_sequence_fidelity,
                            infidelity_transform)
from qleak.benchmarking import RBConfig, rb_sweep
from qleak.calibration import (CALIBRATION_MODES, CalibrationError,
                               OptimizationError, RBBudget,
                               calibrate_gate_set)
from qleak.cliffords import build_table
from qleak.config import ConfigError, sweep_values
from qleak.qutrit import SimulationError
from qleak.readout import readout_map_coefficients, reference_confusion

#: Failures of a single sweep point, recorded instead of aborting
POINT_ERRORS = (SimulationError, CalibrationError, OptimizationError)

BUDGET_DEFAULTS = {'lengths': [1, 30, 100, 300], 'num_sequences': 20}

RB_READOUT_MODELS = (None, 'reference')


def run_command(function, *args):
    """
    Run an experiment and exit with status 1 if any point failed.
    Configuration errors become click usage errors.

    :function: Experiment function returning its ArtifactWriter
    :returns: 0 on success
    """
    try:
        writer = function(*args)
    except ConfigError as exception:
        raise click.BadParameter(str(exception), param_hint="'--config'")
    if writer.failures:
        sys.exit(1)
    return 0


def clifford_time(pulse_duration):
    """Average Clifford duration in ns for pulses of the given length."""
    n_pi, n_half_pi = build_table().average_pulse_counts()
    return (n_pi + n_half_pi) * pulse_duration


def check_choice(value, choices, key):
    """Raise ConfigError unless value is one of choices."""
    if value not in choices:
        raise ConfigError("Sweep %s must be one of %s, got %r"
                          % (key, ", ".join(str(item) for item in choices),
                             value))
    return value


def rb_budget(sweep, seed):
    """RBBudget of the sweep section."""
    budget = sweep['budget']
    return RBBudget(sweep_values(budget['lengths'], 'budget.lengths', True),
                    budget['num_sequences'], seed)


def calibrate_point(template, config, noise, system):
    """
    Calibrated gate set of one sweep point, following the sweep keys
    ``calibration``, ``reps``, ``budget`` and ``max_iters``.

    :returns: (GateSet, CalibrationResult)
    """
    sweep = config['sweep']
    mode = check_choice(sweep['calibration'], CALIBRATION_MODES,
                        'calibration')
    dt = config['gate']['dt']
    budget = rb_budget(sweep, config['seed']) if mode == 'full' else None
    result = calibrate_gate_set(
        template, noise, system, dt, mode, sweep.get('reps', 1), budget,
        sweep.get('max_iters', 30))
    return result.gate_set(template, dt), result


def rb_config(lengths, gate_set, config, noise, system):
    """RBConfig of the sweep section."""
    sweep = config['sweep']
    try:
        return RBConfig(lengths, gate_set, noise, system,
                        sweep['num_sequences'], config['seed'],
                        sweep.get('mode', 'pulse'))
    except ValueError as exception:
        raise ConfigError("Invalid sweep: %s" % exception)


def benchmark(config, gate_set, noise, system, workers):
    """
    RB sweep over ``sweep.lengths`` with fidelity and leakage fits.

    :returns: (RBDataset, FidelityFit, LeakageRates, leakage FitResult)
    """
    lengths = sweep_values(config['sweep']['lengths'], 'lengths', True)
    if len(lengths) < 4:
        raise ConfigError("Sweep lengths needs at least 4 distinct values")
    dataset = rb_sweep(rb_config(lengths, gate_set, config, noise, system),
                       workers)
    fidelity = fit_sequence_fidelity(dataset.lengths, dataset.mean[:, 0])
    rates, leakage = fit_leakage(dataset.lengths, dataset.mean[:, 2])
    return dataset, fidelity, rates, leakage


def readout_coefficients(sweep):
    """
    Coefficients (A, B) of the readout named by ``sweep.readout``, mapping
    a true |2> population p to the measured A*p + B*(1 - p).

    :returns: (A, B), or None for a perfect readout
    :raises: ConfigError for an unknown readout
    """
    model = check_choice(sweep['readout'], RB_READOUT_MODELS, 'readout')
    if model is None:
        return None
    return tuple(float(value) for value in
                 readout_map_coefficients(reference_confusion()))


def measured_rates(coefficients, rates):
    """
    Leakage rates as the readout would report them.

    :coefficients: Output of readout_coefficients
    :rates: LeakageRates fitted to the true |2> populations
    :returns: Dict of the transformed rates and A, B or None without a
              readout
    """
    if coefficients is None:
        return None
    measured = infidelity_transform(rates, *coefficients)
    return dict(measured.to_dict(), A=coefficients[0], B=coefficients[1])
