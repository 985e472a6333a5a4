"""Command line tool for pseudo-identity detuning sweeps."""
import sys

import click
import numpy as np

from qleak.analysis import fit_linear, fit_power
from qleak.artifacts import ArtifactWriter
from qleak.benchmarking import pseudo_identity_sweep
from qleak.calibration import calibrate_detuning
from qleak.config import (ConfigError, build_noise, build_system,
                          build_template, load_config, sweep_values)
from qleak.pulses import PulseError
from qleak.scripts._common import POINT_ERRORS, calibrate_point, run_command

SWEEP_DEFAULTS = {
    'alphas': [0.0, 0.25, 0.5, 0.75, 1.0],
    'durations': [],
    'detunings': {'start': -60.0, 'stop': 60.0, 'num': 121, 'log': False},
    'reps': [1, 5, 10],
    'refine_reps': 1,
    'span': 100.0,
    'points': 81,
    'calibration': 'amplitude'
}

HEADER = ['duration_ns', 'alpha', 'detuning_mhz', 'flat']
CURVE_HEADER = ['duration_ns', 'alpha', 'reps', 'detuning_mhz', 'p0']


@click.command()
@click.option(
    '--config', 'config_path', type=click.Path(exists=True), required=True,
    metavar='<CONFIG PATH>',
    help="Experiment configuration or a manifest of an earlier run.")
@click.option(
    '--seed', type=int, default=None,
    metavar='<SEED>',
    help="Master seed overriding the configuration.")
@click.option(
    '--out', type=click.Path(file_okay=False), default='.',
    metavar='<OUTPUT DIR>',
    help="Directory for the CSV and manifest. Defaults to the current "
         "directory.")
def main(config_path, seed, out):
    """Sweep the drive detuning with the pseudo-identity sequence and fit
    the optimal detuning against DRAG weight and gate duration.
    """
    return run_command(detune_sweep, config_path, seed, out)


def _calibration_settings(config):
    """Amplitude calibration only; the detuning is what is measured."""
    settings = dict(config)
    settings['sweep'] = dict(config['sweep'], reps=1)
    if settings['sweep']['calibration'] not in ('nominal', 'amplitude'):
        raise ConfigError("Sweep calibration must be nominal or amplitude")
    return settings


def _fit_tables(optimal, writer):
    """Linear fits per duration and a power law of the slopes."""
    slopes = []
    linear = {}
    for duration in sorted(optimal):
        points = optimal[duration]
        if len(points) < 3:
            continue
        alphas, detunings = zip(*points)
        try:
            line = fit_linear(alphas, detunings)
        except ValueError as exception:
            writer.add_failure({'fit': 'linear', 'duration_ns': duration},
                               exception)
            continue
        linear[str(duration)] = line._asdict()
        slopes.append((duration, abs(line.slope)))
        print("T=%g ns: detuning = %.4g*alpha + %.4g MHz (R2=%.5f)"
              % (duration, line.slope, line.intercept, line.r_squared))
    writer.add_result('linear', linear)
    if len(slopes) >= 3:
        durations, values = zip(*slopes)
        try:
            writer.add_result('power', fit_power(durations, values)._asdict())
        except ValueError as exception:
            writer.add_failure({'fit': 'power'}, exception)


# pylint: disable=too-many-locals
def detune_sweep(config_path, seed=None, out='.'):
    """
    For each gate duration and DRAG weight: P0 versus detuning after
    ``reps`` pseudo-identity pairs, and the calibrated optimal detuning.

    :returns: ArtifactWriter of the run
    """
    name = 'detune-sweep'
    config = load_config(config_path, name, SWEEP_DEFAULTS, seed)
    sweep = config['sweep']
    alphas = sweep_values(sweep['alphas'], 'alphas')
    detunings = sweep_values(sweep['detunings'], 'detunings')
    reps_list = sweep_values(sweep['reps'], 'reps', integer=True)
    durations = (sweep_values(sweep['durations'], 'durations')
                 if sweep['durations'] else [config['gate']['duration']])
    if np.any(reps_list < 1):
        raise ConfigError("Sweep reps must be positive")
    noise = build_noise(config)
    system = build_system(config)
    template = build_template(config)
    settings = _calibration_settings(config)
    writer = ArtifactWriter(out, name)

    rows = []
    curves = []
    optimal = {}
    for duration in durations:
        for alpha in alphas:
            point = {'duration_ns': float(duration), 'alpha': float(alpha)}
            try:
                gate_set, _ = calibrate_point(
                    template.replace(duration=duration, alpha1=alpha,
                                     detuning=0.0),
                    settings, noise, system)
                for reps in reps_list:
                    for detuning, p0 in zip(detunings, pseudo_identity_sweep(
                            detunings, reps, gate_set, noise, system)):
                        curves.append([duration, alpha, reps, detuning, p0])
                best, flat = calibrate_detuning(
                    alpha, gate_set, sweep['refine_reps'], noise, system,
                    sweep['span'], sweep['points'])
            except POINT_ERRORS as exception:
                writer.add_failure(point, exception)
                continue
            except PulseError as exception:
                raise ConfigError("Invalid sweep point %s: %s"
                                  % (point, exception))
            rows.append([duration, alpha, best, flat])
            if not flat:
                optimal.setdefault(float(duration), []).append(
                    (float(alpha), best))
            print("T=%g ns alpha=%g: optimal detuning %.4g MHz"
                  % (duration, alpha, best))

    writer.write_table(HEADER, rows)
    writer.write_table(CURVE_HEADER, curves, table='curves')
    _fit_tables(optimal, writer)
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
