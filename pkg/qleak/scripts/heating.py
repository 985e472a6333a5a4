"""Command line tool for heating and thermalization measurements."""
import sys

import click
import numpy as np

from qleak.analysis import heating_fit, thermal_fit, three_level_populations
from qleak.artifacts import ArtifactWriter
from qleak.benchmarking import relaxation_experiment
from qleak.config import (ConfigError, build_noise, build_system,
                          load_config, sweep_values)
from qleak.readout import (IQModel, ReadoutError, apply_confusion,
                           correct_visibility, estimate_confusion,
                           reference_confusion, write_confusion_csv)
from qleak.scripts._common import check_choice, run_command

SWEEP_DEFAULTS = {
    'initial': 1,
    'delays': {'start': 0.0, 'stop': 100.0, 'num': 21, 'log': False},
    'readout': None,
    'shots': None,
    'correct': False,
    'iq': {'separation': 8.0, 'std': 1.0, 'duration': 1.0, 'shots': 20000}
}

READOUT_MODELS = (None, 'reference', 'iq')

HEADER = ['delay_us', 'p0', 'p1', 'p2', 'model']


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
    """Simulate idle populations after preparing |1> or heralding |0>
    and fit the heating rate.
    """
    return run_command(heating, config_path, seed, out)


def _readout_matrix(sweep, noise, rng, writer):
    """Confusion matrix of the configured readout model, or None."""
    model = check_choice(sweep['readout'], READOUT_MODELS, 'readout')
    if model is None:
        return None
    if model == 'reference':
        return reference_confusion()
    settings = sweep['iq']
    try:
        iq = IQModel.separated(settings['separation'], settings['std'],
                               settings['duration'])
        matrix = estimate_confusion(iq, noise, settings['shots'], rng)
    except ReadoutError as exception:
        raise ConfigError("Invalid IQ readout: %s" % exception)
    filename = writer.path('confusion')
    write_confusion_csv(matrix, filename)
    writer.add_file(filename)
    return matrix


# pylint: disable=too-many-locals
def heating(config_path, seed=None, out='.'):
    """
    Idle populations versus delay, optionally seen through a readout
    model with shot noise and visibility correction, and the fitted
    heating rate: 1->2 when starting in |1>, 0->1 when starting in |0>.

    :returns: ArtifactWriter of the run
    """
    config = load_config(config_path, 'heating', SWEEP_DEFAULTS, seed)
    sweep = config['sweep']
    initial = check_choice(sweep['initial'], (0, 1), 'initial')
    delays = sweep_values(sweep['delays'], 'delays')
    if np.any(delays < 0):
        raise ConfigError("Delays must be non-negative")
    noise = build_noise(config)
    system = build_system(config)
    writer = ArtifactWriter(out, 'heating')
    rng = np.random.default_rng(config['seed'])

    populations = relaxation_experiment(initial, delays, noise, system)
    matrix = _readout_matrix(sweep, noise, rng, writer)
    if matrix is not None:
        populations = apply_confusion(populations, matrix)
    shots = sweep['shots']
    if shots is not None:
        if not isinstance(shots, int) or shots < 1:
            raise ConfigError("Sweep shots must be a positive integer")
        probabilities = np.clip(populations, 0.0, None)
        probabilities /= probabilities.sum(axis=1)[:, np.newaxis]
        populations = np.array([
            rng.multinomial(shots, row) / float(shots)
            for row in probabilities])
    if sweep['correct']:
        if matrix is None:
            raise ConfigError("Visibility correction needs a readout model")
        populations = np.array([correct_visibility(row, matrix)
                                for row in populations])

    if initial == 1:
        fit = heating_fit(delays, populations[:, 2], noise.t1_10,
                          noise.t1_21)
        rate, target = fit['heat_12'], noise.heat_12
        model = three_level_populations(delays, 1, noise.t1_10, noise.t1_21,
                                        heat_12=rate)[:, 2]
    else:
        fit = thermal_fit(delays, populations[:, 1], noise.t1_10)
        rate, target = fit['heat_01'], noise.heat_01
        model = three_level_populations(delays, 0, noise.t1_10, None,
                                        heat_01=rate)[:, 1]

    rows = [[delay] + list(row) + [value]
            for delay, row, value in zip(delays, populations, model)]
    writer.write_table(HEADER, rows)
    writer.add_result('fit', fit.to_dict())
    writer.add_result('simulated_rate', target)
    if rate > 0:
        writer.add_result('fitted_time_ms', 1.0 / rate)
    peak = int(np.argmax(populations[:, 2]))
    writer.add_result('peak_p2', float(populations[peak, 2]))
    writer.add_result('peak_delay_us', float(delays[peak]))
    print("Fitted heating rate %.4g 1/ms, simulated %.4g 1/ms"
          % (rate, target))
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
