"""Command line tool for leakage population versus sequence length."""
import sys

import click
import numpy as np

from qleak.analysis import heating_floor, rate_eq_population
from qleak.artifacts import ArtifactWriter
from qleak.config import (build_gate_set, build_noise, build_system,
                          load_config)
from qleak.scripts._common import (POINT_ERRORS, benchmark, clifford_time,
                                   measured_rates, readout_coefficients,
                                   run_command)

SWEEP_DEFAULTS = {
    'lengths': {'start': 1, 'stop': 1000, 'num': 15, 'log': True},
    'num_sequences': 75,
    'occupancy': 0.5,
    'readout': None
}

HEADER = ['m', 'mean_p2', 'sem_p2', 'model_p2', 'heating_p2']


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
@click.option(
    '--workers', type=click.IntRange(min=1), default=1,
    metavar='<WORKERS>',
    help="Number of worker processes. Results do not depend on it.")
def main(config_path, seed, out, workers):
    """Track the |2> population over sequence length and compare the
    fitted leakage with the floor set by heating alone.
    """
    return run_command(leakage_vs_length, config_path, seed, out, workers)


def leakage_vs_length(config_path, seed=None, out='.', workers=1):
    """
    RB sweep reporting P2 per length, the fitted rate equation curve and
    the linear heating contribution heat_12 * t_Clifford * occupancy * m.

    :returns: ArtifactWriter of the run
    """
    name = 'leakage-vs-length'
    config = load_config(config_path, name, SWEEP_DEFAULTS, seed)
    noise = build_noise(config)
    system = build_system(config)
    coefficients = readout_coefficients(config['sweep'])
    writer = ArtifactWriter(out, name)

    try:
        gate_set = build_gate_set(config, noise, system)
        dataset, _, rates, leakage = benchmark(
            config, gate_set, noise, system, workers)
    except POINT_ERRORS as exception:
        writer.add_failure({'experiment': name}, exception)
        writer.write_manifest(config, config['seed'])
        return writer

    duration = clifford_time(gate_set.duration)
    floor = heating_floor(noise.heat_12 * 1e-6, duration,
                          config['sweep']['occupancy'])
    model = rate_eq_population(rates, dataset.lengths)
    rows = [[length, mean, sem, fitted, floor * length]
            for length, mean, sem, fitted in zip(
                dataset.lengths, dataset.mean[:, 2], dataset.sem[:, 2],
                model)]
    writer.write_table(HEADER, rows)
    writer.add_result('leakage', dict(leakage.to_dict(),
                                      rates=rates.to_dict()))
    writer.add_result('clifford_time_ns', duration)
    writer.add_result('heating_floor', floor)
    writer.add_result('gamma_up_excess', rates.gamma_up - floor)
    writer.add_result('max_p2', float(np.max(dataset.mean[:, 2])))
    measured = measured_rates(coefficients, rates)
    if measured is not None:
        writer.add_result('readout_rates', measured)
    print("gamma_up=%.4g heating floor=%.4g" % (rates.gamma_up, floor))
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
