"""Command line tool for randomized benchmarking with leakage tracking."""
import sys

import click

from qleak.artifacts import ArtifactWriter
from qleak.benchmarking import RBDataset
from qleak.config import (build_gate_set, build_noise, build_system,
                          load_config)
from qleak.scripts._common import (POINT_ERRORS, benchmark,
                                   measured_rates, readout_coefficients,
                                   run_command)

SWEEP_DEFAULTS = {
    'lengths': [0, 10, 25, 50, 100, 200, 400],
    'num_sequences': 75,
    'mode': 'pulse',
    'readout': None
}


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
    """Run randomized benchmarking and fit the fidelity and leakage
    decays.
    """
    return run_command(rb, config_path, seed, out, workers)


def rb(config_path, seed=None, out='.', workers=1):
    """
    Simulate RB sequences at every configured length and fit
    A*p**m + B to P0 and the rate equation to P2.

    :config_path: Configuration file
    :seed: Seed overriding the configuration
    :out: Output directory
    :workers: Number of worker processes
    :returns: ArtifactWriter of the run
    """
    config = load_config(config_path, 'rb', SWEEP_DEFAULTS, seed)
    noise = build_noise(config)
    system = build_system(config)
    coefficients = readout_coefficients(config['sweep'])
    writer = ArtifactWriter(out, 'rb')

    try:
        gate_set = build_gate_set(config, noise, system)
        dataset, fidelity, rates, leakage = benchmark(
            config, gate_set, noise, system, workers)
    except POINT_ERRORS as exception:
        writer.add_failure({'experiment': 'rb'}, exception)
    else:
        writer.write_table(RBDataset.header, dataset.rows())
        writer.add_result('gate_set', gate_set.to_dict())
        writer.add_result('fidelity', fidelity.to_dict())
        writer.add_result('leakage', dict(leakage.to_dict(),
                                          rates=rates.to_dict()))
        measured = measured_rates(coefficients, rates)
        if measured is not None:
            writer.add_result('readout_rates', measured)
        print("r_clifford=%.4g gamma_up=%.4g gamma_down=%.4g"
              % (fidelity.r_clifford, rates.gamma_up, rates.gamma_down))

    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
