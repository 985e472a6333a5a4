"""Command line tool for Bloch vector trajectories of partial rotations."""
import sys

import click
import numpy as np

from qleak.artifacts import ArtifactWriter
from qleak.benchmarking import tomography_trajectory
from qleak.config import (ConfigError, build_gate_set, build_noise,
                          build_system, build_template, load_config,
                          sweep_values)
from qleak.scripts._common import POINT_ERRORS, run_command

SWEEP_DEFAULTS = {
    'fractions': {'start': 0.0, 'stop': 1.0, 'num': 21, 'log': False},
    'alphas': []
}

HEADER = ['alpha', 'fraction', 'x', 'y', 'z']


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
    """Record the qubit Bloch vector along scaled X rotations."""
    return run_command(tomography, config_path, seed, out)


def tomography(config_path, seed=None, out='.'):
    """
    Bloch vectors after X pulses scaled to a fraction of pi, for each
    first derivative DRAG weight. An empty ``alphas`` list uses the gate
    section, which is also the only choice with a calibration file.

    :returns: ArtifactWriter of the run
    """
    config = load_config(config_path, 'tomography', SWEEP_DEFAULTS, seed)
    sweep = config['sweep']
    fractions = sweep_values(sweep['fractions'], 'fractions')
    if np.any(fractions < 0) or np.any(fractions > 1):
        raise ConfigError("Rotation fractions must lie in [0, 1]")
    noise = build_noise(config)
    system = build_system(config)
    template = build_template(config)
    if sweep['alphas'] and config['gate']['calibration'] is not None:
        raise ConfigError("Sweep alphas cannot be combined with a "
                          "calibration file, which fixes alpha1")
    alphas = (sweep_values(sweep['alphas'], 'alphas') if sweep['alphas']
              else [template.alpha1])
    writer = ArtifactWriter(out, 'tomography')

    rows = []
    deviations = {}
    for alpha in alphas:
        try:
            gate_set = build_gate_set(config, noise, system,
                                      template.replace(alpha1=alpha))
            vectors = tomography_trajectory(fractions, gate_set, noise,
                                            system)
        except POINT_ERRORS as exception:
            writer.add_failure({'alpha': float(alpha)}, exception)
            continue
        weight = gate_set.template.alpha1
        for fraction, vector in zip(fractions, vectors):
            rows.append([weight, fraction] + list(vector))
        deviation = float(np.max(np.abs(vectors[:, 1])))
        deviations[str(float(weight))] = deviation
        print("alpha=%g: max |y| %.4g" % (weight, deviation))

    writer.write_table(HEADER, rows)
    writer.add_result('max_abs_y', deviations)
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
