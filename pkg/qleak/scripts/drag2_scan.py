"""Command line tool for mapping leakage over both DRAG weights."""
import sys

import click

from qleak.artifacts import ArtifactWriter
from qleak.benchmarking import saturation_scan
from qleak.config import (ConfigError, build_noise, build_system,
                          build_template, load_config, sweep_values)
from qleak.pulses import PulseError
from qleak.scripts._common import (POINT_ERRORS, calibrate_point, rb_config,
                                   run_command)

SWEEP_DEFAULTS = {
    'alpha1s': [0.0, 0.5, 1.0],
    'alpha2s': [-1.0, 0.0, 1.0],
    'length': 300,
    'num_sequences': 45,
    'calibration': 'amplitude'
}

HEADER = ['alpha1', 'alpha2', 'mean_p2', 'sem_p2']


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
    """Map the |2> population after one long sequence length over the
    first and second derivative DRAG weights.
    """
    return run_command(drag2_scan, config_path, seed, out, workers)


def drag2_scan(config_path, seed=None, out='.', workers=1):
    """
    Mean P2 and its standard error after ``length`` Cliffords for every
    (alpha1, alpha2) pair.

    :returns: ArtifactWriter of the run
    """
    config = load_config(config_path, 'drag2-scan', SWEEP_DEFAULTS, seed)
    sweep = config['sweep']
    alpha1s = sweep_values(sweep['alpha1s'], 'alpha1s')
    alpha2s = sweep_values(sweep['alpha2s'], 'alpha2s')
    length = sweep['length']
    if not isinstance(length, int) or length < 1:
        raise ConfigError("Sweep length must be a positive integer")
    noise = build_noise(config)
    system = build_system(config)
    template = build_template(config)
    writer = ArtifactWriter(out, 'drag2-scan')

    rows = []
    for alpha1 in alpha1s:
        for alpha2 in alpha2s:
            point = {'alpha1': float(alpha1), 'alpha2': float(alpha2)}
            try:
                gate_set, _ = calibrate_point(
                    template.replace(alpha1=alpha1, alpha2=alpha2), config,
                    noise, system)
                mean, sem = saturation_scan(
                    rb_config([length], gate_set, config, noise, system),
                    length, workers)
            except POINT_ERRORS as exception:
                writer.add_failure(point, exception)
                continue
            except PulseError as exception:
                raise ConfigError("Invalid sweep point %s: %s"
                                  % (point, exception))
            rows.append([alpha1, alpha2, mean, sem])
            print("alpha1=%g alpha2=%g: P2=%.4g" % (alpha1, alpha2, mean))

    writer.write_table(HEADER, rows)
    if rows:
        best = min(rows, key=lambda row: row[2])
        writer.add_result('minimum', {'alpha1': best[0], 'alpha2': best[1],
                                      'mean_p2': best[2],
                                      'sem_p2': best[3]})
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
