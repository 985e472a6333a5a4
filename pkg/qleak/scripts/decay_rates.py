"""Command line tool for seepage rates versus DRAG weight."""
import sys

import click

from qleak.analysis import decay_baseline
from qleak.artifacts import ArtifactWriter
from qleak.config import (ConfigError, build_noise, build_system,
                          build_template, load_config, sweep_values)
from qleak.pulses import PulseError
from qleak.scripts._common import (BUDGET_DEFAULTS, POINT_ERRORS, benchmark,
                                   calibrate_point, clifford_time,
                                   run_command)

SWEEP_DEFAULTS = {
    'alphas': [0.0, 0.25, 0.5, 0.75, 1.0],
    'calibration': 'amplitude',
    'reps': 1,
    'lengths': [0, 10, 25, 50, 100, 200, 400],
    'num_sequences': 75,
    'budget': BUDGET_DEFAULTS,
    'max_iters': 30
}

HEADER = ['alpha', 'gamma_down', 'gamma_down_error', 'baseline',
          'converged']


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
    """Fit the seepage rate gamma_down for each DRAG weight and compare it
    with the decay of |2> during one Clifford.
    """
    return run_command(decay_rates, config_path, seed, out, workers)


def decay_rates(config_path, seed=None, out='.', workers=1):
    """
    RB per first derivative DRAG weight reporting gamma_down against the
    baseline t_Clifford / T1(|2>).

    :returns: ArtifactWriter of the run
    """
    config = load_config(config_path, 'decay-rates', SWEEP_DEFAULTS, seed)
    alphas = sweep_values(config['sweep']['alphas'], 'alphas')
    noise = build_noise(config)
    system = build_system(config)
    template = build_template(config)
    writer = ArtifactWriter(out, 'decay-rates')

    duration = clifford_time(template.duration)
    baseline = decay_baseline(duration, noise.t1_21)
    rows = []
    for alpha in alphas:
        try:
            gate_set, _ = calibrate_point(template.replace(alpha1=alpha),
                                          config, noise, system)
            _, _, rates, leakage = benchmark(config, gate_set, noise, system,
                                             workers)
        except POINT_ERRORS as exception:
            writer.add_failure({'alpha': float(alpha)}, exception)
            continue
        except PulseError as exception:
            raise ConfigError("Invalid sweep point alpha=%s: %s"
                              % (alpha, exception))
        rows.append([alpha, rates.gamma_down,
                     leakage.uncertainties['gamma_down'], baseline,
                     leakage.converged])
        print("alpha=%g: gamma_down=%.4g baseline=%.4g"
              % (alpha, rates.gamma_down, baseline))

    writer.write_table(HEADER, rows)
    writer.add_result('baseline', baseline)
    writer.add_result('clifford_time_ns', duration)
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
