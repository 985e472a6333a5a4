"""Command line tool for leakage and error per Clifford versus DRAG weight."""
import sys

import click

from qleak.artifacts import ArtifactWriter
from qleak.config import (ConfigError, build_noise, build_system,
                          build_template, load_config, sweep_values)
from qleak.pulses import PulseError
from qleak.scripts._common import (BUDGET_DEFAULTS, POINT_ERRORS, benchmark,
                                   calibrate_point, check_choice,
                                   measured_rates, readout_coefficients,
                                   run_command)

SWEEP_DEFAULTS = {
    'alphas': [0.0, 0.25, 0.5, 0.75, 1.0],
    'order': 1,
    'calibration': 'amplitude',
    'reps': 1,
    'lengths': [0, 10, 25, 50, 100, 200, 400],
    'num_sequences': 75,
    'budget': BUDGET_DEFAULTS,
    'max_iters': 30,
    'readout': None
}

HEADER = ['alpha', 'detuning_mhz', 'pi_amplitude', 'half_pi_amplitude',
          'r_clifford', 'r_clifford_error', 'gamma_up', 'gamma_up_error',
          'gamma_down', 'gamma_down_error', 'saturation', 'converged']


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
    """Sweep the first or second derivative DRAG weight and fit leakage
    and error per Clifford at every value.
    """
    return run_command(leakage_vs_alpha, config_path, seed, out, workers)


# pylint: disable=too-many-locals
def leakage_vs_alpha(config_path, seed=None, out='.', workers=1):
    """
    Calibrate the gates for each DRAG weight and run RB.

    Sweep keys: ``alphas``, ``order`` (1 sweeps alpha1, 2 sweeps alpha2
    with alpha1 from the gate section), ``calibration`` (nominal,
    amplitude, detuning or full), ``lengths``, ``num_sequences`` and
    ``readout`` (null or reference) adding the rates a real readout
    would report.

    :returns: ArtifactWriter of the run
    """
    name = 'leakage-vs-alpha'
    config = load_config(config_path, name, SWEEP_DEFAULTS, seed)
    sweep = config['sweep']
    alphas = sweep_values(sweep['alphas'], 'alphas')
    weight = 'alpha%d' % check_choice(sweep['order'], (1, 2), 'order')
    noise = build_noise(config)
    system = build_system(config)
    template = build_template(config)
    coefficients = readout_coefficients(sweep)
    writer = ArtifactWriter(out, name)

    rows = []
    readout_rates = []
    for alpha in alphas:
        try:
            gate_set, calibration = calibrate_point(
                template.replace(**{weight: alpha}), config, noise, system)
            _, fidelity, rates, leakage = benchmark(
                config, gate_set, noise, system, workers)
        except POINT_ERRORS as exception:
            writer.add_failure({weight: float(alpha)}, exception)
            continue
        except PulseError as exception:
            raise ConfigError("Invalid sweep point %s=%s: %s"
                              % (weight, alpha, exception))
        converged = fidelity.fit.converged and leakage.converged
        rows.append([
            alpha, calibration.detuning, calibration.pi_amplitude,
            calibration.half_pi_amplitude, fidelity.r_clifford,
            fidelity.r_clifford_error, rates.gamma_up,
            leakage.uncertainties['gamma_up'], rates.gamma_down,
            leakage.uncertainties['gamma_down'], rates.saturation,
            converged])
        measured = measured_rates(coefficients, rates)
        if measured is not None:
            readout_rates.append(dict(measured, alpha=float(alpha)))
        print("%s=%g: r_clifford=%.4g gamma_up=%.4g"
              % (weight, alpha, fidelity.r_clifford, rates.gamma_up))

    writer.write_table(HEADER, rows)
    writer.add_result('swept', weight)
    writer.add_result('points', len(rows))
    if rows:
        best = min(rows, key=lambda row: row[4])
        writer.add_result('best_alpha', best[0])
        writer.add_result('best_r_clifford', best[4])
    if coefficients is not None:
        writer.add_result('readout_rates', readout_rates)
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
