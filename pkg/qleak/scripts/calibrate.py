"""Command line tool for tuning up gate parameters."""
import json
import sys

import click

from qleak.artifacts import ArtifactWriter
from qleak.config import (ConfigError, build_noise, build_system,
                          build_template, load_config)
from qleak.pulses import PulseError
from qleak.scripts._common import (BUDGET_DEFAULTS, POINT_ERRORS,
                                   calibrate_point, run_command)
from qleak.utils import json_default

SWEEP_DEFAULTS = {
    'calibration': 'full',
    'reps': 1,
    'budget': BUDGET_DEFAULTS,
    'max_iters': 30
}

HEADER = ['iteration', 'pi_amplitude', 'half_pi_amplitude', 'detuning_mhz',
          'r_clifford']
ENVELOPE_HEADER = ['t_ns', 're', 'im']


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
    help="Directory for the calibration files. Defaults to the current "
         "directory.")
def main(config_path, seed, out):
    """Calibrate amplitudes and detuning of the configured gate. The
    written calibrate.json can be given as gate.calibration to the other
    tools.
    """
    return run_command(calibrate, config_path, seed, out)


def calibrate(config_path, seed=None, out='.'):
    """
    Calibrate the gate section with the sweep ``calibration`` mode and
    write the result JSON, the optimizer history and the X envelope.

    :returns: ArtifactWriter of the run
    """
    config = load_config(config_path, 'calibrate', SWEEP_DEFAULTS, seed)
    noise = build_noise(config)
    system = build_system(config)
    template = build_template(config)
    writer = ArtifactWriter(out, 'calibrate')

    try:
        gate_set, result = calibrate_point(template, config, noise, system)
    except POINT_ERRORS as exception:
        writer.add_failure({'calibration': config['sweep']['calibration']},
                           exception)
        writer.write_manifest(config, config['seed'])
        return writer
    except PulseError as exception:
        raise ConfigError("Invalid gate section: %s" % exception)

    filename = writer.path(suffix='json')
    with open(filename, 'wt') as out_file:
        json.dump(result.to_dict(), out_file, indent=2, sort_keys=True,
                  default=json_default)
        out_file.write('\n')
    writer.add_file(filename)
    print("Wrote calibration to file %s" % filename)

    writer.write_table(HEADER, [
        [iteration] + list(params) + [value]
        for iteration, (params, value) in enumerate(
            result.objective_history)])
    envelope = gate_set.envelope('X')
    writer.write_table(ENVELOPE_HEADER, zip(
        envelope.times, envelope.samples.real, envelope.samples.imag),
                       table='envelope')
    writer.add_result('calibration', result.to_dict())
    writer.write_manifest(config, config['seed'])
    return writer


if __name__ == '__main__':
    RETVAL = main()  # pylint: disable=no-value-for-parameter
    sys.exit(RETVAL)
