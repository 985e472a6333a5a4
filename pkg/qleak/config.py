"""
Experiment configuration files.

One JSON file describes one experiment. Sections ``system``, ``noise``,
``gate`` and ``sweep`` are merged onto defaults; keys not present in the
defaults are rejected. A manifest written by any subcommand is accepted
as configuration and reproduces its run.
"""
import json
import os

import numpy as np

from qleak.calibration import CalibrationResult, calibrate_amplitude
from qleak.cliffords import GateSet
from qleak.pulses import PulseError, PulseSpec, mhz_to_rad_per_ns
from qleak.qutrit import NoiseParams, SystemParams
from qleak.utils import list2str, merge_defaults

DEFAULTS = {
    'experiment': None,
    'seed': 0,
    'system': {
        'anharmonicity': -212.0,
        'relative_12_coupling': float(np.sqrt(2.0))
    },
    'noise': dict(NoiseParams().to_dict(), preset=None),
    'gate': {
        'duration': 10.0,
        'dt': 0.02,
        'alpha1': 0.0,
        'alpha2': 0.0,
        'detuning': 0.0,
        'pi_amplitude': None,
        'half_pi_amplitude': None,
        'calibration': None
    },
    'sweep': {}
}

NOISE_PRESETS = {
    'noiseless': NoiseParams().to_dict(),
    'reference': NoiseParams.reference_device().to_dict()
}


class ConfigError(ValueError):
    """Exception raised for invalid configuration."""


def _read_json(path):
    """Load a JSON object from a file."""
    try:
        with open(path, 'rt') as in_file:
            data = json.load(in_file)
    except (IOError, OSError) as exception:
        raise ConfigError("Cannot read %s: %s" % (path, exception))
    except ValueError as exception:
        raise ConfigError("Invalid JSON in %s: %s" % (path, exception))
    if not isinstance(data, dict):
        raise ConfigError("Configuration %s is not a JSON object" % path)
    return data


def _is_manifest(data):
    """Manifests embed the resolved configuration."""
    return 'config' in data and 'config_digest' in data


# pylint: disable=too-many-branches
def load_config(path, experiment, sweep_defaults=None, seed=None):
    """
    Read and resolve the configuration of an experiment.

    :path: JSON configuration or manifest file
    :experiment: Subcommand name
    :sweep_defaults: Defaults of the ``sweep`` section
    :seed: Seed overriding the file
    :returns: Fully resolved configuration dict
    :raises: ConfigError
    """
    data = _read_json(path)
    if _is_manifest(data):
        data = data['config']
        if not isinstance(data, dict):
            raise ConfigError("Manifest %s holds no configuration" % path)

    given = data.get('experiment')
    if given is not None and given != experiment:
        raise ConfigError("Configuration is for experiment %r, not %r"
                          % (given, experiment))

    for section in ('system', 'noise', 'gate', 'sweep'):
        if not isinstance(data.get(section, {}), dict):
            raise ConfigError("Section %s must be an object" % section)

    defaults = dict(DEFAULTS)
    defaults['sweep'] = dict(sweep_defaults or {})
    defaults['noise'] = dict(DEFAULTS['noise'])
    preset = data.get('noise', {}).get('preset')
    if preset is not None:
        if preset not in NOISE_PRESETS:
            raise ConfigError("Unknown noise preset %r, use %s" % (
                preset, list2str(sorted(NOISE_PRESETS))))
        defaults['noise'].update(NOISE_PRESETS[preset])

    try:
        config = merge_defaults(defaults, data)
    except KeyError as exception:
        raise ConfigError("Unknown configuration key %s" % exception.args[0])

    config['experiment'] = experiment
    if seed is not None:
        config['seed'] = seed
    if not isinstance(config['seed'], int) or isinstance(
            config['seed'], bool) or config['seed'] < 0:
        raise ConfigError("Seed must be a non-negative integer, got %r"
                          % (config['seed'],))

    calibration = config['gate']['calibration']
    if calibration is not None and not os.path.isabs(calibration):
        config['gate']['calibration'] = os.path.normpath(os.path.join(
            os.path.dirname(os.path.abspath(path)), calibration))
    return config


def build_system(config):
    """SystemParams from the ``system`` section, anharmonicity in MHz."""
    section = config['system']
    try:
        return SystemParams(mhz_to_rad_per_ns(section['anharmonicity']),
                            section['relative_12_coupling'])
    except (TypeError, ValueError) as exception:
        raise ConfigError("Invalid system section: %s" % exception)


def build_noise(config):
    """NoiseParams from the ``noise`` section."""
    section = dict(config['noise'])
    section.pop('preset', None)
    try:
        return NoiseParams.from_config(section)
    except (TypeError, ValueError) as exception:
        raise ConfigError("Invalid noise section: %s" % exception)


def build_template(config):
    """PulseSpec carrying duration, DRAG weights and detuning."""
    gate = config['gate']
    try:
        return PulseSpec(
            duration=gate['duration'], alpha1=gate['alpha1'],
            alpha2=gate['alpha2'], detuning=gate['detuning'],
            anharmonicity=mhz_to_rad_per_ns(
                config['system']['anharmonicity']))
    except (TypeError, PulseError) as exception:
        raise ConfigError("Invalid gate section: %s" % exception)


def build_gate_set(config, noise, system, template=None):
    """
    GateSet of the ``gate`` section. A calibration file overrides
    amplitudes, DRAG weights and detuning; missing amplitudes are
    calibrated.

    :config: Resolved configuration
    :noise: NoiseParams used for amplitude calibration
    :system: SystemParams
    :template: PulseSpec replacing the one of the gate section
    :returns: GateSet
    """
    gate = config['gate']
    if template is None:
        template = build_template(config)
    dt = gate['dt']
    if gate['calibration'] is not None:
        try:
            result = CalibrationResult.from_dict(
                _read_json(gate['calibration']))
        except (KeyError, TypeError) as exception:
            raise ConfigError("Invalid calibration file %s: missing %s"
                              % (gate['calibration'], exception))
        return result.gate_set(template, dt)

    pi_amplitude = gate['pi_amplitude']
    half_pi_amplitude = gate['half_pi_amplitude']
    if pi_amplitude is None or half_pi_amplitude is None:
        pi_amplitude, half_pi_amplitude = calibrate_amplitude(
            template, noise, system, dt)
    try:
        return GateSet(template, pi_amplitude, half_pi_amplitude, dt)
    except PulseError as exception:
        raise ConfigError("Invalid gate section: %s" % exception)


def sweep_values(value, key, integer=False):
    """
    Sweep axis from a list or from {"start", "stop", "num"} with optional
    "log": true for geometric spacing.

    :value: Configuration value
    :key: Key name for error messages
    :integer: Round to unique sorted integers
    :returns: numpy array
    :raises: ConfigError
    """
    if isinstance(value, dict):
        unknown = set(value) - {'start', 'stop', 'num', 'log'}
        if unknown or not {'start', 'stop', 'num'} <= set(value):
            raise ConfigError(
                "Sweep %s needs keys start, stop and num" % key)
        spacing = np.geomspace if value.get('log') else np.linspace
        try:
            values = spacing(value['start'], value['stop'], int(value['num']))
        except (TypeError, ValueError) as exception:
            raise ConfigError("Invalid sweep %s: %s" % (key, exception))
    elif isinstance(value, (list, tuple)):
        try:
            values = np.array(value, dtype=float)
        except (TypeError, ValueError):
            raise ConfigError("Sweep %s must be numeric" % key)
    else:
        raise ConfigError("Sweep %s must be a list or a range object" % key)
    if values.ndim != 1 or len(values) == 0:
        raise ConfigError("Sweep %s is empty" % key)
    if integer:
        values = np.unique(np.rint(values).astype(int))
    return values
