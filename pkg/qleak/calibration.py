"""
Gate tune-up: amplitude calibration, detuning calibration with the
pseudo-identity sequence and Nelder-Mead refinement against simulated
randomized benchmarking.
"""
import warnings

import numpy as np
from scipy.optimize import minimize_scalar

from qleak.analysis import fit_sequence_fidelity
from qleak.benchmarking import RBConfig, pseudo_identity_sweep, rb_sweep
from qleak.cliffords import GateSet
from qleak.pulses import DEFAULT_DT, PulseError, shaped_envelope
from qleak.qutrit import (NoiseParams, SystemParams, apply_superoperator,
                          ground_state, populations, propagator)

#: Nelder-Mead reflection, expansion, contraction and shrink coefficients
REFLECT = 1.0
EXPAND = 2.0
CONTRACT = 0.5
SHRINK = 0.5

AMPLITUDE_TOL = 1e-5
DETUNING_SPAN = 100.0
DETUNING_POINTS = 81
DETUNING_TOL = 1e-3
FLAT_RESPONSE_TOL = 1e-9

#: Objective value for parameters outside the physical region
PENALTY = 1.0


class CalibrationError(RuntimeError):
    """Exception raised when a calibration step cannot find an optimum."""


class OptimizationError(RuntimeError):
    """Exception raised when the objective cannot be evaluated."""

    def __init__(self, message, point=None):
        super(OptimizationError, self).__init__(message)
        self.point = point


class FlatResponseWarning(UserWarning):
    """Pseudo-identity response does not depend on detuning."""


class RBBudget(object):
    """Sequence lengths, sequence count and seed of the RB objective."""

    def __init__(self, lengths=(1, 30, 100, 300), num_sequences=20, seed=0):
        self.lengths = list(lengths)
        self.num_sequences = int(num_sequences)
        self.seed = int(seed)

    def to_dict(self):
        """Budget as a dict."""
        return {'lengths': self.lengths,
                'num_sequences': self.num_sequences, 'seed': self.seed}


class CalibrationResult(object):
    """Calibrated gate parameters and the optimizer history."""

    # pylint: disable=too-many-arguments
    def __init__(self, pi_amplitude, half_pi_amplitude, detuning, alpha1,
                 alpha2=0.0, objective_history=None, flags=None,
                 r_clifford=None):
        if not pi_amplitude > 0 or not half_pi_amplitude > 0:
            raise CalibrationError("Calibrated amplitudes must be positive")
        self.pi_amplitude = float(pi_amplitude)
        self.half_pi_amplitude = float(half_pi_amplitude)
        self.detuning = float(detuning)
        self.alpha1 = float(alpha1)
        self.alpha2 = float(alpha2)
        self.objective_history = list(objective_history or [])
        self.flags = dict(flags or {})
        self.r_clifford = r_clifford

    def gate_set(self, template, dt=DEFAULT_DT):
        """GateSet with these parameters on top of a template."""
        return GateSet(
            template.replace(alpha1=self.alpha1, alpha2=self.alpha2,
                             detuning=self.detuning),
            self.pi_amplitude, self.half_pi_amplitude, dt)

    def to_dict(self):
        """JSON friendly representation."""
        return {
            'pi_amplitude': self.pi_amplitude,
            'half_pi_amplitude': self.half_pi_amplitude,
            'detuning': self.detuning,
            'alpha1': self.alpha1,
            'alpha2': self.alpha2,
            'r_clifford': self.r_clifford,
            'flags': self.flags,
            'objective_history': [
                {'params': list(params), 'value': value}
                for params, value in self.objective_history]
        }

    @classmethod
    def from_dict(cls, data):
        """Inverse of to_dict."""
        history = [(tuple(item['params']), item['value'])
                   for item in data.get('objective_history', [])]
        return cls(data['pi_amplitude'], data['half_pi_amplitude'],
                   data['detuning'], data['alpha1'], data.get('alpha2', 0.0),
                   history, data.get('flags'), data.get('r_clifford'))


def _excited_population(specs, noise, system, dt):
    """P1 after the given pulses from |0>."""
    rho = ground_state()
    for spec in specs:
        superop = propagator(shaped_envelope(spec, dt), noise, system)
        rho = apply_superoperator(superop, rho)
    return populations(rho)[1]


def _maximize_excitation(specs_for, nominal, noise, system, dt):
    """Bounded 1-D search of the amplitude maximizing P1."""
    lower, upper = 0.5 * nominal, 1.5 * nominal
    result = minimize_scalar(
        lambda amplitude: -_excited_population(
            specs_for(amplitude), noise, system, dt),
        bounds=(lower, upper), method='bounded',
        options={'xatol': AMPLITUDE_TOL * nominal})
    margin = 10 * AMPLITUDE_TOL * nominal
    if not result.success or result.x - lower < margin or \
            upper - result.x < margin:
        raise CalibrationError(
            "No amplitude maximum inside [%g, %g]" % (lower, upper))
    return float(result.x)


def calibrate_amplitude(template, noise=None, system=None, dt=DEFAULT_DT,
                        duration=None):
    """
    Find pi and pi/2 amplitudes maximizing P1 after one pi pulse and after
    two pi/2 pulses.

    :template: PulseSpec with duration, DRAG weights and detuning
    :noise: NoiseParams
    :system: SystemParams
    :dt: Sample spacing in ns
    :duration: Optional pulse duration replacing the template's
    :returns: (pi amplitude, pi/2 amplitude) in rad/ns
    :raises: CalibrationError
    """
    noise = noise if noise is not None else NoiseParams()
    system = system if system is not None else SystemParams()
    try:
        if duration is not None:
            template = template.replace(duration=duration)
        template = template.replace(rotation_axis_phase=0.0,
                                    rotation_sign=1)
        nominal = 2 * np.pi / template.duration
        pi_amplitude = _maximize_excitation(
            lambda amplitude: [template.replace(peak_amplitude=amplitude)],
            nominal, noise, system, dt)
        half_pi_amplitude = _maximize_excitation(
            lambda amplitude: [template.replace(
                peak_amplitude=amplitude)] * 2,
            nominal / 2, noise, system, dt)
    except PulseError as exception:
        raise CalibrationError("Amplitude calibration failed: %s" % exception)
    print("Calibrated amplitudes pi=%.9g pi/2=%.9g rad/ns"
          % (pi_amplitude, half_pi_amplitude))
    return pi_amplitude, half_pi_amplitude


def calibrate_detuning(alpha1, gate_set, reps=1, noise=None, system=None,
                       span=DETUNING_SPAN, points=DETUNING_POINTS):
    """
    Detuning maximizing P0 after the pseudo-identity sequence. A single
    pair on a coarse grid locates the peak, then a bounded search with
    ``reps`` pairs refines it inside one grid step.

    :alpha1: First derivative DRAG weight
    :gate_set: GateSet with calibrated amplitudes
    :reps: Number of pulse pairs in the refinement
    :span: Half width of the coarse grid in MHz
    :points: Number of coarse grid points
    :returns: (detuning in MHz, flat) where flat marks a response without
              any detuning dependence, detuning then being zero
    """
    if reps < 1:
        raise ValueError("At least one repetition is needed")
    gate_set = gate_set.replace(alpha1=alpha1)
    grid = np.linspace(-span, span, points)
    coarse = pseudo_identity_sweep(grid, 1, gate_set, noise, system)
    if np.ptp(coarse) < FLAT_RESPONSE_TOL:
        warnings.warn("Pseudo-identity response is flat",
                      FlatResponseWarning)
        return 0.0, True

    best = int(np.argmax(coarse))
    step = grid[1] - grid[0]
    center = grid[best]
    for repetitions, width in ((1, step), (reps, step / reps)):
        result = minimize_scalar(
            lambda detuning, count=repetitions: -pseudo_identity_sweep(
                [detuning], count, gate_set, noise, system)[0],
            bounds=(center - width, center + width), method='bounded',
            options={'xatol': DETUNING_TOL})
        center = float(result.x)
    return center, False


def nelder_mead(objective, x0, scale, max_iters=200, tol=1e-6):
    """
    Minimize ``objective`` with the Nelder-Mead simplex method.

    :objective: Function of a parameter vector
    :x0: Starting point
    :scale: Initial simplex step, scalar or per coordinate
    :max_iters: Iteration limit
    :tol: Stop when every vertex lies within tol of the best one
    :returns: NelderMeadResult
    :raises: OptimizationError on a NaN objective
    """
    x0 = np.asarray(x0, dtype=float)
    size = len(x0)
    steps = np.broadcast_to(np.asarray(scale, dtype=float), (size,))

    def evaluate(point):
        value = float(objective(point))
        if np.isnan(value):
            raise OptimizationError(
                "Objective is NaN at %s" % point, point.copy())
        return value

    vertices = [x0.copy()]
    for index in range(size):
        vertex = x0.copy()
        vertex[index] += steps[index]
        vertices.append(vertex)
    values = [evaluate(vertex) for vertex in vertices]
    history = []

    iterations = 0
    converged = False
    while iterations < max_iters:
        order = sorted(range(size + 1), key=lambda item: values[item])
        vertices = [vertices[item] for item in order]
        values = [values[item] for item in order]
        history.append((tuple(vertices[0]), values[0]))
        if max(np.max(np.abs(vertex - vertices[0]))
               for vertex in vertices[1:]) < tol:
            converged = True
            break
        iterations += 1

        centroid = np.mean(vertices[:-1], axis=0)
        reflected = centroid + REFLECT * (centroid - vertices[-1])
        reflected_value = evaluate(reflected)
        if values[0] <= reflected_value < values[-2]:
            vertices[-1], values[-1] = reflected, reflected_value
            continue
        if reflected_value < values[0]:
            expanded = centroid + EXPAND * (reflected - centroid)
            expanded_value = evaluate(expanded)
            if expanded_value < reflected_value:
                vertices[-1], values[-1] = expanded, expanded_value
            else:
                vertices[-1], values[-1] = reflected, reflected_value
            continue
        if reflected_value < values[-1]:
            contracted = centroid + CONTRACT * (reflected - centroid)
            contracted_value = evaluate(contracted)
            if contracted_value <= reflected_value:
                vertices[-1], values[-1] = contracted, contracted_value
                continue
        else:
            contracted = centroid + CONTRACT * (vertices[-1] - centroid)
            contracted_value = evaluate(contracted)
            if contracted_value < values[-1]:
                vertices[-1], values[-1] = contracted, contracted_value
                continue
        for index in range(1, size + 1):
            vertices[index] = vertices[0] + SHRINK * (
                vertices[index] - vertices[0])
            values[index] = evaluate(vertices[index])

    best = int(np.argmin(values))
    return NelderMeadResult(vertices[best], values[best], iterations,
                            history, converged)


class NelderMeadResult(object):
    """Best vertex, its value and the best value per iteration."""

    # pylint: disable=too-many-arguments
    def __init__(self, x, value, iterations, history, converged):
        self.x = np.asarray(x)
        self.value = value
        self.iterations = iterations
        self.history = history
        self.converged = converged


def _amplitude_and_detuning(template, noise, system, dt, tune_detuning,
                            reps):
    """Amplitudes, then detuning and amplitudes again."""
    flags = {}
    pi_amplitude, half_pi_amplitude = calibrate_amplitude(
        template, noise, system, dt)
    if tune_detuning:
        detuning, flat = calibrate_detuning(
            template.alpha1,
            GateSet(template, pi_amplitude, half_pi_amplitude, dt),
            reps, noise, system)
        flags['flat_detuning_response'] = flat
        template = template.replace(detuning=detuning)
        pi_amplitude, half_pi_amplitude = calibrate_amplitude(
            template, noise, system, dt)
    return template, pi_amplitude, half_pi_amplitude, flags


def rb_error(gate_set, budget, noise=None, system=None):
    """Fitted error per Clifford of a fixed seed RB run."""
    config = RBConfig(budget.lengths, gate_set, noise, system,
                      budget.num_sequences, budget.seed)
    dataset = rb_sweep(config)
    fidelity = fit_sequence_fidelity(dataset.lengths, dataset.mean[:, 0])
    if fidelity.fit.converged:
        return fidelity.r_clifford
    # Single point estimate from the longest sequence
    length = dataset.lengths[-1]
    visibility = np.clip(2 * dataset.mean[-1, 0] - 1, 1e-12, 1.0)
    return (1.0 - visibility ** (1.0 / max(length, 1))) / 2.0


# pylint: disable=too-many-arguments, too-many-locals
def tune_gate(alpha1, template, budget=None, noise=None, system=None,
              alpha2=0.0, tune_detuning=True, reps=1, max_iters=30,
              dt=DEFAULT_DT):
    """
    Amplitude calibration, detuning calibration, amplitude recalibration
    and a Nelder-Mead search over (pi amplitude, pi/2 amplitude, detuning)
    minimizing the fitted RB error per Clifford. DRAG weights stay fixed.

    :alpha1: First derivative DRAG weight
    :template: PulseSpec with duration and anharmonicity
    :budget: RBBudget of the objective
    :tune_detuning: False keeps the template detuning fixed
    :reps: Pseudo-identity repetitions
    :max_iters: Nelder-Mead iteration limit
    :returns: CalibrationResult
    """
    budget = budget if budget is not None else RBBudget()
    noise = noise if noise is not None else NoiseParams()
    system = system if system is not None else SystemParams()
    template = template.replace(alpha1=alpha1, alpha2=alpha2)
    template, pi_amplitude, half_pi_amplitude, flags = \
        _amplitude_and_detuning(template, noise, system, dt, tune_detuning,
                                reps)
    detuning = template.detuning
    print("Detuning %.6g MHz before refinement" % detuning)

    def objective(point):
        if point[0] <= 0 or point[1] <= 0:
            return PENALTY
        offset = point[2] if len(point) > 2 else detuning
        gate_set = GateSet(template.replace(detuning=offset), point[0],
                           point[1], dt)
        return rb_error(gate_set, budget, noise, system)

    start = [pi_amplitude, half_pi_amplitude]
    scale = [0.01 * pi_amplitude, 0.01 * half_pi_amplitude]
    fixed = (detuning,)
    if tune_detuning:
        start.append(detuning)
        scale.append(1.0)
        fixed = ()
    result = nelder_mead(objective, start, scale, max_iters)
    best = tuple(result.x) + fixed
    history = [(tuple(params) + fixed, value)
               for params, value in result.history]
    flags['nelder_mead_converged'] = result.converged
    print("Tuned alpha1=%g: r_clifford=%.4g" % (alpha1, result.value))

    return CalibrationResult(best[0], best[1], best[2], alpha1, alpha2,
                             history, flags, result.value)


CALIBRATION_MODES = ('nominal', 'amplitude', 'detuning', 'full')


# pylint: disable=too-many-arguments
def calibrate_gate_set(template, noise=None, system=None, dt=DEFAULT_DT,
                       mode='amplitude', reps=1, budget=None, max_iters=30):
    """
    Calibrate the gates of a template with one of CALIBRATION_MODES:
    'nominal' takes the area theorem amplitudes, 'amplitude' calibrates
    them, 'detuning' adds the pseudo-identity detuning and 'full' runs
    tune_gate.

    :template: PulseSpec with duration, DRAG weights and detuning
    :returns: CalibrationResult
    """
    if mode not in CALIBRATION_MODES:
        raise ValueError("Unknown calibration mode %r" % mode)
    if mode == 'full':
        return tune_gate(template.alpha1, template, budget, noise, system,
                         template.alpha2, True, reps, max_iters, dt)
    if mode == 'nominal':
        return CalibrationResult(
            2 * np.pi / template.duration, np.pi / template.duration,
            template.detuning, template.alpha1, template.alpha2)

    noise = noise if noise is not None else NoiseParams()
    system = system if system is not None else SystemParams()
    template, pi_amplitude, half_pi_amplitude, flags = \
        _amplitude_and_detuning(template, noise, system, dt,
                                mode == 'detuning', reps)
    return CalibrationResult(pi_amplitude, half_pi_amplitude,
                             template.detuning, template.alpha1,
                             template.alpha2, flags=flags)
