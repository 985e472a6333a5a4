"""
Drive envelopes for single qubit gates on a transmon: cosine base shape,
first and second derivative DRAG corrections and constant detuning.

Angular frequencies are in rad/ns, user facing frequencies in MHz and
times in ns.
"""
import numpy as np
from scipy.integrate import simpson

TWO_PI = 2.0 * np.pi

#: Default sample spacing in ns
DEFAULT_DT = 0.02

#: Anharmonicity of the reference device, rad/ns
DEFAULT_ANHARMONICITY = TWO_PI * -0.212

MIN_STEPS = 8


def mhz_to_rad_per_ns(frequency):
    """Convert a frequency in MHz to an angular frequency in rad/ns."""
    return TWO_PI * frequency * 1e-3


class PulseError(ValueError):
    """Exception raised for invalid pulse parameters."""


class PulseSpec(object):
    """
    Parametric description of a single cosine shaped gate pulse.
    """

    # pylint: disable=too-many-arguments
    def __init__(self, duration=10.0, peak_amplitude=0.0,
                 rotation_axis_phase=0.0, rotation_sign=1, alpha1=0.0,
                 alpha2=0.0, detuning=0.0,
                 anharmonicity=DEFAULT_ANHARMONICITY):
        """
        :duration: Pulse length in ns
        :peak_amplitude: Peak Rabi rate in rad/ns
        :rotation_axis_phase: Phase of the rotation axis, 0 for X and
                              pi/2 for Y
        :rotation_sign: +1 or -1
        :alpha1: First derivative DRAG weight
        :alpha2: Second derivative DRAG weight
        :detuning: Drive frequency offset from the qubit frequency in MHz
        :anharmonicity: Bare anharmonicity in rad/ns
        """
        self.duration = float(duration)
        self.peak_amplitude = float(peak_amplitude)
        self.rotation_axis_phase = float(rotation_axis_phase)
        self.rotation_sign = int(rotation_sign)
        self.alpha1 = float(alpha1)
        self.alpha2 = float(alpha2)
        self.detuning = float(detuning)
        self.anharmonicity = float(anharmonicity)
        self.validate()

    def validate(self):
        """Check the parameter ranges.

        :raises: PulseError on invalid parameters
        """
        if not self.duration > 0:
            raise PulseError(
                "Pulse duration must be positive, got %s" % self.duration)
        if self.peak_amplitude < 0:
            raise PulseError(
                "Peak amplitude must be non-negative, got %s"
                % self.peak_amplitude)
        if self.rotation_sign not in (1, -1):
            raise PulseError(
                "Rotation sign must be +1 or -1, got %s"
                % self.rotation_sign)
        if (self.alpha1 or self.alpha2) and self.effective_anharmonicity == 0:
            raise PulseError(
                "DRAG weights given but the effective anharmonicity is zero")

    @property
    def effective_anharmonicity(self):
        """Anharmonicity seen from a drive detuned by ``detuning``."""
        return self.anharmonicity - mhz_to_rad_per_ns(self.detuning)

    @property
    def rotation_angle(self):
        """Nominal rotation angle A*T/2 of the undistorted envelope."""
        return self.peak_amplitude * self.duration / 2.0

    def replace(self, **kwargs):
        """Return a copy with the given fields changed."""
        params = self.to_dict()
        params.update(kwargs)
        return PulseSpec(**params)

    def to_dict(self):
        """Return the fields as a dict."""
        return dict(
            duration=self.duration,
            peak_amplitude=self.peak_amplitude,
            rotation_axis_phase=self.rotation_axis_phase,
            rotation_sign=self.rotation_sign,
            alpha1=self.alpha1,
            alpha2=self.alpha2,
            detuning=self.detuning,
            anharmonicity=self.anharmonicity
        )

    def __repr__(self):
        return "PulseSpec(%s)" % ", ".join(
            "%s=%r" % item for item in sorted(self.to_dict().items()))


class ComplexEnvelope(object):
    """
    Complex drive waveform sampled on a uniform grid. Sample k sits at
    t = k*dt from the pulse start.
    """

    def __init__(self, dt, samples, derivatives=None):
        """
        :dt: Sample spacing in ns
        :samples: Complex samples in rad/ns
        :derivatives: Optional (first, second) time derivatives sampled on
                      the same grid
        """
        if not dt > 0:
            raise PulseError("Sample spacing must be positive, got %s" % dt)
        self.dt = float(dt)
        self.samples = np.asarray(samples, dtype=complex)
        if self.samples.ndim != 1 or len(self.samples) < 2:
            raise PulseError("Envelope needs at least two samples")
        if derivatives is not None:
            derivatives = tuple(
                np.asarray(derivative, dtype=complex)
                for derivative in derivatives)
        self.derivatives = derivatives

    def __len__(self):
        return len(self.samples)

    @property
    def duration(self):
        """Total duration in ns."""
        return self.dt * (len(self.samples) - 1)

    @property
    def times(self):
        """Sample times in ns."""
        return self.dt * np.arange(len(self.samples))

    def scaled(self, factor):
        """Return the envelope multiplied by a complex factor."""
        derivatives = None
        if self.derivatives is not None:
            derivatives = tuple(factor * item for item in self.derivatives)
        return ComplexEnvelope(self.dt, factor * self.samples, derivatives)


def _number_of_steps(duration, dt):
    """Number of dt steps in duration, which dt must divide."""
    if not duration > 0:
        raise PulseError("Duration must be positive, got %s" % duration)
    if not dt > 0:
        raise PulseError("Sample spacing must be positive, got %s" % dt)
    steps = int(round(duration / dt))
    if abs(steps * dt - duration) > 1e-9 * duration:
        raise PulseError(
            "Sample spacing %s does not divide duration %s" % (dt, duration))
    if steps < MIN_STEPS:
        raise PulseError(
            "Duration %s holds only %d steps of %s, at least %d needed"
            % (duration, steps, dt, MIN_STEPS))
    return steps


def cosine_envelope(spec, dt=DEFAULT_DT):
    """
    Sample A*(1 - cos(2*pi*t/T))/2 * exp(i*phase) * sign.

    The analytic first and second derivatives are attached so that DRAG
    can use them instead of finite differences.

    :spec: PulseSpec
    :dt: Sample spacing in ns
    :returns: ComplexEnvelope
    """
    steps = _number_of_steps(spec.duration, dt)
    times = dt * np.arange(steps + 1)
    omega = TWO_PI / spec.duration
    factor = spec.peak_amplitude * spec.rotation_sign * np.exp(
        1j * spec.rotation_axis_phase)

    samples = factor * (1.0 - np.cos(omega * times)) / 2.0
    first = factor * omega * np.sin(omega * times) / 2.0
    second = factor * omega ** 2 * np.cos(omega * times) / 2.0
    samples[0] = samples[-1] = 0.0

    return ComplexEnvelope(dt, samples, derivatives=(first, second))


def _derivatives(env):
    """Analytic derivatives if available, else central differences."""
    if env.derivatives is not None:
        return env.derivatives
    first = np.gradient(env.samples, env.dt, edge_order=2)
    second = np.gradient(first, env.dt, edge_order=2)
    return first, second


def apply_drag(env, alpha1, alpha2, delta_eff):
    """
    Add derivative corrections:
    env - i*(alpha1/delta_eff)*env' + (alpha2/delta_eff**2)*env''.

    :env: Base envelope, not detuned
    :alpha1: First derivative weight
    :alpha2: Second derivative weight
    :delta_eff: Effective anharmonicity in rad/ns
    :returns: ComplexEnvelope
    :raises: PulseError if weights are given with zero delta_eff
    """
    if not alpha1 and not alpha2:
        return ComplexEnvelope(env.dt, env.samples.copy(), env.derivatives)
    if delta_eff == 0:
        raise PulseError(
            "DRAG needs a nonzero effective anharmonicity")

    first, second = _derivatives(env)
    samples = (env.samples - 1j * (alpha1 / delta_eff) * first
               + (alpha2 / delta_eff ** 2) * second)
    return ComplexEnvelope(env.dt, samples)


def apply_detuning(env, detuning):
    """
    Detune the drive by ``detuning`` MHz from the qubit frequency. In the
    frame of the qubit this is the phase ramp exp(-2*pi*i*detuning*t),
    with t counted from the start of the pulse.

    :env: ComplexEnvelope
    :detuning: Drive frequency offset in MHz
    :returns: ComplexEnvelope
    """
    if not detuning:
        return ComplexEnvelope(env.dt, env.samples.copy(), env.derivatives)
    ramp = np.exp(-1j * mhz_to_rad_per_ns(detuning) * env.times)
    return ComplexEnvelope(env.dt, env.samples * ramp)


def spectral_weight(env, omega):
    """
    Fourier component of the envelope, integral of env(t)*exp(i*omega*t).

    :env: ComplexEnvelope
    :omega: Angular frequency in rad/ns
    :returns: Complex weight
    """
    integrand = env.samples * np.exp(1j * omega * env.times)
    return complex(simpson(integrand, dx=env.dt))


def shaped_envelope(spec, dt=DEFAULT_DT):
    """Full gate pipeline: cosine shape, DRAG against the effective
    anharmonicity, then the detuning ramp.
    """
    env = cosine_envelope(spec, dt)
    env = apply_drag(env, spec.alpha1, spec.alpha2,
                     spec.effective_anharmonicity)
    return apply_detuning(env, spec.detuning)


def write_envelope_csv(env, path):
    """Write the envelope as columns t_ns, re, im."""
    table = np.column_stack((env.times, env.samples.real, env.samples.imag))
    np.savetxt(path, table, delimiter=',', header='t_ns,re,im',
               comments='', fmt='%.17g')
    print("Wrote envelope to file %s" % path)
