"""
Open system dynamics of a driven three-level transmon.

States are 3x3 density matrices over |0>, |1>, |2> in the frame rotating
at the qubit frequency. Superoperators act on column-stacked density
matrices, vec(A X B) = (B^T kron A) vec(X).
"""
import numpy as np
import scipy.linalg

from qleak.pulses import DEFAULT_ANHARMONICITY

DIM = 3

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-9

_IDENTITY = np.eye(DIM, dtype=complex)
_SUPER_IDENTITY = np.eye(DIM * DIM, dtype=complex)


class SimulationError(ArithmeticError):
    """Exception raised when the state leaves the physical region."""

    def __init__(self, message, step=None):
        super(SimulationError, self).__init__(message)
        self.step = step


def _ket_bra(row, column):
    """Matrix unit |row><column|."""
    matrix = np.zeros((DIM, DIM), dtype=complex)
    matrix[row, column] = 1.0
    return matrix


class SystemParams(object):
    """Static transmon parameters."""

    def __init__(self, anharmonicity=DEFAULT_ANHARMONICITY,
                 relative_12_coupling=np.sqrt(2.0)):
        """
        :anharmonicity: omega21 - omega10 in rad/ns
        :relative_12_coupling: Drive matrix element ratio of 1-2 to 0-1
        """
        if anharmonicity == 0:
            raise ValueError("Anharmonicity must be nonzero")
        self.anharmonicity = float(anharmonicity)
        self.relative_12_coupling = float(relative_12_coupling)

    def to_dict(self):
        """Return the fields as a dict."""
        return dict(anharmonicity=self.anharmonicity,
                    relative_12_coupling=self.relative_12_coupling)


def _rate(lifetime):
    """Rate in 1/ns from a lifetime in us, None meaning off."""
    if lifetime is None or np.isinf(lifetime):
        return 0.0
    return 1.0 / (lifetime * 1e3)


class NoiseParams(object):
    """
    Incoherent error channels. Lifetimes are in us and heating rates in
    1/ms. A lifetime of None switches the channel off.
    """

    # pylint: disable=too-many-arguments
    def __init__(self, t1_10=None, t1_21=None, heat_12=0.0, heat_01=0.0,
                 tphi1=None, tphi2=None, deph2_scale=2.0):
        self.t1_10 = t1_10
        self.t1_21 = t1_21
        self.heat_12 = float(heat_12)
        self.heat_01 = float(heat_01)
        self.tphi1 = tphi1
        self.tphi2 = tphi2
        self.deph2_scale = float(deph2_scale)
        for name in ('t1_10', 't1_21', 'tphi1', 'tphi2'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(
                    "Lifetime %s must be positive or off, got %s"
                    % (name, value))
        for name in ('heat_12', 'heat_01'):
            if getattr(self, name) < 0:
                raise ValueError("Rate %s must be non-negative" % name)

    @classmethod
    def reference_device(cls):
        """Noise figures of the reference device."""
        return cls(t1_10=22.0, t1_21=18.0, heat_12=1 / 2.2, heat_01=0.0,
                   tphi1=8.0, tphi2=1.8, deph2_scale=2.0)

    @classmethod
    def from_config(cls, section):
        """
        Noise from a configuration section. Units are those of the
        constructor; a missing key keeps its default.

        :section: Dict with keys of ``to_dict``
        :raises: ValueError on unknown keys or invalid values
        """
        unknown = set(section) - set(cls().to_dict())
        if unknown:
            raise ValueError("Unknown noise keys: %s"
                             % ", ".join(sorted(unknown)))
        return cls(**section)

    def without_dephasing(self):
        """Copy with both dephasing channels off."""
        params = self.to_dict()
        params.update(tphi1=None, tphi2=None)
        return NoiseParams(**params)

    @property
    def quasi_static_sigma(self):
        """Standard deviation of the quasi-static frequency offset in
        rad/ns, sqrt(2)/Tphi2.
        """
        if self.tphi2 is None:
            return 0.0
        return np.sqrt(2.0) / (self.tphi2 * 1e3)

    def collapse_operators(self):
        """Lindblad operators in sqrt(1/ns)."""
        operators = []
        for rate, row, column in (
                (_rate(self.t1_10), 0, 1),
                (_rate(self.t1_21), 1, 2),
                (self.heat_12 * 1e-6, 2, 1),
                (self.heat_01 * 1e-6, 1, 0)):
            if rate > 0:
                operators.append(np.sqrt(rate) * _ket_bra(row, column))
        dephasing = _rate(self.tphi1)
        if dephasing > 0:
            operators.append(np.sqrt(2.0 * dephasing) * np.diag(
                [0.0, 1.0, self.deph2_scale]).astype(complex))
        return operators

    def to_dict(self):
        """Return the fields as a dict."""
        return dict(t1_10=self.t1_10, t1_21=self.t1_21,
                    heat_12=self.heat_12, heat_01=self.heat_01,
                    tphi1=self.tphi1, tphi2=self.tphi2,
                    deph2_scale=self.deph2_scale)


def ground_state():
    """|0><0|"""
    return basis_state(0)


def basis_state(level):
    """Density matrix of a basis state."""
    if level not in (0, 1, 2):
        raise ValueError("Level must be 0, 1 or 2, got %r" % level)
    return _ket_bra(level, level)


def populations(rho):
    """Populations (p0, p1, p2) of a density matrix."""
    return np.real(np.diag(rho)).copy()


def bloch_vector(rho):
    """
    Bloch vector of the qubit subspace, taken directly from rho without
    renormalization.
    """
    coherence = rho[0, 1]
    return np.array([2.0 * coherence.real, -2.0 * coherence.imag,
                     (rho[0, 0] - rho[1, 1]).real])


def check_density_matrix(rho, step=None):
    """
    Check hermiticity, trace and positivity.

    :rho: 3x3 density matrix
    :step: Step index for the error message
    :raises: SimulationError
    """
    where = "" if step is None else " after step %s" % step
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise SimulationError("State not Hermitian%s" % where, step)
    trace = np.trace(rho).real
    if abs(trace - 1.0) > TRACE_TOL:
        raise SimulationError(
            "State trace %.12g%s" % (trace, where), step)
    smallest = np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0))
    if smallest < -POSITIVITY_TOL:
        raise SimulationError(
            "Negative eigenvalue %.3g%s" % (smallest, where), step)


def state_to_dict(rho):
    """JSON friendly snapshot of a density matrix."""
    return {'re': np.real(rho).tolist(), 'im': np.imag(rho).tolist()}


def state_from_dict(snapshot):
    """Inverse of state_to_dict."""
    return np.array(snapshot['re']) + 1j * np.array(snapshot['im'])


def _drive_operator(system):
    """|1><0| + r|2><1|"""
    return _ket_bra(1, 0) + system.relative_12_coupling * _ket_bra(2, 1)


def drive_hamiltonian(omega, system, offset=0.0):
    """
    H = Delta|2><2| + (omega*A + conj(omega)*A^dagger)/2 with
    A = |1><0| + r|2><1|, plus the frequency offset
    offset*(|1><1| + 2|2><2|).

    :omega: Complex drive in rad/ns
    :system: SystemParams
    :offset: Quasi-static frequency offset in rad/ns
    :returns: 3x3 Hermitian matrix
    """
    drive = _drive_operator(system)
    hamiltonian = np.diag([0.0, offset, system.anharmonicity + 2 * offset])
    hamiltonian = hamiltonian.astype(complex)
    hamiltonian += (omega * drive + np.conj(omega) * drive.conj().T) / 2.0
    return hamiltonian


def _commutator_superop(hamiltonian):
    """Superoperator of rho -> -i[H, rho]."""
    return -1j * (np.kron(_IDENTITY, hamiltonian)
                  - np.kron(hamiltonian.T, _IDENTITY))


def _dissipator_superop(collapse_operators):
    """Superoperator of the Lindblad dissipator."""
    superop = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for operator in collapse_operators:
        product = operator.conj().T.dot(operator)
        superop += np.kron(operator.conj(), operator)
        superop -= 0.5 * (np.kron(_IDENTITY, product)
                          + np.kron(product.T, _IDENTITY))
    return superop


def lindbladian(hamiltonian, collapse_operators):
    """9x9 generator of the master equation."""
    return (_commutator_superop(hamiltonian)
            + _dissipator_superop(collapse_operators))


def _vec(rho):
    return np.asarray(rho, dtype=complex).reshape(-1, order='F')


def _unvec(vector):
    return vector.reshape((DIM, DIM), order='F')


def _generators(env, noise, system, offset):
    """Liouvillian at every sample of the envelope, shape (n, 9, 9)."""
    static = lindbladian(drive_hamiltonian(0.0, system, offset),
                         noise.collapse_operators())
    in_phase = _commutator_superop(drive_hamiltonian(1.0, system)
                                   - drive_hamiltonian(0.0, system))
    quadrature = _commutator_superop(drive_hamiltonian(1j, system)
                                     - drive_hamiltonian(0.0, system))
    samples = env.samples
    return (static[np.newaxis]
            + samples.real[:, np.newaxis, np.newaxis] * in_phase
            + samples.imag[:, np.newaxis, np.newaxis] * quadrature)


def _step_maps(env, noise, system, offset):
    """
    One exact exponential per step of the fourth order Magnus expansion
    exp(h/6*(L0 + 4*Lm + L1) + h**2/12*[L1, L0]). Steps span two samples
    with the middle sample as the half step point; an odd sample count
    ends with a single interval using the interpolated midpoint. Without
    collapse operators every map is unitary.
    """
    generators = _generators(env, noise, system, offset)
    intervals = len(env) - 1
    pairs = intervals // 2
    starts = generators[0:2 * pairs:2]
    middles = generators[1:2 * pairs:2]
    ends = generators[2:2 * pairs + 1:2]
    steps = [2.0 * env.dt] * pairs
    if intervals % 2:
        starts = np.concatenate((starts, generators[-2:-1]))
        middles = np.concatenate(
            (middles, (generators[-2:-1] + generators[-1:]) / 2.0))
        ends = np.concatenate((ends, generators[-1:]))
        steps.append(env.dt)
    step = np.asarray(steps)[:, np.newaxis, np.newaxis]

    exponents = step / 6.0 * (starts + 4.0 * middles + ends)
    exponents += step ** 2 / 12.0 * (np.matmul(ends, starts)
                                     - np.matmul(starts, ends))
    return scipy.linalg.expm(exponents)


def propagator(env, noise, system, offset=0.0):
    """
    Superoperator of a whole pulse.

    :env: ComplexEnvelope
    :noise: NoiseParams
    :system: SystemParams
    :offset: Quasi-static frequency offset in rad/ns
    :returns: 9x9 complex matrix acting on column-stacked states
    """
    total = _SUPER_IDENTITY
    for step_map in _step_maps(env, noise, system, offset):
        total = step_map.dot(total)
    return total


def propagate(rho, env, noise, system, offset=0.0):
    """
    Evolve a state through a pulse, checking the state after every step.

    :rho: 3x3 density matrix
    :env: ComplexEnvelope
    :noise: NoiseParams
    :system: SystemParams
    :offset: Quasi-static frequency offset in rad/ns
    :returns: 3x3 density matrix
    :raises: SimulationError naming the failing step
    """
    vector = _vec(rho)
    for step, step_map in enumerate(_step_maps(env, noise, system, offset)):
        vector = step_map.dot(vector)
        check_density_matrix(_unvec(vector), step)
    return _unvec(vector)


def apply_superoperator(superop, rho):
    """Apply a 9x9 superoperator to a density matrix."""
    return _unvec(superop.dot(_vec(rho)))


def idle_propagator(duration, noise, system=None, offset=0.0):
    """
    Exact superoperator of free evolution.

    :duration: Idle time in ns
    :raises: ValueError on negative duration
    """
    if duration < 0:
        raise ValueError("Idle duration must be non-negative, got %s"
                         % duration)
    if system is None:
        system = SystemParams()
    generator = lindbladian(drive_hamiltonian(0.0, system, offset),
                            noise.collapse_operators())
    return scipy.linalg.expm(generator * duration)


def idle(rho, duration, noise, system=None, offset=0.0):
    """Evolve a state without drive for ``duration`` ns."""
    return apply_superoperator(
        idle_propagator(duration, noise, system, offset), rho)
