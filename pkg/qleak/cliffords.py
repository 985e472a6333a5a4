"""
The single qubit Clifford group, recovery gates and compilation of
Cliffords into pulse primitives.
"""
import functools

import numpy as np

from qleak.pulses import DEFAULT_DT, PulseError, shaped_envelope

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

SAME_GATE_TOL = 1e-9

#: Pulse primitives as (axis phase, rotation angle as multiple of pi, sign)
PRIMITIVES = {
    'X': (0.0, 1.0, 1),
    '-X': (0.0, 1.0, -1),
    'Y': (np.pi / 2, 1.0, 1),
    '-Y': (np.pi / 2, 1.0, -1),
    'X/2': (0.0, 0.5, 1),
    '-X/2': (0.0, 0.5, -1),
    'Y/2': (np.pi / 2, 0.5, 1),
    '-Y/2': (np.pi / 2, 0.5, -1),
}

# Pulse sequences in time order. Totals: 9 pi and 36 pi/2 pulses.
DECOMPOSITIONS = (
    # Paulis
    (),
    ('X',),
    ('Y',),
    ('Y', 'X'),
    # 2pi/3 rotations
    ('X/2', 'Y/2'),
    ('X/2', '-Y/2'),
    ('-X/2', 'Y/2'),
    ('-X/2', '-Y/2'),
    ('Y/2', 'X/2'),
    ('Y/2', '-X/2'),
    ('-Y/2', 'X/2'),
    ('-Y/2', '-X/2'),
    # pi/2 rotations
    ('X/2',),
    ('-X/2',),
    ('Y/2',),
    ('-Y/2',),
    ('-X/2', 'Y/2', 'X/2'),
    ('-X/2', '-Y/2', 'X/2'),
    # Hadamard-like
    ('X', 'Y/2'),
    ('X', '-Y/2'),
    ('Y', 'X/2'),
    ('-X/2', 'Y', 'X'),
    ('X/2', 'Y/2', 'X/2'),
    ('-X/2', 'Y/2', '-X/2'),
)


class CliffordError(ValueError):
    """Exception raised for invalid Clifford input."""


def primitive_unitary(name):
    """2x2 rotation of a pulse primitive."""
    phase, angle, sign = PRIMITIVES[name]
    axis = np.cos(phase) * PAULI_X + np.sin(phase) * PAULI_Y
    half = sign * angle * np.pi / 2.0
    return np.cos(half) * np.eye(2) - 1j * np.sin(half) * axis


def compose(names):
    """Unitary of a list of primitives applied in time order."""
    unitary = np.eye(2, dtype=complex)
    for name in names:
        unitary = primitive_unitary(name).dot(unitary)
    return unitary


def gate_fidelity(first, second):
    """|Tr(U^dagger V)|/2, equal to one for the same gate up to phase."""
    return abs(np.trace(first.conj().T.dot(second))) / 2.0


class CliffordElement(object):
    """One of the 24 Clifford gates."""

    def __init__(self, index, decomposition):
        self.index = index
        self.decomposition = tuple(decomposition)
        self.unitary = compose(self.decomposition)

    @property
    def n_pi(self):
        """Number of pi pulses."""
        return sum(1 for name in self.decomposition
                   if not name.endswith('/2'))

    @property
    def n_half_pi(self):
        """Number of pi/2 pulses."""
        return sum(1 for name in self.decomposition if name.endswith('/2'))

    def to_dict(self):
        """JSON friendly representation."""
        return {
            'index': self.index,
            'decomposition': list(self.decomposition),
            'unitary_re': np.real(self.unitary).tolist(),
            'unitary_im': np.imag(self.unitary).tolist()
        }


class CliffordTable(object):
    """
    Clifford group with multiplication and inverse tables.
    ``multiplication[i, j]`` is the index of U_i U_j, the gate of
    applying j first and then i.
    """

    def __init__(self, elements):
        self.elements = tuple(elements)
        size = len(self.elements)
        self.multiplication = np.zeros((size, size), dtype=int)
        for first in self.elements:
            for second in self.elements:
                self.multiplication[first.index, second.index] = self.find(
                    first.unitary.dot(second.unitary))
        identity = self.find(np.eye(2))
        self.identity = identity
        self.inverse = np.array([
            int(np.nonzero(self.multiplication[index] == identity)[0][0])
            for index in range(size)])

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def find(self, unitary):
        """
        Index of the element equal to ``unitary`` up to global phase.

        :raises: CliffordError if unitary is not a Clifford
        """
        for element in self.elements:
            if gate_fidelity(element.unitary, unitary) > 1 - SAME_GATE_TOL:
                return element.index
        raise CliffordError("Unitary is not in the Clifford table")

    def compose(self, sequence):
        """Unitary of Cliffords applied in the given order."""
        unitary = np.eye(2, dtype=complex)
        for index in sequence:
            unitary = self.elements[index].unitary.dot(unitary)
        return unitary

    def recovery(self, sequence):
        """Index of the Clifford that returns the sequence to identity."""
        total = self.identity
        for index in sequence:
            if not 0 <= index < len(self.elements):
                raise CliffordError("Invalid Clifford index %r" % index)
            total = self.multiplication[index, total]
        return int(self.inverse[total])

    def average_pulse_counts(self):
        """Mean numbers of (pi, pi/2) pulses per Clifford."""
        return (float(np.mean([item.n_pi for item in self.elements])),
                float(np.mean([item.n_half_pi for item in self.elements])))

    def to_dict(self):
        """JSON friendly dump of the table."""
        return {'elements': [item.to_dict() for item in self.elements],
                'inverse': self.inverse.tolist()}


def _self_check(table):
    """Check distinctness, closure and pulse totals."""
    for first in table.elements:
        for second in table.elements:
            if first.index != second.index and gate_fidelity(
                    first.unitary, second.unitary) > 1 - SAME_GATE_TOL:
                raise AssertionError(
                    "Cliffords %d and %d coincide"
                    % (first.index, second.index))
    n_pi = sum(item.n_pi for item in table.elements)
    n_half_pi = sum(item.n_half_pi for item in table.elements)
    if (n_pi, n_half_pi) != (9, 36):
        raise AssertionError(
            "Table holds %d pi and %d pi/2 pulses" % (n_pi, n_half_pi))


@functools.lru_cache(maxsize=None)
def build_table():
    """Build and check the 24 element Clifford table."""
    elements = [CliffordElement(index, decomposition)
                for index, decomposition in enumerate(DECOMPOSITIONS)]
    table = CliffordTable(elements)
    _self_check(table)
    return table


def recovery(sequence, table=None):
    """Index r with C_r C_m ... C_1 equal to identity up to phase."""
    if table is None:
        table = build_table()
    return table.recovery(sequence)


class GateSet(object):
    """
    Calibrated pi and pi/2 pulses sharing one duration, DRAG weights and
    detuning. Envelopes are built once per primitive.
    """

    # pylint: disable=too-many-arguments
    def __init__(self, template, pi_amplitude, half_pi_amplitude,
                 dt=DEFAULT_DT):
        """
        :template: PulseSpec carrying duration, DRAG and detuning
        :pi_amplitude: Peak amplitude of pi pulses in rad/ns
        :half_pi_amplitude: Peak amplitude of pi/2 pulses in rad/ns
        :dt: Sample spacing in ns
        """
        for name, value in (('pi', pi_amplitude),
                            ('pi/2', half_pi_amplitude)):
            if value is None or not value > 0:
                raise PulseError(
                    "Missing or invalid %s amplitude: %r" % (name, value))
        self.template = template
        self.pi_amplitude = float(pi_amplitude)
        self.half_pi_amplitude = float(half_pi_amplitude)
        self.dt = dt
        self._envelopes = {}

    @property
    def duration(self):
        """Length of a single pulse in ns."""
        return self.template.duration

    def replace(self, **kwargs):
        """Copy with amplitudes or template fields changed."""
        pi_amplitude = kwargs.pop('pi_amplitude', self.pi_amplitude)
        half_pi_amplitude = kwargs.pop('half_pi_amplitude',
                                       self.half_pi_amplitude)
        dt = kwargs.pop('dt', self.dt)
        return GateSet(self.template.replace(**kwargs), pi_amplitude,
                       half_pi_amplitude, dt)

    def spec(self, name):
        """PulseSpec of a primitive."""
        phase, angle, sign = PRIMITIVES[name]
        amplitude = self.pi_amplitude if angle == 1.0 \
            else self.half_pi_amplitude
        return self.template.replace(peak_amplitude=amplitude,
                                     rotation_axis_phase=phase,
                                     rotation_sign=sign)

    def envelope(self, name):
        """Shaped envelope of a primitive."""
        if name not in self._envelopes:
            self._envelopes[name] = shaped_envelope(self.spec(name), self.dt)
        return self._envelopes[name]

    def to_dict(self):
        """JSON friendly representation."""
        return {'template': self.template.to_dict(),
                'pi_amplitude': self.pi_amplitude,
                'half_pi_amplitude': self.half_pi_amplitude,
                'dt': self.dt}


def nominal_gate_set(template, dt=DEFAULT_DT):
    """Gate set with the area theorem amplitudes pi and pi/2."""
    return GateSet(template, 2 * np.pi / template.duration,
                   np.pi / template.duration, dt)


def compile_clifford(element, gate_set):
    """
    Envelopes of a Clifford, one per primitive, in time order. The
    identity compiles to no pulses.

    :element: CliffordElement
    :gate_set: GateSet
    :returns: List of ComplexEnvelope
    """
    if not isinstance(gate_set, GateSet):
        raise PulseError("Compilation needs a calibrated GateSet")
    return [gate_set.envelope(name) for name in element.decomposition]

