"""
Simulated experiments: randomized benchmarking with leakage tracking,
pseudo-identity detuning sweeps, state tomography trajectories and
relaxation traces.
"""
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from qleak.cliffords import build_table, compile_clifford
from qleak.pulses import shaped_envelope
from qleak.qutrit import (NoiseParams, SimulationError, SystemParams,
                          apply_superoperator, basis_state, bloch_vector,
                          check_density_matrix, ground_state,
                          idle_propagator, populations, propagator)

MODES = ('pulse', 'unitary')

#: Sequences per length for fidelity runs and for saturation scans
DEFAULT_SEQUENCES = 75
SATURATION_SEQUENCES = 45


class RBConfig(object):
    """Settings of a randomized benchmarking sweep."""

    # pylint: disable=too-many-arguments
    def __init__(self, lengths, gate_set, noise=None, system=None,
                 num_sequences=DEFAULT_SEQUENCES, master_seed=0,
                 mode='pulse'):
        """
        :lengths: Ascending sequence lengths
        :gate_set: Calibrated GateSet
        :noise: NoiseParams, noiseless if None
        :system: SystemParams
        :num_sequences: Random sequences per length
        :master_seed: Seed from which every sequence stream derives
        :mode: 'pulse' for pulse level simulation or 'unitary' for exact
               2x2 Clifford composition
        """
        self.lengths = [int(length) for length in lengths]
        if not self.lengths:
            raise ValueError("At least one sequence length is needed")
        if any(length < 0 for length in self.lengths) or \
                self.lengths != sorted(self.lengths):
            raise ValueError("Sequence lengths must be ascending and "
                             "non-negative: %s" % self.lengths)
        if num_sequences < 1:
            raise ValueError("Number of sequences must be at least one")
        if mode not in MODES:
            raise ValueError("Unknown mode %r" % mode)
        self.gate_set = gate_set
        self.noise = noise if noise is not None else NoiseParams()
        self.system = system if system is not None else SystemParams()
        self.num_sequences = int(num_sequences)
        self.master_seed = int(master_seed)
        self.mode = mode


class RBDataset(object):
    """Mean and standard error of (P0, P1, P2) per sequence length."""

    def __init__(self, lengths, records):
        """
        :lengths: Sequence lengths
        :records: Array of shape (lengths, sequences, 3)
        """
        self.lengths = np.asarray(lengths, dtype=int)
        self.records = np.asarray(records, dtype=float)
        self.mean = self.records.mean(axis=1)
        count = self.records.shape[1]
        if count > 1:
            self.sem = self.records.std(axis=1, ddof=1) / np.sqrt(count)
        else:
            self.sem = np.zeros_like(self.mean)

    header = ['m', 'mean_p0', 'sem_p0', 'mean_p1', 'sem_p1', 'mean_p2',
              'sem_p2']

    def rows(self):
        """Table rows in the order of ``header``."""
        rows = []
        for index, length in enumerate(self.lengths):
            row = [int(length)]
            for level in range(3):
                row += [self.mean[index, level], self.sem[index, level]]
            rows.append(row)
        return rows


def sequence_seed(master_seed, length_index, sequence_index):
    """Independent seed for one sequence, fixed by its position."""
    return np.random.SeedSequence(
        master_seed, spawn_key=(length_index, sequence_index))


class SequenceSimulator(object):
    """
    Runs single RB sequences. Superoperators of the pulse primitives are
    built per frequency offset, and Cliffords are products of them.
    """

    def __init__(self, config):
        self.config = config
        self.table = build_table()
        self._static = None

    def _clifford_superops(self, offset):
        """Superoperator of every Clifford at the given offset."""
        if offset == 0.0 and self._static is not None:
            return self._static
        gate_set = self.config.gate_set
        primitives = {}
        superops = []
        for element in self.table.elements:
            total = np.eye(9, dtype=complex)
            for name, env in zip(element.decomposition,
                                 compile_clifford(element, gate_set)):
                if name not in primitives:
                    primitives[name] = propagator(
                        env, self.config.noise, self.config.system, offset)
                total = primitives[name].dot(total)
            superops.append(total)
        if offset == 0.0:
            self._static = superops
        return superops

    def run(self, seed, length):
        """Final populations of one sequence with its recovery gate."""
        rng = np.random.default_rng(seed)
        sequence = rng.integers(0, len(self.table), size=length)
        final = self.table.recovery(sequence)
        if self.config.mode == 'unitary':
            unitary = self.table.compose(list(sequence) + [final])
            p0 = abs(unitary[0, 0]) ** 2
            return np.array([p0, 1.0 - p0, 0.0])

        offset = rng.normal(0.0, self.config.noise.quasi_static_sigma) \
            if self.config.noise.quasi_static_sigma > 0 else 0.0
        superops = self._clifford_superops(offset)
        vector = ground_state().reshape(-1, order='F')
        for index in list(sequence) + [final]:
            vector = superops[index].dot(vector)
        rho = vector.reshape((3, 3), order='F')
        check_density_matrix(rho)
        return populations(rho)


def run_sequence(seed, length, config, simulator=None):
    """
    Populations after one random sequence of ``length`` Cliffords and its
    recovery gate, starting from |0>.

    :seed: Seed or SeedSequence of the sequence stream
    :length: Number of random Cliffords
    :config: RBConfig
    :simulator: Optional SequenceSimulator to reuse cached superoperators
    :returns: Array (p0, p1, p2)
    :raises: SimulationError with the sequence context
    """
    if simulator is None:
        simulator = SequenceSimulator(config)
    try:
        return simulator.run(seed, length)
    except SimulationError as exception:
        raise SimulationError(
            "Sequence of length %d failed: %s" % (length, exception))


def _run_chunk(args):
    """Worker entry point: a list of (length index, sequence index)."""
    config, tasks = args
    simulator = SequenceSimulator(config)
    results = []
    for length_index, sequence_index in tasks:
        seed = sequence_seed(config.master_seed, length_index,
                             sequence_index)
        results.append(run_sequence(
            seed, config.lengths[length_index], config, simulator))
    return results


def rb_sweep(config, workers=1):
    """
    Run ``num_sequences`` sequences at every length.

    Results depend only on the configuration: every sequence has its own
    seed, and records are assembled in index order whatever the number of
    workers.

    :config: RBConfig
    :workers: Number of processes
    :returns: RBDataset
    """
    tasks = [(length_index, sequence_index)
             for length_index in range(len(config.lengths))
             for sequence_index in range(config.num_sequences)]
    if workers <= 1:
        results = _run_chunk((config, tasks))
    else:
        chunks = [tasks[start::workers] for start in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outputs = list(executor.map(
                _run_chunk, [(config, chunk) for chunk in chunks]))
        results = [None] * len(tasks)
        for start, output in enumerate(outputs):
            results[start::workers] = output

    records = np.array(results).reshape(
        len(config.lengths), config.num_sequences, 3)
    return RBDataset(config.lengths, records)


def saturation_scan(config, length, workers=1):
    """Mean and standard error of P2 after ``length`` Cliffords."""
    scan_config = RBConfig(
        [length], config.gate_set, config.noise, config.system,
        config.num_sequences, config.master_seed, config.mode)
    dataset = rb_sweep(scan_config, workers)
    return dataset.mean[0, 2], dataset.sem[0, 2]


def pseudo_identity_sweep(detunings, reps, gate_set, noise=None,
                          system=None):
    """
    P0 after ``reps`` repetitions of a pi pulse followed by a -pi pulse,
    for each drive detuning.

    :detunings: Detunings in MHz
    :reps: Number of pulse pairs
    :gate_set: GateSet; its detuning is replaced by each sweep value
    :returns: Array of P0
    """
    if reps < 1:
        raise ValueError("At least one repetition is needed")
    noise = noise if noise is not None else NoiseParams()
    system = system if system is not None else SystemParams()
    result = []
    for detuning in detunings:
        detuned = gate_set.replace(detuning=float(detuning))
        pair = propagator(detuned.envelope('-X'), noise, system).dot(
            propagator(detuned.envelope('X'), noise, system))
        superop = np.linalg.matrix_power(pair, int(reps))
        rho = apply_superoperator(superop, ground_state())
        result.append(populations(rho)[0])
    return np.array(result)


def tomography_trajectory(fractions, gate_set, noise=None, system=None):
    """
    Qubit Bloch vectors after X rotations scaled to angle f*pi.

    :fractions: Rotation fractions in [0, 1]
    :gate_set: GateSet giving the pi amplitude, DRAG and detuning
    :returns: Array of shape (n, 3) with (<X>, <Y>, <Z>)
    """
    noise = noise if noise is not None else NoiseParams()
    system = system if system is not None else SystemParams()
    vectors = []
    for fraction in fractions:
        if not 0 <= fraction <= 1:
            raise ValueError("Rotation fraction %s outside [0, 1]"
                             % fraction)
        if fraction == 0:
            vectors.append(bloch_vector(ground_state()))
            continue
        spec = gate_set.spec('X').replace(
            peak_amplitude=fraction * gate_set.pi_amplitude)
        env = shaped_envelope(spec, gate_set.dt)
        rho = apply_superoperator(propagator(env, noise, system),
                                  ground_state())
        vectors.append(bloch_vector(rho))
    return np.array(vectors)


def relaxation_experiment(initial, delays, noise, system=None):
    """
    Populations after idling from a basis state.

    :initial: Starting level 0, 1 or 2
    :delays: Delays in us
    :noise: NoiseParams
    :returns: Array of shape (n, 3)
    """
    rho = basis_state(int(initial))
    curves = []
    for delay in delays:
        superop = idle_propagator(delay * 1e3, noise, system)
        curves.append(populations(apply_superoperator(superop, rho)))
    return np.array(curves)

