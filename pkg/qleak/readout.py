"""
Three state dispersive readout: decay during the readout window, IQ
cloud sampling, nearest centroid discrimination and confusion matrix
correction.
"""
import warnings

import numpy as np

from qleak.qutrit import (apply_superoperator, basis_state,
                          idle_propagator, populations)

#: Prepared state in rows, measured state in columns
REFERENCE_CONFUSION_ENTRIES = (
    (0.993, 0.0069, 5e-5),
    (0.055, 0.945, 5e-4),
    (0.0246, 0.083, 0.892),
)

ROW_SUM_TOL = 1e-6
MIN_SHOTS = 1000


class ReadoutError(ValueError):
    """Exception raised for invalid readout input."""


class ClippedProbabilityWarning(UserWarning):
    """Negative probabilities were clipped during visibility correction."""


class ConfusionMatrix(object):
    """Probability P(measured j | prepared i) in entry [i, j]."""

    def __init__(self, entries, tolerance=ROW_SUM_TOL):
        """
        :entries: 3x3 matrix
        :tolerance: Allowed deviation of row sums from one
        :raises: ReadoutError
        """
        self.entries = np.array(entries, dtype=float)
        if self.entries.shape != (3, 3):
            raise ReadoutError("Confusion matrix must be 3x3")
        if np.any(self.entries < 0) or np.any(self.entries > 1):
            raise ReadoutError("Confusion matrix entries outside [0, 1]")
        row_sums = self.entries.sum(axis=1)
        if np.any(np.abs(row_sums - 1.0) > tolerance):
            raise ReadoutError(
                "Confusion matrix rows do not sum to one: %s" % row_sums)
        if np.linalg.cond(self.entries) > 1e12:
            raise ReadoutError("Confusion matrix is singular")

    def to_list(self):
        """Entries as nested lists."""
        return self.entries.tolist()


def reference_confusion():
    """Readout matrix of the reference device, rows rounded to 1e-3."""
    return ConfusionMatrix(REFERENCE_CONFUSION_ENTRIES, tolerance=1e-3)


def apply_confusion(true_probs, matrix):
    """Measured probabilities, the row vector true_probs times M."""
    return np.asarray(true_probs, dtype=float).dot(matrix.entries)


def correct_visibility(measured, matrix):
    """
    Solve measured = true*M for the true populations. Negative components
    are clipped to zero with a ClippedProbabilityWarning and the result
    renormalized.

    :measured: Measured probabilities
    :matrix: ConfusionMatrix
    :returns: Corrected probabilities
    :raises: ReadoutError if M is singular
    """
    try:
        true_probs = np.linalg.solve(matrix.entries.T,
                                     np.asarray(measured, dtype=float))
    except np.linalg.LinAlgError as exception:
        raise ReadoutError("Cannot invert confusion matrix: %s" % exception)
    if np.any(true_probs < 0):
        warnings.warn("Clipped negative probabilities %s" % true_probs,
                      ClippedProbabilityWarning)
        true_probs = np.clip(true_probs, 0.0, None)
        true_probs = true_probs / true_probs.sum()
    return true_probs


def readout_map_coefficients(matrix):
    """
    Coefficients (A, B) of the map from true to measured |2> population,
    A = M[2, 2] and B the mean of M[0, 2] and M[1, 2].
    """
    entries = matrix.entries
    return entries[2, 2], (entries[0, 2] + entries[1, 2]) / 2.0


class IQModel(object):
    """Gaussian IQ clouds of the three states."""

    def __init__(self, centers, stds, readout_duration=1.0):
        """
        :centers: Complex cloud centres
        :stds: Standard deviation of each quadrature per cloud
        :readout_duration: Length of the readout window in us
        """
        self.centers = np.asarray(centers, dtype=complex)
        self.stds = np.asarray(stds, dtype=float)
        self.readout_duration = float(readout_duration)
        if self.centers.shape != (3,) or self.stds.shape != (3,):
            raise ReadoutError("IQ model needs three centres and stds")
        if np.any(self.stds < 0):
            raise ReadoutError("Cloud widths must be non-negative")
        if len(set(self.centers.tolist())) != 3:
            raise ReadoutError("Cloud centres must be distinct")
        if self.readout_duration < 0:
            raise ReadoutError("Readout duration must be non-negative")

    @classmethod
    def separated(cls, separation, std=1.0, readout_duration=1.0):
        """
        Clouds on an equilateral triangle with ``separation`` standard
        deviations between centres.
        """
        angles = 2 * np.pi * np.arange(3) / 3.0
        radius = separation * std / np.sqrt(3.0)
        return cls(radius * np.exp(1j * angles), [std] * 3, readout_duration)

    def classify(self, points):
        """Label of the nearest centre in standardized distance."""
        points = np.atleast_1d(points)
        distances = np.abs(points[:, np.newaxis] - self.centers)
        with np.errstate(divide='ignore', invalid='ignore'):
            scaled = np.where(self.stds > 0, distances / self.stds,
                              np.where(distances > 0, np.inf, 0.0))
        return np.argmin(scaled, axis=1)


def _readout_noise(noise):
    """Channels acting during readout: decay and heating only."""
    return noise.without_dephasing()


def simulate_readout_shots(rho, iq, noise, shots, rng):
    """
    Single shot outcomes for one state.

    :rho: Density matrix at the start of the readout window
    :iq: IQModel
    :noise: NoiseParams
    :shots: Number of shots
    :rng: numpy Generator
    :returns: (labels, IQ points)
    """
    superop = idle_propagator(iq.readout_duration * 1e3,
                              _readout_noise(noise))
    probs = np.clip(populations(apply_superoperator(superop, rho)), 0, None)
    probs = probs / probs.sum()
    states = rng.choice(3, size=shots, p=probs)
    widths = iq.stds[states]
    points = iq.centers[states] + widths * (
        rng.standard_normal(shots) + 1j * rng.standard_normal(shots))
    return iq.classify(points), points


def simulate_readout(rho, iq, noise, rng):
    """One shot: (classified label, IQ point)."""
    labels, points = simulate_readout_shots(rho, iq, noise, 1, rng)
    return int(labels[0]), complex(points[0])


def estimate_confusion(iq, noise, shots, rng):
    """
    Monte Carlo confusion matrix from preparing each basis state
    ``shots`` times.

    :raises: ReadoutError if fewer than 1000 shots are requested
    """
    if shots < MIN_SHOTS:
        raise ReadoutError("At least %d shots are needed, got %d"
                           % (MIN_SHOTS, shots))
    entries = np.zeros((3, 3))
    for level in range(3):
        labels, _ = simulate_readout_shots(basis_state(level), iq, noise,
                                           shots, rng)
        entries[level] = np.bincount(labels, minlength=3) / float(shots)
    return ConfusionMatrix(entries)


def write_confusion_csv(matrix, path):
    """Write the matrix as a 3x3 CSV."""
    np.savetxt(path, matrix.entries, delimiter=',', fmt='%.17g')
    print("Wrote confusion matrix to file %s" % path)


def read_confusion_csv(path, tolerance=ROW_SUM_TOL):
    """Read a 3x3 CSV confusion matrix."""
    return ConfusionMatrix(np.loadtxt(path, delimiter=','), tolerance)
