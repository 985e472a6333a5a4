"""Tests for the simulated experiments."""
import numpy as np
import pytest

import qleak.benchmarking as benchmarking
from qleak.analysis import fit_leakage
from qleak.benchmarking import RBConfig, RBDataset
from qleak.calibration import calibrate_amplitude
from qleak.cliffords import GateSet, nominal_gate_set
from qleak.pulses import PulseSpec
from qleak.qutrit import NoiseParams, SystemParams


def _gate_set(**kwargs):
    """Nominal 10 ns gate set."""
    return nominal_gate_set(PulseSpec(duration=10.0, **kwargs))


@pytest.mark.parametrize(('kwargs', 'message'), [
    ({'lengths': []}, 'At least one'),
    ({'lengths': [10, 5]}, 'ascending'),
    ({'lengths': [-1, 5]}, 'ascending'),
    ({'num_sequences': 0}, 'at least one'),
    ({'mode': 'exact'}, 'Unknown mode'),
])
def test_invalid_config(kwargs, message):
    """Test that invalid sweep settings raise ValueError."""
    params = {'lengths': [0, 1], 'gate_set': _gate_set()}
    params.update(kwargs)
    with pytest.raises(ValueError) as error:
        RBConfig(**params)
    assert message in str(error.value)


def test_config_defaults():
    """Test the default noise, system and sequence count."""
    config = RBConfig([0, 1], _gate_set())
    assert config.noise.collapse_operators() == []
    assert config.system.anharmonicity == pytest.approx(
        2 * np.pi * -0.212)
    assert config.num_sequences == 75
    assert config.mode == 'pulse'


def test_dataset():
    """Test the statistics and rows of a dataset."""
    records = np.array([[[1.0, 0.0, 0.0], [0.8, 0.1, 0.1]],
                        [[0.5, 0.3, 0.2], [0.5, 0.3, 0.2]]])
    dataset = RBDataset([0, 10], records)
    assert np.allclose(dataset.mean[0], [0.9, 0.05, 0.05])
    assert np.allclose(dataset.sem[0], [0.1, 0.05, 0.05])
    assert np.allclose(dataset.sem[1], 0.0)
    assert dataset.rows()[1] == [10, 0.5, 0.0, 0.3, 0.0, 0.2, 0.0]
    assert len(RBDataset.header) == len(dataset.rows()[0])

    single = RBDataset([5], records[:1, :1])
    assert np.array_equal(single.sem, np.zeros((1, 3)))


def test_sequence_seed():
    """Test that sequence streams depend on their position only."""
    first = np.random.default_rng(benchmarking.sequence_seed(7, 1, 2))
    again = np.random.default_rng(benchmarking.sequence_seed(7, 1, 2))
    other = np.random.default_rng(benchmarking.sequence_seed(7, 2, 1))
    draws = first.integers(0, 24, size=20)
    assert np.array_equal(draws, again.integers(0, 24, size=20))
    assert not np.array_equal(draws, other.integers(0, 24, size=20))


def test_unitary_mode():
    """Test that exact Clifford composition always returns to |0>."""
    config = RBConfig([0, 5, 50, 200], _gate_set(), num_sequences=4,
                      mode='unitary')
    dataset = benchmarking.rb_sweep(config)
    assert np.allclose(dataset.mean[:, 0], 1.0, atol=1e-10)
    assert np.allclose(dataset.mean[:, 2], 0.0)


def test_zero_length_sequence():
    """Test that a sequence of no Cliffords leaves |0> alone."""
    config = RBConfig([0], _gate_set())
    populations = benchmarking.run_sequence(0, 0, config)
    assert np.allclose(populations, [1.0, 0.0, 0.0], atol=1e-12)


def test_pulse_mode_leaks():
    """Test that pulse level sequences end mostly in |0> with leakage."""
    config = RBConfig([5], _gate_set())
    populations = benchmarking.run_sequence(
        benchmarking.sequence_seed(0, 0, 0), 5, config)
    assert populations.sum() == pytest.approx(1.0, abs=1e-9)
    assert populations[0] > 0.5
    assert populations[2] > 0


def test_long_noiseless_sequence():
    """Test that a noiseless pulse level sequence of 300 Cliffords stays
    a physical state.
    """
    config = RBConfig([300], _gate_set(alpha1=0.5), num_sequences=2)
    dataset = benchmarking.rb_sweep(config)
    assert np.allclose(dataset.mean.sum(axis=1), 1.0, atol=1e-9)
    assert np.all(dataset.records >= -1e-9)


def test_sweep_deterministic():
    """Test that results depend on the master seed only."""
    config = RBConfig([0, 1, 4], _gate_set(alpha1=0.5),
                      NoiseParams.reference_device(), num_sequences=3,
                      master_seed=11)
    first = benchmarking.rb_sweep(config)
    second = benchmarking.rb_sweep(config)
    parallel = benchmarking.rb_sweep(config, workers=2)
    assert np.array_equal(first.records, second.records)
    assert np.array_equal(first.records, parallel.records)

    reseeded = RBConfig([0, 1, 4], config.gate_set, config.noise,
                        num_sequences=3, master_seed=12)
    assert not np.array_equal(first.records,
                              benchmarking.rb_sweep(reseeded).records)


def test_saturation_scan():
    """Test the P2 statistics after a single length."""
    config = RBConfig([0], _gate_set(), num_sequences=3)
    mean, sem = benchmarking.saturation_scan(config, 10)
    assert 0 < mean < 0.1
    assert sem >= 0


def test_pseudo_identity_sweep():
    """Test shape and range of the pseudo-identity response."""
    gate_set = _gate_set(alpha1=0.5)
    detunings = [-20.0, 0.0, 20.0]
    single = benchmarking.pseudo_identity_sweep(detunings, 1, gate_set)
    repeated = benchmarking.pseudo_identity_sweep(detunings, 3, gate_set)
    assert single.shape == (3,)
    assert np.all((single > 0) & (single <= 1 + 1e-9))
    assert np.all((repeated > 0) & (repeated <= 1 + 1e-9))
    assert gate_set.template.detuning == 0.0

    with pytest.raises(ValueError):
        benchmarking.pseudo_identity_sweep(detunings, 0, gate_set)


@pytest.mark.slow
def test_pseudo_identity_peak():
    """Test that the response peaks inside the scanned range and that
    more repetitions sharpen the peak.
    """
    gate_set = _gate_set(alpha1=0.5)
    detunings = np.linspace(-60, 60, 121)
    single = benchmarking.pseudo_identity_sweep(detunings, 1, gate_set)
    peak = int(np.argmax(single))
    assert 0 < peak < 120
    assert single[peak] > 0.99

    near = detunings[peak] + np.array([-5.0, 0.0, 5.0])
    ones = benchmarking.pseudo_identity_sweep(near, 1, gate_set)
    tens = benchmarking.pseudo_identity_sweep(near, 10, gate_set)
    assert ones[1] - min(ones[0], ones[2]) < tens[1] - min(tens[0],
                                                           tens[2])


def test_tomography_trajectory():
    """Test the Bloch vectors at the ends of the trajectory."""
    vectors = benchmarking.tomography_trajectory(
        [0.0, 0.5, 1.0], _gate_set())
    assert vectors.shape == (3, 3)
    assert np.allclose(vectors[0], [0, 0, 1])
    assert abs(vectors[1, 2]) < 0.2
    assert vectors[2, 2] < -0.9
    assert np.linalg.norm(vectors[2]) <= 1 + 1e-9

    with pytest.raises(ValueError):
        benchmarking.tomography_trajectory([1.5], _gate_set())


def test_relaxation_from_ground():
    """Test that nothing happens without noise channels."""
    curves = benchmarking.relaxation_experiment(0, [0, 10, 100],
                                                NoiseParams())
    assert np.allclose(curves, [[1, 0, 0]] * 3)


def test_relaxation_heating_peak():
    """Test that heating out of |1> peaks near 20 us."""
    delays = np.arange(0, 105, 5)
    curves = benchmarking.relaxation_experiment(
        1, delays, NoiseParams.reference_device(), SystemParams())
    assert curves.shape == (len(delays), 3)
    assert delays[np.argmax(curves[:, 2])] == 20
    assert np.allclose(curves.sum(axis=1), 1.0, atol=1e-9)


@pytest.mark.slow
def test_drag_lowers_leakage():
    """Test that leakage after a long sequence falls with DRAG weight."""
    means = []
    for alpha in (0.0, 0.5, 1.0):
        config = RBConfig([100], _gate_set(alpha1=alpha), num_sequences=20)
        means.append(benchmarking.saturation_scan(config, 100)[0])
    assert means[0] > means[2]
    assert means[0] > means[1]


@pytest.mark.slow
def test_drag_lowers_leakage_rate():
    """Test that the fitted leakage rate of the reference device falls
    by an order of magnitude from alpha 0 to alpha 1.
    """
    noise = NoiseParams.reference_device()
    lengths = [1, 30, 100, 300, 600, 1000, 1500]
    gamma_up = []
    for alpha in (0.0, 0.5, 1.0):
        template = PulseSpec(duration=10.0, alpha1=alpha)
        amplitudes = calibrate_amplitude(template, noise)
        config = RBConfig(lengths, GateSet(template, *amplitudes), noise,
                          num_sequences=8, master_seed=5)
        dataset = benchmarking.rb_sweep(config)
        rates, _ = fit_leakage(dataset.lengths, dataset.mean[:, 2])
        gamma_up.append(rates.gamma_up)
    assert gamma_up[0] > gamma_up[1] > gamma_up[2]
    assert gamma_up[0] >= 10 * gamma_up[2]
