"""
Model functions and fits: the leakage rate equation, sequence fidelity
decay, heating rates, the readout transform of leakage rates, the
coherent random walk and scaling law fits.
"""
from collections import OrderedDict, namedtuple

import numpy as np
import scipy.linalg
from scipy.optimize import least_squares

FIT_TOL = 1e-15
GRADIENT_TOL = 1e-6
DEGENERACY_TOL = 1e-8
FLAT_TOL = 1e-12
MAX_EVALUATIONS = 10000

#: Starting points of the variable projection grid searches
P_GRID = 1.0 - np.logspace(-6, -0.3, 60)
GAMMA_GRID = np.logspace(-6, -0.3, 60)

#: Mean |1> occupancy used to turn a heating rate into leakage per Clifford
HEATING_OCCUPANCY = 0.5

LinearFit = namedtuple('LinearFit', ['slope', 'intercept', 'r_squared'])
PowerFit = namedtuple('PowerFit', ['prefactor', 'exponent', 'r_squared'])


class FitResult(object):
    """Fitted parameters with uncertainties and convergence information."""

    # pylint: disable=too-many-arguments
    def __init__(self, names, values, uncertainties, residual_norm,
                 covariance, converged, degenerate=False, message=''):
        self.parameters = OrderedDict(zip(names, [float(v) for v in values]))
        self.uncertainties = OrderedDict(
            zip(names, [float(v) for v in uncertainties]))
        self.residual_norm = float(residual_norm)
        self.covariance = np.asarray(covariance, dtype=float)
        self.converged = bool(converged)
        self.degenerate = bool(degenerate)
        self.message = message

    def __getitem__(self, name):
        return self.parameters[name]

    def to_dict(self):
        """Fit report as a JSON friendly dict."""
        return {
            'parameters': dict(self.parameters),
            'uncertainties': dict(self.uncertainties),
            'residual_norm': self.residual_norm,
            'converged': self.converged,
            'degenerate': self.degenerate,
            'message': self.message
        }


class LeakageRates(object):
    """Per Clifford leakage (gamma_up) and seepage (gamma_down) rates."""

    def __init__(self, gamma_up, gamma_down, p0=0.0, check=True):
        self.gamma_up = float(gamma_up)
        self.gamma_down = float(gamma_down)
        self.p0 = float(p0)
        if check and not self.is_valid():
            raise ValueError(
                "Invalid leakage rates: gamma_up=%g gamma_down=%g"
                % (self.gamma_up, self.gamma_down))

    def is_valid(self):
        """Non-negative rates with total below one."""
        return (self.gamma_up >= 0 and self.gamma_down >= 0 and
                self.total < 1)

    @property
    def total(self):
        """Gamma = gamma_up + gamma_down"""
        return self.gamma_up + self.gamma_down

    @property
    def saturation(self):
        """p_inf = gamma_up / Gamma"""
        if self.total == 0:
            return self.p0
        return self.gamma_up / self.total

    def to_dict(self):
        """Rates as a dict."""
        return {'gamma_up': self.gamma_up, 'gamma_down': self.gamma_down,
                'p0': self.p0, 'saturation': self.saturation}


class FidelityFit(object):
    """A*p**m + B decay with error per Clifford (1 - p)/2."""

    def __init__(self, fit):
        self.fit = fit
        self.A = fit['A']  # pylint: disable=invalid-name
        self.B = fit['B']  # pylint: disable=invalid-name
        self.p = fit['p']

    @property
    def r_clifford(self):
        """Error per Clifford."""
        return (1.0 - self.p) / 2.0

    @property
    def r_clifford_error(self):
        """Standard error of the error per Clifford."""
        return self.fit.uncertainties['p'] / 2.0

    def to_dict(self):
        """Fit report including r_clifford."""
        report = self.fit.to_dict()
        report['r_clifford'] = self.r_clifford
        report['r_clifford_error'] = self.r_clifford_error
        return report


def rate_eq_population(rates, m, discrete=False):
    """
    |2> population after m Cliffords.

    Continuous form p_inf*(1 - exp(-Gamma*m)) + p0*exp(-Gamma*m), discrete
    form (p0 - p_inf)*(1 - Gamma)**m + p_inf.
    """
    m = np.asarray(m, dtype=float)
    if discrete:
        decay = np.power(1.0 - rates.total, m)
    else:
        decay = np.exp(-rates.total * m)
    return rates.saturation + (rates.p0 - rates.saturation) * decay


def iterate_rate_equation(rates, m_max):
    """Populations p(0..m_max) from the one step recursion."""
    result = np.empty(m_max + 1)
    result[0] = rates.p0
    for index in range(m_max):
        current = result[index]
        result[index + 1] = (current + rates.gamma_up * (1 - current)
                             - rates.gamma_down * current)
    return result


def _fit(residuals, start, names, method='lm'):
    """
    Least squares with a Jacobian based covariance estimate.

    :residuals: Function of the parameter vector
    :start: Initial parameters
    :names: Parameter names
    :returns: FitResult
    """
    try:
        result = least_squares(residuals, start, method=method,
                               x_scale='jac', ftol=FIT_TOL, xtol=FIT_TOL,
                               gtol=FIT_TOL, max_nfev=MAX_EVALUATIONS)
    except ValueError as exception:
        size = len(start)
        return FitResult(names, start, [np.inf] * size, np.inf,
                         np.full((size, size), np.inf), False,
                         message=str(exception))

    jacobian = np.atleast_2d(result.jac)
    residual = result.fun
    size = len(result.x)
    dof = max(len(residual) - size, 1)
    variance = residual.dot(residual) / dof

    norms = np.linalg.norm(jacobian, axis=0)
    singular = np.linalg.svd(
        jacobian / np.where(norms > 0, norms, 1.0), compute_uv=False)
    degenerate = (np.any(norms == 0) or
                  singular[-1] < DEGENERACY_TOL * singular[0])
    if degenerate:
        covariance = np.full((size, size), np.inf)
    else:
        covariance = variance * np.linalg.pinv(jacobian.T.dot(jacobian))

    gradient = np.max(np.abs(jacobian.T.dot(residual)))
    scale = 1.0 + np.linalg.norm(jacobian) * np.linalg.norm(residual)
    converged = (result.status > 0 and not degenerate and
                 gradient <= GRADIENT_TOL * scale)
    return FitResult(names, result.x, np.sqrt(np.abs(np.diag(covariance))),
                     np.linalg.norm(residual), covariance, converged,
                     degenerate, result.message)


def _as_arrays(lengths, values, sigma, minimum):
    """Validate fit input."""
    lengths = np.asarray(lengths, dtype=float)
    values = np.asarray(values, dtype=float)
    if lengths.shape != values.shape or lengths.ndim != 1:
        raise ValueError("Lengths and values must be 1-D of equal size")
    if len(np.unique(lengths)) < minimum:
        raise ValueError("At least %d distinct lengths are needed" % minimum)
    if sigma is None:
        sigma = np.ones_like(values)
    sigma = np.asarray(sigma, dtype=float)
    sigma = np.where(sigma > 0, sigma, 1.0)
    return lengths, values, sigma


def _linear_coefficients(columns, values, sigma):
    """Weighted linear least squares, returns coefficients and SSR."""
    design = np.column_stack(columns) / sigma[:, np.newaxis]
    coefficients, _, _, _ = np.linalg.lstsq(design, values / sigma,
                                            rcond=None)
    residual = design.dot(coefficients) - values / sigma
    return coefficients, residual.dot(residual)


def _flag_flat(fit, values):
    """Data without any variation cannot fix a decay constant."""
    if np.ptp(values) <= FLAT_TOL:
        fit.degenerate = True
        fit.converged = False
        fit.message = 'Flat data, decay constant not identifiable'


def fit_sequence_fidelity(lengths, p0s, sigma=None):
    """
    Fit A*p**m + B to sequence fidelity data.

    The start point is the grid value of p whose linear fit of A and B has
    the smallest residual; the remaining grid points serve as fallback
    starts if the fit does not converge.

    :lengths: Sequence lengths
    :p0s: Mean |0> population per length
    :sigma: Optional standard errors
    :returns: FidelityFit
    """
    lengths, values, sigma = _as_arrays(lengths, p0s, sigma, 4)

    def residuals(params):
        amplitude, offset, decay = params
        return (amplitude * np.power(decay, lengths) + offset
                - values) / sigma

    starts = []
    for decay in P_GRID:
        (amplitude, offset), ssr = _linear_coefficients(
            (np.power(decay, lengths), np.ones_like(lengths)), values, sigma)
        starts.append((ssr, [amplitude, offset, decay]))
    starts.sort(key=lambda item: item[0])

    best = None
    for _, start in starts[:5]:
        fit = _fit(residuals, start, ['A', 'B', 'p'])
        _flag_flat(fit, values)
        if not 0 < fit['p'] < 1:
            fit.converged = False
        if best is None or (fit.converged and not best.converged) or (
                fit.converged == best.converged and
                fit.residual_norm < best.residual_norm):
            best = fit
        if fit.converged or fit.degenerate:
            break
    return FidelityFit(best)


def fit_leakage(lengths, p2s, sigma=None):
    """
    Fit the continuous rate equation to |2> population data.

    :lengths: Sequence lengths
    :p2s: Mean |2> population per length
    :sigma: Optional standard errors
    :returns: (LeakageRates, FitResult)
    """
    lengths, values, sigma = _as_arrays(lengths, p2s, sigma, 4)

    def residuals(params):
        rates = LeakageRates(*params, check=False)
        return (rate_eq_population(rates, lengths) - values) / sigma

    starts = []
    for total in GAMMA_GRID:
        decay = np.exp(-total * lengths)
        (saturation, initial), ssr = _linear_coefficients(
            (1.0 - decay, decay), values, sigma)
        starts.append((ssr, [saturation * total, (1 - saturation) * total,
                             initial]))
    starts.sort(key=lambda item: item[0])

    best = None
    for _, start in starts[:5]:
        fit = _fit(residuals, start, ['gamma_up', 'gamma_down', 'p0'])
        _flag_flat(fit, values)
        rates = LeakageRates(fit['gamma_up'], fit['gamma_down'], fit['p0'],
                             check=False)
        if not rates.is_valid():
            fit.converged = False
        if best is None or (fit.converged and not best.converged) or (
                fit.converged == best.converged and
                fit.residual_norm < best.residual_norm):
            best = fit
        if fit.converged or fit.degenerate:
            break
    rates = LeakageRates(best['gamma_up'], best['gamma_down'], best['p0'],
                         check=False)
    return rates, best


def rate_matrix(t1_10, t1_21, heat_12=0.0, heat_01=0.0):
    """
    Generator of the populations (p0, p1, p2) in 1/us.

    :t1_10: |1> lifetime in us, None for no decay
    :t1_21: |2> lifetime in us, None for no decay
    :heat_12: 1->2 heating rate in 1/ms
    :heat_01: 0->1 heating rate in 1/ms
    """
    decay_10 = 0.0 if t1_10 is None else 1.0 / t1_10
    decay_21 = 0.0 if t1_21 is None else 1.0 / t1_21
    up_12 = heat_12 * 1e-3
    up_01 = heat_01 * 1e-3
    return np.array([
        [-up_01, decay_10, 0.0],
        [up_01, -decay_10 - up_12, decay_21],
        [0.0, up_12, -decay_21]
    ])


def three_level_populations(times, initial, t1_10, t1_21, heat_12=0.0,
                            heat_01=0.0):
    """
    Solution of the linear rate equations from a basis state.

    :times: Times in us
    :initial: Starting level
    :returns: Array of shape (n, 3)
    """
    generator = rate_matrix(t1_10, t1_21, heat_12, heat_01)
    start = np.zeros(3)
    start[int(initial)] = 1.0
    return np.array([scipy.linalg.expm(generator * time).dot(start)
                     for time in np.atleast_1d(times)])


def _single_rate_fit(model, times, values, name, sigma):
    """
    Fit one non-negative rate scaling a model curve. The start is the
    linear projection onto the model at unit rate; a non-positive
    projection gives zero.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    sigma = np.ones_like(values) if sigma is None else np.asarray(sigma)
    unit = model(1.0) / sigma
    weighted = values / sigma
    start = unit.dot(weighted) / unit.dot(unit)
    if not start > 0:
        residual = np.linalg.norm(weighted)
        return FitResult([name], [0.0], [0.0], residual, [[0.0]], True,
                         message='Projection onto the model is not '
                                 'positive, rate set to zero')

    def residuals(params):
        return (model(params[0]) - values) / sigma

    return _fit(residuals, [start], [name])


def heating_fit(times, p2s, t1_10, t1_21, sigma=None):
    """
    Fit the 1->2 heating rate to |2> populations measured after preparing
    |1>, with both decay times fixed.

    :times: Delays in us
    :p2s: |2> populations
    :t1_10: |1> lifetime in us
    :t1_21: |2> lifetime in us
    :returns: FitResult with parameter heat_12 in 1/ms
    """
    def model(rate):
        return three_level_populations(times, 1, t1_10, t1_21,
                                       heat_12=rate)[:, 2]

    return _single_rate_fit(model, times, p2s, 'heat_12', sigma)


def thermal_fit(times, p1s, t1, sigma=None):
    """
    Fit the 0->1 heating rate to |1> populations after heralding |0>,
    with the |1> lifetime fixed.

    :times: Delays in us
    :p1s: |1> populations
    :t1: |1> lifetime in us
    :returns: FitResult with parameter heat_01 in 1/ms
    """
    def model(rate):
        return three_level_populations(times, 0, t1, None,
                                       heat_01=rate)[:, 1]

    return _single_rate_fit(model, times, p1s, 'heat_01', sigma)


def infidelity_transform(rates, A, B):  # pylint: disable=invalid-name
    """
    Rates seen through a readout that maps the true |2> population p to
    A*p + B*(1 - p). Gamma is unchanged.
    """
    if not 0 < A <= 1 or not 0 <= B < 1:
        raise ValueError("Readout coefficients outside range: A=%g B=%g"
                         % (A, B))
    gamma_up = A * rates.gamma_up + B * rates.gamma_down
    return LeakageRates(gamma_up, rates.total - gamma_up,
                        A * rates.p0 + B * (1 - rates.p0), check=False)


def coherent_walk(m_max, g_magnitude, phase_step, trials, rng,
                  randomize=True, c2_initial=0.0):
    """
    Mean |c2(m)|**2 of partial sums of g*exp(i*theta_k)*exp(-i*phase_step*k).

    With ``randomize`` each theta_k is a random quarter turn, as random
    Cliffords give; otherwise theta_k = 0.

    :returns: Array of length m_max + 1
    """
    if trials < 100:
        raise ValueError("At least 100 trials are needed")
    ramp = np.exp(-1j * phase_step * np.arange(m_max))
    if randomize:
        quarter_turns = rng.integers(0, 4, size=(trials, m_max))
        steps = g_magnitude * np.exp(0.5j * np.pi * quarter_turns) * ramp
    else:
        steps = np.tile(g_magnitude * ramp, (trials, 1))
    sums = np.concatenate(
        (np.zeros((trials, 1), dtype=complex), np.cumsum(steps, axis=1)),
        axis=1) + c2_initial
    return np.mean(np.abs(sums) ** 2, axis=0)


def fit_linear(x, y):
    """
    Ordinary least squares line.

    :returns: LinearFit(slope, intercept, r_squared)
    :raises: ValueError for fewer than three points or equal abscissae
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 3 or len(x) != len(y):
        raise ValueError("At least three points are needed")
    if np.ptp(x) == 0:
        raise ValueError("All abscissae are equal")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    r_squared = 1.0 if total == 0 else 1.0 - residual.dot(residual) / total
    return LinearFit(float(slope), float(intercept), float(r_squared))


def fit_power(x, y):
    """
    Power law y = prefactor * x**exponent from a log-log line.

    :returns: PowerFit(prefactor, exponent, r_squared)
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("Power law fit needs positive data")
    line = fit_linear(np.log(x), np.log(y))
    return PowerFit(float(np.exp(line.intercept)), line.slope,
                    line.r_squared)


def heating_floor(heat_12, clifford_time, occupancy=HEATING_OCCUPANCY):
    """
    Leakage per Clifford caused by heating alone.

    :heat_12: Heating rate in 1/ns
    :clifford_time: Average Clifford duration in ns
    :occupancy: Mean |1> population during the sequence
    """
    return heat_12 * clifford_time * occupancy


def decay_baseline(clifford_time, t1_21):
    """Seepage per Clifford expected from |2> decay alone.

    :clifford_time: Average Clifford duration in ns
    :t1_21: |2> lifetime in us, None for no decay
    """
    if t1_21 is None:
        return 0.0
    return clifford_time / (t1_21 * 1e3)
