"""Sparse sampling models, recovery, and CRLB-based measurement planning.

A length-``N`` signal ``w = Psi v`` with ``K``-sparse ``v`` is observed
through a row selector ``Theta`` keeping ``M`` entries::

    r = Theta Psi v + n = Phi v + n

The same machinery serves raw data vectors and feature vectors in a
semantic space; :class:`Space` only tags which one a run describes.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_count, check_nonnegative, check_positive, check_unit_interval
from .cognition import cognitive_information
from .exceptions import (
    CapabilityError,
    DomainError,
    InfeasibleError,
    NumericalError,
    StructuralError,
)

__all__ = [
    "Space",
    "BasisKind",
    "Estimator",
    "SelectionMatrix",
    "SparseBasis",
    "SparseSignal",
    "SamplingScenario",
    "RecoveryResult",
    "MonteCarloResult",
    "build_selection_matrix",
    "make_basis",
    "sample",
    "omp_recover",
    "crlb",
    "min_measurements",
    "calibrated_scenario",
    "make_spectrum_scenario",
    "monte_carlo_crlb",
    "trial_rng",
    "sampling_cognitive_entropy",
    "SelectionSampler",
    "OrthogonalMatchingPursuit",
]


class Space(str, enum.Enum):
    DATA = "data"
    SEMANTIC = "semantic"


class BasisKind(str, enum.Enum):
    IDENTITY = "identity"
    DFT = "dft"
    DCT = "dct"
    HAAR = "haar"


class Estimator(str, enum.Enum):
    GENIE = "genie"
    OMP = "omp"


# ---------------------------------------------------------------- selection


@dataclass(frozen=True)
class SelectionMatrix:
    """Binary ``M x N`` selector with a single 1 per row at distinct columns."""

    n_cols: int
    rows: tuple

    def __post_init__(self):
        n = check_count(self.n_cols, "n_cols", minimum=1)
        rows = tuple(check_count(i, "index") for i in self.rows)
        for i in rows:
            if i >= n:
                raise StructuralError(f"index {i} out of range for dimension {n}")
        if len(set(rows)) != len(rows):
            raise StructuralError("selected indices must not overlap")
        object.__setattr__(self, "n_cols", n)
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self):
        return (len(self.rows), self.n_cols)

    def toarray(self):
        out = np.zeros(self.shape)
        out[np.arange(len(self.rows)), list(self.rows)] = 1.0
        return out

    def select(self, x):
        """Apply the selector along axis 0 without forming the matrix."""
        x = np.asarray(x)
        if x.shape[0] != self.n_cols:
            raise StructuralError(f"expected leading dimension {self.n_cols}, got {x.shape[0]}")
        return x[list(self.rows)]

    def __matmul__(self, other):
        return self.select(other)


def build_selection_matrix(n, indices):
    return SelectionMatrix(n, tuple(indices))


class SelectionSampler(TransformerMixin, BaseEstimator):
    """Keep the feature columns listed in ``indices``.

    Transformer form of :class:`SelectionMatrix` for use inside pipelines:
    each sample row ``x`` is mapped to ``Theta @ x``.
    """

    def __init__(self, indices=None):
        self.indices = indices

    def fit(self, X, y=None):
        X = check_array(X, dtype=None)
        self.n_features_in_ = X.shape[1]
        self.selection_ = build_selection_matrix(X.shape[1], self.indices or ())
        return self

    def transform(self, X):
        check_is_fitted(self, "selection_")
        X = check_array(X, dtype=None)
        return self.selection_.select(X.T).T


# ---------------------------------------------------------------- bases


def _haar_analysis(n):
    h = np.ones((1, 1))
    while h.shape[0] < n:
        m = h.shape[0]
        top = np.kron(h, [1.0, 1.0])
        bottom = np.kron(np.eye(m), [1.0, -1.0])
        h = np.vstack([top, bottom]) / np.sqrt(2.0)
    return h


@dataclass(frozen=True)
class SparseBasis:
    """Synthesis matrix ``Psi`` (``w = Psi v``) of a named transform."""

    kind: BasisKind
    n: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", BasisKind(self.kind))
        m = np.asarray(self.matrix)
        if m.shape != (self.n, self.n):
            raise StructuralError(f"basis matrix must be {self.n}x{self.n}, got {m.shape}")
        err = np.abs(m.conj().T @ m - np.eye(self.n)).max()
        if err > 1e-9:
            raise DomainError(f"{self.kind.value} basis is not unitary (error {err:.3g})")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def make_basis(kind, n):
    """Build an identity, DFT, DCT-II or Haar synthesis basis of size ``n``.

    The Haar basis needs ``n`` to be a power of two.
    """
    kind = BasisKind(kind)
    n = check_count(n, "n", minimum=1)
    if kind is BasisKind.IDENTITY:
        m = np.eye(n)
    elif kind is BasisKind.DFT:
        m = np.fft.ifft(np.eye(n), norm="ortho", axis=0)
    elif kind is BasisKind.DCT:
        m = scipy.fft.idct(np.eye(n), norm="ortho", axis=0)
    else:
        if n & (n - 1):
            raise CapabilityError(f"Haar basis needs a power-of-two size, got {n}")
        m = _haar_analysis(n).T
    return SparseBasis(kind, n, m)


@dataclass(frozen=True)
class SparseSignal:
    n: int
    support: tuple
    values: tuple

    def __post_init__(self):
        n = check_count(self.n, "n", minimum=1)
        support = tuple(check_count(i, "support index") for i in self.support)
        values = tuple(complex(v) for v in self.values)
        if len(values) != len(support):
            raise StructuralError("support and values differ in length")
        if len(set(support)) != len(support):
            raise StructuralError("support indices must be distinct")
        if any(i >= n for i in support):
            raise StructuralError("support index out of range")
        if any(v == 0 for v in values):
            raise DomainError("amplitudes on the support must be non-zero")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)

    @property
    def k(self):
        return len(self.support)

    def todense(self):
        out = np.zeros(self.n, dtype=complex)
        out[list(self.support)] = self.values
        return out

    @classmethod
    def from_dense(cls, x, atol=0.0):
        x = np.asarray(x)
        support = np.flatnonzero(np.abs(x) > atol)
        return cls(x.size, tuple(int(i) for i in support), tuple(x[support]))


def _basis_matrix(psi):
    return psi.matrix if isinstance(psi, SparseBasis) else np.asarray(psi)


def sample(theta, psi, v, noise_var, seed):
    """Draw ``r = Theta Psi v + n`` with circular complex Gaussian noise.

    ``noise_var`` is the per-entry variance ``E|n_i|^2``; with ``0`` the
    noiseless measurement is returned exactly.
    """
    noise_var = check_nonnegative(noise_var, "noise_var")
    psi_m = _basis_matrix(psi)
    if psi_m.shape != (theta.n_cols, theta.n_cols) or v.n != theta.n_cols:
        raise StructuralError(
            f"dimension mismatch: Theta {theta.shape}, Psi {psi_m.shape}, v length {v.n}"
        )
    r = theta.select(psi_m @ v.todense()).astype(complex)
    if noise_var > 0:
        rng = np.random.default_rng(seed)
        r = r + _complex_noise(rng, r.shape, noise_var)
    return r


def _complex_noise(rng, shape, var):
    return np.sqrt(var / 2.0) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


# ---------------------------------------------------------------- recovery


@dataclass(frozen=True)
class RecoveryResult:
    """``support_correct`` and ``squared_error`` are ``None`` without a ground truth."""

    estimate: SparseSignal
    residual_norm: float
    support_correct: bool = None
    squared_error: float = None


def _omp(phi, r, k):
    m, n = phi.shape
    norms = np.linalg.norm(phi, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    selected = []
    residual = r.astype(complex)
    coef = np.zeros(0, dtype=complex)
    for it in range(1, k + 1):
        corr = np.abs(phi.conj().T @ residual) / safe
        corr[norms == 0] = 0.0
        corr[selected] = -1.0
        # argmax returns the lowest index among ties
        selected.append(int(np.argmax(corr)))
        sub = phi[:, selected]
        coef, _, rank, _ = np.linalg.lstsq(sub, r, rcond=None)
        if rank < len(selected):
            raise NumericalError(
                f"selected submatrix is rank deficient at iteration {it} "
                f"(atoms {selected})",
                iteration=it,
            )
        residual = r - sub @ coef
    return selected, coef, residual


def omp_recover(phi, r, k, truth=None):
    """Recover a ``k``-sparse ``v`` from ``r = phi v (+ noise)`` with orthogonal matching pursuit.

    Exactly ``k`` atoms are chosen. If ``truth`` (a :class:`SparseSignal`)
    is given the result also reports support agreement and squared error.
    """
    phi = np.asarray(phi)
    r = np.asarray(r)
    if phi.ndim != 2 or r.shape != (phi.shape[0],):
        raise StructuralError(f"phi {phi.shape} and r {r.shape} are incompatible")
    k = check_count(k, "k", minimum=1)
    if k > phi.shape[0]:
        raise DomainError(f"k={k} exceeds the number of measurements {phi.shape[0]}")
    selected, coef, residual = _omp(phi, r, k)
    order = np.argsort(selected)
    dense = np.zeros(phi.shape[1], dtype=complex)
    dense[selected] = coef
    keep = [i for i in order if coef[i] != 0]
    estimate = SparseSignal(
        phi.shape[1], tuple(selected[i] for i in keep), tuple(coef[i] for i in keep)
    )
    result = dict(estimate=estimate, residual_norm=float(np.linalg.norm(residual)))
    if truth is not None:
        result["support_correct"] = set(selected) == set(truth.support)
        result["squared_error"] = float(np.sum(np.abs(dense - truth.todense()) ** 2))
    return RecoveryResult(**result)


class OrthogonalMatchingPursuit(BaseEstimator):
    """Sparse regression ``y ~ X coef`` with exactly ``n_nonzero_coefs`` atoms.

    Works for complex ``X`` and ``y``. Unlike most regressors the sample
    axis of ``X`` is the measurement axis: ``X`` is the ``M x N`` sensing
    matrix and ``y`` the length-``M`` measurement vector.
    """

    def __init__(self, n_nonzero_coefs=1):
        self.n_nonzero_coefs = n_nonzero_coefs

    def fit(self, X, y):
        X = np.asarray(X)
        result = omp_recover(X, np.asarray(y), self.n_nonzero_coefs)
        self.coef_ = result.estimate.todense()
        self.support_ = np.array(sorted(result.estimate.support), dtype=int)
        self.residual_norm_ = result.residual_norm
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        return np.asarray(X) @ self.coef_


# ---------------------------------------------------------------- CRLB planning


def crlb(k, m, gamma_bar, beta_bar):
    """Cramer-Rao bound ``K / (M * gamma_bar * beta_bar)`` on the error of ``v``."""
    k = check_count(k, "k", minimum=1)
    m = check_count(m, "m", minimum=1)
    gamma_bar = check_positive(gamma_bar, "gamma_bar")
    beta_bar = check_positive(beta_bar, "beta_bar")
    if k > m:
        raise DomainError(f"the bound needs K <= M, got K={k}, M={m}")
    return k / (m * gamma_bar * beta_bar)


def min_measurements(k, gamma_bar, beta_bar, eps, n):
    """Smallest integer ``M`` in ``[K, N]`` with ``crlb(K, M) <= eps``.

    Raises
    ------
    InfeasibleError
        If more than ``n`` measurements would be needed; ``.required``
        carries the real-valued ``K / (gamma_bar * beta_bar * eps)``.
    """
    k = check_count(k, "k", minimum=1)
    n = check_count(n, "n", minimum=1)
    gamma_bar = check_positive(gamma_bar, "gamma_bar")
    beta_bar = check_positive(beta_bar, "beta_bar")
    eps = check_positive(eps, "eps")
    if k > n:
        raise DomainError(f"K={k} exceeds N={n}")
    raw = k / (gamma_bar * beta_bar * eps)
    m = max(math.ceil(raw), k)
    # ceil of a rounded quotient can overshoot by one
    if m > k and crlb(k, m - 1, gamma_bar, beta_bar) <= eps:
        m -= 1
    if m > n:
        raise InfeasibleError(
            f"{raw:.6g} measurements needed but only N={n} locations exist", required=raw
        )
    return m


# ---------------------------------------------------------------- scenarios


@dataclass(frozen=True)
class SamplingScenario:
    """Dimensions and link budget of a sampling experiment.

    ``noise_var`` is the per-measurement noise variance actually simulated;
    ``gamma_bar`` and ``beta_bar`` feed the bound. A scenario is
    calibrated when ``noise_var == 1 / gamma_bar``.
    """

    n: int
    k: int
    gamma_bar: float
    beta_bar: float
    noise_var: float
    space: Space = Space.DATA

    def __post_init__(self):
        n = check_count(self.n, "n", minimum=1)
        k = check_count(self.k, "k", minimum=1)
        if k > n:
            raise DomainError(f"K={k} exceeds N={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "gamma_bar", check_positive(self.gamma_bar, "gamma_bar"))
        object.__setattr__(self, "beta_bar", check_positive(self.beta_bar, "beta_bar"))
        object.__setattr__(self, "noise_var", check_nonnegative(self.noise_var, "noise_var"))
        object.__setattr__(self, "space", Space(self.space))

    def as_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "gamma_bar": self.gamma_bar,
            "beta_bar": self.beta_bar,
            "noise_var": self.noise_var,
            "space": self.space.value,
        }


def calibrated_scenario(n, k, gamma_bar, beta_bar, space=Space.DATA):
    return SamplingScenario(n, k, gamma_bar, beta_bar, 1.0 / float(gamma_bar), space)


def _grid_positions(n, extent):
    side = math.ceil(math.sqrt(n))
    ticks = np.linspace(0.0, extent, side) if side > 1 else np.zeros(1)
    xx, yy = np.meshgrid(ticks, ticks, indexing="ij")
    return np.column_stack([xx.ravel(), yy.ravel()])[:n]


def make_spectrum_scenario(n, k, pathloss_exponent, grid_extent, source_power, noise_var, seed):
    """Random spectrum-mapping instance on a square grid of ``n`` locations.

    Returns ``(scenario, psi, v)`` where ``psi[i, j] = max(d_ij, 1)**-alpha``
    is the large-scale gain between locations ``i`` and ``j`` and ``v`` holds
    the ``k`` source amplitudes (power ``source_power``, random phase).
    ``beta_bar`` averages the gains of the source columns; ``gamma_bar`` is
    ``source_power / noise_var``.
    """
    n = check_count(n, "n", minimum=1)
    k = check_count(k, "k", minimum=1)
    if k > n:
        raise DomainError(f"K={k} exceeds N={n}")
    alpha = check_nonnegative(pathloss_exponent, "pathloss_exponent")
    extent = check_positive(grid_extent, "grid_extent")
    power = check_positive(source_power, "source_power")
    noise_var = check_positive(noise_var, "noise_var")

    rng = np.random.default_rng(seed)
    pos = _grid_positions(n, extent)
    dist = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=-1)
    psi = np.maximum(dist, 1.0) ** -alpha
    support = np.sort(rng.choice(n, size=k, replace=False))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=k)
    v = SparseSignal(n, tuple(int(i) for i in support), tuple(np.sqrt(power) * np.exp(1j * phases)))
    scenario = SamplingScenario(
        n=n,
        k=k,
        gamma_bar=power / noise_var,
        beta_bar=float(psi[:, support].mean()),
        noise_var=noise_var,
    )
    return scenario, psi, v


# ---------------------------------------------------------------- Monte-Carlo


@dataclass(frozen=True)
class MonteCarloResult:
    empirical_mse: float
    crlb_value: float
    ratio: float
    trial_errors: np.ndarray = field(repr=False)
    space: Space = Space.DATA
    estimator: Estimator = Estimator.GENIE


def trial_rng(seed, trial):
    """Generator for trial ``trial``; independent of how many trials run."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def _draw_trial(rng, scenario, m, calibrated):
    n, k, beta = scenario.n, scenario.k, scenario.beta_bar
    support = np.sort(rng.choice(n, size=k, replace=False))
    phi = np.sqrt(beta / 2.0) * (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n)))
    if calibrated:
        phi *= np.sqrt(m * beta) / np.linalg.norm(phi, axis=0)
        q, _ = np.linalg.qr(phi[:, support])
        phi[:, support] = q * np.sqrt(m * beta)
    values = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=k))
    v = np.zeros(n, dtype=complex)
    v[support] = values
    r = phi @ v
    if scenario.noise_var > 0:
        r = r + _complex_noise(rng, m, scenario.noise_var)
    return support, phi, v, r


def monte_carlo_crlb(scenario, m, trials, estimator=Estimator.GENIE, seed=0, calibrated=True):
    """Empirical estimation error of ``v`` against the CRLB.

    Each trial draws a random support, a sensing matrix ``Phi`` whose
    entries have power ``beta_bar``, unit-modulus source amplitudes and
    noise of variance ``scenario.noise_var``. With ``calibrated=True`` the
    support columns are made orthogonal with squared norm ``M * beta_bar``,
    under which the genie least-squares error equals the bound exactly when
    ``noise_var == 1 / gamma_bar``.

    The genie estimator is least squares on the true support; ``omp`` runs
    :func:`omp_recover` with ``K`` atoms on the same draws.
    """
    estimator = Estimator(estimator)
    m = check_count(m, "m", minimum=1)
    trials = check_count(trials, "trials", minimum=1)
    if not scenario.k <= m <= scenario.n:
        raise DomainError(f"need K <= M <= N, got K={scenario.k}, M={m}, N={scenario.n}")
    bound = crlb(scenario.k, m, scenario.gamma_bar, scenario.beta_bar)

    errors = np.empty(trials)
    for t in range(trials):
        support, phi, v, r = _draw_trial(trial_rng(seed, t), scenario, m, calibrated)
        if estimator is Estimator.GENIE:
            est = np.zeros_like(v)
            est[support] = np.linalg.lstsq(phi[:, support], r, rcond=None)[0]
        else:
            selected, coef, _ = _omp(phi, r, scenario.k)
            est = np.zeros_like(v)
            est[selected] = coef
        errors[t] = np.sum(np.abs(est - v) ** 2)
    mse = float(errors.mean())
    return MonteCarloResult(mse, bound, mse / bound, errors, scenario.space, estimator)


def sampling_cognitive_entropy(h_s, eps):
    """Cognitive entropy of a sampled signal with accuracy ``1 - eps``."""
    eps = check_unit_interval(eps, "eps")
    return cognitive_information(h_s, 1.0 - eps)
