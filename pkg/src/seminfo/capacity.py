"""Semantic channel capacity and the classical Shannon baseline.

The semantic objective for a coding strategy ``P(x|w)`` over a discrete
memoryless channel ``P(y|x)`` is::

    I(X;Y) - H(W|X) + sum_y p(y) H_s(y)

where ``H_s(y)`` is the semantic information of output symbol ``y`` under
the channel's declared output semantics. :func:`optimize_capacity` searches
the product of row simplices for its supremum with multi-start projected
gradient ascent; :func:`shannon_capacity` runs Blahut-Arimoto.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_row_stochastic, entropy_bits, xlog2x
from .exceptions import CapabilityError, DomainError, StructuralError
from .world import FiniteWorld, SemanticMessageSet, logical_probability

__all__ = [
    "CodingStrategy",
    "Channel",
    "CapacityResult",
    "OptimizerConfig",
    "mutual_information",
    "ambiguity",
    "avg_received_logical_info",
    "capacity_objective",
    "optimize_capacity",
    "shannon_capacity",
    "project_rows_onto_simplex",
    "SemanticCapacityOptimizer",
    "BlahutArimoto",
]


@dataclass(frozen=True)
class CodingStrategy:
    """Row-stochastic table ``P(x|w)``: one row per world state, one column per message."""

    table: np.ndarray

    def __post_init__(self):
        table = check_row_stochastic(self.table, name="strategy")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def deterministic(cls, assignment, n_messages):
        """Strategy mapping world ``i`` to message ``assignment[i]`` with certainty."""
        table = np.zeros((len(assignment), n_messages))
        table[np.arange(len(assignment)), list(assignment)] = 1.0
        return cls(table)

    @property
    def shape(self):
        return self.table.shape


@dataclass(frozen=True)
class Channel:
    """Discrete memoryless channel ``P(y|x)`` with a truth set for every output symbol."""

    table: np.ndarray
    output_semantics: SemanticMessageSet

    def __post_init__(self):
        table = check_row_stochastic(self.table, name="channel")
        table.setflags(write=False)
        sem = self.output_semantics
        if not isinstance(sem, SemanticMessageSet):
            sem = SemanticMessageSet(tuple(sem))
        if len(sem) != table.shape[1]:
            raise StructuralError(
                f"channel has {table.shape[1]} output columns but "
                f"{len(sem)} output semantics entries"
            )
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "output_semantics", sem)

    @property
    def n_inputs(self):
        return self.table.shape[0]

    @property
    def n_outputs(self):
        return self.table.shape[1]

    def output_information(self, world):
        """Semantic information of each output symbol; ``inf`` where ``p_s = 0``."""
        ps = np.array([logical_probability(world, m) for m in self.output_semantics])
        with np.errstate(divide="ignore"):
            return -np.log2(ps) + 0.0


@dataclass(frozen=True)
class CapacityResult:
    """Best objective found by the optimizer, with its strategy and the three terms.

    ``terms`` is ``(mutual_information, ambiguity, avg_received_logical_info)``.
    This is the best value found by a local search, not a certified supremum.
    """

    value: float
    strategy: CodingStrategy
    terms: tuple
    n_starts: int = 0


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iters: int = 10_000
    seed: int = 0
    fd_step: float = 1e-5
    tol: float = 1e-10
    patience: int = 20
    initial_step: float = 0.1
    max_worlds: int = 6
    max_messages: int = 6
    max_enumerated: int = 4096
    shannon_tol: float = 1e-9


def _check_dims(world, strategy, channel=None):
    n_w, n_x = strategy.shape
    if n_w != world.n_states:
        raise StructuralError(
            f"strategy has {n_w} rows but the world has {world.n_states} states"
        )
    if channel is not None and n_x != channel.n_inputs:
        raise StructuralError(
            f"strategy has {n_x} message columns but the channel has "
            f"{channel.n_inputs} inputs"
        )


def _terms_batch(pw, P, Pyx, hs_y):
    """Vectorised objective terms for strategies ``P`` of shape ``(..., W, X)``.

    Rows of ``P`` need not sum to one; this is what lets finite differences
    step off the simplex.
    """
    joint_wx = pw[:, None] * P
    px = joint_wx.sum(axis=-2)
    h_x = -xlog2x(px).sum(axis=-1)
    amb = -xlog2x(joint_wx).sum(axis=(-2, -1)) - h_x
    joint_xy = px[..., :, None] * Pyx
    py = joint_xy.sum(axis=-2)
    mi = h_x - xlog2x(py).sum(axis=-1) + xlog2x(joint_xy).sum(axis=(-2, -1))
    avg = py @ hs_y
    return mi, amb, avg


def _objective_batch(pw, P, Pyx, hs_y):
    mi, amb, avg = _terms_batch(pw, P, Pyx, hs_y)
    return mi - amb + avg


def mutual_information(world: FiniteWorld, strategy: CodingStrategy, channel: Channel) -> float:
    """``I(X;Y)`` in bits for the input law induced by ``strategy`` on ``world``."""
    _check_dims(world, strategy, channel)
    px = world.p @ strategy.table
    joint = px[:, None] * channel.table
    py = joint.sum(axis=0)
    mi = entropy_bits(px) + entropy_bits(py) - entropy_bits(joint)
    return max(float(mi), 0.0)


def ambiguity(world: FiniteWorld, strategy: CodingStrategy) -> float:
    """Conditional entropy ``H(W|X)`` introduced by the encoder, in bits."""
    _check_dims(world, strategy)
    joint = world.p[:, None] * strategy.table
    h = entropy_bits(joint) - entropy_bits(joint.sum(axis=0))
    return max(float(h), 0.0)


def avg_received_logical_info(
    world: FiniteWorld, strategy: CodingStrategy, channel: Channel
) -> float:
    """Output-marginal average of the received symbols' semantic information."""
    _check_dims(world, strategy, channel)
    py = world.p @ strategy.table @ channel.table
    hs_y = channel.output_information(world)
    reached = py > 0
    bad = np.flatnonzero(reached & np.isinf(hs_y))
    if bad.size:
        sym = channel.output_semantics[int(bad[0])].id
        raise DomainError(f"output symbol {sym!r} is received but has zero logical probability")
    return float(py[reached] @ hs_y[reached]) + 0.0


def capacity_objective(world: FiniteWorld, strategy: CodingStrategy, channel: Channel) -> float:
    """Semantic objective ``I(X;Y) - H(W|X) + mean H_s(Y)``; may be negative."""
    return (
        mutual_information(world, strategy, channel)
        - ambiguity(world, strategy)
        + avg_received_logical_info(world, strategy, channel)
    )


def project_rows_onto_simplex(V):
    """Euclidean projection of every row (last axis) of ``V`` onto the probability simplex.

    Sort-and-threshold method: for each row find the largest ``rho`` with
    ``u_rho - (cumsum(u)_rho - 1) / rho > 0`` and shift by that threshold.
    """
    V = np.asarray(V, dtype=np.float64)
    n = V.shape[-1]
    u = -np.sort(-V, axis=-1)
    css = np.cumsum(u, axis=-1) - 1.0
    ind = np.arange(1, n + 1)
    cond = u - css / ind > 0
    rho = n - np.argmax(cond[..., ::-1], axis=-1)
    theta = np.take_along_axis(css, rho[..., None] - 1, axis=-1) / rho[..., None]
    return np.maximum(V - theta, 0.0)


def _deterministic_tables(n_w, n_x):
    out = np.zeros((n_x**n_w, n_w, n_x))
    for s, assignment in enumerate(itertools.product(range(n_x), repeat=n_w)):
        out[s, np.arange(n_w), assignment] = 1.0
    return out


def _numerical_gradient(f, P, h):
    """Central-difference gradient for a batch ``P`` of shape ``(S, W, X)``.

    The backward step is clipped at zero so entropies stay defined; where
    an entry is exactly zero this degrades to a forward difference.
    """
    S, W, X = P.shape
    E = W * X
    eye = np.eye(E).reshape(E, W, X)
    plus = P[:, None] + h * eye
    minus = np.maximum(P[:, None] - h * eye, 0.0)
    back = (P[:, None] - minus).reshape(S, E, W, X).sum(axis=(-2, -1))
    fp = f(plus)
    fm = f(minus)
    return ((fp - fm) / (h + back)).reshape(S, W, X)


def _ascend(f, P0, cfg):
    """Projected gradient ascent from each start in ``P0`` with a per-start adaptive step."""
    P = P0.copy()
    val = f(P)
    S = P.shape[0]
    eta = np.full(S, cfg.initial_step)
    stall = np.zeros(S, dtype=int)
    active = np.ones(S, dtype=bool)
    for _ in range(cfg.max_iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Pa = P[idx]
        g = _numerical_gradient(f, Pa, cfg.fd_step)
        cand = project_rows_onto_simplex(Pa + eta[idx, None, None] * g)
        cval = f(cand)
        gain = cval - val[idx]
        accept = gain > 0
        P[idx[accept]] = cand[accept]
        val[idx[accept]] = cval[accept]
        eta[idx] = np.where(accept, np.minimum(eta[idx] * 2.0, 1e3), eta[idx] * 0.5)
        small = np.where(accept, gain, 0.0) < cfg.tol
        stall[idx] = np.where(small, stall[idx] + 1, 0)
        active[idx[stall[idx] >= cfg.patience]] = False
    return P, val


def optimize_capacity(world: FiniteWorld, channel: Channel, cfg: OptimizerConfig = None) -> CapacityResult:
    """Maximise the semantic objective over coding strategies.

    Starts are ``cfg.restarts`` random strategies with Dirichlet(1) rows plus,
    when there are at most ``cfg.max_enumerated`` of them, every deterministic
    strategy. The returned value is therefore never below the best
    deterministic strategy in that case.
    """
    cfg = cfg or OptimizerConfig()
    n_w, n_x = world.n_states, channel.n_inputs
    if n_w > cfg.max_worlds or n_x > cfg.max_messages:
        raise CapabilityError(
            f"instance has {n_w} worlds and {n_x} messages; limits are "
            f"{cfg.max_worlds} and {cfg.max_messages}"
        )
    hs_y = channel.output_information(world)
    if np.any(np.isinf(hs_y)):
        bad = channel.output_semantics[int(np.flatnonzero(np.isinf(hs_y))[0])].id
        raise DomainError(f"output symbol {bad!r} has zero logical probability")

    pw, Pyx = world.p, np.asarray(channel.table)

    def f(P):
        return _objective_batch(pw, P, Pyx, hs_y)

    rng = np.random.default_rng(cfg.seed)
    starts = [rng.dirichlet(np.ones(n_x), size=(cfg.restarts, n_w))]
    if n_x**n_w <= cfg.max_enumerated:
        starts.append(_deterministic_tables(n_w, n_x))
    P0 = np.concatenate(starts, axis=0)

    P, val = _ascend(f, P0, cfg)
    best = val.max()
    # deterministic merge: among near-ties take the lexicographically smallest table
    tied = np.flatnonzero(val >= best - 1e-12)
    key = lambda s: tuple(np.round(P[s], 12).ravel())
    winner = min(tied, key=key)

    strategy = CodingStrategy(P[winner] / P[winner].sum(axis=1, keepdims=True))
    terms = (
        mutual_information(world, strategy, channel),
        ambiguity(world, strategy),
        avg_received_logical_info(world, strategy, channel),
    )
    return CapacityResult(
        value=terms[0] - terms[1] + terms[2],
        strategy=strategy,
        terms=terms,
        n_starts=P0.shape[0],
    )


def _blahut_arimoto(Pyx, tol, max_iters):
    n_x = Pyx.shape[0]
    r = np.full(n_x, 1.0 / n_x)
    prev = None
    for it in range(1, max_iters + 1):
        q = r @ Pyx
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(Pyx > 0, Pyx / q, 1.0)
        div = (Pyx * np.log2(ratio)).sum(axis=1)
        value = float(r @ div)
        if prev is not None and abs(value - prev) < tol:
            break
        prev = value
        r = r * np.exp2(div - div.max())
        r /= r.sum()
    return max(value, 0.0), r, it


def shannon_capacity(channel, cfg: OptimizerConfig = None) -> float:
    """Classical capacity ``max_p I(X;Y)`` in bits via Blahut-Arimoto.

    ``channel`` may be a :class:`Channel` or a bare row-stochastic array.
    """
    cfg = cfg or OptimizerConfig()
    table = channel.table if isinstance(channel, Channel) else check_row_stochastic(channel, "channel")
    value, _, _ = _blahut_arimoto(np.asarray(table), cfg.shannon_tol, cfg.max_iters)
    return value


class SemanticCapacityOptimizer(BaseEstimator):
    """Estimator wrapper around :func:`optimize_capacity`.

    ``fit(world, channel)`` stores ``value_``, ``strategy_`` (the ``P(x|w)``
    array) and ``terms_``.
    """

    def __init__(self, restarts=32, max_iters=10_000, seed=0, fd_step=1e-5, tol=1e-10, patience=20):
        self.restarts = restarts
        self.max_iters = max_iters
        self.seed = seed
        self.fd_step = fd_step
        self.tol = tol
        self.patience = patience

    def _config(self):
        return OptimizerConfig(
            restarts=self.restarts,
            max_iters=self.max_iters,
            seed=self.seed,
            fd_step=self.fd_step,
            tol=self.tol,
            patience=self.patience,
        )

    def fit(self, world, channel):
        result = optimize_capacity(world, channel, self._config())
        self.result_ = result
        self.value_ = result.value
        self.strategy_ = np.array(result.strategy.table)
        self.terms_ = result.terms
        return self

    def score(self, world, channel):
        """Semantic objective of the fitted strategy on ``(world, channel)``."""
        check_is_fitted(self, "strategy_")
        return capacity_objective(world, CodingStrategy(self.strategy_), channel)


class BlahutArimoto(BaseEstimator):
    """Shannon capacity of a channel matrix ``X`` (rows ``P(y|x)``).

    Attributes
    ----------
    capacity_ : float
        Capacity in bits.
    input_distribution_ : ndarray
        Capacity-achieving input law found.
    n_iter_ : int
    """

    def __init__(self, tol=1e-9, max_iters=10_000):
        self.tol = tol
        self.max_iters = max_iters

    def fit(self, X, y=None):
        table = check_row_stochastic(X, name="channel")
        self.capacity_, self.input_distribution_, self.n_iter_ = _blahut_arimoto(
            table, self.tol, self.max_iters
        )
        return self
