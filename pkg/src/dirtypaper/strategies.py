"""Jointly Gaussian strategy families for the user and the jammer.

A user strategy couples the channel input to the known state through a linear
map plus an independent Gaussian innovation, and carries the auxiliary-coding
coefficient for state pre-cancellation.  A jammer strategy is linear in state
plus an independent Gaussian innovation and an optional mean.  Power
constraints are enforced in expectation per block (trace form): the expected
input energy over a block of ``n`` symbols may not exceed ``n`` times the
per-symbol budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gauss import JointCovariance, validate_covariance

__all__ = [
    "InfeasiblePower",
    "ChannelParams",
    "UserStrategy",
    "JammerStrategy",
    "FeasibilityReport",
    "dpc_user",
    "iid_gaussian_jammer",
    "linear_jammer",
    "feasible",
    "random_feasible_user",
    "random_feasible_jammer",
    "joint_covariance",
]

POWER_SLACK_TOL = 1e-9

#: mean per-draw power of the random strategy generators, as a fraction of
#: the power budget (half the draws sit on the boundary, half are uniform
#: inside), used by the statistical generator tests
RANDOM_DRAW_MEAN_POWER_FRACTION = 0.75


class InfeasiblePower(ValueError):
    """A strategy violates its average power constraint."""


@dataclass(frozen=True)
class ChannelParams:
    """Channel block length, variances, budgets and reporting log base.

    Attributes
    ----------
    n : block length (number of channel uses treated jointly)
    p_u : per-symbol user power budget, > 0
    p_j : per-symbol jammer power budget, >= 0
    sigma2 : channel noise variance, > 0
    sigma_s2 : per-symbol state variance, >= 0
    base : log base for all information quantities, "bits" or "nats"
    """

    n: int = 1
    p_u: float = 1.0
    p_j: float = 1.0
    sigma2: float = 1.0
    sigma_s2: float = 1.0
    base: str = "bits"

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"block length must be a positive integer, got {self.n}")
        for name in ("p_u", "p_j", "sigma2", "sigma_s2"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.p_u <= 0:
            raise ValueError("user power p_u must be > 0")
        if self.p_j < 0:
            raise ValueError("jammer power p_j must be >= 0")
        if self.sigma2 <= 0:
            raise ValueError("noise variance sigma2 must be > 0")
        if self.sigma_s2 < 0:
            raise ValueError("state variance sigma_s2 must be >= 0")
        if self.base not in ("bits", "nats"):
            raise ValueError(f"base must be 'bits' or 'nats', got {self.base!r}")

    @property
    def state_power(self) -> float:
        """Total state power over a block, n * sigma_s2 (derived, not stored)."""
        return self.n * self.sigma_s2


def _square(mat, n: int, name: str) -> np.ndarray:
    arr = np.array(mat, dtype=float, copy=True)
    if arr.ndim == 0:
        arr = arr * np.eye(n)
    if arr.shape != (n, n):
        raise ValueError(f"{name} must be {n}x{n}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


@dataclass
class UserStrategy:
    """Channel input X = state_coupling @ S + G with G ~ N(0, innovation_cov).

    ``dpc_alpha`` is the auxiliary-variable coefficient, U = X + dpc_alpha @ S
    (a scalar multiple of the identity in the canonical case).
    """

    n: int
    state_coupling: np.ndarray
    innovation_cov: np.ndarray
    dpc_alpha: np.ndarray

    def __post_init__(self):
        self.state_coupling = _square(self.state_coupling, self.n, "state_coupling")
        self.dpc_alpha = _square(self.dpc_alpha, self.n, "dpc_alpha")
        self.innovation_cov = validate_covariance(
            _square(self.innovation_cov, self.n, "innovation_cov"), "innovation_cov"
        )

    def block_power(self, ch: ChannelParams) -> float:
        """Expected input energy over one block."""
        a = self.state_coupling
        return float(ch.sigma_s2 * np.trace(a @ a.T) + np.trace(self.innovation_cov))

    @classmethod
    def _trusted(cls, n, state_coupling, innovation_cov, dpc_alpha):
        # optimizer-internal constructor: inputs already live in the feasible
        # set by projection, so the validating __post_init__ is skipped
        obj = object.__new__(cls)
        obj.n = n
        obj.state_coupling = state_coupling
        obj.innovation_cov = innovation_cov
        obj.dpc_alpha = dpc_alpha
        return obj


@dataclass
class JammerStrategy:
    """Jamming signal J = state_coupling @ S + R + mean, R ~ N(0, innovation_cov)."""

    n: int
    state_coupling: np.ndarray
    innovation_cov: np.ndarray
    mean: np.ndarray = field(default=None)

    def __post_init__(self):
        self.state_coupling = _square(self.state_coupling, self.n, "state_coupling")
        self.innovation_cov = validate_covariance(
            _square(self.innovation_cov, self.n, "innovation_cov"), "innovation_cov"
        )
        if self.mean is None:
            self.mean = np.zeros(self.n)
        self.mean = np.array(self.mean, dtype=float, copy=True).reshape(-1)
        if self.mean.shape != (self.n,):
            raise ValueError(f"mean must have length {self.n}")

    def block_power(self, ch: ChannelParams) -> float:
        """Expected jamming energy over one block, mean included."""
        b = self.state_coupling
        return float(
            ch.sigma_s2 * np.trace(b @ b.T)
            + np.trace(self.innovation_cov)
            + self.mean @ self.mean
        )

    @classmethod
    def _trusted(cls, n, state_coupling, innovation_cov):
        obj = object.__new__(cls)
        obj.n = n
        obj.state_coupling = state_coupling
        obj.innovation_cov = innovation_cov
        obj.mean = np.zeros(n)
        return obj


@dataclass(frozen=True)
class FeasibilityReport:
    """Constraint satisfaction with per-constraint slack.

    ``power_slack`` is budget minus realized block power; ``psd_slack`` is the
    smallest eigenvalue of the innovation covariance.  Both must clear the
    shared tolerance for ``ok``.
    """

    ok: bool
    power_used: float
    power_budget: float
    power_slack: float
    psd_slack: float


def feasible(strategy, ch: ChannelParams) -> FeasibilityReport:
    """Check a user or jammer strategy against its power budget."""
    if isinstance(strategy, UserStrategy):
        budget = ch.n * ch.p_u
    elif isinstance(strategy, JammerStrategy):
        budget = ch.n * ch.p_j
    else:
        raise TypeError(f"expected a strategy, got {type(strategy).__name__}")
    if strategy.n != ch.n:
        raise ValueError("strategy block length does not match channel")
    used = strategy.block_power(ch)
    power_slack = budget - used
    psd_slack = float(np.linalg.eigvalsh(strategy.innovation_cov)[0])
    floor = -1e-10 * max(float(np.trace(strategy.innovation_cov)), 0.0)
    ok = power_slack >= -POWER_SLACK_TOL and psd_slack >= floor
    return FeasibilityReport(ok, used, budget, power_slack, psd_slack)


def dpc_alpha_value(ch: ChannelParams) -> float:
    """Canonical pre-cancellation coefficient p_u / (p_u + p_j + sigma2)."""
    return ch.p_u / (ch.p_u + ch.p_j + ch.sigma2)


def dpc_user(ch: ChannelParams) -> UserStrategy:
    """Full-power i.i.d. Gaussian input with the canonical pre-cancellation
    coefficient; uncoupled from the state."""
    eye = np.eye(ch.n)
    return UserStrategy(
        n=ch.n,
        state_coupling=np.zeros((ch.n, ch.n)),
        innovation_cov=ch.p_u * eye,
        dpc_alpha=dpc_alpha_value(ch) * eye,
    )


def iid_gaussian_jammer(ch: ChannelParams) -> JammerStrategy:
    """White Gaussian jamming at full power, independent of the state."""
    return JammerStrategy(
        n=ch.n,
        state_coupling=np.zeros((ch.n, ch.n)),
        innovation_cov=ch.p_j * np.eye(ch.n),
    )


def linear_jammer(ch: ChannelParams, beta: float, sigma_r2: float) -> JammerStrategy:
    """Jammer J_i = beta * S_i + R_i with white innovation of variance sigma_r2."""
    if sigma_r2 < 0:
        raise ValueError("sigma_r2 must be >= 0")
    used = beta * beta * ch.sigma_s2 + sigma_r2
    if used > ch.p_j + POWER_SLACK_TOL:
        raise InfeasiblePower(
            f"beta^2 sigma_s2 + sigma_r2 = {used:.6g} exceeds budget {ch.p_j:.6g}"
        )
    return JammerStrategy(
        n=ch.n,
        state_coupling=beta * np.eye(ch.n),
        innovation_cov=sigma_r2 * np.eye(ch.n),
    )


def _random_scaled(rng: np.random.Generator, n: int, sigma_s2: float, budget: float):
    """Random coupling and PSD innovation rescaled onto or inside the budget."""
    coupling = rng.standard_normal((n, n)) / np.sqrt(n)
    root = rng.standard_normal((n, n)) / np.sqrt(n)
    innovation = root @ root.T
    used = sigma_s2 * np.trace(coupling @ coupling.T) + np.trace(innovation)
    if used <= 0.0:
        return np.zeros((n, n)), np.zeros((n, n))
    target = budget if rng.random() < 0.5 else budget * rng.random()
    scale = target / used
    return np.sqrt(scale) * coupling, scale * innovation


def random_feasible_user(ch: ChannelParams, seed) -> UserStrategy:
    """Deterministic-in-seed random feasible user strategy.

    The draw lands on the power boundary with probability one half and
    uniformly inside otherwise (mean power is
    ``RANDOM_DRAW_MEAN_POWER_FRACTION`` of the budget).  The auxiliary
    coefficient is a random scalar multiple of the identity plus a small
    random matrix part, so probe sweeps also exercise non-scalar coefficients.
    """
    rng = np.random.default_rng(seed)
    coupling, innovation = _random_scaled(rng, ch.n, ch.sigma_s2, ch.n * ch.p_u)
    alpha = rng.uniform(-0.5, 1.5) * np.eye(ch.n)
    alpha += 0.15 * rng.standard_normal((ch.n, ch.n)) / np.sqrt(ch.n)
    return UserStrategy(ch.n, coupling, innovation, alpha)


def random_feasible_jammer(ch: ChannelParams, seed) -> JammerStrategy:
    """Deterministic-in-seed random feasible zero-mean jammer strategy."""
    rng = np.random.default_rng(seed)
    if ch.p_j == 0.0:
        return JammerStrategy(ch.n, np.zeros((ch.n, ch.n)), np.zeros((ch.n, ch.n)))
    coupling, innovation = _random_scaled(rng, ch.n, ch.sigma_s2, ch.n * ch.p_j)
    return JammerStrategy(ch.n, coupling, innovation)


def joint_covariance(
    ch: ChannelParams,
    user: UserStrategy,
    jammer: JammerStrategy,
    *,
    validate: bool = True,
) -> JointCovariance:
    """Assemble the joint covariance of (X, S, J, Z, Y, U, W).

    Y = X + S + J + Z is the channel output, U = X + alpha S the auxiliary
    coding variable, and W = (I - alpha) X - alpha J - alpha Z the estimation
    residual used by the determinant-bound arguments.  All seven components
    are linear images of the four primitive ones, so the stacked matrix is
    PSD by construction.
    """
    n = ch.n
    if user.n != n or jammer.n != n:
        raise ValueError("strategy block lengths must match the channel")
    eye = np.eye(n)
    zero = np.zeros((n, n))
    a_u, lam_g, alpha = user.state_coupling, user.innovation_cov, user.dpc_alpha
    b_j, lam_r = jammer.state_coupling, jammer.innovation_cov

    sig_s = ch.sigma_s2 * eye
    base = np.block(
        [
            [a_u @ sig_s @ a_u.T + lam_g, a_u @ sig_s, a_u @ sig_s @ b_j.T, zero],
            [sig_s @ a_u.T, sig_s, sig_s @ b_j.T, zero],
            [b_j @ sig_s @ a_u.T, b_j @ sig_s, b_j @ sig_s @ b_j.T + lam_r, zero],
            [zero, zero, zero, ch.sigma2 * eye],
        ]
    )
    maps = np.vstack(
        [
            np.hstack([eye, zero, zero, zero]),            # X
            np.hstack([zero, eye, zero, zero]),            # S
            np.hstack([zero, zero, eye, zero]),            # J
            np.hstack([zero, zero, zero, eye]),            # Z
            np.hstack([eye, eye, eye, eye]),               # Y
            np.hstack([eye, alpha, zero, zero]),           # U
            np.hstack([eye - alpha, zero, -alpha, -alpha]),  # W
        ]
    )
    stacked = maps @ base @ maps.T
    mu = jammer.mean
    means = {
        "X": np.zeros(n),
        "S": np.zeros(n),
        "J": mu.copy(),
        "Z": np.zeros(n),
        "Y": mu.copy(),
        "U": np.zeros(n),
        "W": -alpha @ mu,
    }
    return JointCovariance(
        n=n,
        components=("X", "S", "J", "Z", "Y", "U", "W"),
        stacked_matrix=stacked,
        means=means,
        validate=validate,
    )
