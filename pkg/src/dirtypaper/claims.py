"""Executable verifiers for the saddle-point proof chain.

Each check turns one step of the equilibrium argument into a numerical
property with an explicit slack: the ordering of the two game utilities, mean
invariance of the utility, the uselessness of jammer memory, the
Hadamard/AM-GM determinant bound on the estimation residual, the
orthogonality of the residual and the channel output at the canonical
coefficient, and the state-blindness of the optimal jammer confirmed by a
brute-force grid.

A check returns a :class:`ClaimReport`; violations are serialized so a
failure can be reproduced exactly.  ``default_claim_suite`` runs every check
at its documented trial count and is the engine behind the verification
command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .game import (
    Game,
    capacity_costa_jammer,
    costa_utility,
    game_utility,
    si_utility,
)
from .strategies import (
    ChannelParams,
    JammerStrategy,
    UserStrategy,
    dpc_alpha_value,
    dpc_user,
    feasible,
    joint_covariance,
    random_feasible_jammer,
    random_feasible_user,
)

__all__ = [
    "ClaimReport",
    "check_costa_le_si",
    "check_zero_mean_invariance",
    "check_memoryless_dominance",
    "check_det_bound",
    "check_wprime_indep_yprime",
    "check_beta_zero_optimal",
    "default_claim_suite",
]


@dataclass
class ClaimReport:
    """Outcome of one claim check.

    ``worst_slack`` is the smallest margin by which the claimed inequality
    held across all trials; the check passes exactly when it clears the
    declared tolerance.  A failing check carries a serialized counterexample.
    """

    claim_id: str
    trials: int
    worst_slack: float
    tolerance: float
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.worst_slack >= -self.tolerance


def _serialize_user(user: UserStrategy) -> dict:
    return {
        "n": user.n,
        "state_coupling": user.state_coupling.tolist(),
        "innovation_cov": user.innovation_cov.tolist(),
        "dpc_alpha": user.dpc_alpha.tolist(),
    }


def _serialize_jammer(jam: JammerStrategy) -> dict:
    return {
        "n": jam.n,
        "state_coupling": jam.state_coupling.tolist(),
        "innovation_cov": jam.innovation_cov.tolist(),
        "mean": jam.mean.tolist(),
    }


def check_costa_le_si(
    ch: ChannelParams, user: UserStrategy, jammer: JammerStrategy
) -> ClaimReport:
    """The decoder-blind utility never exceeds the decoder-informed one.

    Holds for every auxiliary coefficient because the auxiliary variable is a
    function of the input and the state; at the canonical pair the two
    utilities coincide.
    """
    slack = si_utility(ch, user, jammer) - costa_utility(ch, user, jammer)
    counterexample = None
    if slack < -1e-9:
        counterexample = {
            "user": _serialize_user(user),
            "jammer": _serialize_jammer(jammer),
            "slack": slack,
        }
    return ClaimReport("costa_le_si", 1, slack, 1e-9, counterexample)


def check_zero_mean_invariance(ch: ChannelParams, jammer: JammerStrategy) -> ClaimReport:
    """A jamming mean never changes the utility and only wastes power.

    Compares the jammer against its de-meaned twin: both games' utilities
    must agree exactly (second-order quantities ignore means) and the twin
    must gain power slack of exactly the squared mean per symbol.
    """
    demeaned = JammerStrategy(
        jammer.n, jammer.state_coupling, jammer.innovation_cov, mean=None
    )
    user = dpc_user(ch)
    d_costa = abs(
        costa_utility(ch, user, jammer) - costa_utility(ch, user, demeaned)
    )
    d_si = abs(si_utility(ch, user, jammer) - si_utility(ch, user, demeaned))
    gain = (
        feasible(demeaned, ch).power_slack - feasible(jammer, ch).power_slack
    )
    mean_power = float(jammer.mean @ jammer.mean)
    slacks = [-d_costa, -d_si, gain - mean_power + 1e-15]
    worst = min(slacks)
    counterexample = None
    if worst < -1e-12:
        counterexample = {"jammer": _serialize_jammer(jammer), "slacks": slacks}
    return ClaimReport("zero_mean_invariance", 1, worst, 1e-12, counterexample)


def _whitened(jam: JammerStrategy) -> JammerStrategy:
    level = float(np.trace(jam.innovation_cov)) / jam.n
    return JammerStrategy(jam.n, jam.state_coupling, level * np.eye(jam.n))


def _as_seedseq(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def check_memoryless_dominance(
    ch: ChannelParams, n: int, seed, trials: int = 500
) -> ClaimReport:
    """Correlation across symbols never helps the jammer.

    Against the white full-power user in the decoder-informed game, any
    correlated innovation is at most as harmful as its equal-power white
    version, so the utility may only go up when memory is added.
    """
    if n < 2:
        raise ValueError("memory only exists for block length n >= 2")
    ch_n = replace(ch, n=n)
    user = dpc_user(ch_n)
    worst = math.inf
    counterexample = None
    for child in _as_seedseq(seed).spawn(trials):
        jam = random_feasible_jammer(ch_n, child)
        slack = si_utility(ch_n, user, jam) - si_utility(ch_n, user, _whitened(jam))
        if slack < worst:
            worst = slack
            if slack < -1e-9:
                counterexample = {"jammer": _serialize_jammer(jam), "slack": slack}
    return ClaimReport("memoryless_dominance", trials, worst, 1e-9, counterexample)


def check_det_bound(ch: ChannelParams, jammer: JammerStrategy) -> ClaimReport:
    """Hadamard/AM-GM bound on the residual covariance determinant.

    With the canonical user, the determinant of the residual covariance of
    W = (1-a) X - a J - a Z never exceeds the white-jammer value
    ((1-a)^2 P_U + a^2 P_J + a^2 sigma2)^n.  Compared in the log domain.
    """
    user = dpc_user(ch)
    a = dpc_alpha_value(ch)
    lam_w = joint_covariance(ch, user, jammer).block("W", "W")
    sign, logdet = np.linalg.slogdet(lam_w)
    if sign <= 0:
        logdet = -math.inf
    bound = (1.0 - a) ** 2 * ch.p_u + a * a * ch.p_j + a * a * ch.sigma2
    slack = ch.n * math.log(bound) - logdet
    counterexample = None
    if slack < -1e-9:
        counterexample = {"jammer": _serialize_jammer(jammer), "slack": slack}
    return ClaimReport("det_bound", 1, slack, 1e-9, counterexample)


def check_wprime_indep_yprime(ch: ChannelParams, alpha_shift: float = 0.0) -> ClaimReport:
    """At the canonical coefficient the residual decouples from the output.

    The cross-covariance of W and Y vanishes identically because
    (1-a) P_U - a P_J - a sigma2 = 0 at a = P_U/(P_U+P_J+sigma2).
    ``alpha_shift`` perturbs the coefficient; it exists as the documented
    fault-injection hook and as the negative control.
    """
    a = dpc_alpha_value(ch) + alpha_shift
    user = UserStrategy(
        ch.n,
        np.zeros((ch.n, ch.n)),
        ch.p_u * np.eye(ch.n),
        a * np.eye(ch.n),
    )
    cross = joint_covariance(ch, user, iid_jammer_for(ch)).block("W", "Y")
    worst = -float(np.max(np.abs(cross)))
    counterexample = None
    if worst < -1e-12:
        counterexample = {"alpha": a, "max_cross_covariance": -worst}
    return ClaimReport("wprime_indep_yprime", 1, worst, 1e-12, counterexample)


def iid_jammer_for(ch: ChannelParams) -> JammerStrategy:
    return JammerStrategy(
        ch.n, np.zeros((ch.n, ch.n)), ch.p_j * np.eye(ch.n)
    )


def _costa_grid_utility(ch, alpha, beta, sigma_r2):
    """Vectorized single-letter utility of the decoder-blind game for the
    canonical full-power user against linear jammers; the brute-force grid
    oracle path."""
    s, p = ch.sigma_s2, ch.p_u
    var_u = p + alpha * alpha * s
    cov = p + alpha * s * (1.0 + beta)
    var_y = p + (1.0 + beta) ** 2 * s + sigma_r2 + ch.sigma2
    cond_y = var_u - cov * cov / var_y
    value = 0.5 * np.log(p / cond_y)
    return value / math.log(2.0) if ch.base == "bits" else value


def _si_grid_utility(ch, beta, sigma_r2):
    """Vectorized single-letter utility of the decoder-informed game for the
    white full-power user against linear jammers."""
    p = ch.p_u
    noise = sigma_r2 + ch.sigma2
    value = 0.5 * np.log((p + noise) / noise)
    return (value / math.log(2.0) if ch.base == "bits" else value) + 0.0 * beta


def check_beta_zero_optimal(
    ch: ChannelParams, game: Game, grid_res: float = 1e-3
) -> ClaimReport:
    """Brute-force grid confirmation that the optimal jammer ignores the state.

    Sweeps the feasible (beta, sigma_r2) rectangle at the given resolution
    against the canonical user of the game and requires the utility minimum
    to sit within one grid cell of (0, P_J).
    """
    if ch.n != 1:
        raise ValueError("the grid oracle is single-letter; use n = 1")
    if grid_res <= 0:
        raise ValueError("grid_res must be positive")
    if ch.p_j == 0.0:
        return ClaimReport(f"beta_zero_optimal_{game.value}", 1, grid_res, 1e-12)

    alpha = dpc_alpha_value(ch)
    if ch.sigma_s2 > 0.0:
        k = int(math.ceil(math.sqrt(ch.p_j / ch.sigma_s2) / grid_res))
        betas = np.arange(-k, k + 1, dtype=float) * grid_res
    else:
        betas = np.zeros(1)
    m = int(math.floor(ch.p_j / grid_res + 1e-12))
    sigmas = np.arange(0, m + 1, dtype=float) * grid_res
    if sigmas[-1] < ch.p_j - 1e-12:
        sigmas = np.append(sigmas, ch.p_j)

    best = (math.inf, 0.0, 0.0)
    chunk = max(1, int(4e6) // max(len(sigmas), 1))
    for lo in range(0, len(betas), chunk):
        b = betas[lo : lo + chunk, None]
        r = sigmas[None, :]
        mask = b * b * ch.sigma_s2 + r <= ch.p_j + 1e-12
        if game is Game.COSTA:
            val = _costa_grid_utility(ch, alpha, b, r)
        else:
            val = _si_grid_utility(ch, b, r)
        val = np.where(mask, val, np.inf)
        i, j = np.unravel_index(int(np.argmin(val)), val.shape)
        if val[i, j] < best[0]:
            best = (float(val[i, j]), float(b[i, 0]), float(sigmas[j]))

    _, beta_star, sigma_star = best
    slack = min(grid_res - abs(beta_star), grid_res - abs(sigma_star - ch.p_j))
    counterexample = None
    if slack < -1e-12:
        counterexample = {
            "argmin_beta": beta_star,
            "argmin_sigma_r2": sigma_star,
            "argmin_utility": best[0],
        }
    return ClaimReport(
        f"beta_zero_optimal_{game.value}",
        int(len(betas)) * int(len(sigmas)),
        slack,
        1e-12,
        counterexample,
    )


def _check_saddle_value_closed_form(ch: ChannelParams, alpha_shift: float) -> ClaimReport:
    """Canonical-pair utilities must reproduce the closed-form saddle value."""
    a = dpc_alpha_value(ch) + alpha_shift
    user = UserStrategy(
        ch.n, np.zeros((ch.n, ch.n)), ch.p_u * np.eye(ch.n), a * np.eye(ch.n)
    )
    jam = iid_jammer_for(ch)
    target = capacity_costa_jammer(ch)
    worst = -max(
        abs(costa_utility(ch, user, jam) - target),
        abs(si_utility(ch, user, jam) - target),
    )
    counterexample = None
    if worst < -1e-9:
        counterexample = {"alpha": a, "closed_form": target}
    return ClaimReport("saddle_value_closed_form", 1, worst, 1e-9, counterexample)


def _merge(claim_id: str, reports) -> ClaimReport:
    worst = math.inf
    trials = 0
    counterexample = None
    tolerance = None
    for rep in reports:
        trials += rep.trials
        tolerance = rep.tolerance if tolerance is None else tolerance
        if rep.worst_slack < worst:
            worst = rep.worst_slack
            counterexample = rep.counterexample
    return ClaimReport(claim_id, trials, worst, tolerance, counterexample)


def _random_jammer_with_mean(ch: ChannelParams, child) -> JammerStrategy:
    rng = np.random.default_rng(child)
    base = random_feasible_jammer(ch, rng)
    head = feasible(base, ch).power_slack
    if head <= 0.0:
        return base
    mu = rng.standard_normal(ch.n)
    norm = float(np.linalg.norm(mu))
    if norm > 0.0:
        mu *= math.sqrt(0.9 * head * rng.random()) / norm
    return JammerStrategy(ch.n, base.state_coupling, base.innovation_cov, mean=mu)


def default_claim_suite(
    seed: int = 2024,
    trial_scale: float = 1.0,
    alpha_fault: float = 0.0,
    ch: ChannelParams | None = None,
) -> list[ClaimReport]:
    """Run every claim check at its documented default trial count.

    ``trial_scale`` shrinks or grows the random-sweep sizes; ``alpha_fault``
    shifts the canonical coefficient and is the documented fault-injection
    hook (the suite must fail when it is nonzero).
    """
    ch = ch if ch is not None else ChannelParams()

    def scaled(count: int) -> int:
        return max(1, int(round(count * trial_scale)))

    root = np.random.SeedSequence(seed)
    keys = {name: ss for name, ss in zip(
        ("order", "mean", "memory", "det"), root.spawn(4)
    )}
    reports = []

    order = []
    per_n = scaled(334)
    for n in (1, 2, 4):
        ch_n = replace(ch, n=n)
        for child in keys["order"].spawn(per_n):
            u_seed, j_seed = child.spawn(2)
            order.append(
                check_costa_le_si(
                    ch_n,
                    random_feasible_user(ch_n, u_seed),
                    random_feasible_jammer(ch_n, j_seed),
                )
            )
    reports.append(_merge("costa_le_si", order))

    reports.append(
        _merge(
            "zero_mean_invariance",
            [
                check_zero_mean_invariance(ch, _random_jammer_with_mean(ch, child))
                for child in keys["mean"].spawn(scaled(100))
            ],
        )
    )

    reports.append(
        check_memoryless_dominance(ch, 4, keys["memory"], trials=scaled(500))
    )

    ch4 = replace(ch, n=4)
    reports.append(
        _merge(
            "det_bound",
            [
                check_det_bound(ch4, random_feasible_jammer(ch4, child))
                for child in keys["det"].spawn(scaled(500))
            ],
        )
    )

    reports.append(check_wprime_indep_yprime(ch, alpha_shift=alpha_fault))
    grid = max(1e-3, 1e-3 / max(trial_scale, 1e-6))
    reports.append(check_beta_zero_optimal(ch, Game.COSTA, grid_res=grid))
    reports.append(check_beta_zero_optimal(ch, Game.SIDE_INFORMATION, grid_res=grid))
    reports.append(_check_saddle_value_closed_form(ch, alpha_fault))
    return reports
