"""Zero-sum game engine: utilities, capacities, best responses, saddle search.

Two games are supported over the channel Y = X + S + J + Z.  In the first the
decoder does not know the state and the contested quantity is the auxiliary
coding functional I(U; Y) - I(U; S); in the second the decoder knows the state
and the quantity is I(X; Y | S).  The user maximizes, the jammer minimizes,
and both games share the same closed-form saddle value
0.5 * log(1 + P_U / (sigma2 + P_J)).

Utilities are normalized per symbol (n-letter information divided by n) so
values are comparable across block lengths.  Optimizers follow a
derivative-free recipe: golden-section search for scalar coefficients and
projected gradient with backtracking for PSD matrix parameters, with a final
local grid refinement as an optimality certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .gauss import SingularCovariance, mutual_information
from .strategies import (
    ChannelParams,
    JammerStrategy,
    UserStrategy,
    dpc_alpha_value,
    dpc_user,
    iid_gaussian_jammer,
    joint_covariance,
    random_feasible_jammer,
    random_feasible_user,
)

__all__ = [
    "Game",
    "NonConvergence",
    "BestResponse",
    "EquilibriumReport",
    "ProbeReport",
    "costa_utility",
    "si_utility",
    "game_utility",
    "capacity_costa",
    "capacity_costa_jammer",
    "capacity_si_jammer",
    "best_response_user",
    "best_response_jammer",
    "solve_saddle",
    "verify_equilibrium",
]

PROBE_TOL = 1e-6
_INNER_ITER_LIMIT = 10_000
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class Game(Enum):
    """The two contested information quantities."""

    COSTA = "costa"
    SIDE_INFORMATION = "si"


class NonConvergence(RuntimeError):
    """Raised when an optimizer or the saddle iteration exhausts its budget.

    Carries the best result found so far in ``result`` and, for the saddle
    iteration, the utility trace in ``trace``.
    """

    def __init__(self, message, result=None, trace=None):
        super().__init__(message)
        self.result = result
        self.trace = trace


def _scalar_moments(ch, user, jammer):
    a_u = float(user.state_coupling[0, 0])
    lam_g = float(user.innovation_cov[0, 0])
    b_j = float(jammer.state_coupling[0, 0])
    lam_r = float(jammer.innovation_cov[0, 0])
    s = ch.sigma_s2
    xx = a_u * a_u * s + lam_g
    xs = a_u * s
    xj = a_u * s * b_j
    sj = s * b_j
    jj = b_j * b_j * s + lam_r
    xy = xx + xs + xj
    sy = xs + s + sj
    yy = xx + s + jj + ch.sigma2 + 2.0 * (xs + xj + sj)
    return xx, xs, xj, s, sj, jj, xy, sy, yy


_VAR_FLOOR = 1e-300
_LN2 = math.log(2.0)


def _half_log_ratio(num: float, den: float, base: str) -> float:
    if den < _VAR_FLOOR or num < _VAR_FLOOR:
        raise SingularCovariance("conditional variance is degenerate")
    value = 0.5 * math.log(num / den)
    return value / _LN2 if base == "bits" else value


def _costa_utility_scalar(ch, user, jammer) -> float:
    xx, xs, xj, s, sj, jj, xy, sy, yy = _scalar_moments(ch, user, jammer)
    alpha = float(user.dpc_alpha[0, 0])
    uu = xx + 2.0 * alpha * xs + alpha * alpha * s
    us = xs + alpha * s
    uy = xy + alpha * sy
    cond_s = uu - us * us / s if s > 0.0 else uu
    cond_y = uu - uy * uy / yy
    return _half_log_ratio(cond_s, cond_y, ch.base)


def _si_utility_scalar(ch, user, jammer) -> float:
    xx, xs, xj, s, sj, jj, xy, sy, yy = _scalar_moments(ch, user, jammer)
    cond_s = xx - xs * xs / s if s > 0.0 else xx
    if s > 0.0:
        det = yy * s - sy * sy
        cond_ys = xx - (xy * xy * s - 2.0 * xy * xs * sy + xs * xs * yy) / det
    else:
        cond_ys = xx - xy * xy / yy
    return _half_log_ratio(cond_s, cond_ys, ch.base)


def _costa_utility_matrix(ch, user, jammer) -> float:
    joint = joint_covariance(ch, user, jammer, validate=False)
    gain = mutual_information(joint, "U", "Y", (), ch.base)
    leak = mutual_information(joint, "U", "S", (), ch.base)
    return (gain - leak) / ch.n


def _si_utility_matrix(ch, user, jammer) -> float:
    joint = joint_covariance(ch, user, jammer, validate=False)
    return mutual_information(joint, "X", "Y", "S", ch.base) / ch.n


def costa_utility(ch: ChannelParams, user: UserStrategy, jammer: JammerStrategy) -> float:
    """Per-symbol I(U; Y) - I(U; S) for the decoder-blind game.

    May be negative for a poorly chosen pre-cancellation coefficient.
    Single-letter channels take an equivalent scalar path; block channels go
    through the assembled joint covariance.
    """
    if ch.n == 1:
        return _costa_utility_scalar(ch, user, jammer)
    return _costa_utility_matrix(ch, user, jammer)


def si_utility(ch: ChannelParams, user: UserStrategy, jammer: JammerStrategy) -> float:
    """Per-symbol I(X; Y | S) for the decoder-informed game; always >= 0."""
    if ch.n == 1:
        return _si_utility_scalar(ch, user, jammer)
    return _si_utility_matrix(ch, user, jammer)


def game_utility(ch, user, jammer, game: Game) -> float:
    if game is Game.COSTA:
        return costa_utility(ch, user, jammer)
    if game is Game.SIDE_INFORMATION:
        return si_utility(ch, user, jammer)
    raise ValueError(f"unknown game {game!r}")


def _capacity(p_u: float, p_j: float, sigma2: float, base: str) -> float:
    snr = p_u / (sigma2 + p_j)
    if base == "nats":
        return 0.5 * math.log1p(snr)
    return 0.5 * math.log2(1.0 + snr)


def capacity_costa(ch: ChannelParams) -> float:
    """No-jammer capacity 0.5 * log(1 + P_U / sigma2)."""
    return _capacity(ch.p_u, 0.0, ch.sigma2, ch.base)


def capacity_costa_jammer(ch: ChannelParams) -> float:
    """Saddle value of the decoder-blind game, 0.5*log(1 + P_U/(sigma2+P_J))."""
    return _capacity(ch.p_u, ch.p_j, ch.sigma2, ch.base)


def capacity_si_jammer(ch: ChannelParams) -> float:
    """Saddle value of the decoder-informed game; coincides with
    :func:`capacity_costa_jammer` exactly."""
    return _capacity(ch.p_u, ch.p_j, ch.sigma2, ch.base)


# ----------------------------------------------------------------------
# optimizer internals
# ----------------------------------------------------------------------


class _Budget:
    """Shared iteration allowance for one best-response call."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def take(self) -> bool:
        if self.used >= self.limit:
            return False
        self.used += 1
        return True


def _golden_min(f, lo: float, hi: float, tol: float):
    """Bounded golden-section minimization of a unimodal scalar function."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _refine_scalar(f, x, fx, lo, hi, span):
    """Local grid refinement certificate around a scalar optimum (of a
    minimization); returns an improved point if the search missed one."""
    best_x, best_f = x, fx
    for frac in (1e-2, 1e-3, 1e-4):
        step = span * frac
        for cand in (best_x - step, best_x + step):
            if lo <= cand <= hi:
                fc = f(cand)
                if fc < best_f:
                    best_x, best_f = cand, fc
    return best_x, best_f


def _project_psd_trace_ball(m: np.ndarray, total: float) -> np.ndarray:
    """Euclidean projection onto {PSD, trace <= total} via eigenvalue clipping."""
    w, v = np.linalg.eigh(0.5 * (m + m.T))
    w = np.clip(w, 0.0, None)
    excess = w.sum() - total
    if excess > 0.0:
        ws = np.sort(w)[::-1]
        cums = np.cumsum(ws)
        theta = 0.0
        for k in range(len(ws), 0, -1):
            theta = (cums[k - 1] - total) / k
            if ws[k - 1] > theta:
                break
        w = np.clip(w - theta, 0.0, None)
    return (v * w) @ v.T


def _fd_gradient(f, x: np.ndarray) -> np.ndarray:
    """Central finite-difference gradient over the free entries of a
    symmetric matrix parameter."""
    n = x.shape[0]
    g = np.zeros_like(x)
    for i in range(n):
        for j in range(i, n):
            h = 1e-6 * (1.0 + abs(x[i, j]))
            e = np.zeros_like(x)
            e[i, j] = h
            e[j, i] = h
            g_ij = (f(x + e) - f(x - e)) / (2.0 * h)
            g[i, j] = g_ij
            g[j, i] = g_ij
    return g


def _psd_extremize(f, start, total, maximize, budget: _Budget, param_tol=1e-8):
    """Projected gradient with backtracking over {PSD, trace <= total}.

    The objective is evaluated on projected points only, so probes never
    leave the feasible set.  Returns (matrix, value, converged); stalls
    politely when the iteration budget runs out, reporting the best point
    found.
    """
    sign = -1.0 if maximize else 1.0
    obj = (lambda m: sign * f(m))
    x = _project_psd_trace_ball(np.asarray(start, dtype=float), total)
    fx = obj(x)
    xnorm = float(np.linalg.norm(x))
    step = max(total, 1e-3) / max(x.shape[0], 1)
    converged = False
    while True:
        if not budget.take():
            break
        g = _fd_gradient(obj, x)
        if float(np.linalg.norm(g)) == 0.0:
            converged = True
            break
        t = step
        improved = False
        for _ in range(16):
            xn = _project_psd_trace_ball(x - t * g, total)
            moved = float(np.linalg.norm(xn - x))
            if moved <= 1e-14 * (1.0 + xnorm):
                # projection pins the iterate; smaller steps move even less
                break
            fn = obj(xn)
            if fn < fx:
                improved = True
                break
            t *= 0.5
        if not improved:
            converged = True
            break
        x, fx = xn, fn
        xnorm = float(np.linalg.norm(x))
        step = min(2.0 * t, 10.0 * max(total, 1.0))
        if moved <= param_tol * (1.0 + xnorm):
            converged = True
            break
    return x, sign * fx, converged


@dataclass
class BestResponse:
    """One side's optimum within its strategy family against a fixed opponent."""

    strategy: object
    utility: float
    iterations: int
    converged: bool = True
    flat: bool = False


def _jammer_family_minimize(ch, objective, *, warm=None, param_tol=1e-8, budget=None):
    """Minimize ``objective(jammer)`` over jammers linear in state.

    Outer golden-section search on the state coefficient beta over the
    feasible interval, inner projected eigen-descent on the innovation
    covariance over the PSD trace ball; the scalar optimum is certified by a
    local grid refinement.  Returns (strategy, value, budget).
    """
    n = ch.n
    budget = budget if budget is not None else _Budget(_INNER_ITER_LIMIT)
    if ch.p_j == 0.0:
        jam = iid_gaussian_jammer(ch)
        return jam, objective(jam), budget

    eye = np.eye(n)
    warmbox = {"lam": warm}

    def inner(beta: float):
        trace_budget = max(n * (ch.p_j - beta * beta * ch.sigma_s2), 0.0)
        coupling = beta * eye

        def f(lam):
            lam = _project_psd_trace_ball(lam, trace_budget)
            return objective(JammerStrategy._trusted(n, coupling, lam))

        start = warmbox["lam"] if warmbox["lam"] is not None else (trace_budget / n) * eye
        lam, val, _ = _psd_extremize(
            f, start, trace_budget, maximize=False, budget=budget, param_tol=param_tol
        )
        warmbox["lam"] = lam
        return lam, val

    if ch.sigma_s2 == 0.0:
        # state coupling is pointless without state power
        beta = 0.0
        lam, val = inner(beta)
    else:
        bmax = math.sqrt(ch.p_j / ch.sigma_s2)

        def g(beta):
            return inner(beta)[1]

        beta, val = _golden_min(g, -bmax, bmax, param_tol)
        beta, val = _refine_scalar(g, beta, val, -bmax, bmax, 2.0 * bmax)
        lam, val = inner(beta)

    return JammerStrategy(n, beta * eye, lam), val, budget


def best_response_jammer(
    ch: ChannelParams,
    user: UserStrategy,
    game: Game,
    *,
    param_tol: float = 1e-8,
    max_inner: int = _INNER_ITER_LIMIT,
) -> BestResponse:
    """Minimize the game utility over jammers linear in state against a
    fixed user strategy."""
    jam, val, budget = _jammer_family_minimize(
        ch,
        lambda j: game_utility(ch, user, j, game),
        param_tol=param_tol,
        budget=_Budget(max_inner),
    )
    return BestResponse(jam, val, budget.used, budget.used < budget.limit)


def best_response_user(
    ch: ChannelParams,
    jammer: JammerStrategy,
    game: Game,
    *,
    param_tol: float = 1e-8,
    max_inner: int = _INNER_ITER_LIMIT,
) -> BestResponse:
    """Maximize the game utility over the user family for the given game.

    Decoder-blind game: golden-section over the scalar pre-cancellation
    coefficient with full-power white input (richer deviations are covered by
    the equilibrium probe verifier).  Decoder-informed game: projected
    eigen-ascent over the input covariance on the PSD trace ball.
    """
    n = ch.n
    eye = np.eye(n)
    zero = np.zeros((n, n))
    budget = _Budget(max_inner)
    canonical = dpc_alpha_value(ch)

    if game is Game.SIDE_INFORMATION:
        def f(lam):
            lam = _project_psd_trace_ball(lam, n * ch.p_u)
            usr = UserStrategy._trusted(n, zero, lam, canonical * eye)
            return si_utility(ch, usr, jammer)

        lam, val, conv = _psd_extremize(
            f, ch.p_u * eye, n * ch.p_u, maximize=True, budget=budget,
            param_tol=param_tol,
        )
        usr = UserStrategy._trusted(n, zero, lam, canonical * eye)
        return BestResponse(usr, val, budget.used, conv)

    white = ch.p_u * eye

    def f(a):
        usr = UserStrategy._trusted(n, zero, white, a * eye)
        return costa_utility(ch, usr, jammer)

    if ch.sigma_s2 == 0.0:
        # no state to pre-cancel: the objective is flat in the coefficient
        usr = UserStrategy._trusted(n, zero, white, canonical * eye)
        return BestResponse(usr, f(canonical), 0, flat=True)

    # the optimizer bracket must cover the vertex even for strongly
    # state-correlated jammers, whose coefficient scales like 1 + |beta|
    reach = 1.0 + math.sqrt(ch.p_j / ch.sigma_s2) if ch.p_j > 0 else 1.0
    lo, hi = -reach - 0.5, reach + 0.5
    probes = [f(lo), f(0.0), f(canonical), f(hi)]
    if max(probes) - min(probes) < 1e-13:
        usr = UserStrategy._trusted(n, zero, white, canonical * eye)
        return BestResponse(usr, f(canonical), 0, flat=True)

    alpha, neg = _golden_min(lambda a: -f(a), lo, hi, param_tol)
    alpha, neg = _refine_scalar(lambda a: -f(a), alpha, neg, lo, hi, hi - lo)
    usr = UserStrategy._trusted(n, zero, white, alpha * eye)
    return BestResponse(usr, -neg, budget.used)


@dataclass
class EquilibriumReport:
    """Outcome of the alternating best-response saddle search.

    ``duality_gap`` is max_u u(u, j*) minus min_j u(u*, j); zero at an exact
    saddle.  ``start_values`` collects the converged value of every start
    (canonical first, then the seeded random starts).
    """

    value: float
    user_strategy: UserStrategy
    jammer_strategy: JammerStrategy
    duality_gap: float
    iterations: int
    probe_violations: list = field(default_factory=list)
    start_values: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    flat: bool = False

    def __post_init__(self):
        if self.duality_gap < -1e-9:
            raise ValueError(f"duality gap {self.duality_gap} below -1e-9")
        if self.value < -1e-9:
            raise ValueError(f"saddle value {self.value} negative")


def _mean_diag(mat: np.ndarray) -> float:
    return float(np.mean(np.diag(mat)))


def _strategies_equal(a: JammerStrategy, b: JammerStrategy) -> bool:
    return np.allclose(
        a.state_coupling, b.state_coupling, atol=1e-12
    ) and np.allclose(a.innovation_cov, b.innovation_cov, atol=1e-12)


def _blend_jammers(old: JammerStrategy, new: JammerStrategy, weight: float):
    if weight >= 1.0:
        return new
    return JammerStrategy._trusted(
        old.n,
        (1.0 - weight) * old.state_coupling + weight * new.state_coupling,
        (1.0 - weight) * old.innovation_cov + weight * new.innovation_cov,
    )


def solve_saddle(
    ch: ChannelParams,
    game: Game,
    max_rounds: int = 32,
    tol: float = 1e-6,
    *,
    random_starts: int = 8,
    seed: int = 1234,
) -> EquilibriumReport:
    """Alternating best responses to the saddle point of the chosen game.

    Each round plays an exact user best response against the current jammer,
    then moves the jammer toward its exact best response with an adaptive
    relaxation weight (plain alternation can cycle between state-correlated
    and state-cancelling jammers; damping restores convergence without
    moving the fixed points).  A run converges when successive utilities
    differ by less than ``tol``, including the undamped best-response value
    so a small relaxation weight cannot fake stagnation.

    Near the saddle the best-response map can have a nearly flat valley, in
    which case pure alternation stops contracting; a run that has not
    stagnated by the alternation round budget finishes with one envelope
    round in which the jammer minimizes the user's best-response value
    directly.  Runs start from the canonical jammer and from
    ``random_starts`` seeded random jammers; a run that still fails ``tol``
    raises :class:`NonConvergence` with the utility trace attached.
    """
    starts = [iid_gaussian_jammer(ch)]
    for child in np.random.SeedSequence(seed).spawn(random_starts):
        starts.append(random_feasible_jammer(ch, child))

    start_values = []
    main_trace = None
    main_user = main_jammer = None
    main_rounds = 0
    flat = False
    alternation_cap = max_rounds - 1 if max_rounds > 1 else max_rounds
    alternation_cap = min(alternation_cap, 12)

    for run_idx, jam in enumerate(starts):
        trace = []
        prev_minus = None
        prev_resid = None
        weight = 1.0
        converged = False
        for rnd in range(1, alternation_cap + 1):
            ur = best_response_user(ch, jam, game)
            u_plus = ur.utility
            jr = best_response_jammer(ch, ur.strategy, game)
            jam_new = _blend_jammers(jam, jr.strategy, weight)
            u_minus = game_utility(ch, ur.strategy, jam_new, game)
            trace.append(
                {
                    "round": rnd,
                    "utility_after_user_br": u_plus,
                    "utility_after_jammer_br": u_minus,
                    "beta": _mean_diag(jam_new.state_coupling),
                    "alpha": _mean_diag(ur.strategy.dpc_alpha),
                    "gap": u_plus - u_minus,
                }
            )
            jam_unchanged = _strategies_equal(jr.strategy, jam)
            stalled = (
                abs(u_minus - u_plus) < tol
                and abs(jr.utility - u_plus) < tol
                and (
                    (prev_minus is not None and abs(u_plus - prev_minus) < tol)
                    or jam_unchanged
                )
            )
            if stalled:
                converged = True
                flat = flat or ur.flat
                final_user = ur.strategy
                jam = jam_new
                break
            if prev_minus is not None:
                # normalize by the step weight so the controller tracks the
                # actual contraction of the iterates, not its own step size
                resid = (u_minus - prev_minus) / weight
                if prev_resid is not None:
                    if resid * prev_resid < 0.0:
                        weight = max(0.4 * weight, 0.05)
                    elif abs(resid) >= 0.98 * abs(prev_resid):
                        weight = max(0.7 * weight, 0.05)
                    else:
                        weight = min(1.25 * weight, 1.0)
                prev_resid = resid
            prev_minus = u_minus
            jam = jam_new
        if not converged and max_rounds > alternation_cap:
            # envelope round: the jammer minimizes the user's best-response
            # value, which is the min-max problem itself
            jam_polished, _, _ = _jammer_family_minimize(
                ch,
                lambda j: best_response_user(ch, j, game).utility,
                warm=jam.innovation_cov,
            )
            ur = best_response_user(ch, jam_polished, game)
            u_plus = ur.utility
            u_minus = best_response_jammer(ch, ur.strategy, game).utility
            rnd = len(trace) + 1
            trace.append(
                {
                    "round": rnd,
                    "utility_after_user_br": u_plus,
                    "utility_after_jammer_br": u_minus,
                    "beta": _mean_diag(jam_polished.state_coupling),
                    "alpha": _mean_diag(ur.strategy.dpc_alpha),
                    "gap": u_plus - u_minus,
                }
            )
            if abs(u_plus - u_minus) < tol:
                converged = True
                flat = flat or ur.flat
                final_user = ur.strategy
                jam = jam_polished
        if not converged:
            raise NonConvergence(
                f"saddle iteration did not stagnate within {max_rounds} rounds "
                f"(start {run_idx})",
                trace=trace,
            )
        start_values.append(game_utility(ch, final_user, jam, game))
        if run_idx == 0:
            main_trace, main_user, main_jammer, main_rounds = (
                trace,
                final_user,
                jam,
                rnd,
            )

    value = start_values[0]
    gap_hi = best_response_user(ch, main_jammer, game).utility
    gap_lo = best_response_jammer(ch, main_user, game).utility
    report = EquilibriumReport(
        value=value,
        user_strategy=main_user,
        jammer_strategy=main_jammer,
        duality_gap=gap_hi - gap_lo,
        iterations=main_rounds,
        start_values=start_values,
        trace=main_trace,
        flat=flat,
    )
    ceiling = capacity_costa(ch)
    if report.value > ceiling + 1e-9:
        raise ValueError(
            f"saddle value {report.value} exceeds the no-jammer capacity {ceiling}"
        )
    return report


@dataclass(frozen=True)
class ProbeViolation:
    side: str
    index: int
    improvement: float


@dataclass
class ProbeReport:
    """Random-deviation audit of a candidate saddle pair.

    Violations are data, not errors: each records how much a probe improved
    on the candidate beyond the tolerance.
    """

    base_utility: float
    n_user_probes: int
    n_jammer_probes: int
    violations: list
    max_user_improvement: float
    max_jammer_improvement: float
    tolerance: float = PROBE_TOL

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_equilibrium(
    ch: ChannelParams,
    user: UserStrategy,
    jammer: JammerStrategy,
    game: Game,
    n_probes: int = 1000,
    seed: int = 0,
) -> ProbeReport:
    """Probe a candidate pair with random feasible unilateral deviations.

    No random user may beat the candidate user against the candidate jammer
    by more than the tolerance, and no random jammer may push the utility
    below the candidate value by more than the tolerance.  With a zero jammer
    budget the jammer probe set is empty and only the user side is checked.
    """
    base = game_utility(ch, user, jammer, game)
    user_ss, jammer_ss = np.random.SeedSequence(seed).spawn(2)
    violations = []
    max_user = -math.inf
    for i, child in enumerate(user_ss.spawn(n_probes)):
        probe = random_feasible_user(ch, child)
        improvement = game_utility(ch, probe, jammer, game) - base
        max_user = max(max_user, improvement)
        if improvement > PROBE_TOL:
            violations.append(ProbeViolation("user", i, improvement))
    n_jam = 0 if ch.p_j == 0.0 else n_probes
    max_jam = -math.inf
    for i, child in enumerate(jammer_ss.spawn(n_jam)):
        probe = random_feasible_jammer(ch, child)
        improvement = base - game_utility(ch, user, probe, game)
        max_jam = max(max_jam, improvement)
        if improvement > PROBE_TOL:
            violations.append(ProbeViolation("jammer", i, improvement))
    return ProbeReport(
        base_utility=base,
        n_user_probes=n_probes,
        n_jammer_probes=n_jam,
        violations=violations,
        max_user_improvement=max_user,
        max_jammer_improvement=max_jam,
    )
