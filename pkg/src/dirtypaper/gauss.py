"""Exact second-order Gaussian information machinery.

Everything here works on covariance matrices only: differential entropies via
log-determinants, conditional covariances via Schur complements, linear
least-squares error covariances, and mutual information between named blocks
of a jointly Gaussian vector.  All operations are pure; values are safe to
share across threads.

Conventions
-----------
* Log base defaults to bits ("bits"); natural log selectable ("nats").
* Symmetry is required to 1e-12 relative tolerance, positive semidefiniteness
  to an eigenvalue floor of -1e-10 * trace.  Inputs failing either are
  rejected, never repaired.
* Determinants are always taken through a factorization log-determinant,
  never through products of pivots, so block lengths up to a few dozen
  survive.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "SingularCovariance",
    "IllConditioned",
    "RidgeApplied",
    "CovarianceMatrix",
    "JointCovariance",
    "LlseResult",
    "differential_entropy",
    "schur_conditional_cov",
    "llse_error_covariance",
    "mutual_information",
]

LOG_TWO_PI_E = math.log(2.0 * math.pi * math.e)

#: determinant floor below which an entropy is treated as degenerate
DET_FLOOR = 1e-300
_LOG_DET_FLOOR = math.log(DET_FLOOR)

#: relative symmetry tolerance and PSD eigenvalue floor (times trace)
SYMMETRY_RTOL = 1e-12
PSD_FLOOR_RTOL = 1e-10

#: condition-number ceiling for conditioning blocks
CONDITION_LIMIT = 1e12

_BASES = ("bits", "nats")


class SingularCovariance(ValueError):
    """A covariance matrix is numerically singular where full rank is needed."""


class IllConditioned(ValueError):
    """A conditioning block exceeds the condition-number ceiling."""


class RidgeApplied(UserWarning):
    """Emitted whenever a diagonal ridge was added to stabilize an inversion."""


def _base_factor(base: str) -> float:
    if base not in _BASES:
        raise ValueError(f"unknown log base {base!r}; expected one of {_BASES}")
    return 1.0 if base == "nats" else 1.0 / math.log(2.0)


def _symmetrize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def validate_covariance(values, name: str = "covariance") -> np.ndarray:
    """Return ``values`` as a validated symmetric PSD float array."""
    arr = np.array(getattr(values, "values", values), dtype=float, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    scale = np.max(np.abs(arr))
    if scale > 0 and np.max(np.abs(arr - arr.T)) > SYMMETRY_RTOL * scale:
        raise ValueError(f"{name} is not symmetric within rtol {SYMMETRY_RTOL}")
    arr = _symmetrize(arr)
    min_eig = float(np.linalg.eigvalsh(arr)[0])
    floor = -PSD_FLOOR_RTOL * max(float(np.trace(arr)), 0.0)
    if min_eig < floor:
        raise ValueError(
            f"{name} is not positive semidefinite "
            f"(min eigenvalue {min_eig:.3e} < floor {floor:.3e})"
        )
    return arr


@dataclass(frozen=True)
class CovarianceMatrix:
    """Validated symmetric positive-semidefinite matrix (variance units)."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", validate_covariance(self.values))

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.values, dtype=dtype)


def _as_matrix(cov) -> np.ndarray:
    if isinstance(cov, CovarianceMatrix):
        return cov.values
    return validate_covariance(cov)


def _as_components(spec) -> tuple[str, ...]:
    if isinstance(spec, str):
        return (spec,)
    return tuple(spec)


@dataclass
class JointCovariance:
    """Block covariance over named, jointly Gaussian components.

    The stacked matrix over ``components`` (each block ``n`` wide) must be
    symmetric PSD.  When the channel components are present, construction
    additionally checks the output linearity Y = X + S + J + Z at the block
    level and that the channel noise Z is uncorrelated with X, S and J.
    """

    n: int
    components: tuple[str, ...]
    stacked_matrix: np.ndarray
    means: dict[str, np.ndarray] = field(default_factory=dict)
    validate: bool = True

    def __post_init__(self):
        self.components = tuple(self.components)
        if len(set(self.components)) != len(self.components):
            raise ValueError("duplicate component names")
        m = np.asarray(self.stacked_matrix, dtype=float)
        want = self.n * len(self.components)
        if m.shape != (want, want):
            raise ValueError(f"stacked matrix must be {want}x{want}, got {m.shape}")
        self.stacked_matrix = _symmetrize(m)
        for name in self.components:
            vec = np.asarray(self.means.get(name, np.zeros(self.n)), dtype=float)
            if vec.shape != (self.n,):
                raise ValueError(f"mean of {name} must have length {self.n}")
            self.means[name] = vec
        if self.validate:
            self._check_invariants()

    def _check_invariants(self):
        validate_covariance(self.stacked_matrix, "stacked joint covariance")
        have = set(self.components)
        if {"X", "S", "J", "Z", "Y"} <= have:
            for a in self.components:
                lhs = self.block(a, "Y")
                rhs = sum(self.block(a, c) for c in ("X", "S", "J", "Z"))
                scale = max(np.max(np.abs(self.stacked_matrix)), 1.0)
                if np.max(np.abs(lhs - rhs)) > 1e-9 * scale:
                    raise ValueError(f"Y block violates output linearity for {a}")
        if {"X", "S", "J", "Z"} <= have:
            for a in ("X", "S", "J"):
                if np.max(np.abs(self.block(a, "Z"))) > 1e-9 * max(
                    np.max(np.abs(self.stacked_matrix)), 1.0
                ):
                    raise ValueError(f"channel noise Z correlated with {a}")

    def _slice(self, name: str) -> slice:
        try:
            i = self.components.index(name)
        except ValueError:
            raise KeyError(f"unknown component {name!r}") from None
        return slice(i * self.n, (i + 1) * self.n)

    def block(self, a: str, b: str) -> np.ndarray:
        """Cross-covariance block E[a b^T] (means removed)."""
        return self.stacked_matrix[self._slice(a), self._slice(b)].copy()

    def cov(self, names) -> np.ndarray:
        """Stacked covariance of the listed components, in the given order."""
        names = _as_components(names)
        idx = np.concatenate([np.arange(self.n) + self._slice(c).start for c in names])
        return self.stacked_matrix[np.ix_(idx, idx)].copy()

    def cross(self, rows, cols) -> np.ndarray:
        rows, cols = _as_components(rows), _as_components(cols)
        ri = np.concatenate([np.arange(self.n) + self._slice(c).start for c in rows])
        ci = np.concatenate([np.arange(self.n) + self._slice(c).start for c in cols])
        return self.stacked_matrix[np.ix_(ri, ci)].copy()

    def mean(self, name: str) -> np.ndarray:
        return self.means[name].copy()

    @property
    def blocks(self) -> dict[tuple[str, str], np.ndarray]:
        """Materialized map from ordered component pairs to n x n blocks."""
        return {
            (a, b): self.block(a, b)
            for a in self.components
            for b in self.components
        }


def differential_entropy(cov, base: str = "bits", *, allow_singular: bool = False) -> float:
    """Differential entropy 0.5 * log((2 pi e)^dim * det(cov)).

    Raises :class:`SingularCovariance` once the determinant falls below
    ``DET_FLOOR``; with ``allow_singular=True`` the degenerate case is
    reported as ``-inf`` instead of raising.
    """
    arr = _as_matrix(cov)
    dim = arr.shape[0]
    sign, logdet = np.linalg.slogdet(arr)
    if sign <= 0 or logdet < _LOG_DET_FLOOR:
        if allow_singular:
            return float("-inf")
        raise SingularCovariance(
            f"determinant below {DET_FLOOR:g}; entropy is degenerate"
        )
    nats = 0.5 * (dim * LOG_TWO_PI_E + logdet)
    return nats * _base_factor(base)


def _schur_core(s_tt: np.ndarray, s_tg: np.ndarray, s_gg: np.ndarray, ridge: bool):
    """Shared Schur-complement solve with degeneracy and conditioning policy.

    Exactly-degenerate directions of the given block (numerically zero
    eigenvalues with consistent cross-covariance) are projected out, which is
    the correct generalized conditioning for a valid joint law.  Retained
    directions with condition number beyond ``CONDITION_LIMIT`` raise
    :class:`IllConditioned` unless ``ridge`` requests the documented
    1e-12 * trace diagonal loading, whose use is reported via
    :class:`RidgeApplied`.
    """
    s_gg = _symmetrize(np.asarray(s_gg, dtype=float))
    s_tg = np.atleast_2d(np.asarray(s_tg, dtype=float))
    w, v = np.linalg.eigh(s_gg)
    wmax = float(w[-1]) if w.size else 0.0
    scale = math.sqrt(max(float(np.trace(s_tt)), 0.0) * max(wmax, 0.0)) + 1e-300

    if wmax <= 0.0:
        if np.max(np.abs(s_tg)) > 1e-8 * scale + 1e-15:
            raise IllConditioned("given block is zero but cross-covariance is not")
        return _symmetrize(np.array(s_tt, dtype=float)), np.zeros_like(s_tg)

    null = w <= 64.0 * np.finfo(float).eps * wmax
    if np.any(null):
        leak = np.max(np.abs(s_tg @ v[:, null]))
        if leak > 1e-8 * scale + 1e-15:
            if not ridge:
                raise IllConditioned(
                    "given block is singular with inconsistent cross-covariance; "
                    "pass ridge=True to regularize"
                )
            return _schur_ridge(s_tt, s_tg, s_gg)

    kept = ~null
    cond = wmax / float(w[kept][0])
    if cond > CONDITION_LIMIT:
        if not ridge:
            raise IllConditioned(
                f"condition number {cond:.3e} exceeds {CONDITION_LIMIT:g}; "
                "pass ridge=True to regularize"
            )
        return _schur_ridge(s_tt, s_tg, s_gg)

    vk = v[:, kept]
    gain = (s_tg @ vk) / w[kept] @ vk.T
    err = _symmetrize(s_tt - gain @ s_tg.T)
    return err, gain


def _schur_ridge(s_tt, s_tg, s_gg):
    lam = 1e-12 * float(np.trace(s_gg))
    warnings.warn(
        f"applied diagonal ridge {lam:.3e} to an ill-conditioned given block",
        RidgeApplied,
        stacklevel=3,
    )
    loaded = s_gg + lam * np.eye(s_gg.shape[0])
    gain = np.linalg.solve(loaded, s_tg.T).T
    err = _symmetrize(s_tt - gain @ s_tg.T)
    return err, gain


def schur_conditional_cov(
    joint: JointCovariance,
    target,
    given=(),
    *,
    ridge: bool = False,
) -> CovarianceMatrix:
    """Covariance of ``target`` conditioned on ``given``.

    Returns the Schur complement S_TT - S_TG S_GG^{-1} S_TG^T; conditioning on
    nothing returns S_TT unchanged.
    """
    target, given = _as_components(target), _as_components(given)
    if set(target) & set(given):
        raise ValueError("target and given components must be disjoint")
    s_tt = joint.cov(target)
    if not given:
        return CovarianceMatrix(s_tt)
    err, _ = _schur_core(s_tt, joint.cross(target, given), joint.cov(given), ridge)
    return CovarianceMatrix(err)


@dataclass(frozen=True)
class LlseResult:
    """Error covariance of the linear least-squares estimate plus its gain.

    ``gain`` maps the stacked observation vector to the estimate; when the
    observations stack two blocks (say output then state), its column blocks
    are the per-block coefficient matrices of the estimator.
    """

    error_cov: CovarianceMatrix
    gain: np.ndarray


def llse_error_covariance(cov_tt, cov_tg, cov_gg, *, ridge: bool = False) -> LlseResult:
    """LLSE error covariance S_TT - S_TG S_GG^{-1} S_TG^T with the achieving gain."""
    s_tt = _as_matrix(cov_tt)
    s_gg = _symmetrize(np.atleast_2d(np.asarray(cov_gg, dtype=float)))
    s_tg = np.atleast_2d(np.asarray(cov_tg, dtype=float))
    if s_tg.shape != (s_tt.shape[0], s_gg.shape[0]):
        raise ValueError(
            f"cross-covariance shape {s_tg.shape} does not conform to "
            f"{s_tt.shape[0]}x{s_gg.shape[0]}"
        )
    err, gain = _schur_core(s_tt, s_tg, s_gg, ridge)
    return LlseResult(CovarianceMatrix(err), gain)


def _entropy_nats_unchecked(arr: np.ndarray) -> float:
    """Entropy of an already-trusted conditional covariance, in nats."""
    sign, logdet = np.linalg.slogdet(arr)
    if sign <= 0 or logdet < _LOG_DET_FLOOR:
        raise SingularCovariance(
            f"determinant below {DET_FLOOR:g}; entropy is degenerate"
        )
    return 0.5 * (arr.shape[0] * LOG_TWO_PI_E + logdet)


def _conditional_cov_unchecked(joint, target, given, ridge):
    s_tt = joint.cov(target)
    if not given:
        return s_tt
    err, _ = _schur_core(s_tt, joint.cross(target, given), joint.cov(given), ridge)
    return err


def mutual_information(
    joint: JointCovariance,
    a,
    b,
    given=(),
    base: str = "bits",
    *,
    ridge: bool = False,
) -> float:
    """Mutual information I(a; b | given) = h(a | given) - h(a | b, given)."""
    a, b, given = _as_components(a), _as_components(b), _as_components(given)
    groups = a + b + given
    if len(set(groups)) != len(groups):
        raise ValueError("a, b and given must be pairwise disjoint")
    h_prior = _entropy_nats_unchecked(_conditional_cov_unchecked(joint, a, given, ridge))
    h_post = _entropy_nats_unchecked(
        _conditional_cov_unchecked(joint, a, b + given, ridge)
    )
    return (h_prior - h_post) * _base_factor(base)
