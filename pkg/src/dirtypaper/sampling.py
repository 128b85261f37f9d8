"""Sampling-based cross-validation of the closed-form information quantities.

Draws system realizations (state, innovations, noise), forms the channel
output and the auxiliary variable, and estimates mutual information by
plugging the sample covariance into the Gaussian closed form.  The plug-in
estimator is consistent here because the model is exactly Gaussian; for
non-Gaussian jammer shapes it is used deliberately as a Gaussian-surrogate
bound and labeled as such.

Raw draws can be dumped to a binary file with a fixed eight-value header;
the exact layout is documented in the package README.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import si_utility
from .strategies import ChannelParams, JammerStrategy, UserStrategy, iid_gaussian_jammer

__all__ = [
    "DegenerateSample",
    "SampleBatch",
    "PluginMi",
    "NonGaussianProbe",
    "sample_system",
    "plugin_mi",
    "nongaussian_probe",
    "write_sample_dump",
    "read_sample_dump",
    "DUMP_MAGIC",
    "DUMP_VERSION",
    "DUMP_COMPONENTS",
]

DUMP_COMPONENTS = ("X", "S", "J", "Z", "Y", "U")
DUMP_MAGIC = int.from_bytes(b"DPSAMP01", "little")
DUMP_VERSION = 1
JACKKNIFE_FOLDS = 20


class DegenerateSample(ValueError):
    """The sample covariance is not positive semidefinite."""


@dataclass
class SampleBatch:
    """Realizations of the channel; rows are draws, columns block symbols.

    The output satisfies y = x + s + j + z elementwise by construction and
    u = x + alpha s with the user's auxiliary coefficient.
    """

    n: int
    count: int
    seed: int
    x: np.ndarray
    s: np.ndarray
    j: np.ndarray
    z: np.ndarray
    y: np.ndarray
    u: np.ndarray

    def component(self, name: str) -> np.ndarray:
        try:
            return getattr(self, name.lower())
        except AttributeError:
            raise KeyError(f"unknown component {name!r}") from None


def _psd_factor(cov: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(cov)
    return v * np.sqrt(np.clip(w, 0.0, None))


def sample_system(
    ch: ChannelParams,
    user: UserStrategy,
    jammer: JammerStrategy,
    count: int,
    seed: int,
) -> SampleBatch:
    """Draw ``count`` independent realizations of the whole system.

    Deterministic in the seed; the four primitive draws happen in the fixed
    order state, user innovation, jammer innovation, channel noise.
    """
    if count < 2:
        raise ValueError("need at least two draws")
    rng = np.random.default_rng(seed)
    n = ch.n
    s = rng.standard_normal((count, n)) * math.sqrt(ch.sigma_s2)
    g = rng.standard_normal((count, n)) @ _psd_factor(user.innovation_cov).T
    r = rng.standard_normal((count, n)) @ _psd_factor(jammer.innovation_cov).T
    z = rng.standard_normal((count, n)) * math.sqrt(ch.sigma2)
    x = s @ user.state_coupling.T + g
    j = s @ jammer.state_coupling.T + r + jammer.mean
    y = x + s + j + z
    u = x + s @ user.dpc_alpha.T
    return SampleBatch(n, count, seed, x, s, j, z, y, u)


@dataclass(frozen=True)
class PluginMi:
    """Plug-in mutual information estimate with a jackknife standard error."""

    estimate: float
    standard_error: float
    fold_estimates: np.ndarray


def _as_names(spec) -> tuple[str, ...]:
    return (spec,) if isinstance(spec, str) else tuple(spec)


def _sym(cov: np.ndarray) -> np.ndarray:
    return 0.5 * (cov + cov.T)


def _gauss_mi(cov: np.ndarray, na: int, nb: int, nc: int) -> float:
    """I(A;B|C) in nats via log-determinants of the stacked sample covariance
    ordered [A, B, C]."""
    d = cov.shape[0]
    idx_a = np.arange(na)
    idx_b = np.arange(na, na + nb)
    idx_c = np.arange(na + nb, d)
    def logdet(idx):
        if len(idx) == 0:
            return 0.0
        sign, val = np.linalg.slogdet(cov[np.ix_(idx, idx)])
        if sign <= 0:
            raise DegenerateSample("sample covariance block is singular")
        return val
    return 0.5 * (
        logdet(np.concatenate([idx_a, idx_c]))
        + logdet(np.concatenate([idx_b, idx_c]))
        - logdet(np.arange(d))
        - logdet(idx_c)
    )


def plugin_mi(batch: SampleBatch, a, b, given=(), base: str = "bits") -> PluginMi:
    """Gaussian plug-in estimate of I(a; b | given) from sample covariance.

    The standard error comes from a delete-one-fold jackknife over
    ``JACKKNIFE_FOLDS`` contiguous folds.
    """
    a, b, given = _as_names(a), _as_names(b), _as_names(given)
    data = np.hstack([batch.component(c) for c in a + b + given])
    count, dim = data.shape
    if count <= 10 * dim:
        raise ValueError(f"need more than {10 * dim} draws for {dim} dimensions")
    na, nb = len(a) * batch.n, len(b) * batch.n

    full_cov = _sym(np.cov(data, rowvar=False, ddof=1).reshape(dim, dim))
    floor = -1e-10 * max(float(np.trace(full_cov)), 0.0)
    if float(np.linalg.eigvalsh(full_cov)[0]) < floor:
        raise DegenerateSample("sample covariance is not positive semidefinite")
    factor = 1.0 / math.log(2.0) if base == "bits" else 1.0
    estimate = _gauss_mi(full_cov, na, nb, dim - na - nb) * factor

    bounds = np.linspace(0, count, JACKKNIFE_FOLDS + 1, dtype=int)
    total_sum = data.sum(axis=0)
    total_sq = data.T @ data
    folds = np.empty(JACKKNIFE_FOLDS)
    for k in range(JACKKNIFE_FOLDS):
        part = data[bounds[k] : bounds[k + 1]]
        m = count - part.shape[0]
        mean = (total_sum - part.sum(axis=0)) / m
        sq = total_sq - part.T @ part
        cov = _sym((sq - m * np.outer(mean, mean)) / (m - 1))
        folds[k] = _gauss_mi(cov, na, nb, dim - na - nb) * factor
    se = math.sqrt(
        (JACKKNIFE_FOLDS - 1) / JACKKNIFE_FOLDS * float(np.sum((folds - folds.mean()) ** 2))
    )
    return PluginMi(estimate, se, folds)


@dataclass(frozen=True)
class NonGaussianProbe:
    """Gaussian-surrogate comparison of a power-matched non-Gaussian jammer.

    ``margin`` is the surrogate utility of the non-Gaussian jammer minus the
    exact utility of the Gaussian jammer; the Gaussian jammer is at least as
    harmful, so the margin must clear minus three standard errors.
    """

    shape: str
    estimate: float
    standard_error: float
    gaussian_utility: float
    margin: float

    @property
    def passed(self) -> bool:
        return self.margin >= -3.0 * self.standard_error


def _innovation_draw(rng, shape: str, count: int, n: int, power: float) -> np.ndarray:
    """Zero-mean white draws with per-symbol variance ``power``."""
    if shape == "gaussian":
        return rng.standard_normal((count, n)) * math.sqrt(power)
    if shape == "uniform":
        half = math.sqrt(3.0 * power)
        return rng.uniform(-half, half, size=(count, n))
    if shape == "two-point":
        return rng.choice([-1.0, 1.0], size=(count, n)) * math.sqrt(power)
    raise ValueError(f"unknown jammer shape {shape!r}")


def nongaussian_probe(
    ch: ChannelParams,
    user: UserStrategy,
    jammer_shape: str,
    count: int,
    seed: int,
) -> NonGaussianProbe:
    """Check the entropy-maximization direction on sampled data.

    Replaces the white Gaussian jammer innovation with a power-matched
    non-Gaussian one, estimates the decoder-informed utility through the
    Gaussian plug-in surrogate, and compares it against the exact utility of
    the Gaussian jammer.
    """
    rng = np.random.default_rng(seed)
    n = ch.n
    s = rng.standard_normal((count, n)) * math.sqrt(ch.sigma_s2)
    g = rng.standard_normal((count, n)) @ _psd_factor(user.innovation_cov).T
    j = _innovation_draw(rng, jammer_shape, count, n, ch.p_j)
    z = rng.standard_normal((count, n)) * math.sqrt(ch.sigma2)
    x = s @ user.state_coupling.T + g
    y = x + s + j + z
    u = x + s @ user.dpc_alpha.T
    batch = SampleBatch(n, count, seed, x, s, j, z, y, u)
    est = plugin_mi(batch, "X", "Y", "S", ch.base)
    exact = si_utility(ch, user, iid_gaussian_jammer(ch))
    estimate = est.estimate / n
    se = est.standard_error / n
    return NonGaussianProbe(jammer_shape, estimate, se, exact, estimate - exact)


def write_sample_dump(batch: SampleBatch, path, base: str = "bits") -> None:
    """Write the batch to the documented binary layout.

    Header: eight little-endian unsigned 64-bit values (magic, version,
    draw count, block length, component count, base flag, seed low word,
    seed high word).  Payload: one float64 array per component in the order
    X, S, J, Z, Y, U, each stored column-major.
    """
    seed = int(batch.seed)
    if seed < 0:
        raise ValueError("dump seeds must be non-negative integers")
    mask = (1 << 64) - 1
    header = np.array(
        [
            DUMP_MAGIC,
            DUMP_VERSION,
            batch.count,
            batch.n,
            len(DUMP_COMPONENTS),
            0 if base == "bits" else 1,
            seed & mask,
            (seed >> 64) & mask,
        ],
        dtype="<u8",
    )
    with open(path, "wb") as fh:
        fh.write(header.tobytes())
        for name in DUMP_COMPONENTS:
            fh.write(np.asfortranarray(batch.component(name), dtype="<f8").tobytes("F"))


def read_sample_dump(path) -> tuple[dict, dict[str, np.ndarray]]:
    """Read a dump back as (header fields, component arrays)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    header = np.frombuffer(raw[:64], dtype="<u8")
    if int(header[0]) != DUMP_MAGIC:
        raise ValueError("not a sample dump (bad magic)")
    if int(header[1]) != DUMP_VERSION:
        raise ValueError(f"unsupported dump version {int(header[1])}")
    count, n, n_comp = int(header[2]), int(header[3]), int(header[4])
    meta = {
        "count": count,
        "n": n,
        "components": DUMP_COMPONENTS[:n_comp],
        "base": "bits" if int(header[5]) == 0 else "nats",
        "seed": int(header[6]) | (int(header[7]) << 64),
    }
    out = {}
    offset = 64
    block = count * n * 8
    for name in meta["components"]:
        flat = np.frombuffer(raw[offset : offset + block], dtype="<f8")
        out[name] = flat.reshape((count, n), order="F").copy()
        offset += block
    return meta, out
