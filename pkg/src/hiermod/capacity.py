"""Constellation-constrained AWGN capacity, joint and per bit-stream.

The received point is y = x + n with circular complex Gaussian noise of
density p(y|x) = exp(-|y - x|^2 / N0) / (pi N0). Constellations are assumed
to have unit average energy, so N0 = 10**(-EsN0_dB / 10).

Integrals over y are evaluated with a Gauss-Hermite product rule after the
substitution y = x + sqrt(N0) u, one rule per transmitted point, which makes
the Gaussian weight exact. All density ratios are handled as log-sum-exp.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .constellation import StreamSpec, partition_indices
from .errors import ConvergenceError, DomainError

LN2 = math.log(2.0)
MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class NoiseModel:
    """Noise level of the channel, held as Es/N0 in dB (unit Es)."""

    es_n0_db: float

    def __post_init__(self):
        if not np.isfinite(self.es_n0_db):
            raise DomainError(f"Es/N0 must be finite, got {self.es_n0_db}")

    @property
    def n0(self):
        return 10.0 ** (-self.es_n0_db / 10.0)

    @classmethod
    def from_n0(cls, n0):
        if not n0 > 0 or not np.isfinite(n0):
            raise DomainError(f"N0 must be finite and positive, got {n0}")
        return cls(-10.0 * math.log10(n0))


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Hermite settings.

    The rule is evaluated at ``nodes_per_axis`` and twice that; if the two
    disagree by more than ``tolerance`` bits the order keeps doubling up to
    ``max_nodes``.
    """

    nodes_per_axis: int = 32
    tolerance: float = 1e-4
    max_nodes: int = 256

    def __post_init__(self):
        if self.nodes_per_axis < 8:
            raise DomainError("nodes_per_axis must be >= 8")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.max_nodes < 2 * self.nodes_per_axis:
            raise DomainError("max_nodes must be at least 2 * nodes_per_axis")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class CapacityCurve:
    """Sampled capacity versus Es/N0 for one (constellation, stream) pair.

    ``stream`` is None for the joint capacity; ``bits`` is the number of bits
    the capacity is normalized by (k for a stream, m for joint).
    """

    constellation_name: str
    stream: StreamSpec | None
    bits: int
    samples: tuple = ()

    def __post_init__(self):
        samples = tuple((float(a), float(b)) for a, b in self.samples)
        db = [s[0] for s in samples]
        if any(b <= a for a, b in zip(db, db[1:])):
            raise DomainError("Es/N0 samples must be strictly increasing")
        object.__setattr__(self, "samples", samples)

    @property
    def es_n0_db(self):
        return np.array([s[0] for s in self.samples])

    @property
    def capacity(self):
        return np.array([s[1] for s in self.samples])

    @property
    def normalized(self):
        return self.capacity / self.bits


def worker_count():
    """Thread cap for sweeps: HIERMOD_THREADS if set, else the CPU count."""
    env = os.environ.get("HIERMOD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def logsumexp(a, axis=-1):
    """log(sum(exp(a))) along ``axis``, shifted by the maximum to avoid underflow."""
    peak = np.max(a, axis=axis, keepdims=True)
    return np.log(np.sum(np.exp(a - peak), axis=axis)) + np.squeeze(peak, axis=axis)


def transition_density(y, x, nm):
    """p(y|x) for the complex AWGN channel; y and x are (..., 2) arrays."""
    n0 = nm.n0
    d2 = np.sum((np.asarray(y, float) - np.asarray(x, float)) ** 2, axis=-1)
    return np.exp(-d2 / n0) / (math.pi * n0)


@lru_cache(maxsize=None)
def _grid(n):
    t, w = hermgauss(n)
    u = np.stack(np.meshgrid(t, t, indexing="ij"), axis=-1).reshape(-1, 2)
    weights = np.outer(w, w).ravel() / math.pi
    u.setflags(write=False)
    weights.setflags(write=False)
    return u, weights


def _scaled_offsets(points, n0):
    # delta[a, b] = (x_a - x_b) / sqrt(N0)
    return (points[:, None, :] - points[None, :, :]) / math.sqrt(n0)


def _joint_bits(points, n0, n):
    """log2(M) - E[log2 sum_j p(y|x_j)/p(y|x_i)] at one quadrature order."""
    u, w = _grid(n)
    delta = _scaled_offsets(points, n0)
    u2 = np.sum(u**2, axis=1)
    loss = 0.0
    for a in range(len(points)):
        # exponent of p(y|x_j)/p(y|x_a) with y = x_a + sqrt(N0) u
        z = u[:, None, :] + delta[a][None, :, :]
        expo = u2[:, None] - np.sum(z**2, axis=2)
        loss += w @ logsumexp(expo, axis=1)
    return math.log2(len(points)) - loss / (len(points) * LN2)


def _stream_bits(points, part, n0, n):
    """k - E[log2 p(y) / p(y|chi_i)] with the subset densities as mixtures."""
    u, w = _grid(n)
    delta = _scaled_offsets(points, n0)
    k = math.log2(part.shape[0])
    member = np.empty(len(points), dtype=np.int64)
    for i, row in enumerate(part):
        member[row] = i
    total = 0.0
    for a in range(len(points)):
        z = u[:, None, :] + delta[a][None, :, :]
        expo = -np.sum(z**2, axis=2)
        log_all = logsumexp(expo, axis=1)
        log_sub = logsumexp(expo[:, part[member[a]]], axis=1)
        total += w @ (log_all - log_sub)
    return k - total / (len(points) * LN2)


def _converged(evaluate, q, upper):
    n = q.nodes_per_axis
    estimates = [evaluate(n)]
    while 2 * n <= q.max_nodes:
        n *= 2
        estimates.append(evaluate(n))
        if abs(estimates[-1] - estimates[-2]) <= q.tolerance:
            return float(np.clip(estimates[-1], 0.0, upper))
    raise ConvergenceError(
        f"Gauss-Hermite did not converge to {q.tolerance:g} bits by {q.max_nodes} nodes/axis",
        estimates,
    )


def joint_capacity(c, nm, q=DEFAULT_QUADRATURE):
    """Capacity in bits/symbol of ``c`` with equiprobable inputs.

    Raises:
        ConvergenceError: successive quadrature orders disagree beyond
            ``q.tolerance`` up to ``q.max_nodes``.
    """
    n0 = nm.n0
    return _converged(lambda n: _joint_bits(c.points, n0, n), q, float(c.m))


def stream_capacity(c, s, nm, q=DEFAULT_QUADRATURE):
    """Mutual information in bits/symbol between the bits ``s`` and the output.

    The input of the stream is the subset index i of chi_i; every other label
    bit is uniform and acts as part of the channel.
    """
    if s is None:
        return joint_capacity(c, nm, q)
    part = partition_indices(c, s)
    n0 = nm.n0
    return _converged(lambda n: _stream_bits(c.points, part, n0, n), q, float(s.k))


def normalized_capacity(c, s, nm, q=DEFAULT_QUADRATURE):
    """Capacity divided by the bits it can carry (k, or m when ``s`` is None)."""
    bits = c.m if s is None else s.k
    return stream_capacity(c, s, nm, q) / bits


def capacity_curve(c, s, es_n0_db, q=DEFAULT_QUADRATURE, workers=None):
    """Evaluate ``stream_capacity`` on a grid of Es/N0 values.

    Points are evaluated on a thread pool (``workers`` threads, default
    ``worker_count()``); the output order follows the grid.
    """
    grid = [float(v) for v in es_n0_db]
    if s is not None:
        s.check(c)
    workers = workers or worker_count()

    def one(db):
        return stream_capacity(c, s, NoiseModel(db), q)

    if workers == 1 or len(grid) < 2:
        values = [one(db) for db in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, grid))
    bits = c.m if s is None else s.k
    return CapacityCurve(c.name, s, bits, tuple(zip(grid, values)))


def db_grid(start=-10.0, stop=25.0, step=0.25):
    """Inclusive dB grid, rounded to suppress floating drift."""
    if step <= 0:
        raise DomainError("step must be positive")
    if stop < start:
        raise DomainError("stop must not be below start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 10)


def _mc_chunk(points, part, member, n0, seed, index, size):
    rng = np.random.default_rng([seed, index])
    idx = rng.integers(0, len(points), size)
    noise = rng.normal(scale=math.sqrt(n0 / 2.0), size=(size, 2))
    y = points[idx] + noise
    expo = -np.sum((y[:, None, :] - points[None, :, :]) ** 2, axis=2) / n0
    log_all = logsumexp(expo, axis=1)
    sub = part[member[idx]]
    log_sub = logsumexp(np.take_along_axis(expo, sub, axis=1), axis=1)
    k = math.log2(part.shape[0])
    v = k + (log_sub - log_all) / LN2
    return float(v.sum()), float((v * v).sum())


def mc_capacity(c, s, nm, n_samples=10**6, seed=0, workers=None):
    """Monte-Carlo estimate of ``stream_capacity`` and its standard error.

    Draws x uniformly from the constellation (equivalently i uniform, then x
    uniform in chi_i), adds noise, and averages log2 p(y|i)/p(y). Samples are
    generated in fixed chunks seeded by (seed, chunk index), so the result
    depends only on (seed, n_samples).
    """
    if n_samples < 10**4:
        raise DomainError("n_samples must be >= 1e4")
    s = StreamSpec.all_bits(c.m) if s is None else s.check(c)
    part = partition_indices(c, s)
    member = np.empty(c.size, dtype=np.int64)
    for i, row in enumerate(part):
        member[row] = i
    sizes = [MC_CHUNK] * (n_samples // MC_CHUNK)
    if n_samples % MC_CHUNK:
        sizes.append(n_samples % MC_CHUNK)
    n0 = nm.n0

    def run(job):
        index, size = job
        return _mc_chunk(c.points, part, member, n0, seed, index, size)

    workers = workers or worker_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, enumerate(sizes)))
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    mean = total / n_samples
    var = max(total_sq / n_samples - mean * mean, 0.0) * n_samples / (n_samples - 1)
    return mean, math.sqrt(var / n_samples)
