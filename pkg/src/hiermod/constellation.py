"""Labeled two-dimensional constellations and bit-stream subsets.

Bit positions are 1-based and position 1 is the least significant bit of the
integer label, so ``label_bit(label, 1) == label & 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DomainError

ENERGY_RTOL = 1e-12


def label_bit(label, position):
    """Return bit ``position`` (1-based, LSB first) of an integer label or array."""
    return (np.asarray(label) >> (position - 1)) & 1


@dataclass(frozen=True, eq=False)
class Constellation:
    """A set of 2**m labeled points in the plane.

    Args:
        points: array-like of shape (2**m, 2) holding (I, Q) coordinates.
        labels: one integer label per point; must be a permutation of 0..2**m - 1.
        m: bits per symbol.
        name: free-form identifier.
        scale: product of all normalization factors applied so far. Not part
            of equality.
    """

    points: np.ndarray
    labels: np.ndarray
    m: int
    name: str = ""
    scale: float = field(default=1.0)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        labels = np.array(self.labels)
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")
        size = 1 << int(self.m)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise DomainError(f"points must have shape (M, 2), got {pts.shape}")
        if pts.shape[0] != size:
            raise DomainError(f"point count {pts.shape[0]} != 2^m = {size}")
        if labels.shape != (size,):
            raise DomainError(f"expected {size} labels, got shape {labels.shape}")
        if not np.all(np.isfinite(pts)):
            raise DomainError("coordinates must be finite")
        if labels.dtype.kind not in "iu" and not np.all(labels == np.round(labels)):
            raise DomainError("labels must be integers")
        labels = labels.astype(np.int64)
        if sorted(labels.tolist()) != list(range(size)):
            raise DomainError("labels must be a permutation of 0..2^m-1")
        if len(np.unique(pts, axis=0)) != size:
            raise DomainError("points must be pairwise distinct")
        pts.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "m", int(self.m))

    @property
    def size(self):
        return 1 << self.m

    @property
    def symbols(self):
        """Points as complex numbers I + jQ."""
        return self.points[:, 0] + 1j * self.points[:, 1]

    @property
    def average_energy(self):
        return float(np.mean(np.sum(self.points**2, axis=1)))

    def canonical(self):
        """Points sorted by label, as an (M, 2) array."""
        return self.points[np.argsort(self.labels)]

    def __eq__(self, other):
        if not isinstance(other, Constellation):
            return NotImplemented
        return (
            self.m == other.m
            and self.name == other.name
            and np.array_equal(self.canonical(), other.canonical())
        )

    def __hash__(self):
        return hash((self.m, self.name, self.canonical().tobytes()))

    def with_points(self, points, name=None, scale=None):
        return Constellation(
            points,
            self.labels,
            self.m,
            self.name if name is None else name,
            self.scale if scale is None else scale,
        )


@dataclass(frozen=True)
class StreamSpec:
    """The label bit positions carried by one stream, e.g. ``(1, 2)`` for HP."""

    positions: tuple

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        if not pos:
            raise DomainError("a stream needs at least one bit position")
        if any(p < 1 for p in pos):
            raise DomainError(f"bit positions are 1-based, got {pos}")
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise DomainError(f"bit positions must be strictly increasing, got {pos}")
        object.__setattr__(self, "positions", pos)

    @classmethod
    def parse(cls, text):
        """Build from a comma-separated list such as ``"1,2"``."""
        try:
            pos = sorted(int(tok) for tok in text.split(",") if tok.strip())
        except ValueError as exc:
            raise DomainError(f"bad bit list {text!r}") from exc
        return cls(tuple(pos))

    @classmethod
    def all_bits(cls, m):
        return cls(tuple(range(1, m + 1)))

    @property
    def k(self):
        return len(self.positions)

    def check(self, c):
        if self.positions[-1] > c.m:
            raise DomainError(f"bit position {self.positions[-1]} exceeds m={c.m}")
        return self

    def covers(self, c):
        return self.positions == tuple(range(1, c.m + 1))

    def __str__(self):
        return ",".join(map(str, self.positions))


def check_alpha(alpha):
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha:g}")
    return alpha


def normalize_energy(c):
    """Scale ``c`` uniformly to unit average symbol energy.

    An input that is already normalized (within 1e-12 relative) is returned
    unchanged.
    """
    energy = c.average_energy
    if energy == 0.0:
        raise DomainError("cannot normalize an all-zero constellation")
    if abs(energy - 1.0) <= ENERGY_RTOL:
        return c
    factor = 1.0 / np.sqrt(energy)
    return c.with_points(c.points * factor, scale=c.scale * factor)


def make_qpsk():
    """Gray-labeled QPSK: bit 1 selects the I sign, bit 2 the Q sign (0 is +)."""
    labels = np.arange(4)
    i_sign = 1 - 2 * label_bit(labels, 1)
    q_sign = 1 - 2 * label_bit(labels, 2)
    return normalize_energy(Constellation(np.column_stack([i_sign, q_sign]), labels, 2, "qpsk"))


def make_qam16():
    """Uniform Gray-mapped 16-QAM on the {-3, -1, 1, 3} grid, unit energy.

    Each axis carries a 2-bit reflected Gray code over the levels in
    increasing order. The Gray MSB of the I axis is label bit 1, of the Q
    axis bit 2; the Gray LSBs are bits 3 and 4. Bits 1-2 therefore pick the
    quadrant, as in the hierarchical mapping.
    """
    levels = np.array([-3.0, -1.0, 1.0, 3.0])
    gray = np.arange(4) ^ (np.arange(4) >> 1)
    msb, lsb = gray >> 1, gray & 1
    points, labels = [], []
    for qi in range(4):
        for ii in range(4):
            points.append((levels[ii], levels[qi]))
            labels.append(msb[ii] | (msb[qi] << 1) | (lsb[ii] << 2) | (lsb[qi] << 3))
    return normalize_energy(Constellation(points, labels, 4, "qam16"))


def nonuniform_16qam_points(alpha):
    """Unnormalized hierarchical 16-QAM points, ordered by label.

    Per axis the magnitudes are ``alpha`` (inner) and ``alpha + 2`` (outer),
    i.e. d_l = 1 and d_h = alpha. Bits 1/2 are the I/Q sign bits (0 is +),
    bits 3/4 the I/Q outer-ring bits. Along each axis the labels read
    11, 10, 00, 01 (sign, ring), a Gray sequence.
    """
    alpha = check_alpha(alpha)
    labels = np.arange(16)
    sign_i = 1 - 2 * label_bit(labels, 1)
    sign_q = 1 - 2 * label_bit(labels, 2)
    mag_i = alpha + 2 * label_bit(labels, 3)
    mag_q = alpha + 2 * label_bit(labels, 4)
    return np.column_stack([sign_i * mag_i, sign_q * mag_q])


def make_nonuniform_16qam(alpha):
    """Hierarchical 16-QAM with constellation parameter ``alpha`` >= 1.

    HP stream = bits (1, 2) (quadrant), LP stream = bits (3, 4). The result has
    unit average energy; before normalization it is alpha**2 + (alpha + 2)**2.
    """
    alpha = check_alpha(alpha)
    pts = nonuniform_16qam_points(alpha)
    return normalize_energy(Constellation(pts, np.arange(16), 4, f"qam16-hier(alpha={alpha:g})"))


def _pair_distances(points):
    pairs = list(combinations(range(len(points)), 2))
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    return a, b, np.linalg.norm(points[a] - points[b], axis=1)


def measure_alpha(c, hp):
    """Return d_h / d_l for constellation ``c`` and HP stream ``hp``.

    2*d_h is the smallest distance between points whose HP bits differ and
    2*d_l the smallest distance between any two points.
    """
    hp.check(c)
    a, b, dist = _pair_distances(c.points)
    if np.min(dist) <= 0.0:
        raise DomainError("constellation has coincident points")
    hp_mask = np.zeros(len(a), dtype=bool)
    for pos in hp.positions:
        hp_mask |= label_bit(c.labels[a], pos) != label_bit(c.labels[b], pos)
    return float(np.min(dist[hp_mask]) / np.min(dist))


def partition_indices(c, s):
    """Point indices of every subset chi_i, as an array of shape (2**k, 2**(m-k)).

    Row ``i`` lists the points whose stream bits equal the binary digits of
    ``i``: label bit ``s.positions[n]`` equals bit n+1 of ``i``.
    """
    s.check(c)
    key = np.zeros(c.size, dtype=np.int64)
    for n, pos in enumerate(s.positions):
        key |= label_bit(c.labels, pos) << n
    order = np.argsort(key, kind="stable")
    return order.reshape(1 << s.k, -1)


def subset_chi(c, s, i):
    """Return the points of chi_i as an array of shape (2**(m-k), 2)."""
    if not 0 <= i < (1 << s.k):
        raise DomainError(f"subset index {i} outside [0, {1 << s.k})")
    return c.points[partition_indices(c, s)[i]]


BUILTINS = {
    "qpsk": make_qpsk,
    "qam16": make_qam16,
}


def builtin(name, alpha=None):
    """Resolve a builtin constellation name (``qpsk``, ``qam16``, ``qam16-hier``)."""
    key = name.lower()
    if key == "qam16-hier":
        return make_nonuniform_16qam(2.0 if alpha is None else alpha)
    if key not in BUILTINS:
        raise DomainError(f"unknown constellation {name!r}; expected one of qpsk, qam16, qam16-hier")
    return BUILTINS[key]()
