"""Required Es/N0 and spectral efficiency of real coded systems from capacity.

A real code of rate R that reaches the target error rate at (Es/N0)_ref on a
reference modulation is modeled as an ideal code of rate R_tilde, the
normalized reference capacity at that operating point. The same R_tilde is
then assumed to hold on any other constellation or bit-stream, so the
required Es/N0 there is the inverse of its normalized capacity at R_tilde.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .capacity import DEFAULT_QUADRATURE, NoiseModel, normalized_capacity, worker_count
from .constellation import StreamSpec, builtin, make_nonuniform_16qam
from .errors import DomainError, RateNotFound
from .inversion import required_esn0

HP = StreamSpec((1, 2))
LP = StreamSpec((3, 4))
RATE_MATCH = 1e-9
R_TILDE_SLACK = 0.02


def as_rate(value):
    """Coerce ``value`` to a Fraction; strings may be ``"2/9"`` or ``"0.25"``."""
    if isinstance(value, Fraction):
        rate = value
    elif isinstance(value, str):
        try:
            rate = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad coding rate {value!r}") from exc
    elif isinstance(value, (int, np.integer)):
        rate = Fraction(int(value))
    else:
        value = float(value)
        if not math.isfinite(value):
            raise DomainError(f"coding rate must be finite, got {value}")
        rate = Fraction(value)
    if not 0 < rate < 1:
        raise DomainError(f"coding rate must lie in (0, 1), got {rate}")
    return rate


@dataclass(frozen=True)
class ReferenceTable:
    """Operating points of a real modem at a target error rate.

    ``rows`` holds (rate, es_n0_db) pairs; they are sorted by rate on
    construction.
    """

    reference_modulation: str
    target_kind: str
    target_level: float
    rows: tuple

    def __post_init__(self):
        kind = self.target_kind.upper()
        if kind not in ("BER", "PER"):
            raise DomainError(f"target kind must be BER or PER, got {self.target_kind!r}")
        if not (math.isfinite(self.target_level) and 0 < self.target_level < 1):
            raise DomainError(f"target level must lie in (0, 1), got {self.target_level}")
        rows = sorted((as_rate(r), float(db)) for r, db in self.rows)
        rates = [r for r, _ in rows]
        if len(set(rates)) != len(rates):
            raise DomainError("duplicate coding rate in reference table")
        if not all(math.isfinite(db) for _, db in rows):
            raise DomainError("operating points must be finite")
        dbs = [db for _, db in rows]
        if any(b < a for a, b in zip(dbs, dbs[1:])):
            warnings.warn("operating Es/N0 decreases with coding rate", stacklevel=3)
        object.__setattr__(self, "target_kind", kind)
        object.__setattr__(self, "target_level", float(self.target_level))
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def rates(self):
        return [r for r, _ in self.rows]

    def reference_constellation(self):
        return builtin(self.reference_modulation)

    def operating_point(self, rate, interpolate=False):
        """Es/N0 [dB] of the row for ``rate``.

        With ``interpolate`` a rate between two rows gets a value linear in
        rate between their operating points.
        """
        rate = as_rate(rate)
        for r, db in self.rows:
            if r == rate or abs(float(r) - float(rate)) <= RATE_MATCH:
                return db
        if interpolate and len(self.rows) >= 2:
            xs = [float(r) for r in self.rates]
            if xs[0] < float(rate) < xs[-1]:
                return float(np.interp(float(rate), xs, [db for _, db in self.rows]))
        raise RateNotFound(f"rate {rate} not in reference table (rates: {', '.join(map(str, self.rates))})")


@dataclass(frozen=True)
class PredictionResult:
    stream: str
    coding_rate: Fraction
    r_tilde: float
    required_es_n0_db: float
    spectral_efficiency: float


def equivalent_ideal_rate(ref_table, rate, q=DEFAULT_QUADRATURE, interpolate=False, reference=None):
    """R_tilde: normalized joint capacity of the reference modulation at its operating point.

    ``reference`` overrides the constellation named by the table.
    """
    c = ref_table.reference_constellation() if reference is None else reference
    db = ref_table.operating_point(rate, interpolate)
    return normalized_capacity(c, None, NoiseModel(db), q)


def stream_name(c, s):
    if s is None or s.covers(c):
        return "single"
    if c.m == 4 and s == HP:
        return "HP"
    if c.m == 4 and s == LP:
        return "LP"
    return f"bits={s}"


def predict_stream(
    ref_table,
    rate,
    target_c,
    s,
    q=DEFAULT_QUADRATURE,
    *,
    interpolate=False,
    total_bits=False,
    label=None,
    reference=None,
):
    """Predicted operating point of (target_c, s) for a code of rate ``rate``.

    Spectral efficiency is rate * k for the stream, or rate * m with
    ``total_bits``.
    """
    rate = as_rate(rate)
    r_tilde = equivalent_ideal_rate(ref_table, rate, q, interpolate, reference)
    if r_tilde < float(rate) - R_TILDE_SLACK:
        raise DomainError(
            f"reference operating point beats capacity: R_tilde={r_tilde:.4f} < R={float(rate):.4f}"
        )
    inv = required_esn0(target_c, s, r_tilde, q)
    bits = target_c.m if (s is None or total_bits) else s.k
    return PredictionResult(
        label or stream_name(target_c, s),
        rate,
        r_tilde,
        inv.es_n0_db,
        float(rate) * bits,
    )


def _parallel(fn, items):
    items = list(items)
    if len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        return list(pool.map(fn, items))


def sweep_alpha(ref_table, rate, alphas, stream_kind="HP", q=DEFAULT_QUADRATURE, interpolate=False):
    """Required Es/N0 of the HP or LP stream of hierarchical 16-QAM for each alpha."""
    kind = stream_kind.upper()
    if kind not in ("HP", "LP"):
        raise DomainError(f"stream kind must be HP or LP, got {stream_kind!r}")
    s = HP if kind == "HP" else LP
    alphas = [float(a) for a in alphas]

    def one(alpha):
        res = predict_stream(ref_table, rate, make_nonuniform_16qam(alpha), s, q, interpolate=interpolate)
        return alpha, res.required_es_n0_db

    return _parallel(one, alphas)


def sweep_rate(ref_table, rates, target_c, s, q=DEFAULT_QUADRATURE, interpolate=False):
    """Required Es/N0 of (target_c, s) for each coding rate."""

    def one(rate):
        res = predict_stream(ref_table, rate, target_c, s, q, interpolate=interpolate)
        return res.coding_rate, res.required_es_n0_db

    return _parallel(one, rates)


def predict_jobs(ref_table, jobs, target_c, q=DEFAULT_QUADRATURE, *, interpolate=False, total_bits=False):
    """Predictions for (stream, rate) pairs, sorted by required Es/N0."""

    def one(job):
        s, r = job
        return predict_stream(ref_table, r, target_c, s, q, interpolate=interpolate, total_bits=total_bits)

    return sorted(_parallel(one, jobs), key=lambda p: (p.required_es_n0_db, p.stream))


def predict_streams(ref_table, rates, target_c, streams, q=DEFAULT_QUADRATURE, **kw):
    """Predictions for every stream at every rate, sorted by required Es/N0."""
    return predict_jobs(ref_table, [(s, r) for s in streams for r in rates], target_c, q, **kw)


def spectral_efficiency_points(ref_table, rates, target_c, hp=HP, lp=LP, q=DEFAULT_QUADRATURE, lp_rates=None, **kw):
    """(required Es/N0, efficiency) for both streams, sorted by Es/N0.

    The HP stream is evaluated at ``rates`` and the LP stream at ``lp_rates``
    (default: the same rates).
    """
    lp_rates = rates if lp_rates is None else lp_rates
    jobs = [(hp, r) for r in rates] + [(lp, r) for r in lp_rates]
    return [(p.required_es_n0_db, p.spectral_efficiency) for p in predict_jobs(ref_table, jobs, target_c, q, **kw)]
