"""Text formats: constellation files, reference tables, capacity curves, predictions.

All formats are UTF-8, ``#`` starts a comment, and blank lines are ignored.
Every parse error carries the 1-based line (and field column where it
applies).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .capacity import CapacityCurve
from .constellation import Constellation, StreamSpec, normalize_energy
from .errors import DomainError, ParseError
from .prediction import PredictionResult, ReferenceTable, as_rate

CURVE_HEADER = ("es_n0_db", "capacity_bits", "normalized_capacity")
MC_COLUMNS = ("mc_estimate", "mc_std_error")
TABLE_HEADER = ("rate", "es_n0_db")
PREDICTION_HEADER = ("stream", "rate", "r_tilde", "required_es_n0_db", "spectral_efficiency")


def fmt(x):
    """Nine significant digits, C locale."""
    return f"{x:.9g}"


def fmt_rate(rate):
    return f"{rate.numerator}/{rate.denominator}"


def _lines(text):
    """Yield (line_number, content, comment) with comments split off."""
    for number, raw in enumerate(text.splitlines(), start=1):
        content, _, comment = raw.partition("#")
        yield number, content.strip(), comment.strip()


def _float(token, line, column, source):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"cannot parse number {token!r}", line, column, source) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {token!r}", line, column, source)
    return value


def _meta(comment):
    key, sep, value = comment.partition("=")
    return (key.strip().lower(), value.strip()) if sep else (None, None)


# -- constellations ---------------------------------------------------------


def parse_constellation(text, source=None, normalize=True):
    """Parse a constellation file.

    The first non-comment line is ``m=<int> name=<string>``; the name runs to
    the end of the line. Then 2**m lines ``label I Q``. Coordinates are
    energy-normalized unless ``normalize`` is false; the applied factor ends
    up in ``Constellation.scale``.
    """
    m = name = None
    header_line = None
    labels, points, seen = [], [], {}
    last = 0
    for number, content, _ in _lines(text):
        last = number
        if not content:
            continue
        if m is None:
            header_line = number
            head, _, rest = content.partition("name=")
            tokens = head.split()
            if len(tokens) != 1 or not tokens[0].startswith("m="):
                raise ParseError("expected header 'm=<int> name=<string>'", number, 1, source)
            try:
                m = int(tokens[0][2:])
            except ValueError:
                raise ParseError(f"bad bits-per-symbol {tokens[0]!r}", number, 1, source) from None
            if m < 1:
                raise ParseError("m must be >= 1", number, 1, source)
            name = rest.strip()
            continue
        fields = content.split()
        if len(fields) != 3:
            raise ParseError(f"expected 'label I Q', got {len(fields)} fields", number, None, source)
        try:
            label = int(fields[0])
        except ValueError:
            raise ParseError(f"bad label {fields[0]!r}", number, 1, source) from None
        if not 0 <= label < (1 << m):
            raise ParseError(f"label {label} outside [0, {1 << m})", number, 1, source)
        if label in seen:
            raise ParseError(f"duplicate label {label} (first on line {seen[label]})", number, 1, source)
        seen[label] = number
        points.append((_float(fields[1], number, 2, source), _float(fields[2], number, 3, source)))
        labels.append(label)
    if m is None:
        raise ParseError("missing header 'm=<int> name=<string>'", None, None, source)
    if len(points) != 1 << m:
        raise ParseError(f"point count {len(points)} != 2^m = {1 << m}", last or header_line, None, source)
    try:
        c = Constellation(points, labels, m, name)
    except DomainError as exc:
        raise ParseError(str(exc), header_line, None, source) from None
    return normalize_energy(c) if normalize else c


def emit_constellation(c):
    lines = [f"m={c.m} name={c.name}"]
    order = np.argsort(c.labels)
    for idx in order:
        i, q = c.points[idx]
        lines.append(f"{int(c.labels[idx])} {float(i)!r} {float(q)!r}")
    return "\n".join(lines) + "\n"


def load_constellation(path, normalize=True):
    path = Path(path)
    return parse_constellation(path.read_text(encoding="utf-8"), str(path), normalize)


def save_constellation(c, path):
    Path(path).write_text(emit_constellation(c), encoding="utf-8")


# -- reference tables -------------------------------------------------------


def parse_reference_table(text, source=None):
    """Parse ``rate,es_n0_db`` rows with ``# modulation=`` and ``# target=KIND:level`` metadata."""
    modulation = target = None
    target_line = None
    header_seen = False
    rows, first_line = [], {}
    for number, content, comment in _lines(text):
        if not content:
            key, value = _meta(comment)
            if key == "modulation":
                modulation = value
            elif key == "target":
                target, target_line = value, number
            continue
        fields = [f.strip() for f in content.split(",")]
        if not header_seen:
            if tuple(f.lower() for f in fields) != TABLE_HEADER:
                raise ParseError(f"expected header {','.join(TABLE_HEADER)!r}", number, 1, source)
            header_seen = True
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", number, None, source)
        try:
            rate = as_rate(fields[0])
        except DomainError as exc:
            raise ParseError(str(exc), number, 1, source) from None
        if rate in first_line:
            raise ParseError(f"duplicate rate {fmt_rate(rate)} (first on line {first_line[rate]})", number, 1, source)
        first_line[rate] = number
        rows.append((rate, _float(fields[1], number, 2, source)))
    if not modulation:
        raise ParseError("missing '# modulation=<name>' metadata", None, None, source)
    if not target:
        raise ParseError("missing '# target=<BER|PER>:<level>' metadata", None, None, source)
    kind, sep, level = target.partition(":")
    if not sep:
        raise ParseError(f"bad target {target!r}; expected KIND:level", target_line, None, source)
    level = _float(level, target_line, None, source)
    if not header_seen:
        raise ParseError(f"missing header {','.join(TABLE_HEADER)!r}", None, None, source)
    try:
        return ReferenceTable(modulation, kind, level, tuple(rows))
    except DomainError as exc:
        raise ParseError(str(exc), target_line, None, source) from None


def emit_reference_table(table):
    lines = [
        f"# modulation={table.reference_modulation}",
        f"# target={table.target_kind}:{table.target_level!r}",
        ",".join(TABLE_HEADER),
    ]
    lines += [f"{fmt_rate(rate)},{db!r}" for rate, db in table.rows]
    return "\n".join(lines) + "\n"


def load_reference_table(path):
    path = Path(path)
    return parse_reference_table(path.read_text(encoding="utf-8"), str(path))


# -- capacity curves --------------------------------------------------------


def emit_curve_csv(curve, mc=None):
    """CSV text for ``curve``; ``mc`` optionally supplies (estimate, std_error) per sample."""
    stream = "joint" if curve.stream is None else str(curve.stream)
    header = CURVE_HEADER + (MC_COLUMNS if mc is not None else ())
    lines = [
        f"# constellation={curve.constellation_name}",
        f"# stream={stream}",
        f"# bits={curve.bits}",
        ",".join(header),
    ]
    for n, (db, cap) in enumerate(curve.samples):
        row = [fmt(db), fmt(cap), fmt(cap / curve.bits)]
        if mc is not None:
            row += [fmt(mc[n][0]), fmt(mc[n][1])]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def parse_curve_csv(text, source=None):
    """Inverse of ``emit_curve_csv``; extra columns after the first three are ignored."""
    meta = {}
    header = None
    samples = []
    for number, content, comment in _lines(text):
        if not content:
            key, value = _meta(comment)
            if key:
                meta[key] = value
            continue
        fields = [f.strip() for f in content.split(",")]
        if header is None:
            if tuple(fields[:3]) != CURVE_HEADER:
                raise ParseError(f"expected header {','.join(CURVE_HEADER)!r}", number, 1, source)
            header = fields
            continue
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(fields)}", number, None, source)
        samples.append((_float(fields[0], number, 1, source), _float(fields[1], number, 2, source)))
    if header is None:
        raise ParseError("missing curve header", None, None, source)
    stream_text = meta.get("stream", "joint")
    stream = None if stream_text == "joint" else StreamSpec.parse(stream_text)
    if "bits" in meta:
        bits = int(meta["bits"])
    elif stream is not None:
        bits = stream.k
    else:
        raise ParseError("joint curve needs '# bits=<m>' metadata", None, None, source)
    try:
        return CapacityCurve(meta.get("constellation", ""), stream, bits, tuple(samples))
    except DomainError as exc:
        raise ParseError(str(exc), None, None, source) from None


# -- predictions and sweeps -------------------------------------------------


def emit_predictions_csv(results):
    lines = [",".join(PREDICTION_HEADER)]
    for p in results:
        lines.append(
            ",".join(
                [p.stream, fmt_rate(p.coding_rate), fmt(p.r_tilde), fmt(p.required_es_n0_db), fmt(p.spectral_efficiency)]
            )
        )
    return "\n".join(lines) + "\n"


def parse_predictions_csv(text, source=None):
    out = []
    header_seen = False
    for number, content, _ in _lines(text):
        if not content:
            continue
        fields = [f.strip() for f in content.split(",")]
        if not header_seen:
            if tuple(fields) != PREDICTION_HEADER:
                raise ParseError(f"expected header {','.join(PREDICTION_HEADER)!r}", number, 1, source)
            header_seen = True
            continue
        if len(fields) != len(PREDICTION_HEADER):
            raise ParseError(f"expected {len(PREDICTION_HEADER)} fields, got {len(fields)}", number, None, source)
        try:
            rate = as_rate(fields[1])
        except DomainError as exc:
            raise ParseError(str(exc), number, 2, source) from None
        out.append(PredictionResult(fields[0], rate, *(_float(fields[j], number, j + 1, source) for j in (2, 3, 4))))
    return out


def emit_sweep_csv(key, rows):
    """Two-column CSV ``<key>,required_es_n0_db``; Fraction keys print as n/d."""
    lines = [f"{key},required_es_n0_db"]
    for x, db in rows:
        xs = fmt_rate(x) if isinstance(x, Fraction) else fmt(x)
        lines.append(f"{xs},{fmt(db)}")
    return "\n".join(lines) + "\n"


# -- generic documents ------------------------------------------------------


@dataclass(frozen=True)
class Document:
    """A parsed file: its kind, payload and where it came from."""

    kind: str
    payload: object
    source: str | None = None
    line_map: dict = field(default_factory=dict, compare=False)


_PARSERS = {
    "constellation": parse_constellation,
    "reference_table": parse_reference_table,
    "curve": parse_curve_csv,
}


def sniff_kind(text):
    for _, content, _ in _lines(text):
        if not content:
            continue
        if content.startswith("m="):
            return "constellation"
        head = tuple(f.strip().lower() for f in content.split(","))
        if head == TABLE_HEADER:
            return "reference_table"
        if head[:3] == CURVE_HEADER:
            return "curve"
        break
    raise ParseError("cannot determine document kind")


def read_document(path, kind=None):
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    kind = kind or sniff_kind(text)
    if kind not in _PARSERS:
        raise ValueError(f"unknown document kind {kind!r}")
    line_map = {n: content for n, content, _ in _lines(text) if content}
    return Document(kind, _PARSERS[kind](text, source=str(path)), str(path), line_map)
