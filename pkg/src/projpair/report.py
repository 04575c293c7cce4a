"""Deterministic text and CSV serialization of report records.

A record is an ordered mapping of field name to value. Scalars print with
12 significant digits, sequences print space-separated in text and
``;``-separated in CSV, and a missing value prints as ``NA``.
"""
import csv
import io

import numpy as np

PAIR_FIELDS = (
    "n",
    "set_i",
    "set_j",
    "gammas",
    "norm_pq",
    "hs_sq",
    "expected_hs_sq",
    "corner_dims",
    "distance",
    "commutator_norm",
)

MISSING = "NA"


def format_number(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return f"{x:.12g}"


def _format(value, sep):
    if value is None:
        return MISSING
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple, np.ndarray)):
        return sep.join(format_number(v) for v in value)
    return format_number(value)


def pair_record(report):
    """Ordered record for a :class:`~projpair.localization.LocalizationReport`."""
    return {
        "n": report.n,
        "set_i": list(report.set_i),
        "set_j": list(report.set_j),
        "gammas": sorted(float(g) for g in report.gammas),
        "norm_pq": report.norm_pq,
        "hs_sq": report.hs_sq,
        "expected_hs_sq": report.expected_hs_sq,
        "corner_dims": list(report.corner_dims),
        "distance": report.distance,
        "commutator_norm": report.commutator_norm,
    }


def to_text(records):
    blocks = []
    for rec in records:
        lines = [f"{key}: {_format(val, ' ')}".rstrip() for key, val in rec.items()]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def to_csv(records):
    if not records:
        return ""
    fields = list(records[0].keys())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        writer.writerow([_format(rec[f], ";") for f in fields])
    return buf.getvalue()


def render(records, fmt):
    if fmt == "csv":
        return to_csv(records)
    return to_text(records)


def _parse_value(text, sep):
    text = text.strip()
    if text == MISSING:
        return None
    if text in ("true", "false"):
        return text == "true"
    parts = [p for p in (text.split(sep) if sep else text.split()) if p]
    vals = [float(p) for p in parts]
    return vals


def parse_text(text):
    """Inverse of :func:`to_text`; every value comes back as a list of floats, a bool or None."""
    records = []
    for block in text.strip("\n").split("\n\n"):
        rec = {}
        for line in block.splitlines():
            key, _, val = line.partition(":")
            rec[key] = _parse_value(val, None)
        records.append(rec)
    return records


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return [{k: _parse_value(v, ";") for k, v in zip(header, row)} for row in body]
