"""Dataset ingestion, bundled fixtures, and report/histogram export.

CSV dataset schema: optional "# unit:" and "# label:" comment lines,
then a "value,uncertainty" header (the uncertainty column is optional
and defaults to 0), then one measurement per row in file order.

JSON dataset schema:

    {"measurements": [{"value": 1.90, "uncertainty": 0.18}, ...],
     "unit": "Bq/kg", "label": "..."}

Reports serialize to JSON with stable field order (declaration order)
and full double precision, or to a flat CSV rendering. Histogram export
emits plot data only (edges, counts, markers); rendering is left to
external tools.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .core import Dataset, Measurement
from .errors import InputFormatError, PreconditionError

__all__ = [
    "HistogramSpec",
    "load_dataset",
    "load_fixture",
    "FIXTURES",
    "make_histogram",
    "write_report",
]

FIXTURES = ("u235_full", "u235_trimmed", "u235_small", "granite_density")


@dataclass(frozen=True)
class HistogramSpec:
    """Binned counts plus labeled vertical markers for external plotting.

    Edges are strictly increasing and counts has one entry per bin,
    with one degenerate exception: all-equal input binned by count
    collapses to the single zero-width bin [v, v] holding everything.
    """

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    markers: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        edges = self.bin_edges
        if len(edges) < 2:
            raise ValueError("need at least two bin edges")
        degenerate = len(edges) == 2 and edges[0] == edges[1]
        if not degenerate and any(a >= b for a, b in zip(edges, edges[1:])):
            raise ValueError("bin edges must be strictly increasing")
        if len(self.counts) != len(edges) - 1:
            raise ValueError(
                f"{len(edges)} edges need {len(edges) - 1} counts, got {len(self.counts)}"
            )


def _read_text(source) -> tuple[str, str]:
    """Return (text, source_name) from a path, stream, or bytes."""
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise InputFormatError(f"cannot read {path}: {exc}") from exc
        return data.decode("utf-8"), path
    if isinstance(source, bytes):
        return source.decode("utf-8"), ""
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    name = getattr(source, "name", "")
    return data, name if isinstance(name, str) else ""


def load_dataset(source, format: str | None = None) -> Dataset:
    """Parse a dataset from a path, stream, or bytes.

    format is "csv" or "json"; when omitted it is inferred from the
    file extension (falling back to content sniffing for anonymous
    streams). Errors carry the offending line number (csv) or
    measurement index (json).
    """
    text, name = _read_text(source)
    stem, ext = os.path.splitext(os.path.basename(name))
    if format is None:
        if ext:
            format = "json" if ext.lower() == ".json" else "csv"
        else:
            format = "json" if text.lstrip().startswith("{") else "csv"
    if format == "csv":
        return _parse_csv(text, stem)
    if format == "json":
        return _parse_json(text, stem)
    raise InputFormatError(f"unknown dataset format {format!r}")


def _parse_csv(text: str, default_label: str) -> Dataset:
    unit = ""
    label = default_label
    measurements = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("unit:"):
                unit = body[5:].strip()
            elif body.lower().startswith("label:"):
                label = body[6:].strip()
            continue
        fields = next(csv.reader([line]))
        fields = [f.strip() for f in fields]
        if not saw_header:
            if fields[0].lower() != "value":
                raise InputFormatError(
                    f"line {lineno}: expected header 'value[,uncertainty]', got {line!r}"
                )
            saw_header = True
            continue
        if len(fields) > 2:
            raise InputFormatError(f"line {lineno}: expected at most 2 columns, got {len(fields)}")
        try:
            value = float(fields[0])
            unc = float(fields[1]) if len(fields) == 2 and fields[1] else 0.0
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: {exc}") from None
        try:
            measurements.append(Measurement(value, unc))
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: {exc}") from None
    if not measurements:
        raise InputFormatError("no measurements found in input")
    return Dataset(tuple(measurements), unit=unit, label=label)


def _parse_json(text: str, default_label: str) -> Dataset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "measurements" not in doc:
        raise InputFormatError("expected a JSON object with a 'measurements' list")
    raw = doc["measurements"]
    if not isinstance(raw, list) or not raw:
        raise InputFormatError("'measurements' must be a non-empty list")
    measurements = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "value" not in entry:
            raise InputFormatError(f"measurement {i}: expected an object with 'value'")
        try:
            measurements.append(
                Measurement(float(entry["value"]), float(entry.get("uncertainty", 0.0)))
            )
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"measurement {i}: {exc}") from None
    return Dataset(
        tuple(measurements),
        unit=str(doc.get("unit", "")),
        label=str(doc.get("label", default_label)),
    )


def load_fixture(name: str) -> Dataset:
    """Load one of the bundled example datasets by name."""
    if name not in FIXTURES:
        raise InputFormatError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    ref = resources.files("robucl").joinpath("data", f"{name}.csv")
    return _parse_csv(ref.read_text(encoding="utf-8"), name)


def make_histogram(values, bins, markers=()) -> HistogramSpec:
    """Bin values for plotting; counts always sum to the sample size.

    An integer bin count spans [min, max] with uniform bins, right-open
    except the last. Explicit edges must cover the data range so that
    no value falls outside (count conservation holds for every input).
    """
    x = np.asarray(list(values), dtype=np.float64)
    if x.size == 0:
        raise PreconditionError("cannot histogram an empty sample")
    if not np.all(np.isfinite(x)):
        raise PreconditionError("histogram input must be finite")
    markers = tuple((str(lbl), float(v)) for lbl, v in markers)

    if np.isscalar(bins) or isinstance(bins, (int, np.integer)):
        nbins = int(bins)
        if nbins < 1:
            raise PreconditionError(f"bin count must be >= 1, got {bins}")
        lo, hi = float(x.min()), float(x.max())
        if lo == hi:
            # zero-width data: one degenerate bin holds everything
            return HistogramSpec((lo, hi), (int(x.size),), markers)
        counts, edges = np.histogram(x, bins=nbins, range=(lo, hi))
    else:
        edges = np.asarray(list(bins), dtype=np.float64)
        if edges.size < 2 or np.any(np.diff(edges) <= 0):
            raise PreconditionError("explicit edges must be strictly increasing, length >= 2")
        if edges[0] > x.min() or edges[-1] < x.max():
            raise PreconditionError(
                "explicit edges must cover the data range "
                f"[{x.min()}, {x.max()}] so no value is dropped"
            )
        counts, edges = np.histogram(x, bins=edges)

    return HistogramSpec(
        tuple(float(e) for e in edges),
        tuple(int(c) for c in counts),
        markers,
    )


def _to_plain(obj):
    """Recursively convert dataclasses/enums/arrays to JSON primitives."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return [_to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, (list, tuple)):
        return [_to_plain(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _to_plain(v) for k, v in obj.items()}
    return obj


def _flatten(prefix, obj, rows):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, "" if obj is None else repr(obj) if isinstance(obj, float) else str(obj)))


def write_report(report, format: str = "json") -> bytes:
    """Serialize a report (any dataclass, dict, or HistogramSpec) to bytes.

    JSON keeps declaration field order and full double precision, so a
    written Dataset reloads equal to the original. CSV renders a
    Dataset in the ingestion schema (round-trippable), a HistogramSpec
    as bin_start,bin_end,count rows, and anything else as flat
    key,value rows.
    """
    if format == "json":
        return (json.dumps(_to_plain(report), indent=2) + "\n").encode("utf-8")
    if format != "csv":
        raise InputFormatError(f"unknown report format {format!r}")

    buf = io.StringIO()
    if isinstance(report, Dataset):
        if report.unit:
            buf.write(f"# unit: {report.unit}\n")
        if report.label:
            buf.write(f"# label: {report.label}\n")
        buf.write("value,uncertainty\n")
        for m in report:
            buf.write(f"{m.value!r},{m.uncertainty!r}\n")
    elif isinstance(report, HistogramSpec):
        buf.write("bin_start,bin_end,count\n")
        for lo, hi, c in zip(report.bin_edges, report.bin_edges[1:], report.counts):
            buf.write(f"{lo!r},{hi!r},{c}\n")
    else:
        rows = []
        _flatten("", _to_plain(report), rows)
        buf.write("key,value\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
    return buf.getvalue().encode("utf-8")
