"""File formats: level lists, spacing CSV, tabulated CDFs, block tables."""

from __future__ import annotations

import io as _io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import BlockReport
from .errors import DegenerateSampleError, DomainError, ParseError
from .laws import TabulatedLaw
from .samples import SpacingSample


def fmt(x) -> str:
    """Shortest round-trip decimal; integral values lose their trailing '.0'."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    r = repr(x)
    if r.endswith(".0"):
        r = r[:-2]
    if r == "-0":
        r = "0"
    return r


@dataclass(frozen=True, eq=False)
class LevelFile:
    values: np.ndarray
    source_path: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise DomainError("a level list needs at least two values")
        if not np.all(np.isfinite(v)):
            raise DomainError("levels must be finite")
        if np.any(np.diff(v) <= 0):
            raise DomainError("levels must be strictly ascending")
        object.__setattr__(self, "values", v)


def _data_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw, stripped


def _parse_float(token, path, lineno, raw):
    try:
        value = float(token)
    except ValueError:
        column = raw.index(token) + 1
        raise ParseError(f"not a number: {token!r}", path, lineno, column) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {token!r}", path, lineno, raw.index(token) + 1)
    return value


def parse_levels(path) -> LevelFile:
    """One decimal per line, strictly ascending; ``#`` lines are comments."""
    path = str(path)
    text = Path(path).read_text()
    values = []
    prev = None
    for lineno, raw, stripped in _data_lines(text):
        tokens = stripped.split()
        if len(tokens) != 1:
            raise ParseError("expected exactly one value per line", path, lineno,
                             raw.index(tokens[1]) + 1)
        value = _parse_float(tokens[0], path, lineno, raw)
        if prev is not None and value <= prev:
            raise ParseError(f"levels must be strictly ascending ({value!r} after {prev!r})",
                             path, lineno, raw.index(tokens[0]) + 1)
        values.append(value)
        prev = value
    if not values:
        raise ParseError("no levels found", path)
    if len(values) < 2:
        raise ParseError("a level list needs at least two values", path)
    return LevelFile(np.array(values), path)


def write_levels(levels, path) -> None:
    values = levels.values if isinstance(levels, LevelFile) else np.asarray(levels, dtype=float)
    Path(path).write_text("".join(fmt(v) + "\n" for v in values))


def levels_to_spacings(levels) -> SpacingSample:
    """Consecutive gaps divided by their grand mean."""
    if not isinstance(levels, LevelFile):
        values = np.asarray(levels, dtype=float)
        if values.size >= 2 and np.ptp(values) == 0:
            raise DegenerateSampleError("all levels are equal")
        levels = LevelFile(values)
    gaps = np.diff(levels.values)
    return SpacingSample.from_raw(gaps, "levels",
                                  f"levels={levels.source_path or '<memory>'} count={levels.values.size}")


def spacing_csv_text(sample: SpacingSample) -> str:
    out = _io.StringIO()
    if sample.provenance:
        out.write(f"# {sample.provenance}\n")
    if sample.extraction_mode:
        out.write(f"# mode={sample.extraction_mode}\n")
    out.write(f"# grand_mean={fmt(sample.grand_mean_used)}\n")
    out.write("spacing\n")
    for v in sample.spacings:
        out.write(fmt(v) + "\n")
    return out.getvalue()


def write_spacing_csv(sample: SpacingSample, path) -> None:
    Path(path).write_text(spacing_csv_text(sample))


def read_spacing_csv(path) -> SpacingSample:
    path = str(path)
    meta = {}
    provenance = []
    values = []
    header_seen = False
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            key, sep, val = body.partition("=")
            if sep and key in ("grand_mean", "mode") and " " not in key:
                meta[key] = val
            else:
                provenance.append(body)
            continue
        if not header_seen:
            if stripped != "spacing":
                raise ParseError(f"expected header 'spacing', got {stripped!r}", path, lineno, 1)
            header_seen = True
            continue
        value = _parse_float(stripped, path, lineno, raw)
        if value < 0:
            raise ParseError("spacings must be nonnegative", path, lineno, raw.index(stripped) + 1)
        values.append(value)
    if not header_seen:
        raise ParseError("missing 'spacing' header", path)
    if not values:
        raise ParseError("no spacings found", path)
    return SpacingSample(
        np.array(values),
        grand_mean_used=float(meta.get("grand_mean", 1.0)),
        extraction_mode=meta.get("mode"),
        provenance="; ".join(provenance),
    )


def parse_tabulated_cdf(path) -> TabulatedLaw:
    """Two whitespace-separated columns ``s F(s)``, both strictly increasing."""
    path = str(path)
    s_vals, f_vals = [], []
    for lineno, raw, stripped in _data_lines(Path(path).read_text()):
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError("expected two columns 's F(s)'", path, lineno)
        s = _parse_float(tokens[0], path, lineno, raw)
        F = _parse_float(tokens[1], path, lineno, raw)
        if s_vals and (s <= s_vals[-1] or F <= f_vals[-1]):
            raise ParseError("columns must be strictly increasing", path, lineno)
        if s < 0 or F < 0 or F > 1:
            raise ParseError("need s >= 0 and 0 <= F <= 1", path, lineno)
        s_vals.append(s)
        f_vals.append(F)
    if len(s_vals) < 2:
        raise ParseError("tabulated CDF needs at least two rows", path)
    return TabulatedLaw(np.array(s_vals), np.array(f_vals), source=Path(path).name)


def block_report_csv_text(report: BlockReport, provenance: str = "") -> str:
    out = _io.StringIO()
    if provenance:
        out.write(f"# {provenance}\n")
    out.write(f"# scheme={report.scheme.value} block_size={report.block_size} "
              f"grand_mean={fmt(report.grand_mean)}\n")
    out.write("block,mean,variance,cv,kappa\n")
    for index, st in report.rows:
        out.write(",".join([str(index), fmt(st.mean), fmt(st.variance), fmt(st.cv), fmt(st.kappa_cv)]) + "\n")
    return out.getvalue()
