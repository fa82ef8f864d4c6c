"""Similarity-matrix ingest and discretization into a BitMatrix."""
from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

import numpy as np

from .bitmatrix import BitMatrix, pack_column


class ParseError(ValueError):
    pass


class RaggedRow(ParseError):
    pass


class ValueOutOfRange(ParseError):
    pass


class DuplicateId(ParseError):
    pass


class EmptyMatrix(ParseError):
    pass


class NonNumericCell(ParseError):
    pass


_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64)
        object.__setattr__(self, "row_ids", tuple(self.row_ids))
        object.__setattr__(self, "col_ids", tuple(self.col_ids))
        if not self.row_ids or not self.col_ids:
            raise EmptyMatrix("matrix needs at least one row and one column")
        if vals.shape != (len(self.row_ids), len(self.col_ids)):
            raise RaggedRow(f"values shape {vals.shape} does not match ids "
                            f"({len(self.row_ids)}, {len(self.col_ids)})")
        for kind, ids in (("row", self.row_ids), ("column", self.col_ids)):
            seen = set()
            for ident in ids:
                if ident in seen:
                    raise DuplicateId(f"duplicate {kind} id {ident!r}")
                seen.add(ident)
        if np.isnan(vals).any() or (vals < 0).any() or (vals > 1).any():
            raise ValueOutOfRange("similarity values must lie in [0, 1]")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __eq__(self, other):
        if not isinstance(other, SimilarityMatrix):
            return NotImplemented
        return (self.row_ids == other.row_ids and self.col_ids == other.col_ids
                and np.array_equal(self.values, other.values))


@dataclass(frozen=True)
class DiscretizeConfig:
    method: str = "max_minus_x"
    x: float = 25.0
    beta: float = 0.0

    def __post_init__(self):
        if self.method not in ("max_minus_x", "beta_threshold"):
            raise ValueError(f"unknown discretization method {self.method!r}")
        if not 0 <= self.x <= 100:
            raise ValueError("x must be a percentage in [0, 100]")
        if not 0 <= self.beta <= 1:
            raise ValueError("beta must lie in [0, 1]")

    @classmethod
    def parse(cls, spec: str) -> "DiscretizeConfig":
        """Parse ``max-minus-x:<x>`` or ``beta:<b>``."""
        name, sep, arg = spec.partition(":")
        if not sep:
            raise ValueError(f"bad discretization spec {spec!r}")
        try:
            value = float(arg)
        except ValueError:
            raise ValueError(f"bad discretization value {arg!r}") from None
        if name == "max-minus-x":
            return cls("max_minus_x", x=value)
        if name == "beta":
            return cls("beta_threshold", beta=value)
        raise ValueError(f"unknown discretization method {name!r}")

    def __str__(self):
        if self.method == "max_minus_x":
            return f"max-minus-x:{self.x:g}"
        return f"beta:{self.beta:g}"


def _split(line: str, lineno: int) -> list[str]:
    if '"' in line:
        raise ParseError(f"line {lineno}: quoted fields are not supported")
    return [cell.strip() for cell in line.split(",")]


def parse_similarity_matrix(text: str | Iterable[str]) -> SimilarityMatrix:
    """Parse CSV text (or an iterable of lines) into a SimilarityMatrix.

    The header is ``<anything>,gene1,gene2,...``; each data row is a probe id
    followed by one decimal per gene.  The input is consumed in one pass.
    """
    lines: Iterable[str] = io.StringIO(text) if isinstance(text, str) else text
    header = None
    row_ids: list[str] = []
    rows: list[list[float]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if lineno == 1:
            line = line.lstrip("﻿")
        if not line.strip():
            continue
        cells = _split(line, lineno)
        if header is None:
            header = cells[1:]
            continue
        if len(cells) != len(header) + 1:
            raise RaggedRow(f"line {lineno}: expected {len(header) + 1} fields, "
                            f"got {len(cells)}")
        values = []
        for cell in cells[1:]:
            if not _DECIMAL.fullmatch(cell):
                raise NonNumericCell(f"line {lineno}: {cell!r} is not a decimal number")
            v = float(cell)
            if not 0.0 <= v <= 1.0:
                raise ValueOutOfRange(f"line {lineno}: {cell} outside [0, 1]")
            values.append(v)
        row_ids.append(cells[0])
        rows.append(values)
    if header is None or not header or not rows:
        raise EmptyMatrix("no header or no data rows")
    if any(not h for h in header) or any(not r for r in row_ids):
        raise ParseError("empty identifier")
    return SimilarityMatrix(tuple(row_ids), tuple(header), np.array(rows, dtype=np.float64))


def serialize_similarity_matrix(m: SimilarityMatrix, corner: str = "probe") -> str:
    out = [",".join([corner, *m.col_ids])]
    for rid, row in zip(m.row_ids, m.values):
        out.append(",".join([rid, *(repr(float(v)) for v in row)]))
    return "\n".join(out) + "\n"


def _to_bitmatrix(m: SimilarityMatrix, mask: np.ndarray) -> BitMatrix:
    cols = [pack_column(mask[:, i]) for i in range(mask.shape[1])]
    return BitMatrix(cols, mask.shape[0], m.row_ids, m.col_ids)


def max_minus_x_threshold(m: SimilarityMatrix, x: float) -> float:
    hv = float(m.values.max())
    return (1.0 - x / 100.0) * hv


def discretize_max_minus_x(m: SimilarityMatrix, x: float) -> BitMatrix:
    """1 where the value exceeds HV - x% of HV, HV being the global maximum."""
    if not 0 <= x <= 100:
        raise ValueError("x must be a percentage in [0, 100]")
    return _to_bitmatrix(m, m.values > max_minus_x_threshold(m, x))


def discretize_beta(m: SimilarityMatrix, beta: float) -> BitMatrix:
    """1 where similarity(r, g) > beta; each row is then one transaction."""
    return _to_bitmatrix(m, m.values > beta)


def discretize(m: SimilarityMatrix, cfg: DiscretizeConfig) -> BitMatrix:
    if cfg.method == "max_minus_x":
        return discretize_max_minus_x(m, cfg.x)
    return discretize_beta(m, cfg.beta)


class CountingReader:
    """Line iterator over a text stream that counts full passes over it.

    A pass starts every time iteration begins at offset 0 and is used to check
    that the pipeline reads its source exactly once.
    """

    def __init__(self, stream: TextIO):
        self._stream = stream
        self.passes = 0
        self.lines_read = 0

    def __iter__(self) -> Iterator[str]:
        self._stream.seek(0)
        self.passes += 1
        for line in self._stream:
            self.lines_read += 1
            yield line
