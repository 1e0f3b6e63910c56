"""Discrete tabular datasets and variable subsets.

A dataset is a fixed table of category codes: N sample rows over n named
variables, each variable taking dense integer codes 0..cardinality-1.
Codes carry identity only; no ordering is assumed anywhere downstream.

Variable subsets are represented as integer bitmasks (bit i set = variable
i is a member). Python integers are arbitrary precision, so the same
representation covers n > 64 transparently; for n <= 64 a mask fits in one
machine word.
"""
from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np


class DataError(ValueError):
    """Raised for malformed or inconsistent input data."""


@dataclass(frozen=True)
class Variable:
    """A named categorical variable with a declared cardinality."""

    name: str
    cardinality: int


class VariableSubset:
    """An immutable, order-free set of variable indices.

    Backed by a bitmask; equality and hashing go through the mask, so two
    subsets built from the same indices in any order are identical.
    """

    __slots__ = ("mask",)

    def __init__(self, indices: Iterable[int] = (), *, mask: int | None = None):
        if mask is None:
            mask = 0
            for i in indices:
                if i < 0:
                    raise ValueError(f"negative variable index {i}")
                mask |= 1 << i
        if mask <= 0:
            raise ValueError("subset must be non-empty")
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("VariableSubset is immutable")

    @classmethod
    def from_mask(cls, mask: int) -> "VariableSubset":
        return cls(mask=mask)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(mask_indices(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(mask_indices(self.mask))

    def __eq__(self, other) -> bool:
        return isinstance(other, VariableSubset) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __or__(self, other: "VariableSubset") -> "VariableSubset":
        return VariableSubset(mask=self.mask | other.mask)

    def add(self, i: int) -> "VariableSubset":
        return VariableSubset(mask=self.mask | (1 << i))

    def remove(self, i: int) -> "VariableSubset":
        m = self.mask & ~(1 << i)
        if m == 0:
            raise ValueError("removal would leave an empty subset")
        return VariableSubset(mask=m)

    def issubset(self, other: "VariableSubset") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return f"VariableSubset({list(self.indices)})"


def mask_indices(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def as_mask(subset) -> int:
    """Accept a VariableSubset, a bitmask int, or an index iterable."""
    if isinstance(subset, VariableSubset):
        return subset.mask
    if isinstance(subset, int):
        if subset <= 0:
            raise ValueError("subset mask must be positive")
        return subset
    return VariableSubset(subset).mask


class Dataset:
    """Immutable table of category codes over named variables.

    Parameters
    ----------
    codes : array-like of shape (n_samples, n_vars)
        Non-negative integer codes; codes[:, j] < cardinality of variable j.
    variables : sequence of Variable, or None
        Descriptors; when None, names v0..v{n-1} and cardinalities
        max(code)+1 are inferred.
    label_maps : optional dict
        For columns ingested from text labels: variable name -> {label: code}.
    """

    def __init__(self, codes, variables: Sequence[Variable] | None = None,
                 label_maps: dict[str, dict[str, int]] | None = None):
        arr = np.asarray(codes, dtype=np.int64)
        if arr.ndim != 2:
            raise DataError("codes must be a 2-d table")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataError("dataset must have at least one row and one column")
        if arr.min() < 0:
            raise DataError("negative category code")
        if variables is None:
            variables = [Variable(f"v{j}", int(arr[:, j].max()) + 1)
                         for j in range(arr.shape[1])]
        variables = list(variables)
        if len(variables) != arr.shape[1]:
            raise DataError("variable count does not match column count")
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise DataError("duplicate variable names")
        for j, v in enumerate(variables):
            if v.cardinality < 1:
                raise DataError(f"variable {v.name}: cardinality must be >= 1")
            top = int(arr[:, j].max())
            if top >= v.cardinality:
                raise DataError(
                    f"variable {v.name}: code {top} out of range for "
                    f"cardinality {v.cardinality}")
        arr = arr.copy()
        arr.flags.writeable = False
        self._codes = arr
        self.variables = variables
        self.label_maps = dict(label_maps) if label_maps else {}

    @property
    def codes(self) -> np.ndarray:
        return self._codes

    @property
    def n_vars(self) -> int:
        return self._codes.shape[1]

    @property
    def n_samples(self) -> int:
        return self._codes.shape[0]

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return tuple(v.cardinality for v in self.variables)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DataError(f"unknown variable {name!r}") from None

    def fingerprint(self) -> str:
        """Stable hash of codes + descriptors; identifies the dataset."""
        h = hashlib.sha256()
        h.update(self._codes.tobytes())
        for v in self.variables:
            h.update(f"{v.name}:{v.cardinality};".encode())
        return h.hexdigest()[:16]

    def replace_column(self, j: int, column: np.ndarray) -> "Dataset":
        """A new Dataset with column j replaced (descriptors unchanged)."""
        codes = self._codes.copy()
        codes[:, j] = column
        return Dataset(codes, self.variables, self.label_maps)

    def take(self, rows) -> "Dataset":
        """A new Dataset restricted to the given sample rows."""
        return Dataset(self._codes[rows], self.variables, self.label_maps)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Dataset)
                and self.variables == other.variables
                and np.array_equal(self._codes, other._codes))

    def __repr__(self) -> str:
        return f"Dataset(n_vars={self.n_vars}, n_samples={self.n_samples})"


def column_view(ds: Dataset, subset) -> np.ndarray:
    """Rows restricted to a subset, columns in canonical (ascending) order.

    Returns an (n_samples, |subset|) array; row r is the value tuple of the
    subset in sample r.
    """
    idx = mask_indices(as_mask(subset))
    if idx and idx[-1] >= ds.n_vars:
        raise DataError(f"variable index {idx[-1]} out of range")
    return ds.codes[:, idx]


def load(path, fmt: str | None = None, header: bool | None = None,
         map_labels: bool = False,
         cardinalities: Sequence[int] | None = None) -> Dataset:
    """Read a CSV/TSV of category codes (or labels) into a Dataset.

    fmt defaults from the file suffix (.tsv -> tab); header=None sniffs the
    first row (non-integer cells in an unmapped file mean a header).
    Cardinalities are inferred as max observed code + 1 unless overridden;
    overrides may only enlarge, never shrink.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    if fmt is None:
        fmt = "tsv" if path.suffix.lower() in (".tsv", ".tab") else "csv"
    if fmt not in ("csv", "tsv"):
        raise DataError(f"unsupported format {fmt!r}")
    delim = "\t" if fmt == "tsv" else ","

    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delim) if row]
    if not rows:
        raise DataError(f"empty file: {path}")

    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise DataError(f"ragged rows: row {r} has {len(row)} cells, "
                            f"expected {width}")

    def _is_int(cell: str) -> bool:
        cell = cell.strip()
        return cell.isdigit() or (cell.startswith("-") and cell[1:].isdigit())

    if header is None:
        header = not all(_is_int(c) for c in rows[0])
    if header:
        names = [c.strip() for c in rows[0]]
        body = rows[1:]
        if not body:
            raise DataError(f"no data rows in {path}")
    else:
        names = [f"v{j}" for j in range(width)]
        body = rows
    if len(set(names)) != len(names):
        raise DataError("duplicate column names")

    label_maps: dict[str, dict[str, int]] = {}
    cols: list[np.ndarray] = []
    for j, name in enumerate(names):
        cells = [row[j].strip() for row in body]
        if any(c == "" for c in cells):
            raise DataError(f"column {name}: missing value (no imputation)")
        if all(_is_int(c) for c in cells):
            col = np.array([int(c) for c in cells], dtype=np.int64)
            if col.min() < 0:
                raise DataError(f"column {name}: negative code")
        elif map_labels:
            levels = sorted(set(cells))
            mapping = {lab: k for k, lab in enumerate(levels)}
            label_maps[name] = mapping
            col = np.array([mapping[c] for c in cells], dtype=np.int64)
        else:
            bad = next(c for c in cells if not _is_int(c))
            raise DataError(f"column {name}: non-integer cell {bad!r} "
                            "(pass map_labels to ingest text labels)")
        cols.append(col)

    codes = np.stack(cols, axis=1)
    cards = [int(codes[:, j].max()) + 1 for j in range(width)]
    if cardinalities is not None:
        if len(cardinalities) != width:
            raise DataError("cardinality override length mismatch")
        for j, c in enumerate(cardinalities):
            if c < cards[j]:
                raise DataError(
                    f"column {names[j]}: declared cardinality {c} below "
                    f"observed {cards[j]}")
            cards[j] = int(c)

    variables = [Variable(n, c) for n, c in zip(names, cards)]
    return Dataset(codes, variables, label_maps)


def write(ds: Dataset, path, fmt: str | None = None, header: bool = True) -> None:
    """Write a Dataset as CSV/TSV; label mappings go to a JSON sidecar."""
    path = Path(path)
    if fmt is None:
        fmt = "tsv" if path.suffix.lower() in (".tsv", ".tab") else "csv"
    delim = "\t" if fmt == "tsv" else ","
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter=delim, lineterminator="\n")
        if header:
            w.writerow(ds.names)
        w.writerows(ds.codes.tolist())
    if ds.label_maps:
        sidecar = path.with_suffix(path.suffix + ".labels.json")
        with open(sidecar, "w", encoding="utf-8") as fh:
            json.dump(ds.label_maps, fh, indent=2, sort_keys=True)
