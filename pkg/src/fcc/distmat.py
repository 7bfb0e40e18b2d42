"""
Distance requirement matrices, function distances and function distance matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .bits import BitLike, as_bitvector, masks_of_weight, popcount
from .errors import ConfigError, InvalidParameter, LengthMismatch
from .funcspace import FiniteFunction

__all__ = [
    "DistanceMatrix",
    "build_drm",
    "function_distance",
    "function_distance_brute",
    "build_fdm",
    "check_representative_condition",
    "read_matrix",
    "write_matrix",
]

_CHUNK_ELEMS = 1 << 21


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric, zero-diagonal matrix of pairwise distance requirements."""

    entries: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidParameter(f"distance matrix must be square and nonempty, got shape {a.shape}")
        if (a < 0).any():
            raise InvalidParameter("distance requirements must be nonnegative")
        if not (a == a.T).all():
            raise InvalidParameter("distance matrix must be symmetric")
        if np.diag(a).any():
            raise InvalidParameter("distance matrix must have a zero diagonal")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def upper_sum(self) -> int:
        return int(np.triu(self.entries, 1).sum())

    def is_uniform(self) -> bool:
        off = self.entries[~np.eye(self.size, dtype=bool)]
        return off.size == 0 or bool((off == off[0]).all())

    def tolist(self) -> list:
        return self.entries.tolist()

    def __eq__(self, other):
        if isinstance(other, DistanceMatrix):
            other = other.entries
        other = np.asarray(other)
        return other.shape == self.entries.shape and bool((other == self.entries).all())

    def __repr__(self):
        return f"DistanceMatrix({self.tolist()}, kind={self.kind!r})"

    def to_text(self) -> str:
        rows = [" ".join(str(x) for x in row) for row in self.tolist()]
        return "\n".join([str(self.size), *rows]) + "\n"

    @classmethod
    def from_text(cls, text: str, kind: str = "custom") -> "DistanceMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ConfigError("empty matrix document")
        try:
            m = int(lines[0])
        except ValueError:
            raise ConfigError(f"line 1: expected matrix size, got {lines[0]!r}") from None
        if len(lines) - 1 != m:
            raise ConfigError(f"expected {m} rows, got {len(lines) - 1}")
        rows = []
        for i, ln in enumerate(lines[1:], start=2):
            try:
                row = [int(x) for x in ln.split()]
            except ValueError:
                raise ConfigError(f"row {i - 1}: non-integer entry in {ln!r}") from None
            if len(row) != m:
                raise ConfigError(f"row {i - 1}: expected {m} entries, got {len(row)}")
            rows.append(row)
        try:
            return cls(np.array(rows), kind)
        except InvalidParameter as exc:
            raise ConfigError(str(exc)) from None


def read_matrix(path) -> DistanceMatrix:
    return DistanceMatrix.from_text(Path(path).read_text())


def write_matrix(D: DistanceMatrix, path):
    Path(path).write_text(D.to_text())


def _as_ints(f: FiniteFunction, msgs: Sequence[BitLike]) -> np.ndarray:
    out = []
    for u in msgs:
        u = as_bitvector(u)
        if u.length != f.k:
            raise LengthMismatch(f"message {u} has length {u.length}, function expects {f.k}")
        out.append(u.value)
    return np.array(out, dtype=np.int64)


def build_drm(f: FiniteFunction, t: int, msgs: Sequence[BitLike]) -> DistanceMatrix:
    """DRM entry (i, j) = max(2t+1 - d(u_i, u_j), 0) if f(u_i) != f(u_j), else 0."""
    if not len(msgs):
        raise InvalidParameter("need at least one message")
    if t < 0:
        raise InvalidParameter("t must be nonnegative")
    m = _as_ints(f, msgs)
    lab = f.indices(m)
    d = popcount(m[:, None] ^ m[None, :])
    req = np.where(lab[:, None] != lab[None, :], np.maximum(2 * t + 1 - d, 0), 0)
    return DistanceMatrix(req, "DRM")


def _class_members(f: FiniteFunction, i: int) -> np.ndarray:
    return np.flatnonzero(f.full_table() == i).astype(np.int64)


def function_distance(f: FiniteFunction, i: int, j: int) -> int:
    """Minimum Hamming distance between a message valued ``i`` and one valued ``j``.

    Scans outwards from the smaller label class one flip weight at a time and
    stops at the first hit.
    """
    for x in (i, j):
        if not 0 <= x < f.E:
            raise InvalidParameter(f"label index {x} out of range")
    if i == j:
        return 0
    src, dst = _class_members(f, i), _class_members(f, j)
    if len(dst) < len(src):
        src, j = dst, i
    for w in range(1, f.k + 1):
        masks = masks_of_weight(f.k, w)
        rows = max(1, _CHUNK_ELEMS // len(masks))
        for s in range(0, len(src), rows):
            if (f.indices(src[s:s + rows, None] ^ masks[None, :]) == j).any():
                return w
    raise AssertionError("unreachable: distinct labels are always within distance k")


def function_distance_brute(f: FiniteFunction, i: int, j: int) -> int:
    """Exhaustive pair scan; reference for :func:`function_distance`."""
    src, dst = _class_members(f, i), _class_members(f, j)
    return int(min(popcount(u ^ dst).min() for u in src))


def build_fdm(f: FiniteFunction, t: int) -> DistanceMatrix:
    """E x E matrix with entry max(2t+1 - d(f_i, f_j), 0) off the diagonal.

    Rows follow the stored label order. Only distances up to 2t matter, so
    the scan stops there.
    """
    if t < 0:
        raise InvalidParameter("t must be nonnegative")
    E = f.E
    cap = 2 * t + 1
    dmin = np.full((E, E), cap, dtype=np.int64)
    tab = f.full_table()
    msgs = np.arange(1 << f.k, dtype=np.int64)
    for w in range(1, min(2 * t, f.k) + 1):
        masks = masks_of_weight(f.k, w)
        rows = max(1, _CHUNK_ELEMS // len(masks))
        for s in range(0, len(msgs), rows):
            a = np.broadcast_to(tab[msgs[s:s + rows], None], (min(rows, len(msgs) - s), len(masks)))
            b = tab[msgs[s:s + rows, None] ^ masks[None, :]]
            hit = a != b
            pairs = np.unique(a[hit] * E + b[hit])
            ai, bi = pairs // E, pairs % E
            dmin[ai, bi] = np.minimum(dmin[ai, bi], w)
    req = np.maximum(cap - dmin, 0)
    np.fill_diagonal(req, 0)
    return DistanceMatrix(req, "FDM")


def check_representative_condition(f: FiniteFunction, t: int, reps: Sequence[BitLike]) -> bool:
    """True iff ``reps`` hit every label once and their DRM equals the FDM."""
    if len(reps) != f.E:
        return False
    m = _as_ints(f, reps)
    lab = f.indices(m)
    if sorted(lab.tolist()) != list(range(f.E)):
        return False
    order = np.argsort(lab)
    drm = build_drm(f, t, [as_bitvector(reps[i]) for i in order])
    return drm == build_fdm(f, t)
