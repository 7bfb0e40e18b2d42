"""
Finite functions on binary words, function balls and local boundedness.

A :class:`FiniteFunction` maps every length-k message to an index into an
ordered label sequence. The order of ``labels`` is the total order used by
the contiguity condition and the cyclic colouring.

Closed-form families (Hamming weight, weight distribution, lexicographic
rearrangement) are evaluated on demand; table functions hold an explicit
array of 2^k label indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .bits import BitLike, BitVector, all_messages, as_bitvector, flip_masks, popcount
from .errors import ConfigError, ContiguityViolation, InvalidParameter, LengthMismatch

__all__ = [
    "FiniteFunction",
    "weight_function",
    "weight_distribution",
    "lexicographic_rearrangement",
    "table_function",
    "constant_function",
    "function_ball",
    "compute_lambda",
    "hwdf_lambda_bound",
    "check_contiguity",
    "ContiguityResult",
    "cyclic_coloring",
    "Coloring",
    "load_function_table",
    "save_function_table",
]

FAMILIES = ("weight", "weight_distribution", "lexicographic_rearrangement", "table")

# rows x ball-size elements handled per vectorised chunk
_CHUNK_ELEMS = 1 << 21


@dataclass(frozen=True, eq=False)
class FiniteFunction:
    """A total map from F_2^k onto an ordered label set.

    Use the module-level constructors rather than instantiating directly.
    """

    k: int
    labels: tuple
    family: str
    threshold: Optional[int] = None
    table: Optional[np.ndarray] = None
    source: Optional[str] = None

    @property
    def E(self) -> int:
        """Size of the image."""
        return len(self.labels)

    def indices(self, msgs) -> np.ndarray:
        """Vectorised label index for an integer array of messages."""
        msgs = np.asarray(msgs, dtype=np.int64)
        if self.family == "table":
            return self.table[msgs]
        w = popcount(msgs)
        if self.family == "weight_distribution":
            return w // self.threshold
        return w

    def index_of(self, u: BitLike) -> int:
        u = self._check(u)
        return int(self.indices(u.value))

    def __call__(self, u: BitLike):
        return self.labels[self.index_of(u)]

    def full_table(self) -> np.ndarray:
        """Label index of every message, indexed by message value."""
        if self.table is not None:
            return self.table
        return self.indices(all_messages(self.k))

    def describe(self) -> str:
        if self.family == "weight_distribution":
            return f"hwdf(T={self.threshold})"
        if self.family == "table":
            return f"table({self.source})" if self.source else "table"
        return self.family

    def _check(self, u: BitLike) -> BitVector:
        u = as_bitvector(u)
        if u.length != self.k:
            raise LengthMismatch(f"message has length {u.length}, function expects {self.k}")
        return u


def weight_function(k: int) -> FiniteFunction:
    _check_k(k)
    return FiniteFunction(k, tuple(range(k + 1)), "weight")


def weight_distribution(k: int, T: int) -> FiniteFunction:
    """u -> floor(wt(u) / T); T = 1 is the weight function (kept as its own tag)."""
    _check_k(k)
    if T < 1:
        raise InvalidParameter(f"threshold must be >= 1, got {T}")
    return FiniteFunction(k, tuple(range(k // T + 1)), "weight_distribution", threshold=T)


def lexicographic_rearrangement(k: int) -> FiniteFunction:
    """u -> 0^(k - wt u) 1^(wt u), labels ordered lexicographically."""
    _check_k(k)
    labels = tuple("0" * (k - j) + "1" * j for j in range(k + 1))
    return FiniteFunction(k, labels, "lexicographic_rearrangement")


def table_function(k: int, labels: Sequence, values: Sequence, source: Optional[str] = None) -> FiniteFunction:
    """Build a function from one label per message (messages in lexicographic order).

    ``labels`` fixes the total order; every label must be attained.
    """
    _check_k(k)
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise InvalidParameter("labels must be distinct")
    if len(values) != 1 << k:
        raise InvalidParameter(f"expected {1 << k} values, got {len(values)}")
    pos = {lab: i for i, lab in enumerate(labels)}
    try:
        table = np.array([pos[v] for v in values], dtype=np.int64)
    except KeyError as exc:
        raise InvalidParameter(f"value {exc.args[0]!r} is not a declared label") from None
    missing = set(range(len(labels))) - set(np.unique(table).tolist())
    if missing:
        raise InvalidParameter(f"labels never attained: {[labels[i] for i in sorted(missing)]}")
    table.setflags(write=False)
    return FiniteFunction(k, labels, "table", table=table, source=source)


def constant_function(k: int, label=0) -> FiniteFunction:
    return table_function(k, [label], [label] * (1 << k))


def _check_k(k: int):
    if k < 1:
        raise InvalidParameter(f"message length must be >= 1, got {k}")


def _check_rho(f: FiniteFunction, rho: int):
    if not 0 <= rho <= f.k:
        raise InvalidParameter(f"radius must lie in [0, {f.k}], got {rho}")


# -- balls --------------------------------------------------------------------


def function_ball(f: FiniteFunction, u: BitLike, rho: int) -> frozenset:
    """Label indices attained within Hamming distance ``rho`` of ``u``."""
    u = f._check(u)
    _check_rho(f, rho)
    vals = f.indices(u.value ^ flip_masks(f.k, rho))
    return frozenset(np.unique(vals).tolist())


def _ball_stats(f: FiniteFunction, rho: int):
    """Yield (messages, distinct count, min index, max index) chunk by chunk."""
    masks = flip_masks(f.k, rho)
    rows = max(1, _CHUNK_ELEMS // len(masks))
    n = 1 << f.k
    for start in range(0, n, rows):
        msgs = np.arange(start, min(n, start + rows), dtype=np.int64)
        vals = np.sort(f.indices(msgs[:, None] ^ masks[None, :]), axis=1)
        distinct = 1 + np.count_nonzero(np.diff(vals, axis=1), axis=1)
        yield msgs, distinct, vals[:, 0], vals[:, -1]


def compute_lambda(f: FiniteFunction, rho: int) -> int:
    """Smallest lambda for which ``f`` is locally (rho, lambda)-bounded."""
    _check_rho(f, rho)
    return int(max(d.max() for _, d, _, _ in _ball_stats(f, rho)))


def hwdf_lambda_bound(T: int, t: int) -> int:
    """Upper bound floor(4t/T) + 2 on the local bound of the weight distribution function."""
    if T < 1 or t < 1:
        raise InvalidParameter("T and t must be positive")
    return 4 * t // T + 2


class ContiguityResult(NamedTuple):
    ok: bool
    witness: Optional[BitVector] = None

    def __bool__(self):
        return self.ok


def check_contiguity(f: FiniteFunction, rho: int) -> ContiguityResult:
    """Check that every radius-``rho`` function ball is an interval of the label order."""
    _check_rho(f, rho)
    for msgs, distinct, lo, hi in _ball_stats(f, rho):
        bad = np.flatnonzero(hi - lo + 1 != distinct)
        if bad.size:
            return ContiguityResult(False, BitVector(f.k, int(msgs[bad[0]])))
    return ContiguityResult(True)


@dataclass(frozen=True, eq=False)
class Coloring:
    """Message colouring u -> 1 + (label index mod lam), colours in 1..lam."""

    f: FiniteFunction
    lam: int

    def __call__(self, u: BitLike) -> int:
        return 1 + self.f.index_of(u) % self.lam

    def colors(self, msgs) -> np.ndarray:
        return 1 + self.f.indices(msgs) % self.lam


def cyclic_coloring(f: FiniteFunction, lam: int, rho: Optional[int] = None) -> Coloring:
    """Cyclic colouring of the label order.

    When ``rho`` is given the separation preconditions are checked: balls of
    radius ``rho`` must be contiguous and hold at most ``lam`` labels.
    """
    if lam < 1:
        raise InvalidParameter("lambda must be >= 1")
    if rho is not None:
        res = check_contiguity(f, rho)
        if not res:
            raise ContiguityViolation(res.witness, rho)
        need = compute_lambda(f, rho)
        if need > lam:
            raise InvalidParameter(f"lambda={lam} is below the local bound {need} at radius {rho}")
    return Coloring(f, lam)


# -- file format ------------------------------------------------------------------


def load_function_table(path) -> FiniteFunction:
    """Read a function table: JSON object with ``k``, ``labels`` and ``values``."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    for key in ("k", "labels", "values"):
        if key not in doc:
            raise ConfigError(f"{path}: missing field '{key}'")
    try:
        return table_function(int(doc["k"]), [str(x) for x in doc["labels"]],
                              [str(x) for x in doc["values"]], source=str(path))
    except InvalidParameter as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _json_label(x):
    # ints and strings survive JSON; anything else is stored by its str()
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    return x if isinstance(x, str) else str(x)


def save_function_table(f: FiniteFunction, path):
    tab = f.full_table()
    doc = {
        "k": f.k,
        "labels": [_json_label(x) for x in f.labels],
        "values": [_json_label(f.labels[i]) for i in tab.tolist()],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")
