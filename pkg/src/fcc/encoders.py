"""
Systematic FCC encoders u -> (u, u_p).

Every construction here picks the parity word from a small list:

* ``lambda4``, ``generic``, ``hwdf_parity`` and ``hwdf_mod_a`` index the list
  by ``label index mod modulus``. For the colouring constructions the colour
  is ``1 + (index mod lambda)`` and colour c uses word c - 1; for the weight
  distribution constructions the label index is the value floor(wt/T) itself.
* ``dcode`` holds one parity word per message.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .bits import BitLike, BitVector, as_bitvector, popcount, repeat
from .codesearch import BlockCode, repetition_code_4, search_N_uniform
from .distmat import build_drm
from .errors import (
    ConfigError,
    ContiguityViolation,
    DistanceRequirementViolation,
    InvalidParameter,
    InvalidParityCode,
    LambdaTooLarge,
    LengthMismatch,
    ThresholdOutOfRange,
)
from .funcspace import (
    _json_label,
    FiniteFunction,
    check_contiguity,
    compute_lambda,
    lexicographic_rearrangement,
    load_function_table,
    table_function,
    weight_distribution,
    weight_function,
)

__all__ = [
    "FccEncoder",
    "AmbiguousDecode",
    "LAMBDA4_TABLE",
    "build_lambda4",
    "build_generic",
    "build_hwdf_parity",
    "build_hwdf_mod_a",
    "hwdf_window",
    "build_from_dcode",
    "decode_function",
    "encoder_to_descriptor",
    "encoder_from_descriptor",
    "save_encoder",
    "load_encoder",
]

LAMBDA4_TABLE = ("000", "110", "101", "011")
STRATEGIES = ("lambda4", "generic_coloring", "hwdf_parity", "hwdf_mod_a", "dcode")


@dataclass(frozen=True, eq=False)
class FccEncoder:
    f: FiniteFunction
    t: int
    r: int
    strategy: str
    parity_words: tuple
    modulus: Optional[int] = None
    extra: Optional[dict] = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise InvalidParameter(f"unknown strategy {self.strategy!r}")
        if any(w.length != self.r for w in self.parity_words):
            raise InvalidParameter("parity words must all have length r")
        if self.modulus is None and len(self.parity_words) != 1 << self.f.k:
            raise InvalidParameter("a per-message encoder needs one parity word per message")
        if self.modulus is not None and len(self.parity_words) < self.modulus:
            raise InvalidParameter("fewer parity words than the selector modulus")

    @property
    def k(self) -> int:
        return self.f.k

    @property
    def n(self) -> int:
        return self.f.k + self.r

    @cached_property
    def _word_ints(self) -> np.ndarray:
        return np.array([w.value for w in self.parity_words], dtype=np.int64)

    def word_index(self, msgs) -> np.ndarray:
        msgs = np.asarray(msgs, dtype=np.int64)
        if self.modulus is None:
            return msgs
        return self.f.indices(msgs) % self.modulus

    def parities(self, msgs) -> np.ndarray:
        """Vectorised parity words (as integers) of an integer message array."""
        return self._word_ints[self.word_index(msgs)]

    def parity(self, u: BitLike) -> BitVector:
        u = self.f._check(u)
        return self.parity_words[int(self.word_index(u.value))]

    def encode(self, u: BitLike) -> BitVector:
        u = self.f._check(u)
        return u + self.parity(u)

    def codebook(self) -> np.ndarray:
        """Codeword integers of all 2^k messages, indexed by message."""
        return self._codebook

    @cached_property
    def _codebook(self) -> np.ndarray:
        msgs = np.arange(1 << self.k, dtype=np.int64)
        cb = (msgs << self.r) | self.parities(msgs)
        cb.setflags(write=False)
        return cb


@dataclass(frozen=True)
class AmbiguousDecode:
    """Nearest codewords disagree on the function value (more than t errors)."""

    labels: tuple
    distance: int

    def __bool__(self):
        return False


def _redundancy_words(words: Sequence[str], t: int) -> tuple:
    if t == 0:
        return tuple(BitVector(0, 0) for _ in words)
    return tuple(repeat(w, t) for w in words)


def _require_contiguous(f: FiniteFunction, rho: int):
    res = check_contiguity(f, rho)
    if not res:
        raise ContiguityViolation(res.witness, rho)


def _check_t(t: int):
    if t < 0:
        raise InvalidParameter("t must be nonnegative")


def build_lambda4(f: FiniteFunction, t: int) -> FccEncoder:
    """Redundancy-3t encoder for locally (2t, 4)-bounded contiguous functions.

    Colour c in 1..4 selects the c-th row of 000/110/101/011, repeated t times.
    """
    _check_t(t)
    rho = min(2 * t, f.k)
    lam = compute_lambda(f, rho)
    if lam > 4:
        raise LambdaTooLarge(lam, 4)
    _require_contiguous(f, rho)
    return FccEncoder(f, t, 3 * t, "lambda4", _redundancy_words(LAMBDA4_TABLE, t), modulus=4,
                      extra={"lambda": lam})


def build_generic(f: FiniteFunction, t: int, parity_code: Union[BlockCode, str] = "auto",
                  node_cap: Optional[int] = None) -> FccEncoder:
    """Colouring encoder with any code of >= lambda words at distance >= 2t.

    ``parity_code="auto"`` searches for a shortest such code.
    """
    _check_t(t)
    rho = min(2 * t, f.k)
    lam = compute_lambda(f, rho)
    _require_contiguous(f, rho)
    if isinstance(parity_code, str):
        if parity_code != "auto":
            raise InvalidParameter(f"parity_code must be a BlockCode or 'auto', got {parity_code!r}")
        kw = {} if node_cap is None else {"node_cap": node_cap}
        parity_code = search_N_uniform(lam, 2 * t, **kw).witness
    _check_parity_code(parity_code, lam, 2 * t)
    return FccEncoder(f, t, parity_code.length, "generic_coloring", parity_code.words[:lam],
                      modulus=lam, extra={"lambda": lam})


def _check_parity_code(code: BlockCode, need_words: int, need_dist: int):
    if len(code) < need_words:
        raise InvalidParityCode(f"parity code has {len(code)} words, need {need_words}")
    md = code.min_distance(need_words)
    if md is not None and md < need_dist:
        raise InvalidParityCode(f"parity code has minimum distance {md}, need {need_dist}")


def build_hwdf_parity(k: int, T: int, t: int) -> FccEncoder:
    """Redundancy-2t encoder for floor(wt/T) when 4t >= T > 2t: parity bit of the value, 2t times."""
    if not (4 * t >= T > 2 * t):
        raise ThresholdOutOfRange(f"parity construction needs 4t >= T > 2t, got T={T}, t={t}")
    f = weight_distribution(k, T)
    words = (BitVector.zeros(2 * t), BitVector.ones(2 * t))
    return FccEncoder(f, t, 2 * t, "hwdf_parity", words, modulus=2)


def hwdf_window(T: int, t: int) -> tuple:
    """(m, a) with 4t/(m-1) >= T > 4t/m and a = ceil(m/2) + 1."""
    if T < 1 or t < 1:
        raise InvalidParameter("T and t must be positive")
    if T > 4 * t:
        raise ThresholdOutOfRange(
            f"T={T} > 4t={4 * t}: the function is locally binary; use build_generic (lambda=2)")
    m = 4 * t // T + 1
    if not (T * (m - 1) <= 4 * t < T * m):
        raise InvalidParameter(f"no window integer m for T={T}, t={t}")
    return m, (m + 1) // 2 + 1


def build_hwdf_mod_a(k: int, T: int, t: int, parity_code: Union[BlockCode, str] = "auto",
                     node_cap: Optional[int] = None) -> FccEncoder:
    """Encoder for floor(wt/T) using word number (value mod a) of an (a, 2t) code."""
    m, a = hwdf_window(T, t)
    if isinstance(parity_code, str):
        if parity_code != "auto":
            raise InvalidParameter(f"parity_code must be a BlockCode or 'auto', got {parity_code!r}")
        if a == 4:
            parity_code = repetition_code_4(t)
        else:
            kw = {} if node_cap is None else {"node_cap": node_cap}
            parity_code = search_N_uniform(a, 2 * t, **kw).witness
    _check_parity_code(parity_code, a, 2 * t)
    f = weight_distribution(k, T)
    return FccEncoder(f, t, parity_code.length, "hwdf_mod_a", parity_code.words[:a], modulus=a,
                      extra={"m": m, "a": a})


def build_from_dcode(f: FiniteFunction, t: int, msgs: Sequence[BitLike],
                     words: Sequence[BitLike]) -> FccEncoder:
    """Encoder u_i -> (u_i, p_i) from a D-code matched to the messages' DRM."""
    _check_t(t)
    msgs = [as_bitvector(u) for u in msgs]
    words = [as_bitvector(p) for p in words]
    if len(msgs) != 1 << f.k or len({u.value for u in msgs}) != len(msgs):
        raise InvalidParameter(f"need each of the {1 << f.k} messages exactly once")
    if len(words) != len(msgs):
        raise InvalidParameter("need one parity word per message")
    r = words[0].length
    if any(p.length != r for p in words):
        raise LengthMismatch("parity words must share one length")
    D = build_drm(f, t, msgs).entries
    w = np.array([p.value for p in words], dtype=np.int64)
    got = popcount(w[:, None] ^ w[None, :])
    bad = np.argwhere(got < D)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        raise DistanceRequirementViolation((str(msgs[i]), str(msgs[j])), int(D[i, j]), int(got[i, j]))
    table = [None] * len(msgs)
    for u, p in zip(msgs, words):
        table[u.value] = p
    return FccEncoder(f, t, r, "dcode", tuple(table))


def decode_function(enc: FccEncoder, received: BitLike) -> Union[int, AmbiguousDecode]:
    """Label index of the nearest codeword(s), or AmbiguousDecode if they disagree."""
    y = as_bitvector(received)
    if y.length != enc.n:
        raise LengthMismatch(f"received word has length {y.length}, code length is {enc.n}")
    dist = popcount(enc.codebook() ^ y.value)
    best = int(dist.min())
    near = np.flatnonzero(dist == best)
    labels = np.unique(enc.f.indices(near))
    if len(labels) == 1:
        return int(labels[0])
    return AmbiguousDecode(tuple(labels.tolist()), best)


# -- descriptor files ---------------------------------------------------------------


def function_reference(f: FiniteFunction) -> dict:
    if f.family == "weight":
        return {"family": "weight", "k": f.k}
    if f.family == "weight_distribution":
        return {"family": "weight_distribution", "k": f.k, "T": f.threshold}
    if f.family == "lexicographic_rearrangement":
        return {"family": "lexicographic_rearrangement", "k": f.k}
    ref = {"family": "table", "k": f.k}
    if f.source:
        ref["path"] = f.source
    else:
        ref["labels"] = [_json_label(x) for x in f.labels]
        ref["values"] = [_json_label(f.labels[i]) for i in f.full_table().tolist()]
    return ref


def function_from_reference(ref: dict) -> FiniteFunction:
    fam = ref.get("family")
    try:
        if fam == "weight":
            return weight_function(int(ref["k"]))
        if fam == "weight_distribution":
            return weight_distribution(int(ref["k"]), int(ref["T"]))
        if fam == "lexicographic_rearrangement":
            return lexicographic_rearrangement(int(ref["k"]))
        if fam == "table":
            if "path" in ref:
                return load_function_table(ref["path"])
            return table_function(int(ref["k"]), ref["labels"], ref["values"])
    except KeyError as exc:
        raise ConfigError(f"function reference is missing field {exc.args[0]!r}") from None
    raise ConfigError(f"unknown function family {fam!r}")


def encoder_to_descriptor(enc: FccEncoder) -> dict:
    doc = {
        "schema": 1,
        "strategy": enc.strategy,
        "function": function_reference(enc.f),
        "t": enc.t,
        "r": enc.r,
    }
    if enc.modulus is None:
        doc["parity_table"] = [str(w) for w in enc.parity_words]
    else:
        doc["modulus"] = enc.modulus
        doc["parity_words"] = [str(w) for w in enc.parity_words]
    if enc.extra:
        doc["info"] = dict(enc.extra)
    return doc


def encoder_from_descriptor(doc: dict) -> FccEncoder:
    try:
        f = function_from_reference(doc["function"])
        t, r = int(doc["t"]), int(doc["r"])
        if "parity_table" in doc:
            words = tuple(BitVector.from_str(w) for w in doc["parity_table"])
            modulus = None
        else:
            words = tuple(BitVector.from_str(w) for w in doc["parity_words"])
            modulus = int(doc["modulus"])
        return FccEncoder(f, t, r, doc["strategy"], words, modulus, doc.get("info"))
    except KeyError as exc:
        raise ConfigError(f"encoder descriptor is missing field {exc.args[0]!r}") from None
    except (InvalidParameter, TypeError, ValueError) as exc:
        raise ConfigError(f"encoder descriptor: {exc}") from None


def save_encoder(enc: FccEncoder, path):
    Path(path).write_text(json.dumps(encoder_to_descriptor(enc), indent=1) + "\n")


def load_encoder(path) -> FccEncoder:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return encoder_from_descriptor(doc)
