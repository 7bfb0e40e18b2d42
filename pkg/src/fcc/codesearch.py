"""
Exact minimum-length code search and Plotkin-type bounds.

``search_N_uniform`` finds N(M, d), the least length of a binary code with M
words at pairwise distance >= d. ``search_N_irregular`` finds N(D) for a
distance requirement matrix, where word i must serve row i and repeated
words are allowed.

Both run the same depth-first search with iterative deepening on the length.
Symmetry reductions used at every length:

* the first word is all-zero (translation invariance),
* columns of the partial code matrix stay in non-decreasing order
  (coordinate permutation invariance),
* for the uniform problem, words are strictly increasing (row permutation).

Among all valid assignments, the one whose rows read as a single string is
smallest already satisfies these three conditions, so the depth-first search
returns the lexicographically least valid assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log2
from typing import Optional, Union

import numpy as np

from .bits import BitVector, popcount
from .distmat import DistanceMatrix
from .errors import InvalidParameter, SearchBudgetExceeded

__all__ = [
    "BlockCode",
    "SearchCertificate",
    "plotkin_bound",
    "generalized_plotkin",
    "search_N_uniform",
    "search_N_irregular",
    "repetition_code_4",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 2_000_000
MAX_SEARCH_LENGTH = 22


@dataclass(frozen=True)
class BlockCode:
    """An ordered list of equal-length words (repeats allowed)."""

    length: int
    words: tuple
    declared_min_distance: int = 0

    def __post_init__(self):
        words = tuple(w if isinstance(w, BitVector) else BitVector.from_str(w) for w in self.words)
        if any(w.length != self.length for w in words):
            raise InvalidParameter(f"all words must have length {self.length}")
        object.__setattr__(self, "words", words)
        if self.declared_min_distance > 0 and len(set(words)) == len(words):
            md = self.min_distance()
            if md is not None and md < self.declared_min_distance:
                raise InvalidParameter(
                    f"declared minimum distance {self.declared_min_distance} but found {md}")

    @classmethod
    def from_strings(cls, words, declared_min_distance: int = 0) -> "BlockCode":
        words = [BitVector.from_str(w) if isinstance(w, str) else w for w in words]
        n = words[0].length if words else 0
        return cls(n, tuple(words), declared_min_distance)

    def __len__(self):
        return len(self.words)

    def ints(self) -> np.ndarray:
        return np.array([w.value for w in self.words], dtype=np.int64)

    def min_distance(self, first: Optional[int] = None) -> Optional[int]:
        """Minimum pairwise distance over the first ``first`` words (all by default)."""
        w = self.ints()[:first]
        if len(w) < 2:
            return None
        d = popcount(w[:, None] ^ w[None, :])
        return int(d[np.triu_indices(len(w), 1)].min())

    def strings(self) -> list:
        return [str(w) for w in self.words]


@dataclass(frozen=True)
class SearchCertificate:
    """Result of an exact search.

    ``infeasibility`` names how length ``found_length - 1`` was excluded:
    ``"plotkin"`` (bound), ``"exhausted"`` (complete search) or None when
    ``found_length`` is 0.
    """

    target: Union[DistanceMatrix, tuple]
    found_length: int
    witness: BlockCode
    infeasibility: Optional[str]
    nodes: int = field(default=0, compare=False)

    def satisfies(self) -> bool:
        """Re-check the witness against the target without the search code."""
        words = self.witness.words
        if isinstance(self.target, DistanceMatrix):
            D = self.target.entries
            if len(words) != len(D):
                return False
            return all(
                (words[i].value ^ words[j].value).bit_count() >= D[i, j]
                for i in range(len(words)) for j in range(len(words))
            )
        M, d = self.target
        return len(words) == M and all(
            (words[i].value ^ words[j].value).bit_count() >= d
            for i in range(M) for j in range(i + 1, M)
        )

    def to_dict(self) -> dict:
        if isinstance(self.target, DistanceMatrix):
            target = {"matrix": self.target.tolist()}
        else:
            target = {"M": self.target[0], "d": self.target[1]}
        return {
            "schema": 1,
            "target": target,
            "found_length": self.found_length,
            "witness": self.witness.strings(),
            "infeasibility": self.infeasibility,
            "nodes": self.nodes,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SearchCertificate":
        tgt = doc["target"]
        target = DistanceMatrix(np.array(tgt["matrix"])) if "matrix" in tgt else (tgt["M"], tgt["d"])
        words = tuple(BitVector.from_str(w) for w in doc["witness"])
        code = BlockCode(doc["found_length"], words)
        return cls(target, doc["found_length"], code, doc["infeasibility"], doc.get("nodes", 0))


# -- bounds -------------------------------------------------------------------


def plotkin_bound(n: int, d: int) -> Optional[int]:
    """Plotkin upper bound on A(n, d), or None where it does not apply."""
    if n < 1 or d < 1:
        raise InvalidParameter("n and d must be positive")
    if d % 2 == 0 and 2 * d > n:
        return 2 * (d // (2 * d - n))
    if d % 2 == 1 and 2 * d + 1 > n:
        return 2 * ((d + 1) // (2 * d + 1 - n))
    return None


def generalized_plotkin(D: DistanceMatrix) -> int:
    """Lower bound on N(D): ceil(4/M^2 * sum) for even M, ceil(4/(M^2-1) * sum) for odd M."""
    M = D.size
    s = D.upper_sum()
    if s == 0:
        return 0
    denom = M * M if M % 2 == 0 else M * M - 1
    return ceil(Fraction(4 * s, denom))


def _plotkin_excludes(n: int, M: int, d: int) -> bool:
    if n < 1:
        return M >= 2
    b = plotkin_bound(n, d)
    return b is not None and b < M


# -- search engine ---------------------------------------------------------------


class _Budget(Exception):
    pass


def _search_length(D: np.ndarray, n: int, increasing: bool, state: dict) -> Optional[list]:
    """Lexicographically least assignment of length-n words meeting D, or None."""
    M = len(D)
    if n == 0:
        return [0] * M if not D.any() else None
    pc = popcount(np.arange(1 << n, dtype=np.int64))
    full_tied = ((1 << n) - 1) & ~1  # bit p marks columns (n-1-p, n-p) as equal so far

    def dfs(i, cands, tied, chosen):
        if i == M:
            return chosen
        c = cands[i]
        # column order: inside a tied pair a 1 may not precede a 0
        c = c[(c & ~(c << 1) & tied) == 0]
        for w in c.tolist():
            state["nodes"] += 1
            if state["nodes"] > state["cap"]:
                raise _Budget
            nxt = list(cands)
            dead = False
            for j in range(i + 1, M):
                cj = nxt[j]
                if increasing:
                    cj = cj[cj > w]
                nxt[j] = cj = cj[pc[cj ^ w] >= D[i, j]]
                if not len(cj):
                    dead = True
                    break
            if dead:
                continue
            if increasing and i + 1 < M and len(nxt[i + 1]) < M - 1 - i:
                continue
            found = dfs(i + 1, nxt, tied & ~(w ^ (w << 1)), chosen + [w])
            if found is not None:
                return found
        return None

    everything = np.arange(1 << n, dtype=np.int64)
    cands = [np.zeros(1, dtype=np.int64)] + [everything] * (M - 1)
    return dfs(0, cands, full_tied, [])


def _upper_length(M: int, dmax: int) -> int:
    return 0 if M < 2 or dmax == 0 else dmax * max(1, ceil(log2(M)))


def search_N_uniform(M: int, d: int, node_cap: int = DEFAULT_NODE_CAP,
                     max_M: int = 8, max_d: int = 8) -> SearchCertificate:
    """Least n admitting an (n, M, d) code, with witness and a refutation of n - 1."""
    if M < 1 or d < 0:
        raise InvalidParameter("need M >= 1 and d >= 0")
    if M > max_M or d > max_d:
        raise SearchBudgetExceeded(f"(M={M}, d={d}) exceeds caps (M<={max_M}, d<={max_d})",
                                   (None, _upper_length(M, d)))
    if M == 1 or d == 0:
        return SearchCertificate((M, d), 0, BlockCode(0, (BitVector(0, 0),) * M), None)
    D = np.full((M, M), d, dtype=np.int64)
    np.fill_diagonal(D, 0)
    start = d
    while _plotkin_excludes(start, M, d) or (1 << start) < M:
        start += 1
    return _deepen(D, (M, d), start, True, node_cap,
                   lambda n: "plotkin" if _plotkin_excludes(n, M, d) else "exhausted")


def search_N_irregular(D: DistanceMatrix, node_cap: int = DEFAULT_NODE_CAP,
                       max_M: int = 16, max_entry: int = 9) -> SearchCertificate:
    """Least r admitting words p_1..p_M (word i serves row i) with d(p_i, p_j) >= D_ij."""
    if not isinstance(D, DistanceMatrix):
        D = DistanceMatrix(np.asarray(D))
    E = D.entries
    M = D.size
    lb = generalized_plotkin(D)
    if M > max_M or E.max(initial=0) > max_entry:
        raise SearchBudgetExceeded(
            f"matrix of size {M} with max entry {E.max(initial=0)} exceeds caps "
            f"(M<={max_M}, entries<={max_entry})", (lb, _upper_length(M, int(E.max(initial=0)))))
    if not E.any():
        return SearchCertificate(D, 0, BlockCode(0, (BitVector(0, 0),) * M), None)
    return _deepen(E, D, lb, False, node_cap,
                   lambda n: "plotkin" if n < lb else "exhausted")


def _deepen(D, target, start, increasing, node_cap, tag) -> SearchCertificate:
    M = len(D)
    hi = _upper_length(M, int(D.max()))
    state = {"nodes": 0, "cap": node_cap}
    n = start
    while True:
        if n > MAX_SEARCH_LENGTH:
            raise SearchBudgetExceeded(f"length {n} exceeds search limit {MAX_SEARCH_LENGTH}", (n, hi))
        try:
            found = _search_length(D, n, increasing, state)
        except _Budget:
            raise SearchBudgetExceeded(f"node cap {node_cap} reached at length {n}", (n, hi)) from None
        if found is not None:
            words = tuple(BitVector(n, w) for w in found)
            code = BlockCode(n, words)
            return SearchCertificate(target, n, code, tag(n - 1), state["nodes"])
        n += 1


def repetition_code_4(t: int) -> BlockCode:
    """Four words of length 3t at pairwise distance exactly 2t: blocks 000, 110, 101, 011."""
    if t < 1:
        raise InvalidParameter("t must be >= 1")
    z, o = "0" * t, "1" * t
    words = [z + z + z, o + o + z, o + z + o, z + o + o]
    return BlockCode.from_strings(words, declared_min_distance=2 * t)
