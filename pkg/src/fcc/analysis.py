"""
Exhaustive FCC certification, redundancy lower bounds, the optimality-triple
check and the substitution-channel harness.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .bits import BitLike, BitVector, flip_masks, masks_of_weight, popcount
from .codesearch import DEFAULT_NODE_CAP, generalized_plotkin, search_N_irregular
from .distmat import build_drm
from .encoders import AmbiguousDecode, FccEncoder, build_lambda4
from .errors import InvalidParameter, SearchBudgetExceeded
from .funcspace import FiniteFunction, check_contiguity, compute_lambda

__all__ = [
    "Violation",
    "VerificationReport",
    "OptimalityReport",
    "ChannelStats",
    "verify_fcc",
    "redundancy_lower_bound",
    "check_optimality_triple",
    "simulate_channel",
    "DEFAULT_CAP_K",
    "DEFAULT_CAP_N",
]

DEFAULT_CAP_K = 12
DEFAULT_CAP_N = 16


class Violation(NamedTuple):
    u: BitVector
    v: BitVector
    required: int
    actual: int


@dataclass
class VerificationReport:
    """Outcome of an FCC distance check.

    In sampled mode ``is_fcc`` is False when a violation was found and None
    otherwise, since sampling cannot certify.
    """

    is_fcc: Optional[bool]
    checked_pairs: int
    violation: Optional[Violation]
    k: int
    t: int
    r: int
    mode: str = "exhaustive"

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.violation is not None:
            u, v, req, act = self.violation
            d["violation"] = {"u": str(u), "v": str(v), "required": req, "actual": act}
        return d

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in _flatten(self.to_dict()).items()) + "\n"


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}."))
        else:
            out[f"{prefix}{k}"] = v
    return out


def verify_fcc(enc: FccEncoder, cap_k: int = DEFAULT_CAP_K, samples: Optional[int] = None,
               seed: Optional[int] = None) -> VerificationReport:
    """Check d(C(u), C(v)) >= 2t+1 for every pair with f(u) != f(v).

    Exhaustive for k <= cap_k; reports the first violation in lexicographic
    pair order. Above the cap, pass ``samples`` and ``seed`` for a random
    refutation attempt.
    """
    k, t, r = enc.k, enc.t, enc.r
    need = 2 * t + 1
    if k > cap_k:
        if samples is None:
            raise SearchBudgetExceeded(f"k={k} exceeds exhaustive cap {cap_k}; use sampled mode")
        return _verify_sampled(enc, samples, seed)
    cb = enc.codebook()
    lab = enc.f.full_table()
    checked = 0
    for u in range(len(cb) - 1):
        other = lab[u + 1:] != lab[u]
        checked += int(np.count_nonzero(other))
        dist = popcount(cb[u + 1:] ^ cb[u])
        bad = np.flatnonzero(other & (dist < need))
        if bad.size:
            v = u + 1 + int(bad[0])
            viol = Violation(BitVector(k, u), BitVector(k, v), need, int(dist[bad[0]]))
            return VerificationReport(False, checked, viol, k, t, r)
    return VerificationReport(True, checked, None, k, t, r)


def _verify_sampled(enc: FccEncoder, samples: int, seed: Optional[int]) -> VerificationReport:
    if seed is None:
        raise InvalidParameter("sampled mode needs an explicit seed")
    rng = np.random.default_rng(seed)
    k = enc.k
    if k > 62:
        raise InvalidParameter("sampled mode draws int64 messages, so k must be <= 62")
    u = rng.integers(0, 1 << k, size=samples, dtype=np.int64)
    v = rng.integers(0, 1 << k, size=samples, dtype=np.int64)
    other = enc.f.indices(u) != enc.f.indices(v)
    dist = popcount(u ^ v) + popcount(enc.parities(u) ^ enc.parities(v))
    need = 2 * enc.t + 1
    bad = np.flatnonzero(other & (dist < need))
    if bad.size:
        i = int(bad[0])
        viol = Violation(BitVector(k, int(u[i])), BitVector(k, int(v[i])), need, int(dist[i]))
        return VerificationReport(False, int(other.sum()), viol, k, enc.t, enc.r, "sampled")
    return VerificationReport(None, int(other.sum()), None, k, enc.t, enc.r, "sampled")


def redundancy_lower_bound(f: FiniteFunction, t: int, msgs: Sequence[BitLike],
                           node_cap: int = DEFAULT_NODE_CAP) -> int:
    """max(N(DRM of msgs), 2t if f takes at least two values)."""
    D = build_drm(f, t, msgs)
    n = search_N_irregular(D, node_cap=node_cap).found_length
    return max(n, 2 * t if f.E >= 2 else 0)


@dataclass
class OptimalityReport:
    hypothesis_met: bool
    witness_triple: Optional[tuple]
    lower_bound: int
    construction_redundancy: Optional[int]
    optimal: bool
    note: str = ""

    @property
    def verdict(self) -> str:
        return "optimal" if self.optimal else "not established"


def _find_triple(f: FiniteFunction):
    """First (u1, u2, u3) with distinct values, d(u1,u2)=d(u1,u3)=1, d(u2,u3)=2."""
    k = f.k
    tab = f.full_table()
    for u1 in range(1 << k):
        a = tab[u1]
        nbrs = [u1 ^ (1 << (k - 1 - i)) for i in range(k)]
        nbrs.sort()
        for u2 in nbrs:
            b = tab[u2]
            if b == a:
                continue
            for u3 in nbrs:
                # any other neighbour of u1 lies at distance 2 from u2
                c = tab[u3]
                if u3 != u2 and c != a and c != b:
                    return tuple(BitVector(k, x) for x in (u1, u2, u3))
    return None


def check_optimality_triple(f: FiniteFunction, t: int) -> OptimalityReport:
    """Sufficient condition for redundancy 3t being optimal."""
    if t < 1:
        raise InvalidParameter("t must be >= 1")
    rho = min(2 * t, f.k)
    lam = compute_lambda(f, rho)
    floor = 2 * t if f.E >= 2 else 0
    construction = None
    if lam <= 4 and check_contiguity(f, rho):
        construction = build_lambda4(f, t).r
    if lam > 4:
        return OptimalityReport(False, None, floor, construction, False, f"lambda={lam} > 4")
    if f.E < 3:
        return OptimalityReport(False, None, floor, construction, False, "fewer than three values")
    triple = _find_triple(f)
    if triple is None:
        return OptimalityReport(False, None, floor, construction, False, "no witness triple")
    D = build_drm(f, t, triple)
    lower = max(generalized_plotkin(D), floor)
    optimal = construction is not None and lower == construction
    return OptimalityReport(True, triple, lower, construction, optimal)


@dataclass
class ChannelStats:
    trials: int = 0
    failures: int = 0
    ambiguous: int = 0
    per_weight: dict = field(default_factory=dict)
    mode: str = "exhaustive"

    def add(self, w: int, trials: int, failures: int, ambiguous: int):
        self.trials += trials
        self.failures += failures
        self.ambiguous += ambiguous
        tr, fl = self.per_weight.get(w, (0, 0))
        self.per_weight[w] = (tr + trials, fl + failures)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_weight"] = {str(w): {"trials": a, "failures": b}
                           for w, (a, b) in sorted(self.per_weight.items())}
        return d


class _NearestDecoder:
    """Minimum-distance function decoder that searches outward from the received word.

    Works on a dense codeword lookup table of size 2^n, so n stays small.
    """

    def __init__(self, enc: FccEncoder):
        self.enc = enc
        self.n = enc.n
        self.owner = np.full(1 << self.n, -1, dtype=np.int64)
        self.owner[enc.codebook()] = enc.f.full_table()

    def decode(self, y: np.ndarray) -> np.ndarray:
        """Label index per received word, -1 where the nearest codewords disagree."""
        out = np.full(len(y), -2, dtype=np.int64)
        todo = np.arange(len(y))
        for rad in range(self.n + 1):
            if not todo.size:
                break
            masks = masks_of_weight(self.n, rad)
            lab = self.owner[y[todo, None] ^ masks[None, :]]
            hit = lab >= 0
            found = hit.any(axis=1)
            lo = np.where(hit, lab, np.iinfo(np.int64).max).min(axis=1)
            hi = np.where(hit, lab, -1).max(axis=1)
            idx = todo[found]
            out[idx] = np.where(lo[found] == hi[found], lo[found], -1)
            todo = todo[~found]
        return out


def simulate_channel(enc: FccEncoder, samples: Optional[int] = None, seed: Optional[int] = None,
                     cap_n: int = DEFAULT_CAP_N) -> ChannelStats:
    """Inject substitution errors of weight <= t and decode the function value.

    Exhaustive by default (every message, every error pattern); with
    ``samples`` set, draws that many trials with a mandatory ``seed``:
    message uniform, error weight uniform in 1..t, support uniform.
    """
    n, t = enc.n, enc.t
    if n > cap_n:
        raise SearchBudgetExceeded(f"code length {n} exceeds channel cap {cap_n}")
    dec = _NearestDecoder(enc)
    cb = enc.codebook()
    lab = enc.f.full_table()
    if samples is None:
        stats = ChannelStats()
        for w in range(t + 1):
            masks = masks_of_weight(n, w)
            y = (cb[:, None] ^ masks[None, :]).ravel()
            truth = np.repeat(lab, len(masks))
            got = dec.decode(y)
            stats.add(w, len(y), int(np.count_nonzero(got != truth)), int(np.count_nonzero(got == -1)))
        return stats
    if seed is None:
        raise InvalidParameter("sampled mode needs an explicit seed")
    stats = ChannelStats(mode="sampled")
    if t == 0:
        return stats
    rng = np.random.default_rng(seed)
    u = rng.integers(0, 1 << enc.k, size=samples, dtype=np.int64)
    weights = rng.integers(1, t + 1, size=samples)
    errs = np.zeros(samples, dtype=np.int64)
    for i, w in enumerate(weights.tolist()):
        for pos in rng.choice(n, size=w, replace=False).tolist():
            errs[i] |= 1 << pos
    got = dec.decode(cb[u] ^ errs)
    truth = lab[u]
    for w in range(1, t + 1):
        sel = weights == w
        stats.add(w, int(sel.sum()), int(np.count_nonzero(got[sel] != truth[sel])),
                  int(np.count_nonzero(got[sel] == -1)))
    return stats


def decode_soundness_failures(enc: FccEncoder, errors_upto: Optional[int] = None) -> int:
    """Brute-force cross-check of the channel harness through ``decode_function``."""
    from .encoders import decode_function

    t = enc.t if errors_upto is None else errors_upto
    fails = 0
    for u in range(1 << enc.k):
        c = BitVector(enc.n, int(enc.codebook()[u]))
        want = int(enc.f.full_table()[u])
        for e in flip_masks(enc.n, t).tolist():
            got = decode_function(enc, BitVector(enc.n, c.value ^ e))
            if isinstance(got, AmbiguousDecode) or got != want:
                fails += 1
    return fails
