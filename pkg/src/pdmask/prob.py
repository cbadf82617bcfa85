"""Overlap, zero-occurrence and masking probabilities.

Closed forms are exact :class:`fractions.Fraction` values.  The Monte-Carlo
estimators sample the underlying events directly and are meant as an
independent check on the closed forms.

Seeding: trials are split into fixed chunks of ``CHUNK`` trials; chunk ``i``
draws from ``numpy.random.SeedSequence(seed).spawn(nchunks)[i]``.  Results
therefore do not depend on how chunks are spread across workers.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

CHUNK = 10_000
KINDS = ("overlap", "zero_overlap", "mask_consecutive")


class BadParams(ValueError):
    pass


@dataclass(frozen=True)
class OverlapParams:
    n: int = 1
    u: int = 0
    t: int = 0
    q: int | None = None

    def validate(self, need_q: bool = False) -> None:
        if self.n < 1:
            raise BadParams("n must be >= 1")
        if not (0 <= self.u <= self.n and 0 <= self.t <= self.n):
            raise BadParams("need 0 <= u, t <= n")
        if need_q and (self.q is None or self.q < 2):
            raise BadParams("q must be >= 2")


@dataclass(frozen=True)
class McConfig:
    trials: int
    seed: int
    kind: str
    error_model: str = "uniform"
    workers: int = 1

    def validate(self) -> None:
        if self.trials < 1:
            raise BadParams("trials must be >= 1")
        if self.kind not in KINDS:
            raise BadParams(f"kind must be one of {KINDS}")
        if self.error_model not in ("uniform", "binary"):
            raise BadParams("error_model must be 'uniform' or 'binary'")


def p_overlap(n: int, u: int, t: int) -> Fraction:
    """Probability that random size-u and size-t subsets of [n] intersect."""
    OverlapParams(n, u, t).validate()
    if u + t > n:
        return Fraction(1)
    miss = Fraction(1)
    for j in range(t):
        miss *= Fraction(n - u - j, n - j)
    return 1 - miss


def p_zero_overlap(n: int, u: int, t: int, q: int) -> Fraction:
    OverlapParams(n, u, t, q).validate(need_q=True)
    return Fraction(1, q) * p_overlap(n, u, t)


def p_mask_consecutive(q: int, u: int) -> Fraction:
    """Closed-form masking probability for a single all-one masking row.

    Pair factor ``q / C(q, 2)`` times the truncated inclusion-exclusion sum,
    evaluated exactly as written (see :func:`mask_consecutive_exhaustive`
    for the probability of the event itself).
    """
    if q < 3 or u < 1:
        raise BadParams("need q >= 3 and u >= 1")
    s = sum((-1) ** i * math.comb(q, i) * (q - i) ** u for i in range(q - 1))
    return Fraction(q, math.comb(q, 2)) * (1 - Fraction(s, q ** u))


def has_free_consecutive_pair(values, q: int) -> bool:
    present = set(values)
    return any(v not in present and (v + 1) % q not in present for v in range(q))


def mask_consecutive_exhaustive(q: int, u: int) -> Fraction:
    """Fraction of w in [q]^u leaving some pair (v, v+1 mod q) unused."""
    if q < 3 or u < 1:
        raise BadParams("need q >= 3 and u >= 1")
    if q ** u > 10 ** 7:
        raise BadParams("q^u too large for enumeration")
    hits = sum(1 for w in itertools.product(range(q), repeat=u) if has_free_consecutive_pair(w, q))
    return Fraction(hits, q ** u)


# -- Monte Carlo ---------------------------------------------------------------

def _random_subsets(rng: np.random.Generator, trials: int, n: int, k: int) -> np.ndarray:
    """Boolean (trials, n) masks of uniform size-k subsets."""
    keys = rng.random((trials, n))
    order = np.argsort(keys, axis=1)[:, :k]
    mask = np.zeros((trials, n), dtype=bool)
    np.put_along_axis(mask, order, True, axis=1)
    return mask


def _chunk_hits(kind: str, params: OverlapParams, error_model: str, seed_seq, trials: int) -> int:
    rng = np.random.default_rng(seed_seq)
    if kind == "mask_consecutive":
        q, u = params.q, params.u
        w = rng.integers(0, q, size=(trials, u))
        present = np.zeros((trials, q), dtype=bool)
        np.put_along_axis(present, w, True, axis=1)
        absent = ~present
        pair = absent & np.roll(absent, -1, axis=1)
        return int(pair.any(axis=1).sum())
    n, u, t = params.n, params.u, params.t
    phi = _random_subsets(rng, trials, n, u)
    psi = _random_subsets(rng, trials, n, t)
    overlapped = (phi & psi).any(axis=1)
    if kind == "overlap":
        return int(overlapped.sum())
    q = params.q
    # value at one overlapped position: only its (c, e) pair matters
    c = rng.integers(0, q, size=trials)
    if error_model == "uniform":
        e = rng.integers(0, q, size=trials)
    else:
        e = np.ones(trials, dtype=np.int64)
    zero = (c + e) % q == 0
    return int((overlapped & zero).sum())


def mc_estimate(cfg: McConfig, params: OverlapParams) -> tuple[float, float]:
    """Return ``(estimate, stderr)`` for the event named by ``cfg.kind``."""
    cfg.validate()
    if cfg.kind == "mask_consecutive":
        if params.q is None or params.q < 3 or params.u < 1:
            raise BadParams("mask_consecutive needs q >= 3 and u >= 1")
    else:
        params.validate(need_q=cfg.kind == "zero_overlap")
    nchunks = -(-cfg.trials // CHUNK)
    seqs = np.random.SeedSequence(cfg.seed).spawn(nchunks)
    sizes = [CHUNK] * (nchunks - 1) + [cfg.trials - CHUNK * (nchunks - 1)]
    args = [(cfg.kind, params, cfg.error_model, s, k) for s, k in zip(seqs, sizes)]
    if cfg.workers > 1 and nchunks > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            hits = sum(pool.map(_chunk_hits, *zip(*args)))
    else:
        hits = sum(_chunk_hits(*a) for a in args)
    est = hits / cfg.trials
    stderr = math.sqrt(est * (1 - est) / cfg.trials)
    return est, stderr


def exact(kind: str, params: OverlapParams) -> Fraction:
    if kind == "overlap":
        return p_overlap(params.n, params.u, params.t)
    if kind == "zero_overlap":
        return p_zero_overlap(params.n, params.u, params.t, params.q)
    if kind == "mask_consecutive":
        return p_mask_consecutive(params.q, params.u)
    raise BadParams(f"kind must be one of {KINDS}")


def record(kind: str, params: OverlapParams, cfg: McConfig | None = None) -> dict:
    """JSON-ready result record."""
    value = exact(kind, params)
    out = {
        "kind": kind,
        "params": {"n": params.n, "u": params.u, "t": params.t, "q": params.q},
        "exact_num": value.numerator,
        "exact_den": value.denominator,
        "exact": float(value),
        "estimate": None,
        "stderr": None,
        "trials": 0,
        "seed": None,
    }
    if kind == "mask_consecutive" and params.q ** params.u <= 10 ** 6:
        enum = mask_consecutive_exhaustive(params.q, params.u)
        out["enumerated_num"] = enum.numerator
        out["enumerated_den"] = enum.denominator
        out["enumerated"] = float(enum)
    if cfg is not None:
        est, err = mc_estimate(cfg, params)
        out.update(estimate=est, stderr=err, trials=cfg.trials, seed=cfg.seed)
    return out
