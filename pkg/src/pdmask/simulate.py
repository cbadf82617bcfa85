"""End-to-end trials: sample message and defects, encode, write, corrupt, decode.

Trial ``i`` of a campaign with master seed ``s`` draws all of its randomness
from ``numpy.random.default_rng(numpy.random.SeedSequence(s, spawn_key=(i,)))``,
so a campaign gives the same report whether trials run serially or in a pool.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, astuple, dataclass

import numpy as np

from . import channel, pdmc
from .codes import CodeError, LinearCode, repetition_code
from .gf import Field
from .prob import p_zero_overlap

CONSTRUCTIONS = ("c1", "c1-cor", "c2", "c3", "prop3", "baseline")


@dataclass
class TrialReport:
    trials: int = 0
    successes: int = 0
    masking_failures: int = 0
    decode_failures: int = 0
    hazard_count: int = 0
    overlap_count: int = 0
    runtime_s: float = 0.0

    def merge(self, other: TrialReport) -> TrialReport:
        return TrialReport(*(a + b for a, b in zip(astuple(self), astuple(other))))

    @property
    def mean_runtime(self) -> float:
        return self.runtime_s / self.trials if self.trials else 0.0

    def as_dict(self, timing: bool = False) -> dict:
        out = asdict(self)
        del out["runtime_s"]
        if timing:
            out["mean_runtime_s"] = self.mean_runtime
        return out


@dataclass(frozen=True)
class Scheme:
    """A constructed scheme plus the radius its decoder runs at."""

    construction: str
    field: Field
    n: int
    u: int
    t: int
    x: int
    impl: object

    @property
    def message_length(self) -> int:
        if self.construction == "prop3":
            return self.impl.k
        return self.impl.message_length

    @property
    def code(self) -> LinearCode:
        return self.impl if self.construction == "prop3" else self.impl.code

    def encode(self, m, phi) -> pdmc.MaskedWord:
        c = self.construction
        if c == "c1":
            return pdmc.c1_encode(self.impl, m, phi, "theorem1", self.x)
        if c == "c1-cor":
            return pdmc.c1_encode(self.impl, m, phi, "corollary1", self.x)
        if c == "baseline":
            return pdmc.baseline_encode(self.impl, m, phi)
        if c in ("c2", "c3"):
            return pdmc.c2_encode(self.impl, m, phi, self.x)
        return pdmc.prop3_encode(self.impl, m, phi, self.t, self.x)

    def decode(self, y):
        c = self.construction
        if c in ("c1", "c1-cor", "baseline"):
            return pdmc.c1_decode(self.impl, y, self.t)
        if c in ("c2", "c3"):
            return pdmc.c2_decode(self.impl, y, self.t)
        return pdmc.prop3_decode(self.impl, y, self.u, self.t)


def build_scheme(construction: str, field: Field, n: int, u: int, t: int, r: int = 0,
                 l: int | None = None, x: int = 1, seed: int = 0,
                 host: LinearCode | None = None) -> Scheme:
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
    d_min = 2 * t + 1
    if construction in ("c1", "c1-cor", "baseline"):
        if host is not None:
            impl = pdmc.Construction1Scheme.from_host(host)
        elif d_min <= 1:
            impl = pdmc.Construction1Scheme.from_parts(field, n, r)
        else:
            impl = pdmc.search_construction1(field, n, r, d_min, seed)
    elif construction in ("c2", "c3"):
        kappa = pdmc.max_block(field.q)
        if kappa < 1:
            raise ValueError("block masking needs q >= 3")
        start = l if l is not None else max(1, -(-u // kappa))
        impl = None
        for rows in range(start, n - r + 1):
            try:
                impl = pdmc.search_block_scheme(field, n, r, rows, u, d_min, seed,
                                                require_dual_bound=construction == "c3")
                break
            except pdmc.PdmcError:
                if l is not None:
                    raise
        if impl is None:
            raise pdmc.PdmcError("no block masking scheme found")
    else:
        impl = host if host is not None else repetition_code(field, n)
        pdmc._check_prop3(impl, u, t)
    return Scheme(construction, field, n, u, t, x, impl)


def run_trial(scheme: Scheme, seed: int, index: int, timing: bool = False) -> TrialReport:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    rep = TrialReport(trials=1)
    start = time.perf_counter() if timing else 0.0
    f = scheme.field
    m = tuple(int(v) for v in rng.integers(0, f.q, size=scheme.message_length))
    mem = channel.mem_new(scheme.n, f, scheme.u, rng)
    try:
        word = scheme.encode(m, sorted(mem.phi))
        mem.write(word.c)
    except (pdmc.PdmcError, channel.ConstraintViolation):
        rep.masking_failures = 1
        return _finish(rep, start, timing)
    y, event = channel.corrupt(mem, scheme.t, rng, scheme.x)
    rep.hazard_count = len(event.hazards)
    rep.overlap_count = int(bool(event.overlap))
    try:
        ok = tuple(scheme.decode(y)) == m
    except CodeError:
        ok = False
    if ok:
        rep.successes = 1
    else:
        rep.decode_failures = 1
    return _finish(rep, start, timing)


def _finish(rep: TrialReport, start: float, timing: bool) -> TrialReport:
    if timing:
        rep.runtime_s = time.perf_counter() - start
    return rep


def _run_range(scheme: Scheme, seed: int, lo: int, hi: int, timing: bool) -> TrialReport:
    total = TrialReport()
    for i in range(lo, hi):
        total = total.merge(run_trial(scheme, seed, i, timing))
    return total


def run_campaign(scheme: Scheme, trials: int, seed: int, workers: int = 1,
                 timing: bool = False) -> TrialReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers <= 1:
        return _run_range(scheme, seed, 0, trials, timing)
    step = -(-trials // workers)
    bounds = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
    total = TrialReport()
    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(_run_range, scheme, seed, lo, hi, timing) for lo, hi in bounds]
        for fut in futures:
            total = total.merge(fut.result())
    return total


def predicted_hazard_rate(scheme: Scheme) -> float:
    return float(p_zero_overlap(scheme.n, scheme.u, scheme.t, scheme.field.q))
