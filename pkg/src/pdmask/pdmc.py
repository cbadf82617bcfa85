"""Joint masking of stuck-at-1 cells and error correction.

Every encoder here keeps the stored coordinates at the stuck positions out of
``{0, -x}`` where ``x`` is the error magnitude (``x = 1`` by default), so a
stuck cell can be hit by an error and still never read back as zero.  For a
prime field and ``x = 1`` that is the label range ``[1, q - 2]``.

Decoders never see the stuck positions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .codes import (
    LinearCode,
    code_from_generator,
    code_from_parity_check,
    decode_bounded,
    distance_at_least,
    minimum_distance,
)
from .gf import Field
from .matfq import (
    BlockPartition,
    MatrixFq,
    block_partition,
    nullspace,
    rank,
    rre,
    solve_full_rank,
)


class PdmcError(ValueError):
    pass


class TooManyStuck(PdmcError):
    pass


class MaskingInfeasible(PdmcError):
    pass


class NoFeasibleCoefficient(PdmcError):
    pass


class DualDistanceTooSmall(PdmcError):
    pass


class DistanceTooSmall(PdmcError):
    pass


class NotConstructionOneForm(PdmcError):
    pass


def max_block(q: int) -> int:
    return (q - 1) // 2


@dataclass(frozen=True)
class MaskedWord:
    c: tuple[int, ...]
    z: tuple[int, ...]
    phi: tuple[int, ...]


def is_masked(field: Field, c, phi, x: int = 1) -> bool:
    bad = field.forbidden(x)
    return all(c[i] not in bad for i in phi)


def _check_phi(phi, n: int) -> tuple[int, ...]:
    phi = tuple(sorted(set(phi)))
    if phi and not (0 <= phi[0] and phi[-1] < n):
        raise PdmcError(f"stuck positions must lie in [0, {n})")
    return phi


# -- Construction 1 ------------------------------------------------------------

@dataclass(frozen=True)
class Construction1Scheme:
    """``G = [G1; 1]`` with ``G1 = [0 | I | P]``; the all-one row carries z0."""

    code: LinearCode
    G1: MatrixFq
    r: int

    @property
    def field(self) -> Field:
        return self.code.field

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def message_length(self) -> int:
        return self.G1.rows

    @classmethod
    def from_parts(cls, field: Field, n: int, r: int, P: MatrixFq | None = None,
                   compute_d: bool = True) -> Construction1Scheme:
        k1 = n - r - 1
        if k1 < 0:
            raise PdmcError("need r <= n - 1")
        if P is None:
            P = MatrixFq.zeros(field, k1, r)
        if (P.rows, P.cols) != (k1, r):
            raise PdmcError(f"P must be {k1}x{r}")
        rows = [[0] + [int(i == j) for j in range(k1)] + list(P.row(i)) for i in range(k1)]
        G1 = MatrixFq(field, rows, n)
        G = G1.stack(MatrixFq(field, [[1] * n]))
        code = code_from_generator(G, compute_d=compute_d)
        return cls(code, G1, r)

    @classmethod
    def from_host(cls, code: LinearCode) -> Construction1Scheme:
        """Row-reduce a host code containing the all-one word into the required shape."""
        f = code.field
        n = code.n
        ones = (1,) * n
        if not code.is_codeword(ones):
            raise NotConstructionOneForm("host code does not contain the all-one word")
        # codewords with c_0 = 0 form a complement of span(1)
        rows = [f.vec_sub(row, f.vec_scale(row[0], ones)) for row in code.G.entries]
        R, rk, pivots = rre(MatrixFq(f, rows, n))
        k1 = code.k - 1
        if rk != k1 or pivots != list(range(1, k1 + 1)):
            raise NotConstructionOneForm("host code is not systematic on positions 1..k-1")
        G1 = MatrixFq(f, R.entries[:k1], n)
        G = G1.stack(MatrixFq(f, [ones]))
        stacked = LinearCode(f, n, code.k, G, code.H, code.d_known, code.d_designed, code.bch)
        return cls(stacked, G1, n - code.k)


def c1_encode(S: Construction1Scheme, m, phi, mode: str = "theorem1", x: int = 1) -> MaskedWord:
    """Mask with one scalar on the all-one row.

    Picks the smallest ``v`` such that neither ``v`` nor ``v + x`` occurs
    among the ``w_i`` at the stuck positions, then ``z0 = -(v + x)``.
    """
    f = S.field
    q = f.q
    phi = _check_phi(phi, S.n)
    u = len(phi)
    if mode == "theorem1":
        limit = min(S.n, max_block(q))
    elif mode == "corollary1":
        limit = q - 2
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if u > limit:
        raise TooManyStuck(f"{u} stuck cells exceed {limit} for mode {mode}")
    if len(m) != S.message_length:
        raise PdmcError(f"message length {len(m)} != {S.message_length}")
    w = S.G1.vecmul(m)
    present = {w[i] for i in phi}
    for v in range(q):
        nxt = f.successor(v, x)
        if v not in present and nxt not in present:
            break
    else:
        raise MaskingInfeasible("no pair (v, v + x) avoids the stuck-position values")
    z0 = f.neg(nxt)
    c = tuple(f.add(wi, z0) for wi in w)
    return MaskedWord(c, (z0,), phi)


def baseline_encode(S: Construction1Scheme, m, phi) -> MaskedWord:
    """Unmodified encoder: only guarantees nonzero stuck coordinates.

    Stored values may equal ``q - 1``, so a magnitude-1 error can wrap them to 0.
    """
    f = S.field
    phi = _check_phi(phi, S.n)
    if len(phi) > f.q - 1:
        raise TooManyStuck(f"{len(phi)} stuck cells exceed {f.q - 1}")
    w = S.G1.vecmul(m)
    present = {w[i] for i in phi}
    v = next(v for v in range(f.q) if v not in present)
    z0 = f.neg(v)
    return MaskedWord(tuple(f.add(wi, z0) for wi in w), (z0,), phi)


def c1_decode(S: Construction1Scheme, y, t: int) -> tuple[int, ...]:
    f = S.field
    c, _ = decode_bounded(S.code, y, t)
    z0 = c[0]
    w = tuple(f.sub(ci, z0) for ci in c)
    return w[1:1 + S.message_length]


def search_construction1(field: Field, n: int, r: int, d_min: int, seed: int = 0,
                         max_tries: int = 10000) -> Construction1Scheme:
    """Random search over P for a Construction 1 code of distance >= d_min."""
    rng = np.random.default_rng(seed)
    k1 = n - r - 1
    for _ in range(max_tries):
        P = MatrixFq(field, rng.integers(0, field.q, size=(k1, r)).tolist(), r)
        S = Construction1Scheme.from_parts(field, n, r, P, compute_d=False)
        if distance_at_least(S.code, d_min):
            d = minimum_distance(S.code)
            code = LinearCode(field, n, S.code.k, S.code.G, S.code.H, d_known=d)
            return Construction1Scheme(code, S.G1, r)
    raise PdmcError(f"no [{n},{n - r},>={d_min}] Construction 1 code in {max_tries} tries")


# -- block masking -------------------------------------------------------------

def lemma2_mask(partition: BlockPartition, Hmask: MatrixFq, w, phi, x: int = 1) -> tuple[int, ...]:
    """Coefficients ``z`` with ``w + z . Hmask`` masked on ``phi``.

    Blocks are handled in row order; each coefficient is the smallest label
    that keeps its block's columns out of the forbidden set, given the
    contributions already fixed.
    """
    f = Hmask.field
    R = partition.reduced
    bad = f.forbidden(x)
    acc = list(w)
    zr = [0] * R.rows
    covered = set()
    for row, cols in partition.blocks:
        covered.update(cols)
        for z in range(f.q):
            if all(f.add(f.mul(z, R[row, j]), acc[j]) not in bad for j in cols):
                break
        else:
            raise NoFeasibleCoefficient(f"block of row {row} cannot be masked")
        zr[row] = z
        if z:
            acc = list(f.vec_add(acc, f.vec_scale(z, R.row(row))))
    missing = set(phi) - covered
    if missing:
        raise NoFeasibleCoefficient(f"positions {sorted(missing)} are not in any block")
    # z . Hmask = zr . reduced since reduced = transform . Hmask
    return partition.transform.vecmul(zr)


@dataclass(frozen=True)
class BlockMaskScheme:
    G1: MatrixFq
    Hmask: MatrixFq
    code: LinearCode

    @property
    def field(self) -> Field:
        return self.code.field

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def message_length(self) -> int:
        return self.G1.rows

    @property
    def masking_redundancy(self) -> int:
        return self.Hmask.rows

    @property
    def stacked(self) -> MatrixFq:
        return self.G1.stack(self.Hmask)

    @classmethod
    def build(cls, G1: MatrixFq | None, Hmask: MatrixFq, compute_d: bool = True,
              d_known: int | None = None) -> BlockMaskScheme:
        f = Hmask.field
        if G1 is None:
            G1 = MatrixFq(f, [], Hmask.cols)
        stacked = G1.stack(Hmask)
        if rank(stacked) != stacked.rows:
            raise PdmcError("[G1; Hmask] is not of full row rank")
        code = code_from_generator(stacked, compute_d=compute_d and d_known is None, d_known=d_known)
        return cls(G1, Hmask, code)


def c2_encode(S: BlockMaskScheme, m, phi, x: int = 1) -> MaskedWord:
    f = S.field
    phi = _check_phi(phi, S.n)
    if len(m) != S.message_length:
        raise PdmcError(f"message length {len(m)} != {S.message_length}")
    w = S.G1.vecmul(m) if S.G1.rows else (0,) * S.n
    if not phi:
        return MaskedWord(tuple(w), (0,) * S.Hmask.rows, phi)
    part = block_partition(S.Hmask, phi, max_block(f.q))
    z = lemma2_mask(part, S.Hmask, w, phi, x)
    c = f.vec_add(w, S.Hmask.vecmul(z))
    return MaskedWord(c, z, phi)


def c2_decode(S: BlockMaskScheme, y, t: int) -> tuple[int, ...]:
    c, _ = decode_bounded(S.code, y, t)
    sol = solve_full_rank(S.stacked, c)
    return sol[:S.message_length]


c3_encode = c2_encode
c3_decode = c2_decode


def dual_distance(H0: MatrixFq) -> int:
    """Minimum distance of the code whose parity-check matrix is H0."""
    return minimum_distance(code_from_parity_check(H0))


def c3_build(H0: MatrixFq, u: int, d0: int | None = None, G1: MatrixFq | None = None,
             phi=None, audit: int | None = 0, seed: int = 0,
             d_known: int | None = None) -> BlockMaskScheme:
    """Construction 3 with masking matrix H0 (l x n).

    ``audit=None`` checks every size-u stuck set, a positive ``audit``
    samples that many; ``phi`` checks one set.
    """
    q = H0.field.q
    if d0 is None:
        d0 = dual_distance(H0)
    elif d0 > 1:
        if not distance_at_least(code_from_parity_check(H0), d0):
            raise DualDistanceTooSmall(f"H0 does not define a code of distance {d0}")
    if u > max_block(q) + d0 - 2 or u > H0.cols:
        raise DualDistanceTooSmall(f"u = {u} exceeds {max_block(q)} + {d0} - 2")
    kappa = max_block(q)
    if phi is not None:
        block_partition(H0, phi, kappa)
    n = H0.cols
    if audit is None:
        for sub in itertools.combinations(range(n), u):
            block_partition(H0, sub, kappa)
    elif audit:
        rng = np.random.default_rng(seed)
        for _ in range(audit):
            block_partition(H0, rng.choice(n, size=u, replace=False).tolist(), kappa)
    return BlockMaskScheme.build(G1, H0, d_known=d_known)


def masks_all(H: MatrixFq, u: int, exhaustive_limit: int = 5000, samples: int = 2000,
              seed: int = 0) -> bool:
    """Whether block_partition accepts every (or sampled) size-u stuck set."""
    n = H.cols
    kappa = max_block(H.field.q)
    if math.comb(n, u) <= exhaustive_limit:
        subsets = itertools.combinations(range(n), u)
    else:
        rng = np.random.default_rng(seed)
        subsets = (rng.choice(n, size=u, replace=False).tolist() for _ in range(samples))
    try:
        for sub in subsets:
            block_partition(H, sub, kappa)
    except ValueError:
        return False
    return True


def search_block_scheme(field: Field, n: int, r: int, l: int, u: int, d_min: int,
                        seed: int = 0, max_tries: int = 2000,
                        require_dual_bound: bool = False) -> BlockMaskScheme:
    """Random search for a block masking scheme.

    ``r`` parity symbols for error correction, ``l`` masking rows, message
    length ``n - r - l``.  The host code must have distance >= d_min and the
    masking rows must split every size-u stuck set into short blocks.  With
    ``require_dual_bound`` the masking rows must also satisfy
    ``u <= (q-1)//2 + d0 - 2`` for the code d0 they define as parity checks.
    """
    rng = np.random.default_rng(seed)
    k = n - r
    if not 0 <= l <= k:
        raise PdmcError("need 0 <= l <= n - r")
    if require_dual_bound and u > max_block(field.q) + l - 1:
        raise DualDistanceTooSmall(f"{l} masking rows give dual distance at most {l + 1}")
    for _ in range(max_tries):
        Hc = MatrixFq(field, rng.integers(0, field.q, size=(r, n)).tolist(), n) if r else None
        if Hc is not None:
            basis = nullspace(Hc)
            if basis.rows != k:
                continue
            host = code_from_generator(basis)
            if not distance_at_least(host, d_min):
                continue
        else:
            basis = MatrixFq.identity(field, n)
            if d_min > 1:
                raise PdmcError("r = 0 gives distance 1")
        coeff = MatrixFq(field, rng.integers(0, field.q, size=(l, k)).tolist(), k)
        Hmask = coeff.matmul(basis)
        if rank(Hmask) != l:
            continue
        if require_dual_bound and u > max_block(field.q) + dual_distance(Hmask) - 2:
            continue
        if not masks_all(Hmask, u, seed=seed):
            continue
        # G1 completes Hmask to a basis of the host code
        rows = list(Hmask.entries)
        g1 = []
        for row in basis.entries:
            if rank(MatrixFq(field, rows + [row], n)) > len(rows):
                rows.append(row)
                g1.append(row)
        G1 = MatrixFq(field, g1, n)
        try:
            d = minimum_distance(code_from_generator(G1.stack(Hmask)))
        except ValueError:
            d = d_min
        return BlockMaskScheme.build(G1, Hmask, d_known=d)
    raise PdmcError(f"no block masking scheme found in {max_tries} tries")


# -- artificial errors ---------------------------------------------------------

def _check_prop3(C: LinearCode, u: int, t: int) -> None:
    if u + t >= C.n:
        raise PdmcError("need u + t < n")
    d = C.distance if C.distance is not None else minimum_distance(C)
    if d < 2 * (u + t) + 1:
        raise DistanceTooSmall(f"d = {d} < 2(u + t) + 1 = {2 * (u + t) + 1}")


def prop3_encode(C: LinearCode, m, phi, t: int, x: int = 1) -> MaskedWord:
    """Overwrite forbidden stuck coordinates with the smallest safe label.

    At most ``u`` coordinates change; the decoder absorbs them as errors.
    """
    f = C.field
    phi = _check_phi(phi, C.n)
    _check_prop3(C, len(phi), t)
    c = list(C.G.vecmul(m))
    bad = f.forbidden(x)
    safe = next(v for v in range(f.q) if v not in bad)
    for i in phi:
        if c[i] in bad:
            c[i] = safe
    return MaskedWord(tuple(c), (), phi)


def prop3_decode(C: LinearCode, y, u: int, t: int) -> tuple[int, ...]:
    _check_prop3(C, u, t)
    c, _ = decode_bounded(C, y, u + t)
    return solve_full_rank(C.G, c)
