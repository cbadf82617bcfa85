"""Linear codes over GF(q), BCH construction and bounded-distance decoding."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .gf import Field
from .matfq import MatrixFq, RankDeficient, nullspace, rank

EXHAUSTIVE_LIMIT = 10 ** 7


class CodeError(ValueError):
    pass


class TooLargeForExhaustive(CodeError):
    pass


class OrderMismatch(CodeError):
    pass


class LengthMismatch(CodeError):
    pass


class DecodeFailure(CodeError):
    pass


class CapacityExceeded(CodeError):
    pass


@dataclass(frozen=True)
class BchSpec:
    p: int
    m: int
    n: int
    b: int
    delta: int
    cosets: tuple[tuple[int, ...], ...]
    g: tuple[int, ...]
    ext: Field
    alpha: int

    @property
    def k(self) -> int:
        return self.n - (len(self.g) - 1)

    @property
    def zeros(self) -> frozenset[int]:
        return frozenset(e for c in self.cosets for e in c)

    def achieved_distance(self) -> int:
        """BCH bound from the longest cyclic run of consecutive zeros."""
        return longest_cyclic_run(self.zeros, self.n) + 1


@dataclass(frozen=True)
class LinearCode:
    field: Field
    n: int
    k: int
    G: MatrixFq
    H: MatrixFq
    d_known: int | None = None
    d_designed: int | None = None
    bch: BchSpec | None = None
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def distance(self) -> int | None:
        return self.d_known if self.d_known is not None else self.d_designed

    @property
    def rate(self) -> float:
        return self.k / self.n

    def syndrome(self, y) -> tuple[int, ...]:
        return self.H.mulvec(y)

    def is_codeword(self, y) -> bool:
        return not any(self.syndrome(y))

    def contains(self, y) -> bool:
        return len(y) == self.n and self.is_codeword(y)


def code_from_generator(G: MatrixFq, compute_d: bool = False, d_known: int | None = None,
                        d_designed: int | None = None, bch: BchSpec | None = None) -> LinearCode:
    k = rank(G)
    if k != G.rows:
        raise RankDeficient(f"generator has rank {k} < {G.rows} rows")
    H = nullspace(G)
    code = LinearCode(G.field, G.cols, k, G, H, d_known, d_designed, bch)
    if compute_d and d_known is None:
        code = LinearCode(G.field, G.cols, k, G, H, minimum_distance(code), d_designed, bch)
    return code


def code_from_parity_check(H: MatrixFq, compute_d: bool = False) -> LinearCode:
    return code_from_generator(nullspace(H), compute_d)


def _columns_dependent(H: MatrixFq, cols) -> bool:
    return rank(H.submatrix(cols)) < len(cols)


def distance_at_least(code: LinearCode, d: int) -> bool:
    """True iff every d-1 columns of H are linearly independent."""
    if d <= 1:
        return True
    if d - 1 > code.n - code.k:
        return False
    H = code.H
    for w in range(1, d):
        for cols in itertools.combinations(range(code.n), w):
            if _columns_dependent(H, cols):
                return False
    return True


def minimum_distance(code: LinearCode, limit: int = EXHAUSTIVE_LIMIT) -> int:
    """Exact minimum distance by the cheaper of two exhaustive searches.

    Either every nonzero codeword (q^k of them) or column subsets of H by
    increasing size until a dependent one turns up.
    """
    q, n, k = code.field.q, code.n, code.k
    if k == 0:
        return n + 1
    enum_cost = q ** k
    r = n - k
    subset_cost = sum(math.comb(n, w) for w in range(1, r + 2))
    if min(enum_cost, subset_cost) > limit:
        raise TooLargeForExhaustive(f"q^k = {enum_cost} and {subset_cost} column subsets exceed {limit}")
    if enum_cost <= subset_cost:
        best = n
        for m in itertools.product(range(q), repeat=k):
            if any(m):
                w = sum(1 for v in code.G.vecmul(m) if v)
                best = min(best, w)
        return best
    for w in range(1, r + 2):
        for cols in itertools.combinations(range(n), w):
            if _columns_dependent(code.H, cols):
                return w
    return r + 1  # pragma: no cover - Singleton bound


def encode(code: LinearCode, m) -> tuple[int, ...]:
    if len(m) != code.k:
        raise LengthMismatch(f"message length {len(m)} != k = {code.k}")
    return code.G.vecmul(m)


def weight(v) -> int:
    return sum(1 for x in v if x)


def _pattern_count(n: int, t: int, q: int) -> int:
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))


def syndrome_table(code: LinearCode, t: int) -> dict:
    key = ("syndrome_table", t)
    table = code._cache.get(key)
    if table is not None:
        return table
    f = code.field
    table = {}
    H = code.H
    cols = [H.column(j) for j in range(code.n)]
    zero = (0,) * H.rows
    table[zero] = ()
    for w in range(1, t + 1):
        for pos in itertools.combinations(range(code.n), w):
            for vals in itertools.product(range(1, f.q), repeat=w):
                s = zero
                for j, v in zip(pos, vals):
                    s = f.vec_add(s, f.vec_scale(v, cols[j]))
                if s not in table:
                    table[s] = tuple(zip(pos, vals))
    code._cache[key] = table
    return table


def decode_bounded(code: LinearCode, y, t: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(c, e)`` with ``y = c + e`` and ``wt(e) <= t``."""
    if len(y) != code.n:
        raise LengthMismatch(f"received length {len(y)} != n = {code.n}")
    d = code.distance
    if d is None:
        d = minimum_distance(code)
    if 2 * t + 1 > d:
        raise CapacityExceeded(f"radius {t} needs d >= {2 * t + 1}, code has {d}")
    f = code.field
    y = tuple(y)
    if _pattern_count(code.n, t, f.q) <= EXHAUSTIVE_LIMIT:
        table = syndrome_table(code, t)
        s = code.syndrome(y)
        leader = table.get(s)
        if leader is None:
            raise DecodeFailure("no codeword within the decoding radius")
        e = [0] * code.n
        for j, v in leader:
            e[j] = v
        e = tuple(e)
        return f.vec_sub(y, e), e
    if code.bch is None:
        raise TooLargeForExhaustive("syndrome table too large and no algebraic decoder")
    c, e = bm_decode(code.bch, code, y)
    if weight(e) > t:
        raise DecodeFailure(f"nearest codeword at distance {weight(e)} > {t}")
    return c, e


# -- BCH -----------------------------------------------------------------------

def cyclotomic_cosets(n: int, p: int) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        x = s
        while x not in coset:
            coset.append(x)
            x = x * p % n
        seen.update(coset)
        out.append(tuple(coset))
    return out


def longest_cyclic_run(zeros, n: int) -> int:
    zeros = set(zeros)
    if len(zeros) >= n:
        return n
    best = 0
    for start in range(n):
        if start in zeros and (start - 1) % n not in zeros:
            run = 0
            while (start + run) % n in zeros:
                run += 1
            best = max(best, run)
    return best


def _ext_poly_mul(ext: Field, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ext.add(out[i + j], ext.mul(x, y))
    return out


def bch_zero_cosets(p: int, n: int, b: int, delta: int):
    which = {}
    for c in cyclotomic_cosets(n, p):
        for e in c:
            which[e] = c
    picked = []
    for j in range(b, b + delta - 1):
        c = which[j % n]
        if c not in picked:
            picked.append(c)
    return picked


def bch_build(p: int, m: int, n: int, b: int, delta: int) -> tuple[BchSpec, LinearCode]:
    if (p ** m - 1) % n:
        raise OrderMismatch(f"{n} does not divide {p}^{m} - 1")
    if not 2 <= delta <= n:
        raise CodeError("designed distance must satisfy 2 <= delta <= n")
    ext = Field(p, m)
    alpha = ext.pow(ext.generator if m > 1 else _prime_generator(p), (p ** m - 1) // n)
    cosets = bch_zero_cosets(p, n, b, delta)
    g = [1]
    for coset in cosets:
        minpoly = [1]
        for e in coset:
            minpoly = _ext_poly_mul(ext, minpoly, [ext.neg(ext.pow(alpha, e)), 1])
        if not all(ext.in_prime_subfield(c) for c in minpoly):
            raise CodeError("minimal polynomial left the prime subfield")  # pragma: no cover
        g = _ext_poly_mul(ext, g, minpoly)
    g = tuple(g)
    spec = BchSpec(p, m, n, b % n, delta, tuple(cosets), g, ext, alpha)
    k = spec.k
    symbols = Field(p)
    rows = []
    for shift in range(k):
        row = [0] * n
        for i, coef in enumerate(g):
            row[shift + i] = coef
        rows.append(row)
    G = MatrixFq(symbols, rows, n)
    code = code_from_generator(G, d_designed=delta, bch=spec)
    return spec, code


def _prime_generator(p: int) -> int:
    if p == 2:
        return 1
    order = p - 1
    factors = [f for f in range(2, order + 1) if order % f == 0 and all(f % d for d in range(2, f))]
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    raise AssertionError("no generator")  # pragma: no cover


def bch_offset_search(p: int, m: int, n: int, delta: int) -> tuple[int, int]:
    """Offset b in [n] maximising the dimension at designed distance delta.

    Returns ``(b, k)``; ties go to the smallest b.
    """
    if (p ** m - 1) % n:
        raise OrderMismatch(f"{n} does not divide {p}^{m} - 1")
    best_b, best_k = 0, -1
    for b in range(n):
        k = n - sum(len(c) for c in bch_zero_cosets(p, n, b, delta))
        if k > best_k:
            best_b, best_k = b, k
    return best_b, best_k


def _poly_eval(ext: Field, poly, x: int) -> int:
    acc = 0
    for coef in reversed(poly):
        acc = ext.add(ext.mul(acc, x), coef)
    return acc


def berlekamp_massey(ext: Field, s) -> list[int]:
    C = [1]
    B = [1]
    L = 0
    shift = 1
    bb = 1
    for idx in range(len(s)):
        d = s[idx]
        for i in range(1, L + 1):
            if i < len(C):
                d = ext.add(d, ext.mul(C[i], s[idx - i]))
        if d == 0:
            shift += 1
            continue
        coef = ext.div(d, bb)
        T = list(C)
        need = len(B) + shift
        if len(C) < need:
            C = C + [0] * (need - len(C))
        for i, v in enumerate(B):
            C[i + shift] = ext.sub(C[i + shift], ext.mul(coef, v))
        if 2 * L <= idx:
            L = idx + 1 - L
            B = T
            bb = d
            shift = 1
        else:
            shift += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    if len(C) - 1 != L:
        raise DecodeFailure("locator degree does not match its linear complexity")
    return C


def bm_decode(spec: BchSpec, code: LinearCode, y) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Berlekamp-Massey, Chien search and Forney over GF(p^m)."""
    ext = spec.ext
    n = spec.n
    y = tuple(y)
    if len(y) != n:
        raise LengthMismatch(f"received length {len(y)} != n = {n}")
    nsyn = spec.delta - 1
    powers = [ext.pow(spec.alpha, e) for e in range(n)]
    synd = []
    for j in range(spec.b, spec.b + nsyn):
        acc = 0
        for i, v in enumerate(y):
            if v:
                acc = ext.add(acc, ext.mul(v, powers[(i * j) % n]))
        synd.append(acc)
    if not any(synd):
        return y, (0,) * n
    lam = berlekamp_massey(ext, synd)
    nerr = len(lam) - 1
    if nerr > nsyn // 2:
        raise DecodeFailure(f"{nerr} errors exceed capability {nsyn // 2}")
    positions = [i for i in range(n) if _poly_eval(ext, lam, powers[(-i) % n]) == 0]
    if len(positions) != nerr:
        raise DecodeFailure("error locator roots do not match its degree")
    omega = _ext_poly_mul(ext, synd, lam)[:nsyn]
    dlam = [ext.mul(i % ext.p, lam[i]) for i in range(1, len(lam))]
    e = [0] * n
    for i in positions:
        xinv = powers[(-i) % n]
        num = _poly_eval(ext, omega, xinv)
        den = _poly_eval(ext, dlam, xinv)
        if den == 0:
            raise DecodeFailure("vanishing locator derivative")
        val = ext.neg(ext.mul(ext.pow(powers[i], (1 - spec.b) % (ext.q - 1)), ext.div(num, den)))
        if not ext.in_prime_subfield(val) or val == 0:
            raise DecodeFailure("error value outside the symbol field")
        e[i] = val
    e = tuple(e)
    c = code.field.vec_sub(y, e)
    if not code.is_codeword(c):
        raise DecodeFailure("corrected word is not a codeword")
    return c, e


def repetition_code(field: Field, n: int) -> LinearCode:
    return code_from_generator(MatrixFq(field, [[1] * n]), d_known=n)


def read_code(text: str) -> LinearCode:
    """Code description: a BCH line ``bch p m n b delta`` or a generator matrix."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if lines and lines[0].split()[0] == "bch":
        p, m, n, b, delta = (int(v) for v in lines[0].split()[1:6])
        return bch_build(p, m, n, b, delta)[1]
    return code_from_generator(MatrixFq.from_text("\n".join(lines)), compute_d=True)
