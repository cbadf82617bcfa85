"""Dense matrices over GF(q): RRE, rank, solving and block partitions."""

from __future__ import annotations

from dataclasses import dataclass

from .gf import Field, parse_field


class NotInRowSpace(ValueError):
    pass


class RankDeficient(ValueError):
    pass


class BlockTooLong(ValueError):
    def __init__(self, row: int, length: int, max_len: int):
        super().__init__(f"block of row {row} has length {length} > {max_len}")
        self.row = row
        self.length = length
        self.max_len = max_len


class NotBlockStaircase(ValueError):
    pass


class MatrixFq:
    """Immutable rows x cols matrix of field labels."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries, cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for x in row:
                if not 0 <= x < field.q:
                    raise ValueError(f"entry {x} not a label of {field!r}")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows

    @classmethod
    def _trusted(cls, field: Field, rows, cols: int) -> MatrixFq:
        """Skip validation; rows must already be tuples of valid labels."""
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = len(rows)
        obj.cols = cols
        obj.entries = tuple(rows)
        return obj

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> MatrixFq:
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> MatrixFq:
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> MatrixFq:
        return MatrixFq(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    def submatrix(self, cols) -> MatrixFq:
        cols = list(cols)
        return MatrixFq._trusted(self.field, [tuple(r[j] for j in cols) for r in self.entries],
                                 len(cols))

    def stack(self, other: MatrixFq) -> MatrixFq:
        if other.cols != self.cols and self.rows and other.rows:
            raise ValueError("column count mismatch")
        cols = self.cols if self.rows else other.cols
        return MatrixFq(self.field, self.entries + other.entries, cols)

    def hstack(self, other: MatrixFq) -> MatrixFq:
        if other.rows != self.rows:
            raise ValueError("row count mismatch")
        return MatrixFq._trusted(
            self.field, [a + b for a, b in zip(self.entries, other.entries)], self.cols + other.cols
        )

    def vecmul(self, x) -> tuple[int, ...]:
        """Row vector times matrix: x . M."""
        if len(x) != self.rows:
            raise ValueError(f"vector length {len(x)} != {self.rows} rows")
        f = self.field
        if f.m == 1:
            p = f.p
            out = [0] * self.cols
            for coef, row in zip(x, self.entries):
                if coef:
                    for j, v in enumerate(row):
                        out[j] += coef * v
            return tuple(v % p for v in out)
        out = (0,) * self.cols
        for coef, row in zip(x, self.entries):
            if coef:
                out = f.vec_add(out, f.vec_scale(coef, row))
        return out

    def mulvec(self, x) -> tuple[int, ...]:
        """Matrix times column vector: M . x."""
        return tuple(self.field.dot(r, x) for r in self.entries)

    def matmul(self, other: MatrixFq) -> MatrixFq:
        return MatrixFq(self.field, [other.vecmul(r) for r in self.entries], other.cols)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixFq)
            and self.field == other.field
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(map(str, r)) for r in self.entries)
        return f"MatrixFq({self.field!r}, {self.rows}x{self.cols}: [{body}])"

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.field.spec}"]
        lines += [" ".join(map(str, r)) for r in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> MatrixFq:
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        rows, cols, spec = lines[0].split(maxsplit=2)
        field = parse_field(spec)
        body = [[int(v) for v in ln.split()] for ln in lines[1:1 + int(rows)]]
        if len(body) != int(rows):
            raise ValueError("matrix text has fewer rows than its header says")
        return cls(field, body, int(cols))


def rre(M: MatrixFq, restrict_cols=None) -> tuple[MatrixFq, int, list[int]]:
    """Reduced row echelon form.

    With ``restrict_cols`` only those columns (in that order) are used as
    pivot candidates; row operations still act on the full rows.  Returns
    ``(R, rank, pivots)`` with ``pivots`` as original column indices.
    """
    f = M.field
    rows = [list(r) for r in M.entries]
    order = list(range(M.cols)) if restrict_cols is None else list(restrict_cols)
    pivots: list[int] = []
    r = 0
    for col in order:
        if r == len(rows):
            break
        pr = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][col]
        if lead != 1:
            s = f.inv(lead)
            rows[r] = list(f.vec_scale(s, rows[r]))
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                rows[i] = list(f.vec_sub(rows[i], f.vec_scale(rows[i][col], rows[r])))
        pivots.append(col)
        r += 1
    return MatrixFq._trusted(f, [tuple(row) for row in rows], M.cols), r, pivots


def rank(M: MatrixFq) -> int:
    return rre(M)[1]


def nullspace(M: MatrixFq) -> MatrixFq:
    """Basis (as rows) of {x : M . x = 0}."""
    f = M.field
    R, rk, pivots = rre(M)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for fj in free:
        v = [0] * M.cols
        v[fj] = 1
        for i, pj in enumerate(pivots):
            v[pj] = f.neg(R[i, fj])
        basis.append(v)
    return MatrixFq(f, basis, M.cols)


def solve_full_rank(A: MatrixFq, c) -> tuple[int, ...]:
    """Unique x with x . A = c, for A of full row rank."""
    f = A.field
    if len(c) != A.cols:
        raise ValueError("right-hand side length mismatch")
    # Row-reduce [A^T | c^T]: x solves A^T x = c.
    aug = A.transpose().hstack(MatrixFq(f, [[v] for v in c], 1))
    R, rk, pivots = rre(aug, restrict_cols=range(A.rows))
    if rk < A.rows:
        raise RankDeficient(f"rank {rk} < {A.rows} rows")
    for i in range(rk, R.rows):
        if R[i, A.rows]:
            raise NotInRowSpace("vector is not in the row space")
    x = [0] * A.rows
    for i, pj in enumerate(pivots):
        x[pj] = R[i, A.rows]
    return tuple(x)


@dataclass(frozen=True)
class BlockPartition:
    """Staircase block structure on the defect columns.

    ``blocks[i] = (row, cols)``: the columns masked by the coefficient of
    ``row`` of ``reduced``.  ``reduced = transform . H`` is the staircase
    matrix the coefficients are chosen against (H itself when its own
    staircase is short enough, else its RRE on the defect columns), so
    coefficients found against ``reduced`` map back to ``H`` through
    ``transform``.  ``pivot_cols`` holds the first column of each nonempty
    block.
    """

    pivot_cols: tuple[int, ...]
    blocks: tuple[tuple[int, tuple[int, ...]], ...]
    max_block_len: int
    reduced: MatrixFq
    transform: MatrixFq


def _staircase(M: MatrixFq, phi, nrows: int):
    """Assign each column of phi to the lowest of the first nrows rows nonzero there."""
    members: dict[int, list[int]] = {i: [] for i in range(nrows)}
    zero = []
    for j in phi:
        low = next((i for i in range(nrows - 1, -1, -1) if M[i, j]), None)
        if low is None:
            zero.append(j)
        else:
            members[low].append(j)
    return members, zero


def _partition(members, reduced, transform) -> BlockPartition:
    blocks = tuple((i, tuple(cols)) for i, cols in sorted(members.items()))
    longest = max((len(c) for _, c in blocks), default=0)
    pivots = tuple(cols[0] for _, cols in blocks if cols)
    return BlockPartition(pivots, blocks, longest, reduced, transform)


def block_partition(H: MatrixFq, phi, max_len: int) -> BlockPartition:
    """Partition the defect columns into staircase blocks.

    A column belongs to the block of the lowest row holding a nonzero entry
    in it; every row below is zero there, so masking block by block never
    disturbs earlier blocks.  H is used as given when this already yields
    blocks of length at most ``max_len``; otherwise the rows are replaced by
    ``RRE(H restricted to phi)``, the displayed staircase up to a column
    permutation.
    """
    if H.rows < 1:
        raise ValueError("masking matrix needs at least one row")
    f = H.field
    phi = sorted(set(phi))
    for j in phi:
        if not 0 <= j < H.cols:
            raise ValueError(f"stuck position {j} outside [0, {H.cols})")
    members, zero = _staircase(H, phi, H.rows)
    if not zero and all(len(c) <= max_len for c in members.values()):
        return _partition(members, H, MatrixFq.identity(f, H.rows))

    aug = H.hstack(MatrixFq.identity(f, H.rows))
    R_aug, rk, _ = rre(aug, restrict_cols=phi)
    reduced = R_aug.submatrix(range(H.cols))
    transform = R_aug.submatrix(range(H.cols, H.cols + H.rows))
    members, zero = _staircase(reduced, phi, rk)
    if zero:
        raise NotBlockStaircase(f"column {zero[0]} is zero on the masking rows")
    for i, cols in sorted(members.items()):
        if len(cols) > max_len:
            raise BlockTooLong(i, len(cols), max_len)
    return _partition(members, reduced, transform)
