"""Dense matrices over a ring, entries stored as payloads.

Shapes are explicit so zero-row and zero-column matrices behave (they
show up constantly as differentials at the ends of complexes).
"""

from .errors import RingMismatchError
from .rings import RingElem


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, nrows=None, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            if nrows == 0:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"ragged matrix data for shape {nrows}x{ncols}")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # construction -------------------------------------------------------

    @classmethod
    def build(cls, ring, nrows, ncols, fn):
        return cls(ring, [[fn(i, j) for j in range(ncols)] for i in range(nrows)], nrows, ncols)

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, ring.one(), n)

    @classmethod
    def scalar(cls, ring, c, n):
        z = ring.zero()
        return cls(ring, [[c if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, ring, entries, nrows=None, ncols=None):
        entries = list(entries)
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        z = ring.zero()
        return cls(
            ring,
            [
                [entries[i] if i == j and i < len(entries) else z for j in range(ncols)]
                for i in range(nrows)
            ],
            nrows,
            ncols,
        )

    @classmethod
    def from_elems(cls, ring, rows, nrows=None, ncols=None):
        data = [[ring.elem(x).payload for x in r] for r in rows]
        return cls(ring, data, nrows, ncols)

    @classmethod
    def column(cls, ring, entries):
        return cls(ring, [[e] for e in entries], len(entries), 1)

    # access -------------------------------------------------------------

    def entry(self, i, j):
        return self.rows[i][j]

    def elem(self, i, j):
        return RingElem(self.ring, self.rows[i][j])

    def col(self, j):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def shape(self):
        return (self.nrows, self.ncols)

    def to_lists(self):
        return [list(r) for r in self.rows]

    # predicates ---------------------------------------------------------

    def is_zero(self):
        R = self.ring
        return all(R.is_zero(x) for r in self.rows for x in r)

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        R = self.ring
        return all(
            (R.is_one(x) if i == j else R.is_zero(x))
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.ring == self.ring
            and other.shape() == self.shape()
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((self.ring, self.nrows, self.ncols, self.rows))

    # arithmetic ---------------------------------------------------------

    def _check(self, other, need_same_shape):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ring != self.ring:
            raise RingMismatchError("matrices over different rings")
        if need_same_shape and other.shape() != self.shape():
            raise ValueError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def __add__(self, other):
        self._check(other, True)
        R = self.ring
        return Matrix(
            R,
            [
                [R.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        R = self.ring
        return Matrix(R, [[R.neg(x) for x in r] for r in self.rows], self.nrows, self.ncols)

    def scale(self, c):
        R = self.ring
        return Matrix(R, [[R.mul(c, x) for x in r] for r in self.rows], self.nrows, self.ncols)

    def __matmul__(self, other):
        self._check(other, False)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape()} by {other.shape()}")
        R = self.ring
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = R.zero()
                for a, b in zip(r, c):
                    acc = R.add(acc, R.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(R, out, self.nrows, other.ncols)

    def transpose(self):
        return Matrix(
            self.ring,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.ncols,
            self.nrows,
        )

    def map_entries(self, fn, ring=None):
        return Matrix(
            ring or self.ring,
            [[fn(x) for x in r] for r in self.rows],
            self.nrows,
            self.ncols,
        )

    def submatrix(self, row_idx, col_idx):
        return Matrix(
            self.ring,
            [[self.rows[i][j] for j in col_idx] for i in row_idx],
            len(row_idx),
            len(col_idx),
        )

    # assembly -----------------------------------------------------------

    @classmethod
    def hstack(cls, ring, blocks, nrows=None):
        blocks = list(blocks)
        if not blocks:
            if nrows is None:
                raise ValueError("nrows required for empty hstack")
            return cls.zero(ring, nrows, 0)
        nrows = blocks[0].nrows
        if any(b.nrows != nrows for b in blocks):
            raise ValueError("hstack blocks disagree on row count")
        rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(nrows)]
        return cls(ring, rows, nrows, sum(b.ncols for b in blocks))

    @classmethod
    def vstack(cls, ring, blocks, ncols=None):
        blocks = list(blocks)
        if not blocks:
            if ncols is None:
                raise ValueError("ncols required for empty vstack")
            return cls.zero(ring, 0, ncols)
        ncols = blocks[0].ncols
        if any(b.ncols != ncols for b in blocks):
            raise ValueError("vstack blocks disagree on column count")
        rows = [r for b in blocks for r in b.rows]
        return cls(ring, rows, sum(b.nrows for b in blocks), ncols)

    @classmethod
    def block(cls, ring, grid):
        """Assemble from a 2d grid of matrices (entries may be None for
        zero blocks once the row/col sizes are pinned by neighbors)."""
        nrow_blocks = len(grid)
        ncol_blocks = len(grid[0]) if nrow_blocks else 0
        row_sizes = [None] * nrow_blocks
        col_sizes = [None] * ncol_blocks
        for i, row in enumerate(grid):
            for j, b in enumerate(row):
                if b is None:
                    continue
                if row_sizes[i] is None:
                    row_sizes[i] = b.nrows
                elif row_sizes[i] != b.nrows:
                    raise ValueError("block grid row sizes disagree")
                if col_sizes[j] is None:
                    col_sizes[j] = b.ncols
                elif col_sizes[j] != b.ncols:
                    raise ValueError("block grid col sizes disagree")
        if any(s is None for s in row_sizes) or any(s is None for s in col_sizes):
            raise ValueError("block grid has an unconstrained zero block")
        vblocks = []
        for i, row in enumerate(grid):
            h = [
                b if b is not None else cls.zero(ring, row_sizes[i], col_sizes[j])
                for j, b in enumerate(row)
            ]
            vblocks.append(cls.hstack(ring, h, nrows=row_sizes[i]))
        return cls.vstack(ring, vblocks, ncols=sum(col_sizes))

    @classmethod
    def direct_sum(cls, ring, blocks):
        blocks = list(blocks)
        if not blocks:
            return cls.zero(ring, 0, 0)
        if len(blocks) == 1:
            return blocks[0]
        grid = [
            [b if i == j else None for j in range(len(blocks))]
            for i, b in enumerate(blocks)
        ]
        return cls.block(ring, grid)

    def kron(self, other):
        """Kronecker product, row index (i1, i2) -> i1 * other.nrows + i2."""
        self._check(other, False)
        R = self.ring
        nr, nc = self.nrows * other.nrows, self.ncols * other.ncols
        out = [[None] * nc for _ in range(nr)]
        for i1, r1 in enumerate(self.rows):
            for i2, r2 in enumerate(other.rows):
                for j1, a in enumerate(r1):
                    for j2, b in enumerate(r2):
                        out[i1 * other.nrows + i2][j1 * other.ncols + j2] = R.mul(a, b)
        return Matrix(R, out, nr, nc)

    # rendering ----------------------------------------------------------

    def render(self):
        R = self.ring
        return "[" + ",".join("[" + ",".join(R.render(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self.ring.describe()}, {self.nrows}x{self.ncols}, {self.render()})"
