"""Bounded complexes of finite free modules and chain maps.

Cohomological indexing throughout: the differential in degree n maps
X^n to X^(n+1), so diffs[n] has shape rank(n+1) x rank(n).  Structural
checks (d after d = 0, commuting squares) run at construction.

Sign conventions:
  - shift(X, k) reindexes by k and scales the differential by (-1)^k,
  - cone(f)^n = src^(n+1) (+) dst^n with d = [[-d_src, 0], [f, d_dst]],
  - tensor uses d(x (x) y) = dx (x) y + (-1)^p x (x) dy.
"""

from .errors import ComplexFormatError, RingMismatchError, TierError
from .matrices import Matrix
from .rings import RingElem


class FreeComplex:
    __slots__ = ("ring", "ranks", "diffs")

    def __init__(self, ring, ranks, diffs):
        ranks = {n: r for n, r in ranks.items() if r}
        for n, r in ranks.items():
            if r < 0:
                raise ComplexFormatError(f"negative rank in degree {n}", degree=n)
        clean = {}
        for n, d in diffs.items():
            need_rows = ranks.get(n + 1, 0)
            need_cols = ranks.get(n, 0)
            if d is None:
                continue
            if d.ring != ring:
                raise RingMismatchError("differential over the wrong ring")
            if d.shape() != (need_rows, need_cols):
                raise ComplexFormatError(
                    f"d({n}) has shape {d.shape()}, expected {(need_rows, need_cols)}",
                    degree=n,
                )
            if need_rows and need_cols:
                clean[n] = d
        self.ring = ring
        self.ranks = dict(sorted(ranks.items()))
        # materialize zero differentials wherever both ends are nonzero
        for n in self.ranks:
            if self.ranks.get(n + 1, 0) and n not in clean:
                clean[n] = Matrix.zero(ring, self.ranks[n + 1], self.ranks[n])
        self.diffs = dict(sorted(clean.items()))
        for n, d in self.diffs.items():
            nxt = self.diffs.get(n + 1)
            if nxt is not None and not (nxt @ d).is_zero():
                raise ComplexFormatError(f"d({n + 1}) after d({n}) is nonzero", degree=n)

    # shape ----------------------------------------------------------------

    def rank(self, n):
        return self.ranks.get(n, 0)

    def diff(self, n):
        d = self.diffs.get(n)
        if d is not None:
            return d
        return Matrix.zero(self.ring, self.rank(n + 1), self.rank(n))

    def degrees(self):
        return sorted(self.ranks)

    def is_zero_complex(self):
        return not self.ranks

    def total_rank(self):
        return sum(self.ranks.values())

    def lo(self):
        return min(self.ranks) if self.ranks else 0

    def hi(self):
        return max(self.ranks) if self.ranks else 0

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and other.ring == self.ring
            and other.ranks == self.ranks
            and other.diffs == self.diffs
        )

    def __hash__(self):
        return hash((self.ring, tuple(self.ranks.items()), tuple(self.diffs.items())))

    def __repr__(self):
        if self.is_zero_complex():
            return f"FreeComplex({self.ring.describe()}, 0)"
        parts = ", ".join(f"{n}:{r}" for n, r in self.ranks.items())
        return f"FreeComplex({self.ring.describe()}, ranks {{{parts}}})"

    # constructions ----------------------------------------------------------

    def shift(self, k):
        ranks = {n - k: r for n, r in self.ranks.items()}
        sign = self.ring.from_int(-1 if k % 2 else 1)
        diffs = {n - k: d.scale(sign) for n, d in self.diffs.items()}
        return FreeComplex(self.ring, ranks, diffs)

    def direct_sum(self, other):
        return direct_sum([self, other])

    def tensor(self, other):
        return tensor(self, other)


def zero_complex(ring):
    return FreeComplex(ring, {}, {})


def two_term(ring, elem, top_degree=0):
    """[R --f--> R] concentrated in degrees top_degree-1, top_degree."""
    f = ring.elem(elem)
    return FreeComplex(
        ring,
        {top_degree - 1: 1, top_degree: 1},
        {top_degree - 1: Matrix(ring, [[f.payload]], 1, 1)},
    )


def free_singleton(ring, degree, rank=1):
    return FreeComplex(ring, {degree: rank}, {})


def direct_sum(complexes):
    complexes = list(complexes)
    if not complexes:
        raise ValueError("direct_sum needs at least one complex")
    ring = complexes[0].ring
    if any(c.ring != ring for c in complexes):
        raise RingMismatchError("direct sum over mixed rings")
    ranks = {}
    for c in complexes:
        for n, r in c.ranks.items():
            ranks[n] = ranks.get(n, 0) + r
    diffs = {}
    for n in ranks:
        if not ranks.get(n + 1, 0):
            continue
        blocks = [c.diff(n) for c in complexes]
        grid = [
            [blocks[i] if i == j else None for j in range(len(blocks))]
            for i in range(len(blocks))
        ]
        # zero-size blocks pin their own sizes, so the grid is determined
        diffs[n] = Matrix.block(ring, grid)
    return FreeComplex(ring, ranks, diffs)


def summand_injection(complexes, which):
    """Chain map incl: complexes[which] -> direct_sum(complexes)."""
    total = direct_sum(complexes)
    src = complexes[which]
    ring = total.ring
    comps = {}
    for n in src.degrees():
        before = sum(c.rank(n) for c in complexes[:which])
        rows = []
        for i in range(total.rank(n)):
            row = [ring.zero()] * src.rank(n)
            if before <= i < before + src.rank(n):
                row[i - before] = ring.one()
            rows.append(row)
        comps[n] = Matrix(ring, rows, total.rank(n), src.rank(n))
    return ChainMap(src, total, comps)


def summand_projection(complexes, which):
    """Chain map proj: direct_sum(complexes) -> complexes[which]."""
    total = direct_sum(complexes)
    dst = complexes[which]
    ring = total.ring
    comps = {}
    for n in dst.degrees():
        before = sum(c.rank(n) for c in complexes[:which])
        rows = []
        for i in range(dst.rank(n)):
            row = [ring.zero()] * total.rank(n)
            row[before + i] = ring.one()
            rows.append(row)
        comps[n] = Matrix(ring, rows, dst.rank(n), total.rank(n))
    return ChainMap(total, dst, comps)


class ChainMap:
    __slots__ = ("src", "dst", "comps")

    def __init__(self, src, dst, comps):
        if src.ring != dst.ring:
            raise RingMismatchError("chain map between complexes over different rings")
        clean = {}
        for n, M in comps.items():
            if M is None:
                continue
            need = (dst.rank(n), src.rank(n))
            if M.ring != src.ring:
                raise RingMismatchError("chain map component over the wrong ring")
            if M.shape() != need:
                raise ComplexFormatError(
                    f"component c({n}) has shape {M.shape()}, expected {need}", degree=n
                )
            if need[0] and need[1]:
                clean[n] = M
        self.src = src
        self.dst = dst
        self.comps = dict(sorted(clean.items()))
        for n in set(src.ranks) | set(dst.ranks):
            left = dst.diff(n) @ self.comp(n)
            right = self.comp(n + 1) @ src.diff(n)
            if left != right:
                raise ComplexFormatError(
                    f"square at degree {n} does not commute", degree=n
                )

    def comp(self, n):
        M = self.comps.get(n)
        if M is not None:
            return M
        return Matrix.zero(self.src.ring, self.dst.rank(n), self.src.rank(n))

    def is_zero(self):
        return all(M.is_zero() for M in self.comps.values())

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and other.src == self.src
            and other.dst == self.dst
            and {n: M for n, M in other.comps.items() if not M.is_zero()}
            == {n: M for n, M in self.comps.items() if not M.is_zero()}
        )

    def __hash__(self):
        nz = tuple(sorted((n, M) for n, M in self.comps.items() if not M.is_zero()))
        return hash((self.src, self.dst, nz))

    def __repr__(self):
        return f"ChainMap({self.src!r} -> {self.dst!r})"

    @classmethod
    def identity(cls, X):
        return cls(X, X, {n: Matrix.identity(X.ring, X.rank(n)) for n in X.degrees()})

    @classmethod
    def zero(cls, src, dst):
        return cls(src, dst, {})

    def compose(self, other):
        """self after other."""
        if other.dst != self.src:
            raise ComplexFormatError("composition endpoints do not match")
        degs = set(other.src.ranks) | set(self.dst.ranks)
        comps = {n: self.comp(n) @ other.comp(n) for n in degs}
        return ChainMap(other.src, self.dst, comps)

    def __add__(self, other):
        if other.src != self.src or other.dst != self.dst:
            raise ComplexFormatError("sum of chain maps with different endpoints")
        degs = set(self.comps) | set(other.comps)
        return ChainMap(self.src, self.dst, {n: self.comp(n) + other.comp(n) for n in degs})

    def __neg__(self):
        return ChainMap(self.src, self.dst, {n: -M for n, M in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ChainMap(self.src, self.dst, {n: M.scale(c) for n, M in self.comps.items()})

    def shift(self, k):
        return ChainMap(
            self.src.shift(k),
            self.dst.shift(k),
            {n - k: M for n, M in self.comps.items()},
        )


def cone(f):
    """Mapping cone of f: X -> Y, with C^n = X^(n+1) (+) Y^n."""
    X, Y = f.src, f.dst
    ring = X.ring
    ranks = {}
    degs = set(X.ranks) | set(Y.ranks)
    for n in degs | {n - 1 for n in X.ranks}:
        r = X.rank(n + 1) + Y.rank(n)
        if r:
            ranks[n] = r
    diffs = {}
    for n in ranks:
        if not ranks.get(n + 1, 0):
            continue
        diffs[n] = Matrix.block(
            ring,
            [
                [-X.diff(n + 1), Matrix.zero(ring, X.rank(n + 2), Y.rank(n))],
                [f.comp(n + 1), Y.diff(n)],
            ],
        )
    return FreeComplex(ring, ranks, diffs)


def cone_inclusion(f):
    """Y -> cone(f), the canonical inclusion."""
    C = cone(f)
    Y = f.dst
    ring = Y.ring
    comps = {}
    for n in Y.degrees():
        X1 = f.src.rank(n + 1)
        block = Matrix.vstack(
            ring,
            [Matrix.zero(ring, X1, Y.rank(n)), Matrix.identity(ring, Y.rank(n))],
            ncols=Y.rank(n),
        )
        comps[n] = block
    return ChainMap(Y, C, comps)


def cone_projection(f):
    """cone(f) -> shift(X, 1), the canonical projection."""
    C = cone(f)
    SX = f.src.shift(1)
    ring = C.ring
    comps = {}
    for n in SX.degrees():
        X1 = f.src.rank(n + 1)
        Yn = f.dst.rank(n)
        block = Matrix.hstack(
            ring,
            [Matrix.identity(ring, X1), Matrix.zero(ring, X1, Yn)],
            nrows=X1,
        )
        comps[n] = block
    return ChainMap(C, SX, comps)


def tensor(X, Y):
    """Tensor product complex; summands of degree n ordered by ascending
    X-degree p (only p with both factor ranks nonzero appear)."""
    if X.ring != Y.ring:
        raise RingMismatchError("tensor over mixed rings")
    ring = X.ring
    if X.is_zero_complex() or Y.is_zero_complex():
        return zero_complex(ring)

    def summands(n):
        out = []
        for p in X.degrees():
            q = n - p
            if X.rank(p) and Y.rank(q):
                out.append((p, q))
        return out

    lo = X.lo() + Y.lo()
    hi = X.hi() + Y.hi()
    ranks = {}
    for n in range(lo, hi + 1):
        r = sum(X.rank(p) * Y.rank(q) for p, q in summands(n))
        if r:
            ranks[n] = r
    diffs = {}
    for n in range(lo, hi):
        cols = summands(n)
        rows = summands(n + 1)
        if not cols or not rows:
            continue
        grid = []
        for p2, q2 in rows:
            row = []
            for p, q in cols:
                if (p2, q2) == (p + 1, q):
                    row.append(X.diff(p).kron(Matrix.identity(ring, Y.rank(q))))
                elif (p2, q2) == (p, q + 1):
                    sign = ring.from_int(-1 if p % 2 else 1)
                    row.append(
                        Matrix.identity(ring, X.rank(p)).kron(Y.diff(q)).scale(sign)
                    )
                else:
                    row.append(
                        Matrix.zero(ring, X.rank(p2) * Y.rank(q2), X.rank(p) * Y.rank(q))
                    )
            grid.append(row)
        diffs[n] = Matrix.block(ring, grid)
    return FreeComplex(ring, ranks, diffs)


def tensor_map(f, g):
    """f (x) g on tensor complexes (no extra signs on components: the
    Koszul sign would come from permuting g past f in each degree, and
    component matrices here act block-diagonally)."""
    if f.src.ring != g.src.ring:
        raise RingMismatchError("tensor of maps over mixed rings")
    ring = f.src.ring
    TX = tensor(f.src, g.src)
    TY = tensor(f.dst, g.dst)
    comps = {}
    for n in TX.degrees():
        src_blocks = [
            (p, n - p) for p in f.src.degrees() if f.src.rank(p) and g.src.rank(n - p)
        ]
        dst_blocks = [
            (p, n - p) for p in f.dst.degrees() if f.dst.rank(p) and g.dst.rank(n - p)
        ]
        grid = []
        for p2, q2 in dst_blocks:
            row = []
            for p, q in src_blocks:
                if (p2, q2) == (p, q):
                    row.append(f.comp(p).kron(g.comp(q)))
                else:
                    row.append(
                        Matrix.zero(
                            ring,
                            f.dst.rank(p2) * g.dst.rank(q2),
                            f.src.rank(p) * g.src.rank(q),
                        )
                    )
            grid.append(row)
        if dst_blocks and src_blocks:
            comps[n] = Matrix.block(ring, grid)
    return ChainMap(TX, TY, comps)


def koszul(ideal):
    """Koszul complex on the (pruned) generator list of the ideal:
    the tensor product of [R --g--> R] in degrees -1, 0."""
    ring = ideal.ring
    acc = None
    for g in ideal.gens:
        t = two_term(ring, g)
        acc = t if acc is None else tensor(acc, t)
    return acc


def is_quasi_iso(f):
    """True when cone(f) is exact in every degree."""
    from .homology import homology

    C = cone(f)
    return all(homology(C, n).is_zero() for n in C.degrees())


# ------------------------------------------------------- random generators


def random_complex(ring, rng, max_rank=4, degree_span=4, lo_range=(-2, 1)):
    """Random bounded complex assembled from two-term and singleton
    blocks, then conjugated by random elementary transformations.

    Returns (complex, blocks, transforms) so callers can build chain
    maps block by block; transforms maps degree -> (P, Pinv).
    """
    if ring.tier != 1:
        raise TierError("random complexes need a Tier-1 ring")
    lo = rng.randint(*lo_range)
    span = rng.randint(2, max(2, degree_span))
    blocks = []
    # ensure at least one free singleton so homology is nonzero
    blocks.append(("free", rng.randint(lo, lo + span - 1), None))
    budget = max_rank * 2
    used = {}
    for _ in range(rng.randint(1, 4)):
        kind = rng.choice(["two", "free"])
        d = rng.randint(lo, lo + span - 2) if kind == "two" else rng.randint(lo, lo + span - 1)
        blocks.append((kind, d, ring.random_element(rng) if kind == "two" else None))
    # drop blocks that would push a degree over max_rank
    kept = []
    for kind, d, payload in blocks:
        touched = [d, d + 1] if kind == "two" else [d]
        if all(used.get(t, 0) < max_rank for t in touched):
            for t in touched:
                used[t] = used.get(t, 0) + 1
            kept.append((kind, d, payload))
    pieces = _block_pieces(ring, kept)
    plain = direct_sum(pieces)
    transforms = _random_transforms(ring, rng, plain)
    twisted = _conjugate(plain, transforms)
    return twisted, kept, transforms


def _block_pieces(ring, blocks):
    pieces = []
    for kind, d, payload in blocks:
        if kind == "two":
            pieces.append(two_term(ring, RingElem(ring, payload), d + 1))
        else:
            pieces.append(free_singleton(ring, d))
    return pieces


def _random_transforms(ring, rng, X):
    transforms = {}
    for n in X.degrees():
        r = X.rank(n)
        P = Matrix.identity(ring, r)
        Pinv = Matrix.identity(ring, r)
        for _ in range(rng.randint(0, 2 * r)):
            i, j = rng.randrange(r), rng.randrange(r)
            if i == j:
                continue
            c = ring.from_int(rng.randint(-2, 2))
            E = Matrix.build(
                ring,
                r,
                r,
                lambda a, b, i=i, j=j, c=c: (
                    ring.one() if a == b else (c if (a, b) == (i, j) else ring.zero())
                ),
            )
            Einv = Matrix.build(
                ring,
                r,
                r,
                lambda a, b, i=i, j=j, c=c: (
                    ring.one()
                    if a == b
                    else (ring.neg(c) if (a, b) == (i, j) else ring.zero())
                ),
            )
            P = E @ P
            Pinv = Pinv @ Einv
        transforms[n] = (P, Pinv)
    return transforms


def _conjugate(X, transforms):
    ring = X.ring
    diffs = {}
    for n in X.degrees():
        if not X.rank(n + 1):
            continue
        P_next = transforms[n + 1][0]
        Pinv_n = transforms[n][1]
        diffs[n] = P_next @ X.diff(n) @ Pinv_n
    return FreeComplex(ring, dict(X.ranks), diffs)


def random_chain_map(ring, rng, max_rank=4, degree_span=4):
    """Random chain map f: X -> Y with nontrivial scalar block maps on
    shared blocks plus a random null-homotopic part."""
    X, blocks, tX = random_complex(ring, rng, max_rank, degree_span)
    # Y shares a prefix of X's blocks, plus its own extras
    shared = blocks[: rng.randint(1, len(blocks))]
    pieces_shared = _block_pieces(ring, shared)
    Y_extra = random_complex(ring, rng, max_rank, degree_span)[0]
    Y_plain = direct_sum([direct_sum(pieces_shared), Y_extra])
    tY = _random_transforms(ring, rng, Y_plain)
    Y = _conjugate(Y_plain, tY)

    # block-diagonal scalar map on the shared prefix (same differentials,
    # so any scalar commutes), zero into the extras; shared pieces sit at
    # the same block offsets in X_plain and Y_plain by construction
    X_plain_pieces = _block_pieces(ring, blocks)
    X_plain = direct_sum(X_plain_pieces)
    scalars = [ring.from_int(rng.randint(-3, 3)) for _ in shared]
    comps = {}
    for n in set(X_plain.ranks) | set(Y_plain.ranks):
        rows = Y_plain.rank(n)
        cols = X_plain.rank(n)
        if not rows or not cols:
            continue
        M = [[ring.zero()] * cols for _ in range(rows)]
        roff = 0
        for bi, c in enumerate(scalars):
            piece = pieces_shared[bi]
            coff = sum(X_plain_pieces[k].rank(n) for k in range(bi))
            for i in range(piece.rank(n)):
                M[roff + i][coff + i] = c
            roff += piece.rank(n)
        comps[n] = Matrix(ring, M, rows, cols)
    f_plain = ChainMap(X_plain, Y_plain, comps)

    # transport through the conjugations, then add a null homotopy
    comps2 = {}
    for n in set(X.ranks) | set(Y.ranks):
        if not Y.rank(n) or not X.rank(n):
            continue
        comps2[n] = tY[n][0] @ f_plain.comp(n) @ tX[n][1]
    f = ChainMap(X, Y, comps2)
    h = {
        n: Matrix.build(
            ring,
            Y.rank(n - 1),
            X.rank(n),
            lambda i, j: ring.from_int(rng.randint(-2, 2)),
        )
        for n in X.degrees()
        if Y.rank(n - 1)
    }

    def h_at(n):
        M = h.get(n)
        if M is None:
            return Matrix.zero(ring, Y.rank(n - 1), X.rank(n))
        return M

    null_comps = {}
    for n in set(X.ranks) | set(Y.ranks):
        if not Y.rank(n) or not X.rank(n):
            continue
        null_comps[n] = Y.diff(n - 1) @ h_at(n) + h_at(n + 1) @ X.diff(n)
    return f + ChainMap(X, Y, null_comps)
