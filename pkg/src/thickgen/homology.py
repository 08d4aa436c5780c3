"""Homology of free complexes as finitely presented modules, plus
annihilators and homological support.

Over a Euclidean domain, H^n = ker(d^n)/im(d^(n-1)) comes from writing
the image columns in kernel coordinates and taking Smith normal form.

Over a quotient R = D/(mu) of a Euclidean domain D, everything lifts:
the kernel of d^n over R is the projection of ker[lift(d^n) | mu*I],
a full-rank lattice L; relations are [lift(d^(n-1)) | mu*I] solved in a
basis of L; the invariant factors then all divide mu, with factors
associate to mu contributing free rank over R.
"""

from dataclasses import dataclass

from .errors import TierError
from .ideals import Ideal
from .matrices import Matrix
from .rings import QuotientRing, RingElem
from .snf import kernel_basis, smith_normal_form, solve_exact


@dataclass(frozen=True)
class FPModule:
    """R^free_rank (+) R/(f1) (+) ... with f1 | f2 | ... canonical,
    none zero or unit."""

    ring: object
    free_rank: int
    factors: tuple

    def __post_init__(self):
        ring = self.ring
        for f in self.factors:
            if ring.is_zero(f) or ring.is_unit(f):
                raise ValueError("invariant factors must be nonzero non-units")

    def is_zero(self):
        return self.free_rank == 0 and not self.factors

    def factor_elems(self):
        return tuple(RingElem(self.ring, f) for f in self.factors)

    def render(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("R")
        elif self.free_rank > 1:
            parts.append(f"R^{self.free_rank}")
        for f in self.factors:
            parts.append(f"R/({self.ring.render(f)})")
        return " + ".join(parts)

    def __repr__(self):
        return f"FPModule[{self.render()} over {self.ring.describe()}]"

    def ann(self):
        """Annihilator ideal: (0) with free part, else the last
        invariant factor, else (1)."""
        if self.free_rank > 0:
            return Ideal(self.ring, [0])
        if not self.factors:
            return Ideal(self.ring, [1])
        return Ideal(self.ring, [RingElem(self.ring, self.factors[-1])])


def fp_module_from_invariants(ring, free_rank, raw_factors):
    """Normalize a list of candidate invariant factors (drop units,
    keep canonical associates).  The list must already form a
    divisibility chain."""
    factors = []
    for f in raw_factors:
        if ring.is_zero(f):
            raise ValueError("zero invariant factor")
        if not ring.is_unit(f):
            factors.append(f)
    return FPModule(ring, free_rank, tuple(factors))


def fp_direct_sum(a, b):
    """Invariant-factor form of a (+) b, recomputed from a diagonal
    presentation so the divisibility chain is restored."""
    if a.ring != b.ring:
        raise TierError("direct sum of modules over different rings")
    ring = a.ring
    if isinstance(ring, QuotientRing):
        cover = ring.cover_ring
        diag = [ring.lift(f) for f in a.factors + b.factors]
        diag += [ring.modulus] * (a.free_rank + b.free_rank)
        pres = Matrix.diagonal(cover, diag)
        snf = smith_normal_form(pres)
        return _module_from_cover_invariants(ring, len(diag), snf.invariants)
    diag = [f for f in a.factors + b.factors]
    pres = Matrix.diagonal(ring, diag)
    snf = smith_normal_form(pres)
    free = a.free_rank + b.free_rank + (len(diag) - snf.rank)
    return fp_module_from_invariants(ring, free, snf.invariants)


def _module_from_cover_invariants(ring, expected, invariants):
    """Interpret cover-ring invariant factors as an FPModule over the
    quotient ring: unit factors vanish, factors associate to the
    modulus are free of rank one, the rest are torsion."""
    cover = ring.cover_ring
    mu_canon = cover.canonical_associate(ring.modulus)[0]
    assert len(invariants) == expected, "quotient presentation lost rank"
    free = 0
    factors = []
    for d in invariants:
        c = cover.canonical_associate(d)[0]
        if cover.is_unit(c):
            continue
        if c == mu_canon:
            free += 1
        else:
            factors.append(ring.project(c))
    return FPModule(ring, free, tuple(factors))


def homology(X, n):
    """H^n(X) as an FPModule over X.ring (Tier 1 only)."""
    ring = X.ring
    if ring.tier != 1:
        raise TierError(f"homology needs a Tier-1 ring, got {ring.describe()}")
    rank_n = X.rank(n)
    if rank_n == 0:
        return FPModule(ring, 0, ())
    A = X.diff(n)
    B = X.diff(n - 1)
    if isinstance(ring, QuotientRing):
        return _homology_quotient(ring, A, B, rank_n)
    K = kernel_basis(A)
    k = K.ncols
    if k == 0:
        return FPModule(ring, 0, ())
    if B.ncols == 0:
        return FPModule(ring, k, ())
    C = solve_exact(K, B)
    snf = smith_normal_form(C)
    free = k - snf.rank
    return fp_module_from_invariants(ring, free, snf.invariants)


def _homology_quotient(ring, A, B, rank_n):
    cover = ring.cover_ring
    mu = ring.modulus
    A_c = A.map_entries(ring.lift, cover)
    B_c = B.map_entries(ring.lift, cover)
    m = A.nrows
    if m:
        Aext = Matrix.hstack(cover, [A_c, Matrix.scalar(cover, mu, m)])
    else:
        Aext = A_c
    Kext = kernel_basis(Aext)
    P = Kext.submatrix(range(rank_n), range(Kext.ncols))
    # column basis of the kernel lattice; contains mu*I so rank is full
    psnf = smith_normal_form(P)
    cols = []
    for i, d in enumerate(psnf.diagonal):
        if not cover.is_zero(d):
            cols.append(psnf.Uinv.submatrix(range(rank_n), [i]).scale(d))
    assert len(cols) == rank_n, "kernel lattice is not full rank"
    Kb = Matrix.hstack(cover, cols, nrows=rank_n)
    rel_blocks = [Matrix.scalar(cover, mu, rank_n)]
    if B_c.ncols:
        rel_blocks.insert(0, B_c)
    rels = Matrix.hstack(cover, rel_blocks)
    C = solve_exact(Kb, rels)
    snf = smith_normal_form(C)
    return _module_from_cover_invariants(ring, rank_n, snf.invariants)


def homology_all(X):
    """Dict degree -> FPModule, over the degrees where X has a module."""
    return {n: homology(X, n) for n in X.degrees()}


def ann_module(M):
    return M.ann()


def ann_total_homology(X):
    """Annihilator of the direct sum of all homology modules: the
    intersection of the per-degree annihilators."""
    ring = X.ring
    if ring.tier != 1:
        raise TierError(f"homology needs a Tier-1 ring, got {ring.describe()}")
    if isinstance(ring, QuotientRing):
        cover = ring.cover_ring
        acc = cover.one()
        for n, M in homology_all(X).items():
            g = M.ann().cover_gen
            acc = cover.lcm(acc, g)
        return Ideal(ring, [RingElem(ring, ring.project(acc))])
    acc = ring.one()
    for n, M in homology_all(X).items():
        g = M.ann().normal_payloads[0]
        acc = ring.lcm(acc, g)
    return Ideal(ring, [RingElem(ring, acc)])


# ----------------------------------------------------------------- support


@dataclass(frozen=True)
class SupportSet:
    """Finite union of closed sets V(I_j), each component a normalized
    ideal of the same ring."""

    ring: object
    components: tuple

    def is_empty(self):
        return not self.components

    def render(self):
        if not self.components:
            return "empty"
        return " u ".join("V" + c.render() for c in self.components)

    def __repr__(self):
        return f"SupportSet[{self.render()}]"

    def contains(self, other):
        """Inclusion other <= self of closed subsets."""
        if other.ring != self.ring:
            raise TierError("support containment needs a common ring")
        ring = self.ring
        if other.is_empty():
            return True
        if ring.tier == 2:
            if len(self.components) != 1:
                raise TierError(
                    "multi-component support containment is only decided "
                    "over principal-ideal tiers"
                )
            # V(t) <= V(target) iff every generator of target lies in sqrt(t)
            target = self.components[0]
            return all(
                all(t.radical_member(g) for g in target.normal_gens)
                for t in other.components
            )
        if isinstance(ring, QuotientRing):
            cover = ring.cover_ring
            self_gens = [c.cover_gen for c in self.components]
            other_gens = [c.cover_gen for c in other.components]
        else:
            cover = ring
            self_gens = [c.normal_payloads[0] for c in self.components]
            other_gens = [c.normal_payloads[0] for c in other.components]
        for g in other_gens:
            if cover.is_zero(g):
                # V(0) = Spec of a domain: only covered by another V(0)
                if not any(cover.is_zero(h) for h in self_gens):
                    return False
                continue
            prod = cover.one()
            for h in self_gens:
                prod = cover.mul(prod, h)
            if not Ideal(cover, [RingElem(cover, g)]).radical_member(
                RingElem(cover, prod)
            ):
                return False
        return True

    def same_as(self, other):
        return self.contains(other) and other.contains(self)


def supph(X):
    """Homological support: union of V(ann H^n(X)) over all degrees."""
    ring = X.ring
    components = []
    seen = set()
    for n, M in sorted(homology_all(X).items()):
        a = M.ann()
        if a.is_unit_ideal():
            continue
        if a.normal_payloads in seen:
            continue
        seen.add(a.normal_payloads)
        components.append(a)
    components.sort(key=_component_key)
    return SupportSet(ring, tuple(components))


def _component_key(ideal):
    payload = ideal.normal_payloads[0]
    ring = ideal.ring
    if isinstance(ring, QuotientRing):
        g = ideal.cover_gen
        return (ring.cover_ring.euclid_norm(g), _payload_key(g))
    return (ring.euclid_norm(payload), _payload_key(payload))


def _payload_key(p):
    if isinstance(p, tuple):
        return tuple(_payload_key(x) for x in p)
    return p


def closed_set(ideal):
    """V(I) as a single-component support set."""
    return SupportSet(ideal.ring, (ideal,))


def support_contains(big, small):
    return big.contains(small)


def resolve_primes(support):
    """List of prime ideals covering the support, for display; None when
    the spectrum is infinite over the component or factorization is
    incomplete."""
    from .factor import factor_integer, factor_unipoly

    ring = support.ring
    if support.is_empty():
        return []
    if ring.tier == 2:
        return None
    primes = []
    seen = set()

    def push(payload):
        if payload not in seen:
            seen.add(payload)
            primes.append(payload)

    for comp in support.components:
        if isinstance(ring, QuotientRing):
            g = comp.cover_gen
            cover = ring.cover_ring
            if cover.kind == "Z":
                for p, _ in factor_integer(g):
                    push(ring.project(p))
                continue
            pairs, complete = factor_unipoly(ring.F, g)
            if not complete:
                return None
            for h, _ in pairs:
                push(ring.project(h))
            continue
        g = comp.normal_payloads[0]
        if ring.is_field:
            push(ring.zero())
            continue
        if ring.is_zero(g):
            return None
        if ring.kind == "Z":
            for p, _ in factor_integer(g):
                push(p)
        else:
            pairs, complete = factor_unipoly(ring.F, g)
            if not complete:
                return None
            for h, _ in pairs:
                push(h)
    return [Ideal(ring, [RingElem(ring, p)]) for p in primes]
