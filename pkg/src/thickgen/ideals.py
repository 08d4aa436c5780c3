"""Finitely generated ideals with cached canonical normal data.

Normal data is computed at construction:
  - Euclidean rings: the canonical gcd generator,
  - quotients of Euclidean rings: the canonical generator of the
    lifted ideal (gcd of lifts and the modulus),
  - multivariate rings: the reduced Groebner basis.

Ideal equality is normal-data equality, which is sound because each of
those normal forms is a complete invariant.
"""

from . import polys
from .budget import StepCounter
from .errors import RadicalBoundExceededError, StepBudgetExceededError, TierError
from .groebner import buchberger, normal_form
from .rings import EuclideanRing, MultiPolyRing, QuotientRing, RingElem

RADICAL_POWER_BOUND = 64


class Ideal:
    __slots__ = ("ring", "gens", "_normal", "_cover_gen")

    def __init__(self, ring, gens):
        self.ring = ring
        elems = tuple(ring.elem(g) for g in gens)
        pruned = tuple(g for g in elems if not ring.is_zero(g.payload))
        if not pruned:
            pruned = (RingElem(ring, ring.zero()),)
        self.gens = pruned
        self._cover_gen = None
        if isinstance(ring, EuclideanRing):
            self._normal = (ring.gcd_list([g.payload for g in pruned]),)
        elif isinstance(ring, QuotientRing):
            cover = ring.cover_ring
            lifts = [ring.lift(g.payload) for g in pruned] + [ring.modulus]
            g = cover.gcd_list(lifts)
            self._cover_gen = g
            self._normal = (ring.project(g),)
        elif isinstance(ring, MultiPolyRing):
            self._normal = buchberger(ring, [g.payload for g in pruned])
        else:
            raise TierError(f"no ideal calculus for {ring.describe()}")

    # normal data --------------------------------------------------------

    @property
    def normal_payloads(self):
        return self._normal

    @property
    def normal_gens(self):
        if not self._normal:
            return (RingElem(self.ring, self.ring.zero()),)
        return tuple(RingElem(self.ring, p) for p in self._normal)

    @property
    def cover_gen(self):
        """Canonical generator of the lifted ideal, for quotient rings;
        for Euclidean rings the canonical generator itself."""
        if self._cover_gen is not None:
            return self._cover_gen
        if isinstance(self.ring, EuclideanRing):
            return self._normal[0]
        raise TierError("cover generator only exists over principal-ideal tiers")

    def render(self):
        return "(" + ", ".join(self.ring.render(g.payload) for g in self.normal_gens) + ")"

    def __repr__(self):
        return f"Ideal{self.render()} over {self.ring.describe()}"

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and other.ring == self.ring
            and other._normal == self._normal
        )

    def __hash__(self):
        return hash((self.ring, self._normal))

    # predicates ---------------------------------------------------------

    def is_zero_ideal(self):
        if isinstance(self.ring, MultiPolyRing):
            return not self._normal
        return self.ring.is_zero(self._normal[0])

    def is_unit_ideal(self):
        if isinstance(self.ring, MultiPolyRing):
            return len(self._normal) == 1 and self.ring.is_unit(self._normal[0])
        if isinstance(self.ring, QuotientRing):
            return self.ring.cover_ring.is_unit(self._cover_gen)
        return self.ring.is_unit(self._normal[0])

    def is_proper(self):
        return not self.is_unit_ideal()

    def member(self, f):
        f = self.ring.elem(f)
        ring = self.ring
        if isinstance(ring, MultiPolyRing):
            if not self._normal:
                return ring.is_zero(f.payload)
            return not normal_form(ring, f.payload, self._normal)
        if isinstance(ring, QuotientRing):
            cover = ring.cover_ring
            lifted = ring.lift(f.payload)
            return cover.is_zero(cover.euclid_divmod(lifted, self._cover_gen)[1])
        g = self._normal[0]
        if ring.is_zero(g):
            return ring.is_zero(f.payload)
        return ring.is_zero(ring.euclid_divmod(f.payload, g)[1])

    def contains(self, other):
        if other.ring != self.ring:
            raise TierError("ideal containment needs a common ring")
        return all(self.member(g) for g in other.normal_gens)

    # arithmetic ---------------------------------------------------------

    def product(self, other):
        if other.ring != self.ring:
            raise TierError("ideal product needs a common ring")
        ring = self.ring
        mine = self._normal or (ring.zero(),)
        theirs = other._normal or (ring.zero(),)
        prods = [ring.mul(a, b) for a in mine for b in theirs]
        return Ideal(ring, [RingElem(ring, p) for p in prods])

    __mul__ = product

    def power(self, n):
        if n < 0:
            raise ValueError("ideal powers need n >= 0")
        if n == 0:
            return Ideal(self.ring, [RingElem(self.ring, self.ring.one())])
        acc = self
        for _ in range(n - 1):
            acc = acc.product(self)
        return acc

    __pow__ = power

    def powers_stabilize(self, max_n):
        """Least n <= max_n with I^n == I^(n+1), else None."""
        if max_n < 1:
            raise ValueError("powers_stabilize needs max_n >= 1")
        current = self
        for n in range(1, max_n + 1):
            nxt = current.product(self)
            if nxt == current:
                return n
            current = nxt
        return None

    def is_nilpotent(self, max_n):
        """Least k <= max_n with I^k == (0), else None."""
        if max_n < 1:
            raise ValueError("is_nilpotent needs max_n >= 1")
        current = self
        for k in range(1, max_n + 1):
            if current.is_zero_ideal():
                return k
            current = current.product(self)
        return None

    # radical membership -------------------------------------------------

    def radical_member(self, f):
        """Exact test for f in sqrt(I); total on principal-ideal tiers,
        budget-guarded (Rabinowitsch, then bounded powers) on Tier 2."""
        f = self.ring.elem(f)
        ring = self.ring
        if ring.is_zero(f.payload):
            return True
        if isinstance(ring, MultiPolyRing):
            return self._radical_member_multi(f.payload)
        if isinstance(ring, QuotientRing):
            cover = ring.cover_ring
            return _euclid_radical_member(cover, self._cover_gen, ring.lift(f.payload))
        return _euclid_radical_member(ring, self._normal[0], f.payload)

    def _radical_member_multi(self, f):
        ring = self.ring
        try:
            ext = _rabinowitsch_ring(ring)
            embedded = [_embed_last(g) for g in self._normal]
            t = polys.m_var(ext.F, ext.nvars, ext.nvars - 1)
            one = polys.m_const(ext.F, ext.nvars, ext.F.one())
            trick = polys.m_sub(ext.F, one, polys.m_mul(ext.F, t, _embed_last(f), ext.key), ext.key)
            gb = buchberger(ext, embedded + [trick])
            return len(gb) == 1 and ext.is_unit(gb[0])
        except StepBudgetExceededError:
            pass
        # fallback: bounded direct powers
        power = f
        for _ in range(RADICAL_POWER_BOUND):
            if self.member(RingElem(ring, power)):
                return True
            power = ring.mul(power, f)
        raise RadicalBoundExceededError(
            f"radical membership undecided within power bound {RADICAL_POWER_BOUND}"
        )

    def groebner_basis(self):
        if not isinstance(self.ring, MultiPolyRing):
            raise TierError("groebner_basis needs a multivariate polynomial ring")
        return self.normal_gens


def _euclid_radical_member(ring, g, f):
    """f in sqrt((g)) over a Euclidean domain, by iterated gcd division."""
    if ring.is_zero(g):
        return ring.is_zero(f)
    c = g
    counter = StepCounter("radical_member")
    while True:
        counter.tick()
        d = ring.gcd(c, f)
        if ring.is_unit(d):
            return ring.is_unit(c)
        c = ring.exact_div(c, d)


def _rabinowitsch_ring(ring):
    base = set(ring.vars)
    for cand in ("t", "u", "w", "t0", "t1", "t2"):
        if cand not in base:
            return MultiPolyRing(ring.F, ring.vars + (cand,), ring.order)
    raise TierError("could not pick a fresh Rabinowitsch variable")


def _embed_last(payload):
    """Reinterpret a payload in the ring extended by one trailing variable."""
    return tuple((exp + (0,), c) for exp, c in payload)
