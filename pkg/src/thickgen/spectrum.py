"""Spectrum-level structure: idempotents, connectedness, prime
enumeration for finite spectra, and the nilpotence dichotomy for
stabilizing ideal power chains.

Idempotents over Z/m come from the prime-power CRT decomposition; over
k[x]/(f) from the coprime squarefree split of f, with e -> 3e^2 - 2e^3
Newton lifting to handle multiplicities (quadratically convergent in
every characteristic).  A ring is reported connected exactly when 0
and 1 are the only idempotents; over Q-coefficient quotients whose
modulus resists complete factorization the answer can be "unknown",
reported as None rather than a guess.
"""

from dataclasses import dataclass

from . import polys
from .errors import ConnectednessUnknownError, FactorizationIncompleteError
from .factor import factor_integer, factor_unipoly
from .ideals import Ideal
from .rings import (
    IntModRing,
    MultiPolyRing,
    QuotientRing,
    RingElem,
    UniQuotRing,
)


def idempotents(ring):
    """All idempotent payloads, sorted deterministically.

    Raises FactorizationIncompleteError when the modulus cannot be
    fully split (so the complete list cannot be certified).
    """
    if ring.is_domain or ring.is_field:
        return [ring.zero(), ring.one()]
    if isinstance(ring, IntModRing):
        return _idempotents_intmod(ring)
    if isinstance(ring, UniQuotRing):
        return _idempotents_uniquot(ring)
    raise FactorizationIncompleteError(
        f"no idempotent enumeration for {ring.describe()}"
    )


def _idempotents_intmod(ring):
    m = ring.m
    blocks = [p**e for p, e in factor_integer(m)]
    basis = []
    for q in blocks:
        rest = m // q
        basis.append(rest * pow(rest, -1, q) % m)
    out = set()
    for mask in range(1 << len(basis)):
        e = 0
        for i, b in enumerate(basis):
            if mask >> i & 1:
                e = (e + b) % m
        out.add(e)
    return sorted(out)


def _coprime_split(ring):
    """Pairwise coprime monic blocks q_i^(e_i) with product the modulus,
    plus a completeness flag (False when a block of degree >= 4 over Q
    may itself split further)."""
    pairs, complete = factor_unipoly(ring.F, ring.modulus)
    blocks = [polys.uni_pow(ring.F, h, e) for h, e in pairs]
    return pairs, blocks, complete

def _idempotents_uniquot(ring):
    F = ring.F
    cover = ring.cover_ring
    pairs, blocks, complete = _coprime_split(ring)
    if not complete:
        raise FactorizationIncompleteError(
            f"modulus of {ring.describe()} did not factor completely"
        )
    mu = ring.modulus
    basis = []
    for q in blocks:
        rest = cover.exact_div(mu, q)
        # inverse of rest modulo q exists because the blocks are coprime
        g, s, _ = polys.uni_ext_gcd(F, rest, q)
        assert polys.uni_deg(g) == 0
        e = ring.project(polys.uni_mul(F, rest, s))
        e = _lift_idempotent(ring, e)
        basis.append(e)
    out = set()
    for mask in range(1 << len(basis)):
        e = ring.zero()
        for i, b in enumerate(basis):
            if mask >> i & 1:
                e = ring.add(e, b)
        out.add(e)
    return sorted(out, key=lambda p: (polys.uni_deg(p), p))


def _lift_idempotent(ring, e):
    """Newton-lift e to an exact idempotent mod the modulus via
    e <- 3e^2 - 2e^3; the defect squares each round."""
    for _ in range(64):
        sq = ring.mul(e, e)
        if sq == e:
            return e
        e = ring.sub(
            ring.mul(ring.from_int(3), sq),
            ring.mul(ring.from_int(2), ring.mul(sq, e)),
        )
    raise FactorizationIncompleteError("idempotent lifting did not converge")


def is_connected_spec(ring):
    """(connected, witness): connected is True/False/None (None =
    undecided), witness is a nontrivial idempotent payload when
    disconnected."""
    if ring.is_domain or ring.is_field:
        return True, None
    if isinstance(ring, IntModRing):
        idems = _idempotents_intmod(ring)
        if len(idems) == 2:
            return True, None
        witness = [e for e in idems if e not in (0, 1)][0]
        return False, witness
    if isinstance(ring, UniQuotRing):
        pairs, blocks, complete = _coprime_split(ring)
        if len(blocks) >= 2:
            # a two-block coprime split gives an exact idempotent even
            # when the blocks hide further factors
            F = ring.F
            cover = ring.cover_ring
            q = blocks[0]
            rest = cover.exact_div(ring.modulus, q)
            g, s, _ = polys.uni_ext_gcd(F, rest, q)
            e = _lift_idempotent(ring, ring.project(polys.uni_mul(F, rest, s)))
            return False, e
        if complete:
            return True, None
        return None, None
    raise ConnectednessUnknownError(
        f"no connectedness test for {ring.describe()}"
    )


@dataclass
class SpecReport:
    ring: object
    connected: object  # True / False / None
    witness: object
    points: object  # list of prime ideals for finite spectra, else None
    note: str

    def lines(self):
        out = []
        out.append(f"ring: {self.ring.describe()}")
        if self.connected is None:
            out.append("connected: unknown")
        else:
            out.append("connected: " + ("yes" if self.connected else "no"))
        if self.witness is not None:
            out.append(f"idempotent: {self.ring.render(self.witness)}")
        if self.points is not None:
            out.append(
                "points: "
                + (" ; ".join(p.render() for p in self.points) if self.points else "none")
            )
        if self.note:
            out.append(f"note: {self.note}")
        return out


def spec_description(ring):
    """Human-facing description of Spec: connectedness plus the point
    list when the spectrum is finite."""
    connected, witness = is_connected_spec(ring)
    points = None
    note = ""
    if isinstance(ring, IntModRing):
        points = [
            Ideal(ring, [RingElem(ring, p % ring.m)]) for p, _ in factor_integer(ring.m)
        ]
    elif isinstance(ring, UniQuotRing):
        pairs, complete = factor_unipoly(ring.F, ring.modulus)
        if complete:
            points = [Ideal(ring, [RingElem(ring, ring.project(h))]) for h, _ in pairs]
        else:
            note = "modulus did not factor completely; point list omitted"
    elif ring.is_field:
        points = [Ideal(ring, [0])]
        note = "a field: Spec is a single point"
    elif isinstance(ring, MultiPolyRing):
        note = "polynomial ring over a field: a connected domain"
    else:
        note = "infinite spectrum of a principal ideal domain"
    return SpecReport(ring, connected, witness, points, note)


@dataclass
class NilpotenceReport:
    ring: object
    ideal: object
    max_n: int
    connected: object
    witness: object
    stabilization_index: object
    nilpotency_index: object
    verdict: str

    def lines(self):
        out = [
            f"ring: {self.ring.describe()}",
            f"ideal: {self.ideal.render()}",
            f"max: {self.max_n}",
        ]
        if self.connected is None:
            out.append("connected: unknown")
        else:
            out.append("connected: " + ("yes" if self.connected else "no"))
        if self.witness is not None:
            out.append(f"idempotent: {self.ring.render(self.witness)}")
        out.append(
            "stabilizes: "
            + (f"at {self.stabilization_index}" if self.stabilization_index else "no")
        )
        out.append(
            "nilpotent: "
            + (f"index {self.nilpotency_index}" if self.nilpotency_index else "no")
        )
        out.append(f"verdict: {self.verdict}")
        return out


def nilpotence_lemma_check(ideal, max_n):
    """Check the dichotomy: over a connected spectrum, a power chain
    that stabilizes within max_n must land on the zero ideal."""
    ring = ideal.ring
    connected, witness = is_connected_spec(ring)
    stab = ideal.powers_stabilize(max_n)
    nil = ideal.is_nilpotent(max_n + 1)
    if not ideal.is_proper():
        verdict = "inapplicable-unit-ideal"
    elif stab is None:
        verdict = "no-stabilization-within-bound"
    elif connected is True:
        if nil is not None:
            verdict = "nilpotent-as-required"
        else:
            # the stable power of a proper ideal over a connected
            # spectrum must vanish; reaching this line is a bug
            raise AssertionError(
                "stabilizing proper ideal over a connected spectrum "
                "failed to be nilpotent"
            )
    elif connected is False:
        verdict = (
            "nilpotent" if nil is not None else "hypothesis-fails-disconnected"
        )
    else:
        verdict = "connectedness-unknown"
    return NilpotenceReport(
        ring=ring,
        ideal=ideal,
        max_n=max_n,
        connected=connected,
        witness=witness,
        stabilization_index=stab,
        nilpotency_index=nil,
        verdict=verdict,
    )
