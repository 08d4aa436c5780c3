"""Level bounds, build witnesses, thick membership, obstruction ladders."""

import random

import pytest

from thickgen.complexes import ChainMap, cone, direct_sum, koszul, random_chain_map, two_term
from thickgen.errors import (
    DisconnectedSpectrumError,
    EngineError,
    LevelBoundExceededError,
    PowersStabilizedError,
    WitnessValidationError,
)
from thickgen.generation import (
    BuildWitness,
    Cone,
    Leaf,
    LowerBoundCert,
    NotInThickCert,
    Sum,
    UpperBoundCert,
    koszul_power_obstruction,
    level,
    level_lower_bound,
    principal_power_witness,
    realize,
    strong_generation_obstruction,
    thick_member,
    validate_witness,
)
from thickgen.homology import ann_total_homology
from thickgen.ideals import Ideal
from thickgen.matrices import Matrix
from thickgen.rings import QQ, ZZ, Zmod, poly_ring

from oracles import LEVEL_FAMILY_Z, OBSTRUCT_QXY_WITNESSES, THICK_TABLE_Z


# ------------------------------------------------------------- level bounds


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_level_family_over_z(n):
    expected = LEVEL_FAMILY_Z[n]
    X = koszul(Ideal(ZZ, [2**n]))
    G = koszul(Ideal(ZZ, [2]))
    cert = level_lower_bound(X, G)
    assert isinstance(cert, LowerBoundCert)
    assert cert.level == expected["level"]
    if n > 1:
        assert int(cert.witness.payload) == expected["witness"]


def test_level_of_self_is_one():
    X = koszul(Ideal(ZZ, [6]))
    cert = level_lower_bound(X, X)
    assert cert.level == 1
    assert "first power" in cert.note


def test_level_lines_carry_both_counters():
    cert = level_lower_bound(koszul(Ideal(ZZ, [4])), koszul(Ideal(ZZ, [2])))
    lines = cert.lines()
    assert "level: 2" in lines and "cones: 1" in lines


def test_level_support_mismatch_is_not_member():
    cert = level_lower_bound(koszul(Ideal(ZZ, [5])), koszul(Ideal(ZZ, [2])))
    assert isinstance(cert, NotInThickCert)
    assert "membership: no" in cert.lines()


def test_level_cap_exceeded():
    with pytest.raises(LevelBoundExceededError):
        level_lower_bound(koszul(Ideal(ZZ, [16])), koszul(Ideal(ZZ, [2])), cap=2)


def test_level_rejects_exact_inputs():
    X = koszul(Ideal(ZZ, [2]))
    E = cone(ChainMap.identity(X))
    with pytest.raises(EngineError):
        level_lower_bound(E, X)
    with pytest.raises(EngineError):
        level_lower_bound(X, E)


# ------------------------------------------------- annihilator cone lemma


def _rotations(f):
    C = cone(f)
    return [(f.src, f.dst, C), (f.dst, C, f.src.shift(1)), (C, f.src.shift(1), f.dst.shift(1))]


@pytest.mark.parametrize("ring,seed", [(ZZ, 11), (ZZ, 12), (Zmod(12), 13)])
def test_cone_annihilator_lemma_on_random_maps(ring, seed):
    rng = random.Random(seed)
    for _ in range(8):
        f = random_chain_map(ring, rng)
        for A, B, C in _rotations(f):
            aA = ann_total_homology(A)
            aC = ann_total_homology(C)
            aB = ann_total_homology(B)
            assert aB.contains(aA.product(aC))


# --------------------------------------------------------- thick membership


@pytest.mark.parametrize("x,g,expected", THICK_TABLE_Z)
def test_thick_membership_table(x, g, expected):
    verdict = thick_member(koszul(Ideal(ZZ, [x])), koszul(Ideal(ZZ, [g])))
    assert verdict.member is expected


def test_thick_membership_reflexive_and_sum_monotone():
    X = koszul(Ideal(ZZ, [6]))
    Y = koszul(Ideal(ZZ, [10]))
    S = direct_sum([X, Y])
    assert thick_member(X, X).member
    assert thick_member(X, S).member
    assert thick_member(Y, S).member
    assert not thick_member(S, X).member  # (5) escapes V(6)


# ----------------------------------------------------------- build witnesses


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_principal_witness_validates_at_level_n(n):
    x = ZZ.elem(2)
    witness, target = principal_power_witness(x, n)
    G = koszul(Ideal(ZZ, [2]))
    assert validate_witness(witness, target, G) == n
    assert level(witness.root) == n


def test_principal_witness_over_polynomials():
    R = poly_ring(QQ, ["x"])
    witness, target = principal_power_witness(R.var_elem(), 3)
    G = koszul(Ideal(R, [R.var_elem()]))
    assert validate_witness(witness, target, G) == 3


def test_upper_bound_meets_lower_bound_on_principal_family():
    for n in (2, 3):
        witness, target = principal_power_witness(ZZ.elem(2), n)
        G = koszul(Ideal(ZZ, [2]))
        upper = UpperBoundCert(level=validate_witness(witness, target, G), witness=witness)
        lower = level_lower_bound(target, G)
        assert lower.level <= upper.level == n
        assert f"cones: {n - 1}" in upper.lines()


def test_sum_of_shifted_leaves_is_level_one():
    G = koszul(Ideal(ZZ, [3]))
    node = Sum((Leaf(0), Leaf(2), Leaf(-1)))
    X = realize(node, G)
    assert validate_witness(BuildWitness(root=node), X, G) == 1


def test_tampered_glue_is_rejected_with_path():
    witness, target = principal_power_witness(ZZ.elem(2), 3)
    root = witness.root
    bad_glue = ChainMap(
        root.glue.src,
        root.glue.dst,
        {0: root.glue.comp(0).scale(ZZ.elem(3))},
    )
    tampered = type(witness)(root=Cone(base=root.base, top=root.top, glue=bad_glue))
    with pytest.raises(WitnessValidationError) as err:
        validate_witness(tampered, target, koszul(Ideal(ZZ, [2])))
    assert "root" in str(err.value)


def test_wrong_target_is_rejected():
    witness, target = principal_power_witness(ZZ.elem(2), 2)
    with pytest.raises(WitnessValidationError):
        validate_witness(witness, koszul(Ideal(ZZ, [8])), koszul(Ideal(ZZ, [2])))


# ------------------------------------------------------- obstruction ladder


@pytest.mark.parametrize("n", [2, 3, 4])
def test_obstruction_witness_over_qxy(n):
    R = poly_ring(QQ, ["x", "y"])
    I = Ideal(R, [R.var_elem(0), R.var_elem(1)])
    cert = koszul_power_obstruction(I, n)
    assert cert.level == n
    assert str(cert.witness) == OBSTRUCT_QXY_WITNESSES[n]
    assert "regular sequence" in cert.note


def test_obstruction_over_z_is_homology_checked():
    cert = koszul_power_obstruction(Ideal(ZZ, [2]), 5)
    assert cert.level == 5
    assert int(cert.witness.payload) == 16
    assert "verified by homology" in cert.note


def test_obstruction_stabilized_powers_raise():
    with pytest.raises(PowersStabilizedError) as err:
        koszul_power_obstruction(Ideal(Zmod(8), [2]), 4)
    assert err.value.index == 3


def test_obstruction_ladder_report():
    R = poly_ring(QQ, ["x", "y"])
    I = Ideal(R, [R.var_elem(0), R.var_elem(1)])
    rep = strong_generation_obstruction(I, 4)
    assert rep.verdict == "not-strongly-generated"
    assert [c.level for c in rep.certificates] == [2, 3, 4]
    joined = "\n".join(rep.lines())
    assert "n: 4" in joined and "verdict: not-strongly-generated" in joined


def test_obstruction_degenerate_nilpotent():
    rep = strong_generation_obstruction(Ideal(Zmod(8), [2]), 5)
    assert rep.verdict == "degenerate-nilpotent"
    assert rep.stabilization_index == 3
    assert rep.nilpotency_index == 3
    assert "Spec R" in rep.note


def test_obstruction_disconnected_spectrum_refuses():
    with pytest.raises(DisconnectedSpectrumError) as err:
        strong_generation_obstruction(Ideal(Zmod(6), [2]), 4)
    assert "3" in str(err.value) or "4" in str(err.value)


def test_obstruction_parallel_matches_serial():
    R = poly_ring(QQ, ["x", "y"])
    I = Ideal(R, [R.var_elem(0), R.var_elem(1)])
    serial = strong_generation_obstruction(I, 4, jobs=1)
    parallel = strong_generation_obstruction(I, 4, jobs=2)
    assert serial.lines() == parallel.lines()
