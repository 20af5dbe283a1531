import random

import pytest
from hypothesis import given, settings, strategies as st

from mfboundary.arrangement import catalog, maclane
from mfboundary.covers import (BadDivisor, ModulusNotPowerOfTwo, NotSurjectiveModD,
                               TowerStats, h1_cover, power_of_two_exponent,
                               reidemeister_schreier, tower_stats)
from mfboundary.plumbing import CharacterMap, boundary_manifold
from mfboundary.presentation import GroupPresentation, commutator
from mfboundary.snf import AbelianGroupDesc

from oracles import fox_cover_h1

FREE2 = GroupPresentation(("x", "y"), ())
TORUS = GroupPresentation(("x", "y"), (commutator(1, 2),))
Z3 = GroupPresentation(("x", "y", "z"), (commutator(1, 2), commutator(1, 3), commutator(2, 3)))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_free_group_covers(d):
    chi = CharacterMap(12, (1, 0))
    sub = reidemeister_schreier(FREE2, chi, d)
    # a degree-d cover of a wedge of two circles has free fundamental group of rank d + 1
    assert sub.ngens == d + 1 and sub.relators == ()
    assert h1_cover(FREE2, chi, d) == AbelianGroupDesc(d + 1)


@pytest.mark.parametrize("d", [1, 2, 4, 12])
def test_free_abelian_covers(d):
    assert h1_cover(TORUS, CharacterMap(12, (1, 0)), d) == AbelianGroupDesc(2)
    assert h1_cover(TORUS, CharacterMap(12, (5, 3)), d) == AbelianGroupDesc(2)
    assert h1_cover(Z3, CharacterMap(12, (1, 1, 0)), d) == AbelianGroupDesc(3)


def test_lens_and_cyclic_covers():
    lens = GroupPresentation(("x",), ((1,) * 12,))
    chi = CharacterMap(12, (1,))
    assert h1_cover(lens, chi, 1) == AbelianGroupDesc(0, (12,))
    assert h1_cover(lens, chi, 4) == AbelianGroupDesc(0, (3,))
    assert h1_cover(lens, chi, 12) == AbelianGroupDesc(0)


def random_group_with_character(rng):
    d = rng.choice([2, 3, 4, 6])
    g = rng.randint(1, 4)
    values = [rng.randrange(d) for _ in range(g)]
    values[0] = 1
    rels = []
    for _ in range(rng.randint(0, 4)):
        word = [rng.choice([1, -1]) * rng.randint(1, g) for _ in range(rng.randint(1, 6))]
        # close the word up so it lies in the kernel
        s = sum((1 if x > 0 else -1) * values[abs(x) - 1] for x in word) % d
        word += [-1] * s
        rels.append(tuple(word))
    return GroupPresentation(tuple(f"x[{i}]" for i in range(g)), tuple(rels)), \
        CharacterMap(d, tuple(values)), d


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_reidemeister_schreier_matches_fox_oracle(seed):
    pres, chi, d = random_group_with_character(random.Random(seed))
    assert h1_cover(pres, chi, d) == fox_cover_h1(pres, chi.values, d)
    sub = reidemeister_schreier(pres, chi, d)
    assert sub.abelianization() == h1_cover(pres, chi, d)
    assert sub.ngens == d * pres.ngens - (d - 1)
    assert len(sub.relators) == d * len(pres.relators)
    assert sub.euler_characteristic() == d * pres.euler_characteristic()


def test_boundary_covers_match_fox_oracle():
    for config, d in ((catalog("generic", 4), 4), (maclane(), 2), (catalog("near_pencil", 6), 3)):
        bd = boundary_manifold(config)
        assert h1_cover(bd.simplified, bd.simplified_character, d) == \
            fox_cover_h1(bd.simplified, bd.simplified_character.values, d)


def test_generic4_milnor_boundary():
    bd = boundary_manifold(catalog("generic", 4))
    assert h1_cover(bd.simplified, bd.simplified_character, 4) == AbelianGroupDesc(6, (4,))
    # the full presentation gives the same answer
    assert h1_cover(bd.presentation, bd.character, 4) == AbelianGroupDesc(6, (4,))


def test_errors():
    chi = CharacterMap(8, (1, 0))
    with pytest.raises(BadDivisor):
        h1_cover(FREE2, chi, 3)
    with pytest.raises(BadDivisor):
        h1_cover(FREE2, chi, 0)
    with pytest.raises(NotSurjectiveModD):
        h1_cover(FREE2, CharacterMap(8, (2, 4)), 4)
    with pytest.raises(ModulusNotPowerOfTwo):
        tower_stats(FREE2, CharacterMap(6, (1, 0)))
    with pytest.raises(ModulusNotPowerOfTwo):
        tower_stats(FREE2, chi, m=4)
    with pytest.raises(ValueError):
        reidemeister_schreier(GroupPresentation(("x",), ((1,),)), CharacterMap(2, (1,)), 2)


def test_power_of_two_exponent():
    assert [power_of_two_exponent(k) for k in (1, 2, 8, 6, 0)] == [0, 1, 3, None, None]


def test_tower_generic8():
    bd = boundary_manifold(catalog("generic", 8))
    ts = tower_stats(bd.simplified, bd.simplified_character)
    assert ts.m == 3
    assert [str(lv) for lv in ts.levels] == ["Z^28", "Z^28 + Z_2^15", "Z^28 + Z_4^15",
                                             "Z^28 + Z_8^15"]
    assert ts.alpha(0) == 15 and all(ts.rho(k) == 0 for k in range(3))
    assert ts.tau(3) == 15 and ts.mod2_monotone()
    js = ts.to_json()
    assert js["b1"] == [28] * 4 and js["tau"] == [0, 15, 15, 15]


def test_tower_stats_arithmetic():
    ts = TowerStats((AbelianGroupDesc(3), AbelianGroupDesc(4, (2,)), AbelianGroupDesc(4, (2, 4))))
    assert ts.alpha(0) == 5 - 3 and ts.rho(0) == 1 and ts.rho(1) == 0
    assert ts.tau(2) == 2 and ts.mod2_monotone()


def test_infinite_cyclic_double_cover():
    # the kernel of Z -> Z_2 is generated by x^2
    sub = reidemeister_schreier(GroupPresentation(("x",), ()), CharacterMap(2, (1,)), 2)
    assert sub.ngens == 1 and sub.generators == ("s[1;x]",)
    assert sub.abelianization() == AbelianGroupDesc(1)
