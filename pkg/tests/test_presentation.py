import random

import pytest
from hypothesis import given, settings, strategies as st

from mfboundary.presentation import (GroupPresentation, PresentationError, commutator,
                                     cyclic_reduce, evaluate, free_reduce, inverse)
from mfboundary.snf import AbelianGroupDesc

letters = st.sampled_from([1, -1, 2, -2, 3, -3])


@given(st.lists(letters, max_size=20))
def test_free_reduce_is_idempotent_and_reduced(word):
    r = free_reduce(word)
    assert free_reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))
    assert free_reduce(tuple(word) + inverse(word)) == ()


@given(st.lists(letters, max_size=20))
def test_cyclic_reduce(word):
    r = cyclic_reduce(word)
    assert not r or r[0] != -r[-1]
    assert evaluate(r, [5, 7, 11]) == evaluate(word, [5, 7, 11])


def test_commutator_and_evaluate():
    assert commutator(1, 2) == (1, 2, -1, -2)
    assert evaluate((1, 1, -2), [3, 4], modulus=5) == 2


def test_basic_abelianizations():
    assert GroupPresentation(("x", "y"), (commutator(1, 2),)).abelianization() == AbelianGroupDesc(2)
    assert GroupPresentation(("g",), ((1,) * 5,)).abelianization() == AbelianGroupDesc(0, (5,))
    assert GroupPresentation(("a", "b"), ()).abelianization() == AbelianGroupDesc(2)


def test_validation():
    with pytest.raises(PresentationError):
        GroupPresentation(("x", "x"), ())
    with pytest.raises(PresentationError):
        GroupPresentation(("x",), ((2,),))
    with pytest.raises(PresentationError):
        GroupPresentation(("a b",), ())


def random_presentation(rng):
    g = rng.randint(1, 5)
    rels = tuple(tuple(rng.choice([1, -1]) * rng.randint(1, g) for _ in range(rng.randint(0, 6)))
                 for _ in range(rng.randint(0, 5)))
    return GroupPresentation(tuple(f"x[{i}]" for i in range(g)), rels)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_text_roundtrip(seed):
    pres = random_presentation(random.Random(seed))
    assert GroupPresentation.from_text(pres.to_text()) == pres


def test_text_format_accepts_exponents_and_comments():
    text = "# lens space\ngen g\nrel g^1 g^1 g^1  # cube\n"
    pres = GroupPresentation.from_text(text)
    assert pres.relators == ((1, 1, 1),)
    with pytest.raises(PresentationError):
        GroupPresentation.from_text("gen a\nrel b^1\n")
    with pytest.raises(PresentationError):
        GroupPresentation.from_text("generator a\n")


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_simplify_preserves_abelianization_and_characters(seed):
    rng = random.Random(seed)
    pres = random_presentation(rng)
    protected = [pres.generators[0]]
    simple, defs = pres.simplify(protected=protected)
    assert simple.abelianization() == pres.abelianization()
    assert protected[0] in simple.generators
    for lab in simple.generators:
        assert lab in pres.generators
    # eliminated generators are expressed through the original ones
    assert set(defs) == set(pres.generators) - set(simple.generators)
