import itertools

import pytest

from countqm.amalgam import ALetter, AmalgamPresentation, WordSyntaxError
from countqm.groups import check_embedding, cyclic
from countqm.quasimorphism import ball_elements


def test_reduce_free_product(psl2z):
    p = psl2z.model
    assert p.reduce(p.parse_word("A:1 A:2")) == ()
    w = p.parse_word("A:1 B:1 A:2")
    assert p.reduce(w) == w


def test_reduce_transfers_into_neighbour(sl2z):
    p = sl2z.model
    assert p.format_word(p.reduce(p.parse_word("A:1 A:2 B:1"))) == "B:3"


def test_is_reduced(psl2z, sl2z):
    assert psl2z.model.is_reduced(psl2z.model.parse_word("A:1 B:1 A:1"))
    assert not psl2z.model.is_reduced(psl2z.model.parse_word("A:1 A:1"))
    assert not sl2z.model.is_reduced(sl2z.model.parse_word("A:3 B:1"))
    assert sl2z.model.is_reduced(sl2z.model.parse_word("A:3"))


def test_equals(psl2z, sl2z):
    p = psl2z.model
    assert p.equals(p.parse_word("A:1 B:1"), p.parse_word("A:1 B:1"))
    assert not p.equals(p.parse_word("A:1"), p.parse_word("A:2"))
    q = sl2z.model
    assert q.equals(q.parse_word("A:1 B:1"), q.parse_word("A:4 B:3"))
    assert q.equals(q.parse_word("A:3"), q.parse_word("B:2"))


def test_geodesic_length(psl2z, sl2z):
    assert psl2z.model.geodesic_length(psl2z.model.identity) == 0
    assert psl2z.model.geodesic_length(psl2z.model.parse_word("A:1 B:1 A:1")) == 3
    from countqm.families import family_word

    assert sl2z.model.geodesic_length(family_word(sl2z.family, 0)) == 40


def test_parse_errors(psl2z):
    with pytest.raises(WordSyntaxError) as exc:
        psl2z.model.parse_word("A:1 C:2")
    assert exc.value.position == 1
    with pytest.raises(WordSyntaxError):
        psl2z.model.parse_word("A:3")
    assert psl2z.model.parse_word("") == ()


def test_inverse_and_mul(sl2z):
    p = sl2z.model
    for g in ball_elements(p, 2):
        assert p.mul(g, p.inv(g)) == p.identity


def test_associativity(sl2z):
    p = sl2z.model
    elems = ball_elements(p, 2)[:25]
    for x, y, z in itertools.product(elems[:8], repeat=3):
        assert p.mul(p.mul(x, y), z) == p.mul(x, p.mul(y, z))


def test_reduced_iff_geodesic_exhaustive(psl2z):
    p = psl2z.model
    for k in range(6):
        for w in itertools.product(p.letters(), repeat=k):
            assert p.is_reduced(w) == (len(w) == p.geodesic_length(p.element(w)))


def test_reduced_iff_geodesic_sl2z(sl2z):
    p = sl2z.model
    for k in range(4):
        for w in itertools.product(p.letters(), repeat=k):
            assert p.is_reduced(w) == (len(w) == p.geodesic_length(p.element(w)))


def test_orbit_sizes(psl2z, sl2z):
    p = sl2z.model
    g = p.element(p.parse_word("A:1 B:1 A:1"))
    words = p.enumerate_geodesics(g)
    assert len(words) <= 4
    assert all(p.is_reduced(w) and p.element(w) == g for w in words)
    assert p.gauge_orbit(p.element(p.parse_word("A:1"))).size == 1
    q = psl2z.model
    for g in ball_elements(q, 3):
        assert q.gauge_orbit(g).size == 1


def test_orbit_is_complete(sl2z):
    """Every reduced word of length <= 3 lies in the orbit of its element."""
    p = sl2z.model
    for k in range(1, 4):
        for w in itertools.product(p.letters(), repeat=k):
            if p.is_reduced(w):
                assert w in p.enumerate_geodesics(p.element(w))


def test_abelianization(psl2z, sl2z):
    assert psl2z.model.abelianization().invariants.nontrivial == (6,)
    assert sl2z.model.abelianization().invariants.nontrivial == (12,)
    ab = psl2z.model.abelianization()
    assert not ab.in_commutator(psl2z.model.parse_word("A:1"))
    assert ab.in_commutator(psl2z.model.parse_word("A:1 B:1 A:2 B:1"))


def test_custom_presentation():
    A, B, C = cyclic(4), cyclic(6), cyclic(2)
    p = AmalgamPresentation(A, B, C, check_embedding(C, A, {1: 2}), check_embedding(C, B, {1: 3}))
    assert p.equals([ALetter("A", 2)], [ALetter("B", 3)])
    assert p.abelianization().invariants.nontrivial == (12,)  # minors of [[4,0],[0,6],[2,-3]]
