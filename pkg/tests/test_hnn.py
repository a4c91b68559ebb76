import itertools

import pytest

from countqm.families import family_word
from countqm.hnn import MalformedSyllables, T_NEG, T_POS, check_condition_I_II, syllables, t_pattern
from countqm.quasimorphism import ball_elements, random_reduced_word


def P(klein, text):
    return klein.model.parse_word(text)


def test_britton_examples(klein):
    p = klein.model
    assert p.format_word(p.britton_reduce(P(klein, "t a:1 T"))) == "a:2"
    assert p.format_word(p.britton_reduce(P(klein, "T a:2 t"))) == "a:1"
    w = P(klein, "t a:3 T")
    assert p.britton_reduce(w) == w


def test_equals(klein):
    p = klein.model
    assert p.equals(P(klein, "t a:1 T"), P(klein, "a:2"))
    assert not p.equals(P(klein, "t"), P(klein, "T"))
    assert p.equals(P(klein, "a:2 t a:1"), P(klein, "t"))


def test_t_pattern(klein):
    assert t_pattern(family_word(klein.family, 0)) == "+-+-++--+++---"
    assert t_pattern(P(klein, "a:1 a:2")) == ""
    assert t_pattern((T_POS, T_POS, T_NEG)) == "++-"


def test_orbit_examples(klein):
    p = klein.model
    assert p.gauge_orbit(p.element(P(klein, "a:3"))).size == 1
    g = p.element(P(klein, "a:2 t a:1"))
    assert P(klein, "t") in p.enumerate_geodesics(g)
    assert p.geodesic_length(g) == 1
    assert p.geodesic_length(p.identity) == 0
    assert p.geodesic_length(family_word(klein.family, 0)) == 22


def test_orbit_size_bound(klein):
    p = klein.model
    for g in ball_elements(p, 3):
        assert p.gauge_orbit(g).size <= p.C.order ** len(g.signs)


def test_orbit_members_represent_g(klein):
    p = klein.model
    for g in ball_elements(p, 3):
        for w in p.gauge_orbit(g).members():
            assert p.element(w) == g


def test_geodesic_matches_bfs(klein):
    p = klein.model
    dist = {p.identity: 0}
    frontier = [p.identity]
    gens = [p.element((x,)) for x in p.letters()]
    for r in range(1, 5):
        nxt = []
        for g in frontier:
            for s in gens:
                h = p.mul(g, s)
                if h not in dist:
                    dist[h] = r
                    nxt.append(h)
        frontier = nxt
    for g, d in dist.items():
        assert p.geodesic_length(g) == d


def test_britton_soundness(klein):
    import random

    p = klein.model
    rng = random.Random(7)
    done = 0
    while done < 200:
        w = random_reduced_word(p, rng.randint(1, 30), rng)
        if any(k == "t" for k, _ in w):
            done += 1
            assert not p.equals(w, ())


def test_equal_reduced_words_share_t_pattern(klein):
    p = klein.model
    groups = {}
    for k in range(5):
        for w in itertools.product(p.letters(), repeat=k):
            if p.is_reduced(w):
                groups.setdefault(p.element(w), set()).add(t_pattern(w))
    assert all(len(s) == 1 for s in groups.values())


def test_conditions(klein):
    p = klein.model
    w0 = family_word(klein.family, 0)
    assert check_condition_I_II(p, w0) == "I"
    for n in (1, 2, 3):
        assert check_condition_I_II(p, w0 * n) == "I"
    assert check_condition_I_II(p, P(klein, "T a:1 t a:2")) == "II"
    assert check_condition_I_II(p, P(klein, "t a:1 T a:1")) == "neither"


def test_condition_needs_syllable_form(klein):
    p = klein.model
    with pytest.raises(MalformedSyllables):
        check_condition_I_II(p, p.inverse_word(family_word(klein.family, 0)))
    with pytest.raises(MalformedSyllables):
        syllables(P(klein, "t T a:1"))
    assert syllables(P(klein, "t t a:2 T a:1")) == [(2, 2), (-1, 1)]


def test_abelianization(klein):
    ab = klein.model.abelianization()
    assert ab.invariants.nontrivial == (2, 0)
    assert not ab.in_commutator(P(klein, "t"))
    assert ab.in_commutator(family_word(klein.family, 0))
    assert ab.in_commutator(P(klein, "a:1 a:2"))
