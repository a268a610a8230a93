import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fibrelab import fixtures
from fibrelab.errors import NonUnique, NotACoconeError
from fibrelab.finset import (
    FinFunction,
    FinSet,
    SetDiagram,
    colimit_set,
    constant_diagram,
    identity_function,
    is_bijection,
    limit_set,
    mediate,
    restrict,
)
from fibrelab.fincat import FinFunctor

CATS = fixtures.all_categories()


def coeq_diagram():
    """a,b,c ⇉ 0,1 with fst = (a,b ↦ 0, c ↦ 1) and snd = (a ↦ 0, b,c ↦ 1)."""
    p, q = FinSet(("a", "b", "c")), FinSet(("0", "1"))
    return SetDiagram(
        CATS["PAIR"],
        {"p": p, "q": q},
        {
            "idp": identity_function(p),
            "idq": identity_function(q),
            "fst": FinFunction(p, q, {"a": "0", "b": "0", "c": "1"}),
            "snd": FinFunction(p, q, {"a": "0", "b": "1", "c": "1"}),
        },
    ).check()


def test_coequalizer_collapses_chain():
    # 0 ~ a ~ 0, 0 ~ b ~ 1, 1 ~ c ~ 1 chains everything together
    co = colimit_set(coeq_diagram())
    assert len(co.apex) == 1
    co.check()


def test_equalizer_picks_agreeing_elements():
    li = limit_set(coeq_diagram())
    assert sorted(li.apex) == ["(p.a,q.0)", "(p.c,q.1)"]
    li.check()


def test_coequalizer_brute_force_oracle():
    # independent union-find over the relation fst(e) ~ snd(e)
    x = coeq_diagram()
    parent = {("p", e): ("p", e) for e in x.sets["p"]}
    parent.update({("q", e): ("q", e) for e in x.sets["q"]})

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for m in ("fst", "snd"):
        for e in x.sets["p"]:
            parent[find(("p", e))] = find(("q", x.fn(m)(e)))
    classes = {find(k) for k in parent}
    co = colimit_set(x)
    assert len(co.apex) == len(classes)
    # legs respect exactly the computed partition
    for k1 in parent:
        for k2 in parent:
            same = find(k1) == find(k2)
            assert (co.classify[k1] == co.classify[k2]) == same


def test_colimit_of_representable_is_singleton():
    # Lan of Hom(c, -) collapses: the colimit of a representable is a point
    from fibrelab.randgen import representable_diagram

    for name in ("TWO", "SPAN", "PUSH3"):
        shape = CATS[name]
        for c in shape.objects:
            co = colimit_set(representable_diagram(shape, c))
            assert len(co.apex) == 1, (name, c)


def test_limit_of_constant_diagram_over_connected_shape():
    for name in ("TWO", "SPAN", "PUSH3"):
        s = FinSet(("u", "v"))
        li = limit_set(constant_diagram(CATS[name], s))
        assert len(li.apex) == 2, name


def test_mediate_unique_and_rejects_non_cocones():
    x = coeq_diagram()
    co = colimit_set(x)
    h = mediate(co, co)
    assert is_bijection(h)
    # a non-cocone: send everything at p to a fresh point that q disagrees with
    bad_apex = FinSet(("u", "v"))
    legs = {
        "p": FinFunction(x.sets["p"], bad_apex, {e: "u" for e in x.sets["p"]}),
        "q": FinFunction(x.sets["q"], bad_apex, {"0": "u", "1": "v"}),
    }
    from fibrelab.finset import SetCocone

    other = SetCocone(x, bad_apex, legs, {})
    with pytest.raises(NotACoconeError):
        mediate(co, other)


def test_restrict_along_inclusion():
    x = coeq_diagram()
    one, pair = CATS["ONE"], CATS["PAIR"]
    incl = FinFunctor(one, pair, {"*": "q"}, {"1": "idq"}).check()
    r = restrict(x, incl)
    assert r.sets["*"] == x.sets["q"]


def test_is_bijection_detects_collapse():
    a, b = FinSet(("x", "y")), FinSet(("z",))
    assert not is_bijection(FinFunction(a, b, {"x": "z", "y": "z"}))
    assert is_bijection(identity_function(a))


@st.composite
def random_diagrams(draw):
    import random as _random

    from fibrelab.randgen import random_set_diagram

    seed = draw(st.integers(0, 10**6))
    name = draw(st.sampled_from(("TWO", "SPAN", "PAIR", "PUSH3")))
    return random_set_diagram(_random.Random(seed), CATS[name])


@given(random_diagrams())
@settings(max_examples=50, deadline=None)
def test_colimit_is_a_cocone_with_jointly_surjective_legs(x):
    co = colimit_set(x)
    co.check()
    hit = set()
    for d in x.shape.objects:
        for e in x.sets[d]:
            hit.add(co.legs[d](e))
    assert hit == set(co.apex.elements)


@given(random_diagrams())
@settings(max_examples=50, deadline=None)
def test_mediating_map_from_colimit_to_itself_is_identity(x):
    co = colimit_set(x)
    h = mediate(co, co)
    assert all(h(e) == e for e in co.apex)


@given(random_diagrams())
@settings(max_examples=30, deadline=None)
def test_limit_families_are_exactly_the_compatible_tuples(x):
    li = limit_set(x)
    li.check()
    objs = list(x.shape.objects)
    count = 0
    for combo in itertools.product(*(x.sets[d].elements for d in objs)):
        fam = dict(zip(objs, combo))
        if all(
            x.fn(m)(fam[x.shape.dom(m)]) == fam[x.shape.cod(m)]
            for m in x.shape.mor_tokens
        ):
            count += 1
    assert len(li.apex) == count
