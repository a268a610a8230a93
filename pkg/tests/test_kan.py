"""Pointwise Kan extensions against the colimit/limit degenerate cases and
a hand-checked comma-category instance."""
import random

from hypothesis import given, settings, strategies as st

from fibrelab import fixtures
from fibrelab.fincat import FinFunctor, constant_functor, identity_functor
from fibrelab.finset import (
    FinFunction,
    FinSet,
    SetDiagram,
    colimit_set,
    identity_function,
    is_bijection,
    limit_set,
    mediate,
)
from fibrelab.kan import lan, ran
from fibrelab.randgen import random_set_diagram

CATS = fixtures.all_categories()


def arrow_diagram():
    p, q = FinSet(("a", "b", "c")), FinSet(("0", "1"))
    return SetDiagram(
        CATS["TWO"],
        {"0": p, "1": q},
        {
            "id0": identity_function(p),
            "id1": identity_function(q),
            "a": FinFunction(p, q, {"a": "0", "b": "0", "c": "1"}),
        },
    ).check()


def test_lan_to_point_is_colimit():
    x = arrow_diagram()
    f = constant_functor(CATS["TWO"], CATS["ONE"], "*")
    res = lan(f, x)
    assert len(res.extension.sets["*"]) == 2
    # and it is the colimit: the unit legs form a cocone with bijective mediator
    co = colimit_set(x)
    from fibrelab.finset import SetCocone

    as_cocone = SetCocone(
        x,
        res.extension.sets["*"],
        {d: res.unit_or_counit[d] for d in x.shape.objects},
        {},
    )
    assert is_bijection(mediate(co, as_cocone))


def test_ran_to_point_is_limit():
    x = arrow_diagram()
    f = constant_functor(CATS["TWO"], CATS["ONE"], "*")
    res = ran(f, x)
    assert len(res.extension.sets["*"]) == 3
    assert len(limit_set(x).apex) == 3


def test_lan_along_full_inclusion_restricts_back():
    # TWO -> SPAN hitting s -> l along le; Lan then restricting to the image
    # objects gives back the original sets up to bijection
    two, span = CATS["TWO"], CATS["SPAN"]
    f = FinFunctor(
        two, span, {"0": "s", "1": "l"}, {"id0": "ids", "id1": "idl", "a": "le"}
    ).check()
    x = arrow_diagram()
    res = lan(f, x)
    res.extension.check()
    for i in two.objects:
        assert is_bijection(res.unit_or_counit[i]), i
    # only s maps into r (along ri, with no relations to glue by), so the
    # Lan at r is a fresh copy of X(0)
    assert len(res.extension.sets["r"]) == len(x.sets["0"]) == 3


def test_lan_along_identity_is_isomorphic():
    # tokens differ (Lan classes vs raw elements) but the unit is a bijection
    two = CATS["TWO"]
    x = arrow_diagram()
    res = lan(identity_functor(two), x)
    for i in two.objects:
        assert is_bijection(res.unit_or_counit[i])
        assert len(res.extension.sets[i]) == len(x.sets[i])


def test_ran_along_identity_is_isomorphic():
    x = arrow_diagram()
    res = ran(identity_functor(CATS["TWO"]), x)
    for i in CATS["TWO"].objects:
        assert is_bijection(res.unit_or_counit[i])


@st.composite
def lan_instances(draw):
    from fibrelab.randgen import random_monotone_functor, random_poset

    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    src = random_poset(rng, 3)
    tgt = random_poset(rng, 3, prefix="q")
    f = random_monotone_functor(rng, src, tgt)
    x = random_set_diagram(rng, src, max_parts=2)
    return f, x


@given(lan_instances())
@settings(max_examples=40, deadline=None)
def test_lan_unit_is_natural_and_sizes_bounded(inst):
    f, x = inst
    res = lan(f, x)
    res.extension.check()
    # unit naturality: η already asserted inside lan; check the triangle
    # X(m) then η = η then LanX(Fm) explicitly once more
    for m in x.shape.mor_tokens:
        i1, i2 = x.shape.dom(m), x.shape.cod(m)
        lhs = x.fn(m).then(res.unit_or_counit[i2])
        rhs = res.unit_or_counit[i1].then(res.extension.fn(f.mor(m)))
        assert lhs == rhs
    total_in = sum(len(s) for s in x.sets.values())
    for j in f.target.objects:
        assert len(res.extension.sets[j]) <= total_in


@given(lan_instances())
@settings(max_examples=40, deadline=None)
def test_ran_counit_is_natural(inst):
    f, x = inst
    try:
        res = ran(f, x)
    except Exception as exc:  # large family products can trip the cap
        from fibrelab.errors import ResourceExceeded

        assert isinstance(exc, ResourceExceeded)
        return
    res.extension.check()
    for m in x.shape.mor_tokens:
        i1, i2 = x.shape.dom(m), x.shape.cod(m)
        lhs = res.extension.fn(f.mor(m)).then(res.unit_or_counit[i2])
        rhs = res.unit_or_counit[i1].then(x.fn(m))
        assert lhs == rhs
