import random

import pytest
from hypothesis import given, settings, strategies as st

from fibrelab import fixtures
from fibrelab.errors import NotALaxCocone
from fibrelab.fibrations import is_cartesian, is_cocartesian
from fibrelab.fincat import (
    FinFunctor,
    NatTransformation,
    compose_functor,
    constant_functor,
    identity_functor,
)
from fibrelab.grothendieck import (
    CatDiagram,
    groth_co,
    groth_contra,
    guitart_check,
    guitart_hat,
    lax_cocone_extend,
    opposed_fibres,
)
from fibrelab.randgen import random_cat_diagram, random_set_diagram

CATS = fixtures.all_categories()
DIAGS = fixtures.all_cat_diagrams()


def test_total_category_sizes():
    expected = {
        "span-push3": (5, 10),
        "semidirect": (1, 6),
        "loop-coeq": (3, 7),
    }
    for name, (n_ob, n_mor) in expected.items():
        gr = groth_co(DIAGS[name])
        assert len(gr.total.objects) == n_ob, name
        assert len(gr.total.morphisms) == n_mor, name
        gr.total.check()
        gr.projection.check()


def test_total_object_count_is_fibre_sum():
    for name, phi in DIAGS.items():
        gr = groth_co(phi)
        assert len(gr.total.objects) == sum(
            len(phi.fibre(a).objects) for a in phi.shape.objects
        )


def test_total_morphism_count_brute_force():
    # |∫Φ(a|x, b|y)| = Σ_{u: a -> b} |Φb(Φu x, y)|
    for name, phi in DIAGS.items():
        gr = groth_co(phi)
        sh = phi.shape
        for src in gr.total.objects:
            a, x = src.split("|", 1)
            for tgt in gr.total.objects:
                b, y = tgt.split("|", 1)
                n = sum(
                    len(phi.fibre(b).hom(phi.transition(u).ob(x), y))
                    for u in sh.mor_tokens
                    if sh.dom(u) == a and sh.cod(u) == b
                )
                assert len(gr.total.hom(src, tgt)) == n, (name, src, tgt)


def test_semidirect_total_is_a_6_element_group():
    gr = groth_co(DIAGS["semidirect"])
    t = gr.total
    e = t.id_of(t.objects[0])
    for f in t.mor_tokens:
        assert any(t.compose(g, f) == e for g in t.mor_tokens), f
    # non-abelian, hence S3 (the only non-abelian group of order 6)
    assert any(
        t.compose(f, g) != t.compose(g, f)
        for f in t.mor_tokens
        for g in t.mor_tokens
    )


def test_cocleavage_morphisms_are_cocartesian():
    for name, phi in DIAGS.items():
        gr = groth_co(phi)
        for key, m in gr.cleavage.items():
            assert is_cocartesian(gr.projection, m), (name, key)


def test_contra_cleavage_morphisms_are_cartesian():
    for name, phi in DIAGS.items():
        contra = opposed_fibres(phi)
        gr = groth_contra(contra)
        for key, m in gr.cleavage.items():
            assert is_cartesian(gr.projection, m), (name, key)


def test_injections_are_fibre_inclusions():
    gr = groth_co(DIAGS["span-push3"])
    phi = DIAGS["span-push3"]
    for a in phi.shape.objects:
        j = gr.injections[a]
        j.check()
        for m in phi.fibre(a).mor_tokens:
            assert gr.projection.mor(j.mor(m)) == phi.shape.id_of(a)


def test_opposed_fibres_swaps_variance_twice():
    phi = DIAGS["span-push3"]
    back = opposed_fibres(opposed_fibres(phi))
    assert back.variance == phi.variance
    assert back.fibres == phi.fibres
    back.check()


def test_guitart_round_trip_on_fixtures():
    rng = random.Random(11)
    for name, phi in DIAGS.items():
        gr = groth_co(phi)
        t = random_set_diagram(rng, gr.total)
        hat = guitart_hat(phi, t)
        hat.check()
        back = guitart_check(hat)
        assert back.sets == t.sets, name
        for m in t.shape.mor_tokens:
            assert back.functions[m] == t.functions[m], (name, m)


def test_lax_cocone_extend_recovers_projection():
    # the trivial lax cocone with vertex the base and Σ_a constant at a
    # extends to exactly the projection functor
    phi = DIAGS["span-push3"]
    sh = phi.shape
    sigma = {
        a: constant_functor(phi.fibre(a), sh, a) for a in sh.objects
    }
    phis = {
        u: NatTransformation(
            sigma[sh.dom(u)],
            compose_functor(sigma[sh.cod(u)], phi.transition(u)),
            {x: u for x in phi.fibre(sh.dom(u)).objects},
        )
        for u in sh.mor_tokens
    }
    t = lax_cocone_extend(phi, sigma, phis)
    gr = groth_co(phi)
    assert t.on_objects == gr.projection.on_objects
    assert t.on_morphisms == gr.projection.on_morphisms


def test_lax_cocone_extend_rejects_broken_identity_law():
    phi = DIAGS["span-push3"]
    sh = phi.shape
    sigma = {a: constant_functor(phi.fibre(a), sh, a) for a in sh.objects}
    phis = {
        u: NatTransformation(
            sigma[sh.dom(u)],
            compose_functor(sigma[sh.cod(u)], phi.transition(u)),
            {x: u for x in phi.fibre(sh.dom(u)).objects},
        )
        for u in sh.mor_tokens
    }
    # break the identity component at the base object "l"
    bad = dict(phis)
    bad[sh.id_of("l")] = NatTransformation(
        sigma["l"], sigma["l"], {x: "le" for x in phi.fibre("l").objects}
    )
    with pytest.raises(NotALaxCocone):
        lax_cocone_extend(phi, sigma, bad)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_random_diagram_total_projects_correctly(seed):
    rng = random.Random(seed)
    phi = random_cat_diagram(rng)
    phi.check()
    gr = groth_co(phi)
    gr.total.check()
    gr.projection.check()
    # fibre of the projection over a is exactly Φa
    for a in phi.shape.objects:
        fib = [o for o in gr.total.objects if gr.projection.ob(o) == a]
        assert len(fib) == len(phi.fibre(a).objects)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_random_guitart_round_trip(seed):
    rng = random.Random(seed)
    phi = random_cat_diagram(rng, max_fibre_objects=3, bases=("TWO", "SPAN"))
    gr = groth_co(phi)
    t = random_set_diagram(rng, gr.total, max_parts=2)
    back = guitart_check(guitart_hat(phi, t))
    assert back.sets == t.sets
    assert all(
        back.functions[m] == t.functions[m] for m in t.shape.mor_tokens
    )
