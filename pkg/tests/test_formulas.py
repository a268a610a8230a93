"""Decomposition/recomposition formulas, checked through explicit canonical
comparison maps (never by cardinality alone) on fixtures and seeded random
instances."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from fibrelab import fixtures
from fibrelab.catcolim import colimit_cat
from fibrelab.errors import BoundExceeded, ResourceExceeded
from fibrelab.fincat import product
from fibrelab.formulas import (
    backward_hat,
    check_cdf,
    check_cdf_concordance,
    check_fubini,
    check_general_cdf,
    check_general_limit_recomposition,
    check_limit_recomposition,
    check_tfcf,
    check_twisted_limit,
)
from fibrelab.grothendieck import CatDiagram, groth_co, groth_contra, guitart_hat
from fibrelab.randgen import (
    random_cat_diagram,
    random_diag_family,
    random_set_diagram,
    representable_diagram,
)

CATS = fixtures.all_categories()
DIAGS = fixtures.all_cat_diagrams()


def contra_two_fibres(base_name="SPAN"):
    """A small contravariant diagram: constant TWO fibres, identity
    transitions, over a fixture base."""
    base = CATS[base_name]
    return CatDiagram(
        base, {d: CATS["TWO"] for d in base.objects}, {}, "contravariant"
    ).check()


def test_cdf_on_pushout_fixture_representable():
    phi = DIAGS["span-push3"]
    res = colimit_cat(phi)
    for k in res.colimit.objects:
        x = representable_diagram(res.colimit, k)
        rep = check_cdf(phi, x, kres=res)
        assert rep.ok, rep.witness
        # colimit of a representable is a point, on both sides
        assert rep.stats["lhs"] == rep.stats["rhs"] == 1


def test_cdf_on_group_quotient_fixture():
    phi = DIAGS["semidirect"]
    res = colimit_cat(phi)
    rng = random.Random(0)
    x = random_set_diagram(rng, res.colimit)
    rep = check_cdf(phi, x, kres=res)
    assert rep.ok, rep.witness


def test_cdf_rejects_diagram_on_wrong_shape():
    phi = DIAGS["span-push3"]
    x = random_set_diagram(random.Random(0), CATS["PUSH3"])
    with pytest.raises(AssertionError):
        check_cdf(phi, x)


def test_cdf_concordance_three_routes_agree():
    phi = DIAGS["span-push3"]
    res = colimit_cat(phi)
    rng = random.Random(1)
    for _ in range(3):
        x = random_set_diagram(rng, res.colimit)
        rep = check_cdf_concordance(phi, x)
        assert rep.ok, rep.witness
        assert (
            rep.stats["direct"]
            == rep.stats["general"]
            == rep.stats["cofinal"]
        )


def test_cdf_propagates_divergence():
    phi = DIAGS["loop-coeq"]
    x = random_set_diagram(random.Random(0), CATS["TWO"])
    with pytest.raises(BoundExceeded):
        check_cdf(phi, x, bound=500)


def test_tfcf_on_fixture_totals():
    rng = random.Random(2)
    for name in ("span-push3", "semidirect", "loop-coeq"):
        phi = DIAGS[name]
        t = random_set_diagram(rng, groth_co(phi).total)
        rep = check_tfcf(phi, t)
        assert rep.ok, (name, rep.witness)
        assert rep.stats["lhs"] == rep.stats["rhs"]


def test_twisted_limit_contravariant():
    rng = random.Random(3)
    phi = contra_two_fibres()
    t = random_set_diagram(rng, groth_contra(phi).total)
    rep = check_twisted_limit(phi, t)
    assert rep.ok, rep.witness


def test_fubini_representable_is_pointlike():
    p = product(CATS["TWO"], CATS["SPAN"])
    t = representable_diagram(p, "(0,s)")
    rep = check_fubini(CATS["TWO"], CATS["SPAN"], t)
    assert rep.ok, rep.witness
    assert rep.stats["lhs"] == rep.stats["rhs_de"] == rep.stats["rhs_ed"] == 1


def test_fubini_both_orders_on_random_products():
    rng = random.Random(4)
    for _ in range(5):
        d_name, e_name = rng.choice(
            (("TWO", "SPAN"), ("PAIR", "TWO"), ("SPAN", "PUSH3"))
        )
        p = product(CATS[d_name], CATS[e_name])
        t = random_set_diagram(rng, p, max_parts=2)
        rep = check_fubini(CATS[d_name], CATS[e_name], t)
        assert rep.ok, (d_name, e_name, rep.witness)


def test_general_cdf_on_hat_families():
    rng = random.Random(5)
    for name in ("span-push3", "semidirect"):
        phi = DIAGS[name]
        t = random_set_diagram(rng, groth_co(phi).total)
        fam = guitart_hat(phi, t)
        rep = check_general_cdf(fam)
        assert rep.ok, (name, rep.witness)


def test_general_limit_recomposition_on_backward_families():
    rng = random.Random(6)
    phi = contra_two_fibres("TWO")
    t = random_set_diagram(rng, groth_contra(phi).total)
    fam = backward_hat(phi, t)
    rep = check_general_limit_recomposition(fam)
    assert rep.ok, rep.witness


def test_limit_recomposition_on_fixture():
    phi = DIAGS["span-push3"]
    res = colimit_cat(phi)
    rng = random.Random(7)
    x = random_set_diagram(rng, res.colimit, max_parts=2)
    rep = check_limit_recomposition(phi, x, kres=res)
    assert rep.ok, rep.witness


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_random_cdf_and_concordance(seed):
    rng = random.Random(seed)
    phi = random_cat_diagram(rng, max_fibre_objects=3, bases=("TWO", "SPAN"))
    try:
        res = colimit_cat(phi, bound=300)
    except BoundExceeded:
        return
    x = random_set_diagram(rng, res.colimit, max_parts=2)
    assert check_cdf(phi, x, bound=300, kres=res).ok
    assert check_cdf_concordance(phi, x, bound=300).ok


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_random_tfcf(seed):
    rng = random.Random(seed)
    phi = random_cat_diagram(rng, max_fibre_objects=3, bases=("TWO", "SPAN"))
    t = random_set_diagram(rng, groth_co(phi).total, max_parts=2)
    assert check_tfcf(phi, t).ok


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_random_general_cdf(seed):
    rng = random.Random(seed)
    fam, phi, t = random_diag_family(rng, bases=("ONE", "TWO", "SPAN"))
    try:
        rep = check_general_cdf(fam, bound=300)
    except BoundExceeded:
        return
    assert rep.ok


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_random_twisted_and_general_limits(seed):
    rng = random.Random(seed)
    base = CATS[rng.choice(("TWO", "SPAN"))]
    from fibrelab.randgen import random_monotone_functor, random_poset

    fibres = {d: random_poset(rng, 2, prefix="%s_" % d) for d in base.objects}
    transitions = {
        u: random_monotone_functor(rng, fibres[base.cod(u)], fibres[base.dom(u)])
        for u in base.mor_tokens
        if not base.is_identity(u)
    }
    phi = CatDiagram(base, fibres, transitions, "contravariant").check()
    t = random_set_diagram(rng, groth_contra(phi).total, max_parts=2)
    try:
        assert check_twisted_limit(phi, t).ok
        assert check_general_limit_recomposition(backward_hat(phi, t), bound=300).ok
    except (BoundExceeded, ResourceExceeded):
        return
