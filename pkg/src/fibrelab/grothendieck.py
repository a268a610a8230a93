"""Both Grothendieck constructions with their (co)cleavages and fibre
injections, the hat/check correspondence between diagrams on the total
category and diagram-valued families, lax-cocone extension, and the
reconstitution round-trip for split (co)fibrations.

Token conventions: a total object over base object ``a`` with fibre object
``x`` is ``"a|x"``.  A covariant total morphism (u, f) with source fibre
object x is ``"u|x|f"`` (x is recorded because the transition functor need
not be injective on objects, so (u, f) alone would be ambiguous); the
contravariant dual records the target fibre object: ``"u|f|y"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    NonFunctorialDiagram,
    NonFunctorialFamily,
    NotALaxCocone,
    ShapeMismatch,
)
from .fincat import (
    FinCategory,
    FinFunctor,
    compose_functor,
    identity_functor,
)
from .finset import FinFunction, SetDiagram, identity_function


def obj_token(a, x):
    return "%s|%s" % (a, x)


class CatDiagram:
    """A strictly functorial Cat-valued diagram on a finite shape.

    ``transitions`` maps each shape morphism u to a FinFunctor between the
    fibres — covariantly fibre(dom u) -> fibre(cod u), contravariantly the
    reverse.  The string ``"id"`` may be used for identity transitions.
    """

    def __init__(self, shape, fibres, transitions, variance="covariant"):
        assert variance in ("covariant", "contravariant")
        self.shape = shape
        self.fibres = dict(fibres)
        self.variance = variance
        self.transitions = {}
        for u in shape.mor_tokens:
            t = transitions.get(u, "id")
            if t == "id":
                d = shape.dom(u) if variance == "covariant" else shape.cod(u)
                c = shape.cod(u) if variance == "covariant" else shape.dom(u)
                if self.fibres[d] != self.fibres[c]:
                    raise NonFunctorialDiagram(("identity shorthand on", u))
                t = identity_functor(self.fibres[d])
            self.transitions[u] = t

    def fibre(self, a):
        return self.fibres[a]

    def transition(self, u):
        return self.transitions[u]

    def check(self):
        sh = self.shape
        for a in sh.objects:
            if a not in self.fibres:
                raise NonFunctorialDiagram(("missing fibre", a))
            self.fibres[a].check()
        for u, d, c in sh.morphisms:
            t = self.transitions.get(u)
            if t is None:
                raise NonFunctorialDiagram(("missing transition", u))
            src, tgt = (d, c) if self.variance == "covariant" else (c, d)
            if t.source != self.fibres[src] or t.target != self.fibres[tgt]:
                raise NonFunctorialDiagram(("transition endpoints", u))
            t.check()
        for a in sh.objects:
            if self.transitions[sh.id_of(a)] != identity_functor(self.fibres[a]):
                raise NonFunctorialDiagram(("identity transition", a))
        for g, f in sh.composable_pairs():
            gf = sh.compose(g, f)
            if self.variance == "covariant":
                expect = compose_functor(self.transitions[g], self.transitions[f])
            else:
                expect = compose_functor(self.transitions[f], self.transitions[g])
            if self.transitions[gf] != expect:
                raise NonFunctorialDiagram(("strictness", g, f))
        return self

    def __eq__(self, other):
        if not isinstance(other, CatDiagram):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.fibres == other.fibres
            and self.transitions == other.transitions
            and self.variance == other.variance
        )


@dataclass
class GrothendieckResult:
    diagram: CatDiagram
    total: FinCategory
    projection: FinFunctor
    # (base morphism u, fibre object) -> total morphism token.
    # Covariant: the cocartesian δ^u_x; contravariant: the cartesian θ^u_y.
    cleavage: dict
    injections: dict  # base object -> FinFunctor fibre -> total
    # total morphism token -> (u, source fibre object, fibre morphism,
    # target fibre object)
    mor_data: dict = field(default_factory=dict)

    @property
    def variance(self):
        return self.diagram.variance


def groth_co(phi):
    """The covariant Grothendieck construction ∫Φ for Φ: B -> Cat.

    Objects (a, x); morphisms (u: a -> b, f: Φu(x) -> y in Φb); composition
    (v, g)·(u, f) = (v·u, g·Φv(f)).  Comes with the split cocleavage
    δ^u_x = (u, 1) and the fibre injections J_a.
    """
    if phi.variance != "covariant":
        raise NonFunctorialDiagram(("groth_co expects a covariant diagram",))
    phi.check()
    sh = phi.shape
    objects = []
    for a in sh.objects:
        for x in phi.fibre(a).objects:
            objects.append(obj_token(a, x))
    morphisms = []
    mor_data = {}
    token_of = {}
    for u, a, b in sh.morphisms:
        t = phi.transition(u)
        fb = phi.fibre(b)
        for x in phi.fibre(a).objects:
            ux = t.ob(x)
            for f in fb.mor_tokens:
                if fb.dom(f) != ux:
                    continue
                m = "%s|%s|%s" % (u, x, f)
                morphisms.append((m, obj_token(a, x), obj_token(b, fb.cod(f))))
                mor_data[m] = (u, x, f, fb.cod(f))
                token_of[(u, x, f)] = m
    identities = {}
    for a in sh.objects:
        for x in phi.fibre(a).objects:
            identities[obj_token(a, x)] = token_of[
                (sh.id_of(a), x, phi.fibre(a).id_of(x))
            ]
    composition = {}
    dom_of = {m: d for m, d, _ in morphisms}
    cod_of = {m: c for m, _, c in morphisms}
    for m2 in mor_data:
        v, y0, g, _ = mor_data[m2]
        for m1 in mor_data:
            if cod_of[m1] != dom_of[m2]:
                continue
            u, x, f, _ = mor_data[m1]
            vu = sh.compose(v, u)
            fc = phi.fibre(sh.cod(v))
            comp_f = fc.compose(g, phi.transition(v).mor(f))
            composition[(m2, m1)] = token_of[(vu, x, comp_f)]
    total = FinCategory(objects, morphisms, identities, composition).check()
    projection = FinFunctor(
        total,
        sh,
        {obj_token(a, x): a for a in sh.objects for x in phi.fibre(a).objects},
        {m: mor_data[m][0] for m in mor_data},
    ).check()
    cleavage = {}
    for u, a, b in sh.morphisms:
        t = phi.transition(u)
        for x in phi.fibre(a).objects:
            cleavage[(u, x)] = token_of[(u, x, phi.fibre(b).id_of(t.ob(x)))]
    injections = {}
    for a in sh.objects:
        fa = phi.fibre(a)
        injections[a] = FinFunctor(
            fa,
            total,
            {x: obj_token(a, x) for x in fa.objects},
            {h: token_of[(sh.id_of(a), fa.dom(h), h)] for h in fa.mor_tokens},
        ).check()
    return GrothendieckResult(phi, total, projection, cleavage, injections, mor_data)


def groth_contra(phi):
    """The contravariant construction for Φ: B^op -> Cat.

    Objects (b, y); morphisms (u: a -> b, f: x -> Φu(y) in Φa); composition
    (v, g)·(u, f) = (v·u, Φu(g)·f).  Comes with the split cleavage
    θ^u_y = (u, 1) and fibre injections.
    """
    if phi.variance != "contravariant":
        raise NonFunctorialDiagram(("groth_contra expects a contravariant diagram",))
    phi.check()
    sh = phi.shape
    objects = []
    for a in sh.objects:
        for x in phi.fibre(a).objects:
            objects.append(obj_token(a, x))
    morphisms = []
    mor_data = {}
    token_of = {}
    for u, a, b in sh.morphisms:
        t = phi.transition(u)  # fibre(b) -> fibre(a)
        fa = phi.fibre(a)
        for y in phi.fibre(b).objects:
            uy = t.ob(y)
            for f in fa.mor_tokens:
                if fa.cod(f) != uy:
                    continue
                m = "%s|%s|%s" % (u, f, y)
                morphisms.append((m, obj_token(a, fa.dom(f)), obj_token(b, y)))
                mor_data[m] = (u, fa.dom(f), f, y)
                token_of[(u, f, y)] = m
    identities = {}
    for a in sh.objects:
        for x in phi.fibre(a).objects:
            identities[obj_token(a, x)] = token_of[
                (sh.id_of(a), phi.fibre(a).id_of(x), x)
            ]
    composition = {}
    dom_of = {m: d for m, d, _ in morphisms}
    cod_of = {m: c for m, _, c in morphisms}
    for m2 in mor_data:
        v, _, g, z = mor_data[m2]
        for m1 in mor_data:
            if cod_of[m1] != dom_of[m2]:
                continue
            u, _, f, _ = mor_data[m1]
            vu = sh.compose(v, u)
            fa = phi.fibre(sh.dom(u))
            comp_f = fa.compose(phi.transition(u).mor(g), f)
            composition[(m2, m1)] = token_of[(vu, comp_f, z)]
    total = FinCategory(objects, morphisms, identities, composition).check()
    projection = FinFunctor(
        total,
        sh,
        {obj_token(a, x): a for a in sh.objects for x in phi.fibre(a).objects},
        {m: mor_data[m][0] for m in mor_data},
    ).check()
    cleavage = {}
    for u, a, b in sh.morphisms:
        t = phi.transition(u)
        for y in phi.fibre(b).objects:
            cleavage[(u, y)] = token_of[(u, phi.fibre(a).id_of(t.ob(y)), y)]
    injections = {}
    for b in sh.objects:
        fb = phi.fibre(b)
        injections[b] = FinFunctor(
            fb,
            total,
            {y: obj_token(b, y) for y in fb.objects},
            {h: token_of[(sh.id_of(b), h, fb.cod(h))] for h in fb.mor_tokens},
        ).check()
    return GrothendieckResult(phi, total, projection, cleavage, injections, mor_data)


def opposed_fibres(phi):
    """The pointwise dual diagram: opposite base, fibre-wise opposites,
    opposite transitions, swapped variance.  A covariant Φ on D becomes the
    contravariant Φ^op on D^op (and back), so the two Grothendieck
    constructions can be compared on the same data."""
    from .fincat import opposite, opposite_functor

    return CatDiagram(
        opposite(phi.shape),
        {a: opposite(c) for a, c in phi.fibres.items()},
        {u: opposite_functor(t) for u, t in phi.transitions.items()},
        variance=(
            "contravariant" if phi.variance == "covariant" else "covariant"
        ),
    )


# ---------------------------------------------------------------------------
# diagram-valued families and the hat/check correspondence
# ---------------------------------------------------------------------------


class DiagFamily:
    """A functor D -> Diag°(FinSet): per-object set diagrams X_d on shapes
    Φd, and per-morphism pairs (transition functor Φu, transformation
    φ^u: X_d -> X_e ∘ Φu).
    """

    def __init__(self, shape, objects, morphisms):
        self.shape = shape
        self.objects = dict(objects)  # d -> SetDiagram
        # u -> (FinFunctor, dict fibre-object -> FinFunction)
        self.morphisms = dict(morphisms)

    def diagram_at(self, d):
        return self.objects[d]

    def transition(self, u):
        return self.morphisms[u][0]

    def phi(self, u):
        return self.morphisms[u][1]

    def cat_diagram(self):
        return CatDiagram(
            self.shape,
            {d: self.objects[d].shape for d in self.shape.objects},
            {u: self.morphisms[u][0] for u in self.shape.mor_tokens},
            variance="covariant",
        )

    def check(self):
        sh = self.shape
        self.cat_diagram().check()
        for d in sh.objects:
            self.objects[d].check()
        for u, d, e in sh.morphisms:
            t, comp = self.morphisms[u]
            xd, xe = self.objects[d], self.objects[e]
            for x in xd.shape.objects:
                c = comp.get(x)
                if c is None:
                    raise NonFunctorialFamily(("missing component", u, x))
                if c.source != xd.sets[x] or c.target != xe.sets[t.ob(x)]:
                    raise NonFunctorialFamily(("component endpoints", u, x))
            for h in xd.shape.mor_tokens:
                hx, hy = xd.shape.dom(h), xd.shape.cod(h)
                left = xd.fn(h).then(comp[hy])
                right = comp[hx].then(xe.fn(t.mor(h)))
                if left != right:
                    raise NonFunctorialFamily(("naturality", u, h))
        for d in sh.objects:
            i = sh.id_of(d)
            for x in self.objects[d].shape.objects:
                if self.morphisms[i][1][x] != identity_function(
                    self.objects[d].sets[x]
                ):
                    raise NonFunctorialFamily(("identity components", d, x))
        for g, f in sh.composable_pairs():
            gf = sh.compose(g, f)
            tf = self.morphisms[f][0]
            for x in self.objects[sh.dom(f)].shape.objects:
                expect = self.morphisms[f][1][x].then(
                    self.morphisms[g][1][tf.ob(x)]
                )
                if self.morphisms[gf][1][x] != expect:
                    raise NonFunctorialFamily(("composition law", g, f, x))
        return self

    def __eq__(self, other):
        if not isinstance(other, DiagFamily):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.objects == other.objects
            and self.morphisms == other.morphisms
        )


def guitart_hat(phi, t):
    """Turn a diagram T on the total category ∫Φ into the family
    d ↦ T∘J_d with transition components φ^u_x = T(δ^u_x)."""
    g = groth_co(phi)
    if t.shape != g.total:
        raise ShapeMismatch(("guitart_hat", "T not on the total category"))
    objects = {}
    for d in phi.shape.objects:
        j = g.injections[d]
        objects[d] = SetDiagram(
            phi.fibre(d),
            {x: t.sets[j.ob(x)] for x in phi.fibre(d).objects},
            {h: t.functions[j.mor(h)] for h in phi.fibre(d).mor_tokens},
        )
    morphisms = {}
    for u, d, e in phi.shape.morphisms:
        comp = {
            x: t.functions[g.cleavage[(u, x)]]
            for x in phi.fibre(d).objects
        }
        morphisms[u] = (phi.transition(u), comp)
    return DiagFamily(phi.shape, objects, morphisms).check()


def guitart_check(family):
    """Turn a family Σ back into a diagram on the total category:
    Σ̌(u, f) = Σ_e(f) ∘ φ^u_x."""
    family.check()
    phi = family.cat_diagram()
    g = groth_co(phi)
    sets = {}
    for d in phi.shape.objects:
        for x in phi.fibre(d).objects:
            sets[obj_token(d, x)] = family.objects[d].sets[x]
    functions = {}
    for m, (u, x, f, _) in g.mor_data.items():
        e = phi.shape.cod(u)
        functions[m] = family.phi(u)[x].then(family.objects[e].fn(f))
    return SetDiagram(g.total, sets, functions).check()


def lax_cocone_extend(phi, sigma, phis):
    """Extend a lax cocone on Φ with vertex a finite category X to the
    unique functor T: ∫Φ -> X with T∘J_a = Σ_a and T(δ^u) = φ^u.

    ``sigma`` maps base objects to functors Φa -> X; ``phis`` maps base
    morphisms u: a -> b to NatTransformations Σ_a -> Σ_b∘Φu.
    """
    phi.check()
    sh = phi.shape
    x_cat = next(iter(sigma.values())).target
    # lax cocone laws
    for a in sh.objects:
        i = sh.id_of(a)
        for x in phi.fibre(a).objects:
            if phis[i].at(x) != x_cat.id_of(sigma[a].ob(x)):
                raise NotALaxCocone(("identity law", a, x))
    for v, u in sh.composable_pairs():
        vu = sh.compose(v, u)
        tu = phi.transition(u)
        for x in phi.fibre(sh.dom(u)).objects:
            expect = x_cat.compose(phis[v].at(tu.ob(x)), phis[u].at(x))
            if phis[vu].at(x) != expect:
                raise NotALaxCocone(("composition law", v, u, x))
    for u in sh.mor_tokens:
        phis[u].check()
        if phis[u].source != sigma[sh.dom(u)]:
            raise NotALaxCocone(("source of phi", u))
        if phis[u].target != compose_functor(
            sigma[sh.cod(u)], phi.transition(u)
        ):
            raise NotALaxCocone(("target of phi", u))
    g = groth_co(phi)
    on_objects = {}
    for a in sh.objects:
        for x in phi.fibre(a).objects:
            on_objects[obj_token(a, x)] = sigma[a].ob(x)
    on_morphisms = {}
    for m, (u, x, f, _) in g.mor_data.items():
        b = sh.cod(u)
        on_morphisms[m] = x_cat.compose(sigma[b].mor(f), phis[u].at(x))
    t = FinFunctor(g.total, x_cat, on_objects, on_morphisms).check()
    # uniqueness: every total morphism is (1_b, f)∘δ^u_x, so any functor
    # agreeing on injections and cocleavage agrees with t.
    for m, (u, x, f, _) in g.mor_data.items():
        b = sh.cod(u)
        assert m == g.total.compose(g.injections[b].mor(f), g.cleavage[(u, x)])
    return t


def reconstitute(data):
    """Round-trip a verified split (co)fibration through the indexed-category
    extraction and back; see fibrations.reconstitute."""
    from . import fibrations

    return fibrations.reconstitute(data)
