"""(Co)cartesian morphisms, split (co)fibration verification, bifibrations,
limit lifting, the free split cofibration, and the diagram category of a
functor.

Everything here is oracle-grade: cartesianness is checked by exhaustive
filler enumeration, limits by exhaustive terminal-cone search, adjunctions
by exhaustive hom counting.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    HomBijectionFailure,
    NoBaseLimit,
    NoFibreLimit,
    NonFunctorialTransition,
    NotAMorphism,
    NotCartesian,
    SplitLawViolation,
    SquareNotCommuting,
    TerminalityFailure,
    TriangleViolation,
    UnverifiedCleavage,
)
from .fincat import FinCategory, FinFunctor, compose_functor, identity_functor
from .grothendieck import CatDiagram, GrothendieckResult, groth_co, obj_token
from .report import failed, passed


def fibre(p, b):
    """The fibre of P: E -> B over b: objects over b, morphisms over 1_b.

    Tokens are reused from E, so fibre categories embed literally.
    """
    e = p.source
    objects = [x for x in e.objects if p.ob(x) == b]
    id_b = p.target.id_of(b)
    morphisms = [(t, d, c) for t, d, c in e.morphisms if p.mor(t) == id_b]
    mor_set = {t for t, _, _ in morphisms}
    identities = {x: e.id_of(x) for x in objects}
    composition = {
        (g, f): gf
        for (g, f), gf in e.composition.items()
        if g in mor_set and f in mor_set
    }
    return FinCategory(objects, morphisms, identities, composition).check()


def is_cartesian(p, m):
    """Exhaustive unique-filler check for P-cartesianness of m."""
    e, b = p.source, p.target
    x, y = e.dom(m), e.cod(m)
    u = p.mor(m)
    for z in e.objects:
        for h in e.hom(z, y):
            for w in b.hom(p.ob(z), p.ob(x)):
                if b.compose(u, w) != p.mor(h):
                    continue
                fillers = [
                    t
                    for t in e.hom(z, x)
                    if e.compose(m, t) == h and p.mor(t) == w
                ]
                if len(fillers) != 1:
                    return failed(
                        "is_cartesian",
                        {
                            "morphism": m,
                            "test": [z, h, w],
                            "fillers": fillers,
                        },
                    )
    return passed("is_cartesian", morphism=m)


def is_cocartesian(p, m):
    """Dual unique-filler check (m is cocartesian iff cartesian for P^op)."""
    e, b = p.source, p.target
    x, y = e.dom(m), e.cod(m)
    u = p.mor(m)
    for z in e.objects:
        for h in e.hom(x, z):
            for w in b.hom(p.ob(y), p.ob(z)):
                if b.compose(w, u) != p.mor(h):
                    continue
                fillers = [
                    t
                    for t in e.hom(y, z)
                    if e.compose(t, m) == h and p.mor(t) == w
                ]
                if len(fillers) != 1:
                    return failed(
                        "is_cocartesian",
                        {
                            "morphism": m,
                            "test": [z, h, w],
                            "fillers": fillers,
                        },
                    )
    return passed("is_cocartesian", morphism=m)


@dataclass
class CleavageData:
    base_functor: FinFunctor  # P: E -> B
    direction: str  # "fibration" | "cofibration"
    # (base morphism u, fibre object) -> total morphism.
    # Fibration: key is (u, y) with y over cod u, value θ^u_y: u*y -> y.
    # Cofibration: key is (u, x) with x over dom u, value δ^u_x: x -> u_!x.
    lifting: dict
    verified: bool = False

    def __post_init__(self):
        assert self.direction in ("fibration", "cofibration")


def cleavage_from_groth(gr: GrothendieckResult):
    """The canonical CleavageData of a Grothendieck projection.

    The stored cleavage is keyed by fibre-local object tokens; the verifier
    works with total-category objects, so re-key by "a|x" pairs.
    """
    direction = "cofibration" if gr.variance == "covariant" else "fibration"
    base = gr.projection.target
    lifting = {}
    for (u, z), m in gr.cleavage.items():
        over = base.dom(u) if direction == "cofibration" else base.cod(u)
        lifting[(u, obj_token(over, z))] = m
    return CleavageData(gr.projection, direction, lifting)


def search_cleavage(p, direction):
    """Find a canonical cleavage for P by brute-force lifting search.

    Picks the smallest-token (co)cartesian lifting per (base morphism,
    fibre object); returns None when some lifting is missing (P is not a
    (co)fibration).
    """
    e, b = p.source, p.target
    lifting = {}
    for u in b.mor_tokens:
        if direction == "fibration":
            side = b.cod(u)
            for y in e.objects:
                if p.ob(y) != side:
                    continue
                found = sorted(
                    m
                    for m in e.mor_tokens
                    if e.cod(m) == y and p.mor(m) == u and is_cartesian(p, m)
                )
                if not found:
                    return None
                lifting[(u, y)] = found[0]
        else:
            side = b.dom(u)
            for x in e.objects:
                if p.ob(x) != side:
                    continue
                found = sorted(
                    m
                    for m in e.mor_tokens
                    if e.dom(m) == x and p.mor(m) == u and is_cocartesian(p, m)
                )
                if not found:
                    return None
                lifting[(u, x)] = found[0]
    return CleavageData(p, direction, lifting)


def _transport_functor(data, u, fibres):
    """The reindexing functor induced by a split cleavage along u.

    Fibration: u* : E_b -> E_a; cofibration: u_! : E_a -> E_b.  Morphism
    images are found by unique vertical filler search.
    """
    p = data.base_functor
    e, b = p.source, p.target
    a_obj, b_obj = b.dom(u), b.cod(u)
    if data.direction == "fibration":
        src, tgt = fibres[b_obj], fibres[a_obj]
        on_objects = {y: e.dom(data.lifting[(u, y)]) for y in src.objects}
        on_morphisms = {}
        for j in src.mor_tokens:
            y, y2 = src.dom(j), src.cod(j)
            want = e.compose(j, data.lifting[(u, y)])
            cands = [
                t
                for t in tgt.hom(on_objects[y], on_objects[y2])
                if e.compose(data.lifting[(u, y2)], t) == want
            ]
            if len(cands) != 1:
                raise NonFunctorialTransition((u, j, cands))
            on_morphisms[j] = cands[0]
    else:
        src, tgt = fibres[a_obj], fibres[b_obj]
        on_objects = {x: e.cod(data.lifting[(u, x)]) for x in src.objects}
        on_morphisms = {}
        for j in src.mor_tokens:
            x, x2 = src.dom(j), src.cod(j)
            want = e.compose(data.lifting[(u, x2)], j)
            cands = [
                t
                for t in tgt.hom(on_objects[x], on_objects[x2])
                if e.compose(t, data.lifting[(u, x)]) == want
            ]
            if len(cands) != 1:
                raise NonFunctorialTransition((u, j, cands))
            on_morphisms[j] = cands[0]
    return FinFunctor(src, tgt, on_objects, on_morphisms).check()


def _verify_split(data, check_name):
    """Common engine behind verify_split_fibration / verify_split_cofibration.

    Returns (report, extracted CatDiagram or None).
    """
    p = data.base_functor
    p.check()
    e, b = p.source, p.target
    fibres = {a: fibre(p, a) for a in b.objects}
    is_fib = data.direction == "fibration"
    # each lifting present, well-typed, and (co)cartesian
    for u in b.mor_tokens:
        over = b.cod(u) if is_fib else b.dom(u)
        for z in fibres[over].objects:
            m = data.lifting.get((u, z))
            if m is None or not e.has_mor(m):
                return (
                    failed(check_name, {"missing_lifting": [u, z]}),
                    None,
                )
            if p.mor(m) != u:
                return (
                    failed(check_name, {"lifting_over_wrong_base": [u, z, m]}),
                    None,
                )
            end = e.cod(m) if is_fib else e.dom(m)
            if end != z:
                return (
                    failed(check_name, {"lifting_endpoint": [u, z, m]}),
                    None,
                )
            r = is_cartesian(p, m) if is_fib else is_cocartesian(p, m)
            if not r:
                return (
                    failed(check_name, {"not_cartesian": [u, z, m], "detail": r.witness}),
                    None,
                )
    # identity liftings are identities
    for a in b.objects:
        for z in fibres[a].objects:
            if data.lifting[(b.id_of(a), z)] != e.id_of(z):
                return (
                    failed(check_name, {"identity_lifting": [a, z]}),
                    None,
                )
    # transitions (functoriality by unique-filler construction)
    transitions = {}
    try:
        for u in b.mor_tokens:
            transitions[u] = _transport_functor(data, u, fibres)
    except NonFunctorialTransition as exc:
        return failed(check_name, {"non_functorial_transition": list(exc.args)}), None
    # split composition law
    for v, u in b.composable_pairs():
        vu = b.compose(v, u)
        if is_fib:
            for z in fibres[b.cod(v)].objects:
                vz = transitions[v].ob(z)
                if data.lifting[(vu, z)] != e.compose(
                    data.lifting[(v, z)], data.lifting[(u, vz)]
                ):
                    return (
                        failed(check_name, {"split_law": [v, u, z]}),
                        None,
                    )
        else:
            for z in fibres[b.dom(u)].objects:
                uz = transitions[u].ob(z)
                if data.lifting[(vu, z)] != e.compose(
                    data.lifting[(v, uz)], data.lifting[(u, z)]
                ):
                    return (
                        failed(check_name, {"split_law": [v, u, z]}),
                        None,
                    )
    variance = "contravariant" if is_fib else "covariant"
    try:
        phi = CatDiagram(b, fibres, transitions, variance).check()
    except Exception as exc:  # pragma: no cover - guarded above
        return failed(check_name, {"extracted_diagram_invalid": str(exc)}), None
    data.verified = True
    return (
        passed(
            check_name,
            base_morphisms=len(b.morphisms),
            total_morphisms=len(e.morphisms),
        ),
        phi,
    )


def verify_split_fibration(data):
    """Verify a split cleavage; on pass also return the extracted
    contravariant CatDiagram (the indexed category of P)."""
    if data.direction != "fibration":
        return failed("verify_split_fibration", {"direction": data.direction}), None
    return _verify_split(data, "verify_split_fibration")


def verify_split_cofibration(data):
    if data.direction != "cofibration":
        return failed("verify_split_cofibration", {"direction": data.direction}), None
    return _verify_split(data, "verify_split_cofibration")


@dataclass
class FactorizationResult:
    first: str
    second: str
    style: str  # "(vertical,cartesian)" | "(cocartesian,vertical)"


def factorize(data, f):
    """Factor a total morphism through the cleavage.

    Fibration: f = θ^u_y ∘ ε_f with ε_f vertical (style vertical,cartesian:
    ``first`` is ε_f).  Cofibration: f = ν_f ∘ δ^u_x with ν_f vertical
    (style cocartesian,vertical: ``first`` is δ^u_x).
    """
    if not data.verified:
        raise UnverifiedCleavage((data.direction,))
    p = data.base_functor
    e, b = p.source, p.target
    u = p.mor(f)
    if data.direction == "fibration":
        theta = data.lifting[(u, e.cod(f))]
        a = p.ob(e.dom(f))
        id_a = b.id_of(a)
        cands = [
            t
            for t in e.hom(e.dom(f), e.dom(theta))
            if p.mor(t) == id_a and e.compose(theta, t) == f
        ]
        assert len(cands) == 1, ("cartesian filler not unique", f, cands)
        return FactorizationResult(cands[0], theta, "(vertical,cartesian)")
    delta = data.lifting[(u, e.dom(f))]
    bb = p.ob(e.cod(f))
    id_b = b.id_of(bb)
    cands = [
        t
        for t in e.hom(e.cod(delta), e.cod(f))
        if p.mor(t) == id_b and e.compose(t, delta) == f
    ]
    assert len(cands) == 1, ("cocartesian filler not unique", f, cands)
    return FactorizationResult(delta, cands[0], "(cocartesian,vertical)")


# ---------------------------------------------------------------------------
# bifibrations
# ---------------------------------------------------------------------------


@dataclass
class BifibrationWitness:
    units: dict  # u -> {x over dom u: η^u_x}
    counits: dict  # u -> {y over cod u: ε^u_y}
    fibres: dict = field(default_factory=dict)
    push: dict = field(default_factory=dict)  # u -> u_! functor
    pull: dict = field(default_factory=dict)  # u -> u* functor


def bifibration_check(theta, delta):
    """Certify that a split fibration and cofibration over the same P form a
    bifibration u_! ⊣ u*: unit/counit construction, triangle identities, and
    the hom bijections E_u(x,y) ≅ E_a(x, u*y) ≅ E_b(u_!x, y)."""
    assert theta.base_functor == delta.base_functor, "cleavages over different P"
    p = theta.base_functor
    e, b = p.source, p.target
    rep_f, phi_f = verify_split_fibration(theta)
    if not rep_f:
        raise UnverifiedCleavage(("fibration", rep_f.witness))
    rep_c, phi_c = verify_split_cofibration(delta)
    if not rep_c:
        raise UnverifiedCleavage(("cofibration", rep_c.witness))
    fibres = phi_c.fibres
    units, counits = {}, {}
    for u in b.mor_tokens:
        a_obj, b_obj = b.dom(u), b.cod(u)
        push, pull = phi_c.transition(u), phi_f.transition(u)
        id_a, id_b = b.id_of(a_obj), b.id_of(b_obj)
        eta = {}
        for x in fibres[a_obj].objects:
            want = delta.lifting[(u, x)]
            cands = [
                t
                for t in e.hom(x, pull.ob(push.ob(x)))
                if p.mor(t) == id_a
                and e.compose(theta.lifting[(u, push.ob(x))], t) == want
            ]
            if len(cands) != 1:
                raise TriangleViolation((u, "unit", x, cands))
            eta[x] = cands[0]
        eps = {}
        for y in fibres[b_obj].objects:
            want = theta.lifting[(u, y)]
            cands = [
                t
                for t in e.hom(push.ob(pull.ob(y)), y)
                if p.mor(t) == id_b
                and e.compose(t, delta.lifting[(u, pull.ob(y))]) == want
            ]
            if len(cands) != 1:
                raise TriangleViolation((u, "counit", y, cands))
            eps[y] = cands[0]
        # triangle identities
        for x in fibres[a_obj].objects:
            if e.compose(eps[push.ob(x)], push.mor(eta[x])) != e.id_of(push.ob(x)):
                raise TriangleViolation((u, "push-triangle", x))
        for y in fibres[b_obj].objects:
            if e.compose(pull.mor(eps[y]), eta[pull.ob(y)]) != e.id_of(pull.ob(y)):
                raise TriangleViolation((u, "pull-triangle", y))
        # hom bijections through the cleavages
        for x in fibres[a_obj].objects:
            for y in fibres[b_obj].objects:
                over_u = [
                    m for m in e.hom(x, y) if p.mor(m) == u
                ]
                via_pull = {
                    e.compose(theta.lifting[(u, y)], t)
                    for t in fibres[a_obj].hom(x, pull.ob(y))
                }
                via_push = {
                    e.compose(s, delta.lifting[(u, x)])
                    for s in fibres[b_obj].hom(push.ob(x), y)
                }
                if not (
                    via_pull == set(over_u) == via_push
                    and len(via_pull)
                    == len(fibres[a_obj].hom(x, pull.ob(y)))
                    and len(via_push)
                    == len(fibres[b_obj].hom(push.ob(x), y))
                ):
                    raise HomBijectionFailure((u, x, y))
        units[u], counits[u] = eta, eps
    return BifibrationWitness(
        units,
        counits,
        fibres,
        {u: phi_c.transition(u) for u in b.mor_tokens},
        {u: phi_f.transition(u) for u in b.mor_tokens},
    )


# ---------------------------------------------------------------------------
# limits by brute force, and limit lifting
# ---------------------------------------------------------------------------


@dataclass
class CatCone:
    apex: str
    legs: dict  # shape object -> morphism apex -> F(d)


def enumerate_cones(f):
    """All cones over a functor F: D -> C, by exhaustive search."""
    import itertools

    d_cat, c_cat = f.source, f.target
    objs = list(d_cat.objects)
    non_id = [m for m in d_cat.mor_tokens if not d_cat.is_identity(m)]
    cones = []
    for apex in c_cat.objects:
        choices = [c_cat.hom(apex, f.ob(d)) for d in objs]
        for combo in itertools.product(*choices):
            legs = dict(zip(objs, combo))
            if all(
                c_cat.compose(f.mor(m), legs[d_cat.dom(m)]) == legs[d_cat.cod(m)]
                for m in non_id
            ):
                cones.append(CatCone(apex, legs))
    return cones


def terminal_cone(f, cones=None):
    """The limit cone of F, as the terminal object among all cones.

    Among several terminal cones (all uniquely isomorphic) the one with the
    lexicographically least apex (then legs) is returned; None when no limit
    exists.
    """
    c_cat = f.target
    if cones is None:
        cones = enumerate_cones(f)
    objs = list(f.source.objects)
    terminals = []
    for cand in cones:
        ok = True
        for other in cones:
            mediators = [
                m
                for m in c_cat.hom(other.apex, cand.apex)
                if all(
                    c_cat.compose(cand.legs[d], m) == other.legs[d] for d in objs
                )
            ]
            if len(mediators) != 1:
                ok = False
                break
        if ok:
            terminals.append(cand)
    if not terminals:
        return None
    return min(terminals, key=lambda c: (c.apex, sorted(c.legs.items())))


def lift_limit(theta, delta, f):
    """Execute the bifibration limit-lifting construction for F: D -> E.

    Steps: base limit b of P∘F (exhaustive terminal-cone search), cartesian
    liftings α_d of the base legs, the induced fibre diagram L in E_b, its
    fibre limit z, and the composite cone α·λ — then certify terminality
    among all cones over F in E and that P maps the result onto the base
    limit cone.  Returns (cone, report).
    """
    witness = bifibration_check(theta, delta)
    p = theta.base_functor
    e, b_cat = p.source, p.target
    d_cat = f.source
    pf = compose_functor(p, f)
    base = terminal_cone(pf)
    if base is None:
        raise NoBaseLimit(("no terminal cone over P∘F", len(enumerate_cones(pf))))
    b = base.apex
    alphas = {d: theta.lifting[(base.legs[d], f.ob(d))] for d in d_cat.objects}
    fib = witness.fibres[b]
    # induced fibre diagram L: D -> E_b via unique cartesian fillers
    on_objects = {d: e.dom(alphas[d]) for d in d_cat.objects}
    on_morphisms = {}
    id_b = b_cat.id_of(b)
    for m in d_cat.mor_tokens:
        d1, d2 = d_cat.dom(m), d_cat.cod(m)
        want = e.compose(f.mor(m), alphas[d1])
        cands = [
            t
            for t in fib.hom(on_objects[d1], on_objects[d2])
            if e.compose(alphas[d2], t) == want and p.mor(t) == id_b
        ]
        assert len(cands) == 1, ("cartesian filler for fibre diagram", m, cands)
        on_morphisms[m] = cands[0]
    l_fun = FinFunctor(d_cat, fib, on_objects, on_morphisms).check()
    fib_lim = terminal_cone(l_fun)
    if fib_lim is None:
        raise NoFibreLimit((b,))
    cone = CatCone(
        fib_lim.apex,
        {
            d: e.compose(alphas[d], fib_lim.legs[d])
            for d in d_cat.objects
        },
    )
    # certification: terminal among all cones over F in E
    all_cones = enumerate_cones(f)
    for other in all_cones:
        mediators = [
            m
            for m in e.hom(other.apex, cone.apex)
            if all(
                e.compose(cone.legs[d], m) == other.legs[d]
                for d in d_cat.objects
            )
        ]
        if len(mediators) != 1:
            raise TerminalityFailure((other.apex, mediators))
    # P-image is the base limit cone
    if p.ob(cone.apex) != b or any(
        p.mor(cone.legs[d]) != base.legs[d] for d in d_cat.objects
    ):
        raise TerminalityFailure(("projection mismatch",))
    report = passed(
        "lift_limit",
        base_apex=b,
        apex=cone.apex,
        cones_in_e=len(all_cones),
    )
    return cone, report


# ---------------------------------------------------------------------------
# free split cofibration
# ---------------------------------------------------------------------------


@dataclass
class FreeCofibration:
    result: GrothendieckResult  # for cod on P↓B
    embedding: FinFunctor  # H_P: E -> total, f ↦ (Pf, f)
    slice_obj: dict  # a -> {fibre object token: (x, h: Px -> a)}
    slice_mor: dict  # a -> {fibre morphism token: (f, h, k)}


def _slice_fibre(p, a):
    """The slice fibre P/a: objects (x, h: Px -> a), morphisms f with
    k∘Pf = h."""
    e, b = p.source, p.target
    objects, obj_data = [], {}
    for x in e.objects:
        for h in b.hom(p.ob(x), a):
            t = "%s@%s" % (x, h)
            objects.append(t)
            obj_data[t] = (x, h)
    morphisms, mor_data = [], {}
    token_of = {}
    for t1, (x, h) in obj_data.items():
        for t2, (y, k) in obj_data.items():
            for f in e.hom(x, y):
                if b.compose(k, p.mor(f)) != h:
                    continue
                m = "%s@%s>%s" % (f, h, k)
                morphisms.append((m, t1, t2))
                mor_data[m] = (f, h, k)
                token_of[(f, h, k)] = m
    identities = {
        t: token_of[(e.id_of(x), h, h)] for t, (x, h) in obj_data.items()
    }
    composition = {}
    for m2, (g, h2, k2) in mor_data.items():
        for m1, (f, h1, k1) in mor_data.items():
            if k1 != h2 or e.cod(f) != e.dom(g):
                continue
            composition[(m2, m1)] = token_of[(e.compose(g, f), h1, k2)]
    cat = FinCategory(objects, morphisms, identities, composition).check()
    return cat, obj_data, mor_data


def free_cofibration(p):
    """Build cod: P↓B -> B as the free split cofibration on P: E -> B.

    The comma category P↓B is realised as the Grothendieck construction of
    the slice fibres a ↦ P/a with transitions u_!(x, h) = (x, u·h); the unit
    H_P sends f to (Pf, f).
    """
    p.check()
    e, b = p.source, p.target
    fibres, objs, mors = {}, {}, {}
    for a in b.objects:
        fibres[a], objs[a], mors[a] = _slice_fibre(p, a)
    transitions = {}
    for u, a, a2 in b.morphisms:
        on_objects = {
            t: "%s@%s" % (x, b.compose(u, h)) for t, (x, h) in objs[a].items()
        }
        on_morphisms = {
            m: "%s@%s>%s" % (f, b.compose(u, h), b.compose(u, k))
            for m, (f, h, k) in mors[a].items()
        }
        transitions[u] = FinFunctor(fibres[a], fibres[a2], on_objects, on_morphisms)
    phi = CatDiagram(b, fibres, transitions, "covariant").check()
    gr = groth_co(phi)
    on_objects = {
        x: obj_token(p.ob(x), "%s@%s" % (x, b.id_of(p.ob(x)))) for x in e.objects
    }
    on_morphisms = {}
    for f, x, y in e.morphisms:
        u = p.mor(f)
        src = "%s@%s" % (x, b.id_of(p.ob(x)))
        fib_m = "%s@%s>%s" % (f, u, b.id_of(p.ob(y)))
        on_morphisms[f] = "%s|%s|%s" % (u, src, fib_m)
    h_p = FinFunctor(e, gr.total, on_objects, on_morphisms).check()
    return FreeCofibration(gr, h_p, objs, mors)


def free_factor(p, s, t, qdata):
    """Factor T through the free split cofibration on P.

    Given a square Q∘T = S∘P with Q: F -> C a verified split cofibration,
    build the unique cocleavage-preserving T~: P↓B -> F over S with
    T~∘H_P = T, via T~(u, f) = (Sk)_!(ν_{Tf}) ∘ δ^{Su} — and certify all
    four equations (functoriality, cocleavage preservation, Q∘T~ = S∘cod,
    T~∘H_P = T).
    """
    q = qdata.base_functor
    if compose_functor(q, t) != compose_functor(s, p):
        raise SquareNotCommuting(("Q∘T != S∘P",))
    rep, phi_q = verify_split_cofibration(qdata)
    if not rep:
        raise UnverifiedCleavage(("cofibration", rep.witness))
    free = free_cofibration(p)
    gr = free.result
    b = p.target
    f_cat = q.source
    push = {c: phi_q.transition(c) for c in s.target.mor_tokens}
    on_objects = {}
    for tok in gr.total.objects:
        a, fib_obj = tok.split("|", 1)
        x, h = free.slice_obj[a][fib_obj]
        on_objects[tok] = push[s.mor(h)].ob(t.ob(x))
    on_morphisms = {}
    for m, (u, src_obj, fib_m, _) in gr.mor_data.items():
        a, bb = b.dom(u), b.cod(u)
        f, _, k = free.slice_mor[bb][fib_m]
        nu = factorize(qdata, t.mor(f)).second
        first = qdata.lifting[(s.mor(u), on_objects[obj_token(a, src_obj)])]
        on_morphisms[m] = f_cat.compose(push[s.mor(k)].mor(nu), first)
    t_tilde = FinFunctor(gr.total, f_cat, on_objects, on_morphisms).check()
    # certification equations beyond functoriality (checked above)
    for (u, x), d in gr.cleavage.items():
        a = b.dom(u)
        if t_tilde.mor(d) != qdata.lifting[(s.mor(u), t_tilde.ob(obj_token(a, x)))]:
            raise SplitLawViolation(("cocleavage not preserved", u, x))
    if compose_functor(q, t_tilde) != compose_functor(s, gr.projection):
        raise SquareNotCommuting(("Q∘T~ != S∘cod",))
    if compose_functor(t_tilde, free.embedding) != t:
        raise SquareNotCommuting(("T~∘H_P != T",))
    return t_tilde


# ---------------------------------------------------------------------------
# reconstitution (Grothendieck equivalence round-trip)
# ---------------------------------------------------------------------------


def reconstitute(data):
    """Round-trip a verified split (co)fibration P through the extracted
    indexed category and back.

    Extracts the Cat-valued diagram of P, rebuilds the total category, and
    checks that the comparison functor (u, f) ↦ θ^u∘f (dually f∘δ^u) is
    bijective on objects and morphisms, commutes with the projections, and
    preserves the cleavage.
    """
    from .grothendieck import groth_contra

    p = data.base_functor
    e = p.source
    if data.direction == "fibration":
        rep, phi = verify_split_fibration(data)
    else:
        rep, phi = verify_split_cofibration(data)
    if not rep:
        return rep
    gr = groth_contra(phi) if data.direction == "fibration" else groth_co(phi)
    on_objects = {}
    for tok in gr.total.objects:
        _, x = tok.split("|", 1)
        on_objects[tok] = x
    on_morphisms = {}
    for m, (u, x, fmor, y) in gr.mor_data.items():
        if data.direction == "fibration":
            on_morphisms[m] = e.compose(data.lifting[(u, y)], fmor)
        else:
            on_morphisms[m] = e.compose(fmor, data.lifting[(u, x)])
    try:
        k = FinFunctor(gr.total, e, on_objects, on_morphisms).check()
    except Exception as exc:
        return failed("reconstitute", {"comparison_not_functorial": str(exc)})
    if sorted(on_objects.values()) != sorted(e.objects):
        return failed("reconstitute", {"objects_not_bijective": True})
    if sorted(on_morphisms.values()) != sorted(e.mor_tokens):
        seen = sorted(on_morphisms.values())
        missing = [m for m in e.mor_tokens if m not in set(seen)]
        return failed("reconstitute", {"morphisms_not_bijective": missing})
    for m in gr.mor_data:
        if p.mor(on_morphisms[m]) != gr.projection.mor(m):
            return failed("reconstitute", {"projection_square": m})
    for key, c in gr.cleavage.items():
        if k.mor(c) != data.lifting[key]:
            return failed("reconstitute", {"cleavage_not_preserved": list(key)})
    return passed(
        "reconstitute",
        direction=data.direction,
        objects=len(e.objects),
        morphisms=len(e.morphisms),
    )


# ---------------------------------------------------------------------------
# the diagram category of a functor (virtual)
# ---------------------------------------------------------------------------


class DiagOfFunctor:
    """On-demand morphism algebra of the diagram category of P: E -> B.

    Objects are triples (a, I, X) with X: I -> E landing in the fibre E_a;
    morphisms (u, F, φ) have Pφ constantly u.  The category is large, so it
    is never enumerated — only validated and composed pointwise.
    """

    def __init__(self, p):
        self.p = p.check()

    def validate_object(self, a, shape, x):
        x.check()
        if x.source != shape or x.target != self.p.source:
            raise NotAMorphism(("object diagram shape",))
        id_a = self.p.target.id_of(a)
        for i in shape.objects:
            if self.p.ob(x.ob(i)) != a:
                raise NotAMorphism(("object outside fibre", i))
        for m in shape.mor_tokens:
            if self.p.mor(x.mor(m)) != id_a:
                raise NotAMorphism(("morphism outside fibre", m))
        return (a, shape, x)

    def embed(self, x):
        """E^P: an object x of E as a ONE-shaped diagram in its fibre."""
        from .fixtures import one

        pt = one()
        e = self.p.source
        return (
            self.p.ob(x),
            pt,
            FinFunctor(pt, e, {"*": x}, {"1": e.id_of(x)}),
        )

    def validate_morphism(self, src, tgt, u, f, components):
        """Check that (u, F, φ) is a morphism (a,I,X) -> (b,J,Y)."""
        a, shape_i, x = src
        b, shape_j, y = tgt
        e, base = self.p.source, self.p.target
        if base.dom(u) != a or base.cod(u) != b:
            raise NotAMorphism(("base morphism endpoints", u))
        f.check()
        if f.source != shape_i or f.target != shape_j:
            raise NotAMorphism(("functor part shape",))
        for i in shape_i.objects:
            c = components.get(i)
            if c is None or not e.has_mor(c):
                raise NotAMorphism(("missing component", i))
            if e.dom(c) != x.ob(i) or e.cod(c) != y.ob(f.ob(i)):
                raise NotAMorphism(("component endpoints", i))
            if self.p.mor(c) != u:
                raise NotAMorphism(("Pφ not constant at u", i))
        for m in shape_i.mor_tokens:
            i, j = shape_i.dom(m), shape_i.cod(m)
            if e.compose(components[j], x.mor(m)) != e.compose(
                y.mor(f.mor(m)), components[i]
            ):
                raise NotAMorphism(("naturality", m))
        return (u, f, dict(components))

    def compose(self, src, mid, tgt, m2, m1):
        """(v, G, ψ)·(u, F, φ) = (v·u, G∘F, ψF·φ)."""
        u, f, comp1 = self.validate_morphism(src, mid, *m1)
        v, g, comp2 = self.validate_morphism(mid, tgt, *m2)
        e, base = self.p.source, self.p.target
        return (
            base.compose(v, u),
            compose_functor(g, f),
            {
                i: e.compose(comp2[f.ob(i)], comp1[i])
                for i in src[1].objects
            },
        )

    def b_projection(self, obj):
        return obj[0]

    def d_projection(self, obj):
        return obj[1]

    def hom_bijection_check(self, cofib_data, src, tgt):
        """Verify that for a split cofibration P, morphisms (u, F, φ) are in
        bijection with fibre-level transformations ψ: u_!∘X -> Y∘F via
        φ = (J_b ψ)·(δ^u X): enumerate both sides for every (u, F)."""
        rep, phi_p = verify_split_cofibration(cofib_data)
        if not rep:
            return rep
        a, shape_i, x = src
        b, shape_j, y = tgt
        e, base = self.p.source, self.p.target
        checked = 0
        for u in base.hom(a, b):
            push = phi_p.transition(u)
            for f in enumerate_functors(shape_i, shape_j):
                # side one: lax components φ with Pφ = Δu
                lax = _enumerate_lax(self, src, tgt, u, f)
                # side two: vertical ψ: u_!X -> Y∘F in the fibre over b
                id_b = base.id_of(b)
                vert = _enumerate_vertical(
                    self.p, e, shape_i, x, y, f, push, cofib_data, u, id_b
                )
                image = set()
                for psi in vert:
                    phi_c = tuple(
                        sorted(
                            (
                                i,
                                e.compose(
                                    psi[i], cofib_data.lifting[(u, x.ob(i))]
                                ),
                            )
                            for i in shape_i.objects
                        )
                    )
                    image.add(phi_c)
                lax_set = {
                    tuple(sorted(c.items())) for c in lax
                }
                if image != lax_set or len(image) != len(vert):
                    return failed(
                        "hom_bijection_check",
                        {"u": u, "functor": f.on_objects, "lhs": len(vert), "rhs": len(lax)},
                    )
                checked += 1
        return passed("hom_bijection_check", pairs_checked=checked)


def enumerate_functors(i_cat, j_cat):
    """All functors I -> J, by brute force over object and morphism maps."""
    import itertools

    out = []
    objs = list(i_cat.objects)
    for ob_combo in itertools.product(j_cat.objects, repeat=len(objs)):
        on_objects = dict(zip(objs, ob_combo))
        mors = [m for m in i_cat.mor_tokens if not i_cat.is_identity(m)]
        choice_lists = [
            j_cat.hom(on_objects[i_cat.dom(m)], on_objects[i_cat.cod(m)])
            for m in mors
        ]
        if any(not c for c in choice_lists):
            continue
        for mor_combo in itertools.product(*choice_lists):
            on_morphisms = dict(zip(mors, mor_combo))
            for a in i_cat.objects:
                on_morphisms[i_cat.id_of(a)] = j_cat.id_of(on_objects[a])
            try:
                out.append(
                    FinFunctor(i_cat, j_cat, on_objects, on_morphisms).check()
                )
            except Exception:
                continue
    return out


def _enumerate_lax(diag, src, tgt, u, f):
    import itertools

    a, shape_i, x = src
    b, shape_j, y = tgt
    e = diag.p.source
    per_obj = []
    objs = list(shape_i.objects)
    for i in objs:
        per_obj.append(
            [
                c
                for c in e.hom(x.ob(i), y.ob(f.ob(i)))
                if diag.p.mor(c) == u
            ]
        )
    out = []
    for combo in itertools.product(*per_obj):
        comp = dict(zip(objs, combo))
        try:
            diag.validate_morphism(src, tgt, u, f, comp)
        except NotAMorphism:
            continue
        out.append(comp)
    return out


def _enumerate_vertical(p, e, shape_i, x, y, f, push, cofib_data, u, id_b):
    import itertools

    objs = list(shape_i.objects)
    per_obj = []
    for i in objs:
        src_ob = e.cod(cofib_data.lifting[(u, x.ob(i))])  # u_!(X i)
        per_obj.append(
            [c for c in e.hom(src_ob, y.ob(f.ob(i))) if p.mor(c) == id_b]
        )
    out = []
    for combo in itertools.product(*per_obj):
        psi = dict(zip(objs, combo))
        natural = True
        for m in shape_i.mor_tokens:
            i, j = shape_i.dom(m), shape_i.cod(m)
            # fibre tokens are shared with E, so u_! applies directly
            pushed = push.mor(x.mor(m))
            if e.compose(psi[j], pushed) != e.compose(y.mor(f.mor(m)), psi[i]):
                natural = False
                break
        if natural:
            out.append(psi)
    return out
