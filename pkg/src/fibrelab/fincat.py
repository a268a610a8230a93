"""Finite categories, functors, natural transformations, and the basic
constructions on them (opposites, products, comma categories, finality).

A category is given by explicit tables: object tokens, morphism records
(token, dom, cod), an identity token per object, and a total composition
table on composable pairs.  The composition convention is

    compose(g, f) = "f then g"

throughout the package.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AssociativityViolation,
    DanglingToken,
    IdentityViolation,
    MissingComposite,
    ShapeMismatch,
    TargetMismatch,
)
from .report import failed, passed


class FinCategory:
    """A finite category as explicit tables.

    The constructor only stores the data; use :func:`validate_category` (or
    the :func:`category` builder, which fills in identity composites) to get
    a checked instance.
    """

    def __init__(self, objects, morphisms, identities, composition, name=""):
        self.objects = tuple(objects)
        self.morphisms = tuple((t, d, c) for (t, d, c) in morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self.name = name
        self._dom = {t: d for t, d, _ in self.morphisms}
        self._cod = {t: c for t, _, c in self.morphisms}
        self._identity_tokens = set(self.identities.values())

    # -- accessors ----------------------------------------------------------

    @property
    def mor_tokens(self):
        return tuple(t for t, _, _ in self.morphisms)

    def dom(self, f):
        return self._dom[f]

    def cod(self, f):
        return self._cod[f]

    def id_of(self, a):
        return self.identities[a]

    def is_identity(self, f):
        return f in self._identity_tokens

    def has_object(self, a):
        return a in self._dom or a in self.identities

    def has_mor(self, f):
        return f in self._dom

    def hom(self, a, b):
        return [t for t, d, c in self.morphisms if d == a and c == b]

    def compose(self, g, f):
        """Return g∘f ("f then g")."""
        if self._cod[f] != self._dom[g]:
            raise MissingComposite(("not composable", g, f))
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise MissingComposite((g, f)) from None

    def composable_pairs(self):
        for g in self.mor_tokens:
            for f in self.mor_tokens:
                if self._cod[f] == self._dom[g]:
                    yield g, f

    # -- validation ---------------------------------------------------------

    def check(self):
        objset = set(self.objects)
        if len(objset) != len(self.objects):
            raise DanglingToken(("duplicate object token", self.objects))
        morset = set(self.mor_tokens)
        if len(morset) != len(self.morphisms):
            raise DanglingToken(("duplicate morphism token", self.mor_tokens))
        for t, d, c in self.morphisms:
            if d not in objset or c not in objset:
                raise DanglingToken(("morphism endpoints undeclared", t, d, c))
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or i not in morset:
                raise DanglingToken(("missing identity", a))
            if self._dom[i] != a or self._cod[i] != a:
                raise IdentityViolation(("identity endpoints", a, i))
        for (g, f), gf in self.composition.items():
            if g not in morset or f not in morset or gf not in morset:
                raise DanglingToken(("composition entry", g, f, gf))
            if self._cod[f] != self._dom[g]:
                raise DanglingToken(("entry for non-composable pair", g, f))
            if self._dom[gf] != self._dom[f] or self._cod[gf] != self._cod[g]:
                raise IdentityViolation(("dom/cod of composite", g, f, gf))
        for g, f in self.composable_pairs():
            if (g, f) not in self.composition:
                raise MissingComposite((g, f))
        for f in self.mor_tokens:
            if self.compose(self.id_of(self._cod[f]), f) != f:
                raise IdentityViolation(("left identity", f))
            if self.compose(f, self.id_of(self._dom[f])) != f:
                raise IdentityViolation(("right identity", f))
        for h in self.mor_tokens:
            for g in self.mor_tokens:
                if self._cod[g] != self._dom[h]:
                    continue
                for f in self.mor_tokens:
                    if self._cod[f] != self._dom[g]:
                        continue
                    if self.compose(h, self.compose(g, f)) != self.compose(
                        self.compose(h, g), f
                    ):
                        raise AssociativityViolation((h, g, f))
        return self

    # -- plumbing -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identities == other.identities
            and self.composition == other.composition
        )

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    def __repr__(self):
        label = self.name or "FinCategory"
        return "%s(%d objects, %d morphisms)" % (
            label,
            len(self.objects),
            len(self.morphisms),
        )

    def to_dict(self):
        return {
            "format": "fibrelab/1",
            "objects": list(self.objects),
            "morphisms": [
                {"id": t, "dom": d, "cod": c} for t, d, c in self.morphisms
            ],
            "identities": dict(self.identities),
            "composition": sorted(
                [g, f, gf]
                for (g, f), gf in self.composition.items()
                if not self.is_identity(g) and not self.is_identity(f)
            ),
        }


def category(objects, morphisms, identities, composition, name=""):
    """Build and validate a FinCategory, filling in identity composites."""
    morphisms = [(t, d, c) for (t, d, c) in morphisms]
    dom = {t: d for t, d, _ in morphisms}
    cod = {t: c for t, _, c in morphisms}
    table = dict(composition)
    for t in dom:
        i_cod = identities.get(cod[t])
        i_dom = identities.get(dom[t])
        if i_cod is not None:
            table.setdefault((i_cod, t), t)
        if i_dom is not None:
            table.setdefault((t, i_dom), t)
    return FinCategory(objects, morphisms, identities, table, name=name).check()


def validate_category(raw):
    """Validate a raw description (the JSON shape) into a FinCategory.

    ``raw`` is a mapping with keys objects / morphisms / identities /
    composition; morphism entries are {"id","dom","cod"} mappings or
    (token, dom, cod) triples; composition entries are [g, f, gf] triples
    (identity-involving composites may be omitted).
    """
    if isinstance(raw, FinCategory):
        return raw.check()
    try:
        objects = list(raw["objects"])
        mor_raw = raw["morphisms"]
        identities = dict(raw["identities"])
        comp_raw = raw.get("composition", [])
    except (KeyError, TypeError) as exc:
        raise DanglingToken(("malformed description", str(exc))) from None
    morphisms = []
    for m in mor_raw:
        if isinstance(m, dict):
            morphisms.append((m["id"], m["dom"], m["cod"]))
        else:
            t, d, c = m
            morphisms.append((t, d, c))
    composition = {}
    if isinstance(comp_raw, dict):
        composition = {tuple(k.split()): v for k, v in comp_raw.items()}
    else:
        for g, f, gf in comp_raw:
            composition[(g, f)] = gf
    return category(
        objects, morphisms, identities, composition, name=raw.get("name", "")
    )


# ---------------------------------------------------------------------------
# functors and natural transformations
# ---------------------------------------------------------------------------


class FinFunctor:
    def __init__(self, source, target, on_objects, on_morphisms, name=""):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        self.name = name

    def ob(self, a):
        return self.on_objects[a]

    def mor(self, f):
        return self.on_morphisms[f]

    def check(self):
        for a in self.source.objects:
            if a not in self.on_objects:
                raise DanglingToken(("functor misses object", a))
            if self.on_objects[a] not in set(self.target.objects):
                raise DanglingToken(("functor image object undeclared", a))
        for f, d, c in self.source.morphisms:
            if f not in self.on_morphisms:
                raise DanglingToken(("functor misses morphism", f))
            ff = self.on_morphisms[f]
            if not self.target.has_mor(ff):
                raise DanglingToken(("functor image morphism undeclared", f))
            if self.target.dom(ff) != self.on_objects[d]:
                raise ShapeMismatch(("dom not preserved", f))
            if self.target.cod(ff) != self.on_objects[c]:
                raise ShapeMismatch(("cod not preserved", f))
        for a in self.source.objects:
            if self.mor(self.source.id_of(a)) != self.target.id_of(self.ob(a)):
                raise ShapeMismatch(("identity not preserved", a))
        for g, f in self.source.composable_pairs():
            if self.mor(self.source.compose(g, f)) != self.target.compose(
                self.mor(g), self.mor(f)
            ):
                raise ShapeMismatch(("composition not preserved", g, f))
        return self

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.on_objects == other.on_objects
            and self.on_morphisms == other.on_morphisms
        )

    def __repr__(self):
        return "FinFunctor(%s -> %s)" % (
            self.source.name or "?",
            self.target.name or "?",
        )


def identity_functor(c):
    return FinFunctor(
        c,
        c,
        {a: a for a in c.objects},
        {f: f for f in c.mor_tokens},
        name="Id",
    )


def constant_functor(source, target, obj):
    """The functor sending everything in ``source`` to ``obj`` / its identity."""
    i = target.id_of(obj)
    return FinFunctor(
        source,
        target,
        {a: obj for a in source.objects},
        {f: i for f in source.mor_tokens},
    )


def compose_functor(g, f):
    """g∘f (apply f first)."""
    if f.target != g.source:
        raise ShapeMismatch(("functor composition", "middle category differs"))
    return FinFunctor(
        f.source,
        g.target,
        {a: g.ob(f.ob(a)) for a in f.source.objects},
        {m: g.mor(f.mor(m)) for m in f.source.mor_tokens},
    )


class NatTransformation:
    """A natural transformation between parallel functors.

    ``components`` maps each source object i to a morphism F(i) -> G(i) of
    the common target category.
    """

    def __init__(self, source, target, components):
        self.source = source  # F
        self.target = target  # G
        self.components = dict(components)

    def at(self, i):
        return self.components[i]

    def check(self):
        f, g = self.source, self.target
        if f.source != g.source or f.target != g.target:
            raise ShapeMismatch(("transformation between non-parallel functors",))
        cat = f.target
        for i in f.source.objects:
            c = self.components.get(i)
            if c is None or not cat.has_mor(c):
                raise DanglingToken(("missing component", i))
            if cat.dom(c) != f.ob(i) or cat.cod(c) != g.ob(i):
                raise ShapeMismatch(("component endpoints", i, c))
        for m, d, c in f.source.morphisms:
            left = cat.compose(self.components[c], f.mor(m))
            right = cat.compose(g.mor(m), self.components[d])
            if left != right:
                raise ShapeMismatch(("naturality square", m, left, right))
        return self

    def __eq__(self, other):
        if not isinstance(other, NatTransformation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )


def identity_nat(f):
    return NatTransformation(
        f, f, {i: f.target.id_of(f.ob(i)) for i in f.source.objects}
    )


def nat_vertical(beta, alpha):
    """Vertical composite β·α : F -> H of α: F -> G and β: G -> H."""
    if alpha.target != beta.source:
        raise ShapeMismatch(("vertical composition", "middle functor differs"))
    cat = alpha.source.target
    return NatTransformation(
        alpha.source,
        beta.target,
        {
            i: cat.compose(beta.at(i), alpha.at(i))
            for i in alpha.source.source.objects
        },
    )


def nat_whisker(x, y):
    """Whisker a transformation with a functor.

    ``nat_whisker(H, α)`` (functor first) is Hα with components H(α_i);
    ``nat_whisker(α, H)`` is αH with components α_{H(k)}.
    """
    if isinstance(x, FinFunctor) and isinstance(y, NatTransformation):
        h, alpha = x, y
        if alpha.source.target != h.source:
            raise ShapeMismatch(("left whisker", "targets differ"))
        return NatTransformation(
            compose_functor(h, alpha.source),
            compose_functor(h, alpha.target),
            {i: h.mor(alpha.at(i)) for i in alpha.source.source.objects},
        )
    if isinstance(x, NatTransformation) and isinstance(y, FinFunctor):
        alpha, h = x, y
        if h.target != alpha.source.source:
            raise ShapeMismatch(("right whisker", "sources differ"))
        return NatTransformation(
            compose_functor(alpha.source, h),
            compose_functor(alpha.target, h),
            {k: alpha.at(h.ob(k)) for k in h.source.objects},
        )
    raise ShapeMismatch(("nat_whisker", "expects (functor, nat) or (nat, functor)"))


# ---------------------------------------------------------------------------
# opposite, product, comma
# ---------------------------------------------------------------------------


def opposite(c):
    """The opposite category: same tokens, dom/cod swapped, table transposed."""
    return FinCategory(
        c.objects,
        [(t, cc, d) for t, d, cc in c.morphisms],
        c.identities,
        {(g, f): gf for (f, g), gf in c.composition.items()},
        name=(c.name + "^op") if c.name else "",
    ).check()


def opposite_functor(f):
    """The same functor viewed between the opposite categories."""
    return FinFunctor(
        opposite(f.source), opposite(f.target), f.on_objects, f.on_morphisms
    )


def product(c, d):
    """The product category with pair tokens ``(c-token,d-token)``."""
    objects = ["(%s,%s)" % (a, b) for a in c.objects for b in d.objects]
    morphisms = [
        ("(%s,%s)" % (f, g), "(%s,%s)" % (fd, gd), "(%s,%s)" % (fc, gc))
        for f, fd, fc in c.morphisms
        for g, gd, gc in d.morphisms
    ]
    identities = {
        "(%s,%s)" % (a, b): "(%s,%s)" % (c.id_of(a), d.id_of(b))
        for a in c.objects
        for b in d.objects
    }
    composition = {}
    for g2, f2 in c.composable_pairs():
        for g1, f1 in d.composable_pairs():
            composition[("(%s,%s)" % (g2, g1), "(%s,%s)" % (f2, f1))] = "(%s,%s)" % (
                c.compose(g2, f2),
                d.compose(g1, f1),
            )
    return FinCategory(objects, morphisms, identities, composition).check()


def product_projections(c, d):
    p = product(c, d)
    left = FinFunctor(
        p,
        c,
        {"(%s,%s)" % (a, b): a for a in c.objects for b in d.objects},
        {"(%s,%s)" % (f, g): f for f in c.mor_tokens for g in d.mor_tokens},
    )
    right = FinFunctor(
        p,
        d,
        {"(%s,%s)" % (a, b): b for a in c.objects for b in d.objects},
        {"(%s,%s)" % (f, g): g for f in c.mor_tokens for g in d.mor_tokens},
    )
    return p, left, right


@dataclass
class CommaCategory:
    category: FinCategory
    left_projection: FinFunctor
    right_projection: FinFunctor
    # object token -> (a, b, u: F a -> G b); morphism token -> (f, g)
    triples: dict
    pairs: dict


def comma(f, g):
    """The comma category F↓G of functors F: A -> C, G: B -> C.

    Objects are triples (a, b, u: F a -> G b); a morphism
    (a,b,u) -> (a',b',u') is a pair (p: a -> a', q: b -> b') with
    G(q)∘u = u'∘F(p).
    """
    if f.target != g.target:
        raise TargetMismatch(("comma", "functors have different targets"))
    a_cat, b_cat, c_cat = f.source, g.source, f.target
    objects = []
    triples = {}
    for a in a_cat.objects:
        for b in b_cat.objects:
            for u in c_cat.hom(f.ob(a), g.ob(b)):
                t = "(%s,%s,%s)" % (a, b, u)
                objects.append(t)
                triples[t] = (a, b, u)
    morphisms = []
    pairs = {}
    identities = {}
    for t1, (a1, b1, u1) in triples.items():
        for t2, (a2, b2, u2) in triples.items():
            for p in a_cat.hom(a1, a2):
                for q in b_cat.hom(b1, b2):
                    if c_cat.compose(g.mor(q), u1) != c_cat.compose(u2, f.mor(p)):
                        continue
                    m = "[%s,%s]:%s>%s" % (p, q, u1, u2)
                    morphisms.append((m, t1, t2))
                    pairs[m] = (p, q)
                    if (
                        t1 == t2
                        and p == a_cat.id_of(a1)
                        and q == b_cat.id_of(b1)
                    ):
                        identities[t1] = m
    mor_by_data = {}
    for m, t1, t2 in morphisms:
        mor_by_data[(t1, t2, pairs[m])] = m
    composition = {}
    for m2, s2, t2 in morphisms:
        for m1, s1, t1 in morphisms:
            if t1 != s2:
                continue
            p = a_cat.compose(pairs[m2][0], pairs[m1][0])
            q = b_cat.compose(pairs[m2][1], pairs[m1][1])
            composition[(m2, m1)] = mor_by_data[(s1, t2, (p, q))]
    cat = FinCategory(objects, morphisms, identities, composition).check()
    left = FinFunctor(
        cat,
        a_cat,
        {t: triples[t][0] for t in objects},
        {m: pairs[m][0] for m, _, _ in morphisms},
    )
    right = FinFunctor(
        cat,
        b_cat,
        {t: triples[t][1] for t in objects},
        {m: pairs[m][1] for m, _, _ in morphisms},
    )
    return CommaCategory(cat, left, right, triples, pairs)


def slice_over(c, a):
    """The slice C/A as a comma category Id_C ↓ constant-at-A."""
    one = category(["*"], [("1", "*", "*")], {"*": "1"}, {}, name="ONE")
    return comma(identity_functor(c), constant_functor(one, c, a))


# ---------------------------------------------------------------------------
# finality
# ---------------------------------------------------------------------------


def is_final(q):
    """Check that Q: A -> K is a final functor.

    Passes iff for every object k of K the comma category k↓Q is non-empty
    and connected (undirected reachability over comma morphisms).
    """
    a_cat, k_cat = q.source, q.target
    for k in k_cat.objects:
        # objects of k↓Q: pairs (a, u: k -> Q a)
        nodes = [
            (a, u) for a in a_cat.objects for u in k_cat.hom(k, q.ob(a))
        ]
        if not nodes:
            return failed(
                "is_final",
                {"object": k, "reason": "empty comma category"},
                comma_objects=0,
            )
        index = {n: i for i, n in enumerate(nodes)}
        parent = list(range(len(nodes)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (a1, u1) in nodes:
            for f in a_cat.mor_tokens:
                if a_cat.dom(f) != a1:
                    continue
                u2 = k_cat.compose(q.mor(f), u1)
                i, j = find(index[(a1, u1)]), find(index[(a_cat.cod(f), u2)])
                if i != j:
                    parent[i] = j
        roots = {find(i) for i in range(len(nodes))}
        if len(roots) > 1:
            comps = {}
            for n, i in index.items():
                comps.setdefault(find(i), []).append(list(n))
            return failed(
                "is_final",
                {"object": k, "components": sorted(comps.values())},
                comma_objects=len(nodes),
            )
    return passed("is_final", objects_checked=len(k_cat.objects))
