"""Finite sets, functions, FinSet-valued diagrams, and their (co)limits.

Colimits are computed by union-find over the tagged disjoint union with the
smallest token as canonical representative; limits enumerate the full product
of the object sets and filter for compatibility (with a configurable tuple
cap, since the product is exponential in the number of objects).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    NonUnique,
    NotACoconeError,
    ResourceExceeded,
    ShapeMismatch,
)
from .report import failed, passed

LIMIT_TUPLE_CAP = 10**6


class UnionFind:
    """Disjoint sets over arbitrary hashable keys, smallest root wins."""

    def __init__(self):
        self.parent = {}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            return x
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        px, py = self.find(x), self.find(y)
        if px != py:
            self.parent[px] = self.parent[py] = min(px, py)

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class FinSet:
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        assert len(set(self.elements)) == len(self.elements), "duplicate tokens"

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)


class FinFunction:
    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, x):
        return self.mapping[x]

    def check(self):
        for x in self.source:
            if x not in self.mapping:
                raise ShapeMismatch(("partial function", x))
            if self.mapping[x] not in self.target:
                raise ShapeMismatch(("image outside target", x, self.mapping[x]))
        return self

    def then(self, other):
        """self followed by other."""
        return FinFunction(
            self.source, other.target, {x: other(self(x)) for x in self.source}
        )

    def __eq__(self, other):
        if not isinstance(other, FinFunction):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __repr__(self):
        return "FinFunction(%r)" % (self.mapping,)


def identity_function(s):
    return FinFunction(s, s, {x: x for x in s})


def compose_function(g, f):
    """g∘f (apply f first)."""
    return f.then(g)


class SetDiagram:
    """A functor from a finite shape category into finite sets."""

    def __init__(self, shape, sets, functions):
        self.shape = shape
        self.sets = dict(sets)
        self.functions = dict(functions)

    def set_at(self, obj):
        return self.sets[obj]

    def fn(self, mor):
        return self.functions[mor]

    def check(self):
        for a in self.shape.objects:
            if a not in self.sets:
                raise ShapeMismatch(("missing set", a))
        for f, d, c in self.shape.morphisms:
            fn = self.functions.get(f)
            if fn is None:
                raise ShapeMismatch(("missing function", f))
            if fn.source != self.sets[d] or fn.target != self.sets[c]:
                raise ShapeMismatch(("function endpoints", f))
            fn.check()
        for a in self.shape.objects:
            if self.functions[self.shape.id_of(a)].mapping != {
                x: x for x in self.sets[a]
            }:
                raise ShapeMismatch(("identity not preserved", a))
        for g, f in self.shape.composable_pairs():
            gf = self.shape.compose(g, f)
            if self.functions[gf] != self.functions[f].then(self.functions[g]):
                raise ShapeMismatch(("composition not preserved", g, f))
        return self

    def __eq__(self, other):
        if not isinstance(other, SetDiagram):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.sets == other.sets
            and self.functions == other.functions
        )


@dataclass
class SetCocone:
    diagram: SetDiagram
    apex: FinSet
    legs: dict  # object -> FinFunction into the apex
    # internal: (object, element) -> apex element, kept for comparison maps
    classify: dict = field(default_factory=dict)

    def check(self):
        for f, d, c in self.diagram.shape.morphisms:
            if self.diagram.fn(f).then(self.legs[c]) != self.legs[d]:
                raise NotACoconeError((f,))
        return self


@dataclass
class SetCone:
    diagram: SetDiagram
    apex: FinSet
    legs: dict  # object -> FinFunction out of the apex
    # internal: apex element -> dict object -> element
    families: dict = field(default_factory=dict)

    def check(self):
        for f, d, c in self.diagram.shape.morphisms:
            if self.legs[d].then(self.diagram.fn(f)) != self.legs[c]:
                raise NotACoconeError((f,))
        return self


class SetNat:
    """A transformation between two SetDiagrams on the same shape."""

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def at(self, obj):
        return self.components[obj]

    def check(self):
        if self.source.shape != self.target.shape:
            raise ShapeMismatch(("transformation across shapes",))
        for a in self.source.shape.objects:
            c = self.components[a]
            if c.source != self.source.sets[a] or c.target != self.target.sets[a]:
                raise ShapeMismatch(("component endpoints", a))
        for f, d, c in self.source.shape.morphisms:
            left = self.source.fn(f).then(self.components[c])
            right = self.components[d].then(self.target.fn(f))
            if left != right:
                raise ShapeMismatch(("naturality", f))
        return self

    def __eq__(self, other):
        if not isinstance(other, SetNat):
            return NotImplemented
        return self.components == other.components


# ---------------------------------------------------------------------------
# colimits and limits
# ---------------------------------------------------------------------------


def element_token(obj, elt):
    return "%s.%s" % (obj, elt)


def colimit_set(x):
    """Colimit of a FinSet-valued diagram.

    Apex elements are the union-find classes of the tagged disjoint union,
    named "object.element" after their smallest member.
    """
    uf = UnionFind()
    for a in x.shape.objects:
        for e in x.sets[a]:
            uf.find(element_token(a, e))
    for f, d, c in x.shape.morphisms:
        fn = x.fn(f)
        for e in x.sets[d]:
            uf.union(element_token(d, e), element_token(c, fn(e)))
    seen, order = set(), []
    for a in x.shape.objects:
        for e in x.sets[a]:
            root = uf.find(element_token(a, e))
            if root not in seen:
                seen.add(root)
                order.append(root)
    apex = FinSet(tuple(order))
    classify = {}
    legs = {}
    for a in x.shape.objects:
        mapping = {}
        for e in x.sets[a]:
            rep = uf.find(element_token(a, e))
            mapping[e] = rep
            classify[(a, e)] = rep
        legs[a] = FinFunction(x.sets[a], apex, mapping)
    return SetCocone(x, apex, legs, classify).check()


def limit_set(x, cap=LIMIT_TUPLE_CAP):
    """Limit of a FinSet-valued diagram: compatible families as tuples.

    The full product is enumerated and filtered, so the cost is
    Π|sets|; beyond ``cap`` tuples a ResourceExceeded is raised.
    """
    objs = list(x.shape.objects)
    total = 1
    for a in objs:
        total *= len(x.sets[a])
    if total > cap:
        raise ResourceExceeded(("limit_set", total, cap))
    non_id = [(f, d, c) for f, d, c in x.shape.morphisms if not x.shape.is_identity(f)]
    members = []
    families = {}
    for combo in itertools.product(*(x.sets[a] for a in objs)):
        fam = dict(zip(objs, combo))
        if all(x.fn(f)(fam[d]) == fam[c] for f, d, c in non_id):
            tok = "(%s)" % ",".join(element_token(a, fam[a]) for a in objs)
            members.append(tok)
            families[tok] = fam
    apex = FinSet(tuple(members))
    legs = {
        a: FinFunction(apex, x.sets[a], {t: families[t][a] for t in members})
        for a in objs
    }
    return SetCone(x, apex, legs, families).check()


def mediate(colimit, other):
    """The unique map out of a colimit cocone commuting with all legs.

    Raises NotACoconeError if ``other`` is not a cocone and NonUnique if some
    apex element of ``colimit`` is not reached by any leg (so the first
    argument was not actually a colimit).
    """
    if colimit.diagram != other.diagram:
        raise ShapeMismatch(("mediate", "cocones over different diagrams"))
    other.check()
    mapping = {}
    for a in colimit.diagram.shape.objects:
        for e in colimit.diagram.sets[a]:
            rep = colimit.legs[a](e)
            val = other.legs[a](e)
            if rep in mapping and mapping[rep] != val:
                raise NotACoconeError(
                    ("inconsistent identification", a, e, mapping[rep], val)
                )
            mapping[rep] = val
    free = [e for e in colimit.apex if e not in mapping]
    if free:
        raise NonUnique(("unreached apex elements", free))
    return FinFunction(colimit.apex, other.apex, mapping).check()


def is_bijection(h):
    h.check()
    hit = {}
    for x in h.source:
        y = h(x)
        if y in hit:
            return failed(
                "is_bijection",
                {"collision": [hit[y], x, y]},
                source=len(h.source),
                target=len(h.target),
            )
        hit[y] = x
    unhit = [y for y in h.target if y not in hit]
    if unhit:
        return failed(
            "is_bijection",
            {"unhit": unhit},
            source=len(h.source),
            target=len(h.target),
        )
    return passed("is_bijection", size=len(h.source))


def restrict(x, f):
    """Precompose the diagram X on K with a functor F: J -> K."""
    if f.target != x.shape:
        raise ShapeMismatch(("restrict", "diagram shape differs from F target"))
    return SetDiagram(
        f.source,
        {a: x.sets[f.ob(a)] for a in f.source.objects},
        {m: x.functions[f.mor(m)] for m in f.source.mor_tokens},
    )


def constant_diagram(shape, s):
    return SetDiagram(
        shape,
        {a: s for a in shape.objects},
        {m: identity_function(s) for m in shape.mor_tokens},
    )
