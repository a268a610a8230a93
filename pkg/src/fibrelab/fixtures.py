"""The shipped fixture corpus.

Small categories used across the test-suite and the CLI ``corpus`` command:
ONE, TWO, SPAN, PAIR, PUSH3, the one-object groupoids Z2 and Z3, and the
expected 6-element group S3 (computed from permutation tables, so it can act
as an independent oracle).
"""
from __future__ import annotations

import itertools

from .fincat import FinFunctor, category


def one():
    return category(["*"], [("1", "*", "*")], {"*": "1"}, {}, name="ONE")


def two():
    return category(
        ["0", "1"],
        [("id0", "0", "0"), ("id1", "1", "1"), ("a", "0", "1")],
        {"0": "id0", "1": "id1"},
        {},
        name="TWO",
    )


def span():
    """l <- s -> r with legs le: s->l and ri: s->r."""
    return category(
        ["l", "s", "r"],
        [
            ("idl", "l", "l"),
            ("ids", "s", "s"),
            ("idr", "r", "r"),
            ("le", "s", "l"),
            ("ri", "s", "r"),
        ],
        {"l": "idl", "s": "ids", "r": "idr"},
        {},
        name="SPAN",
    )


def pair():
    """Two parallel arrows fst, snd: p -> q."""
    return category(
        ["p", "q"],
        [
            ("idp", "p", "p"),
            ("idq", "q", "q"),
            ("fst", "p", "q"),
            ("snd", "p", "q"),
        ],
        {"p": "idp", "q": "idq"},
        {},
        name="PAIR",
    )


def push3():
    """The path category 0 -> 1 -> 2 with composite ba."""
    return category(
        ["0", "1", "2"],
        [
            ("id0", "0", "0"),
            ("id1", "1", "1"),
            ("id2", "2", "2"),
            ("a", "0", "1"),
            ("b", "1", "2"),
            ("ba", "0", "2"),
        ],
        {"0": "id0", "1": "id1", "2": "id2"},
        {("b", "a"): "ba"},
        name="PUSH3",
    )


def z2():
    return category(
        ["*"],
        [("e", "*", "*"), ("s", "*", "*")],
        {"*": "e"},
        {("s", "s"): "e"},
        name="Z2",
    )


def z3():
    return category(
        ["*"],
        [("e", "*", "*"), ("r", "*", "*"), ("rr", "*", "*")],
        {"*": "e"},
        {
            ("r", "r"): "rr",
            ("r", "rr"): "e",
            ("rr", "r"): "e",
            ("rr", "rr"): "r",
        },
        name="Z3",
    )


def s3():
    """The symmetric group on {0,1,2} as a one-object category.

    Built from actual permutation composition, independently of any
    Grothendieck machinery.
    """
    perms = sorted(itertools.permutations(range(3)))
    tok = {p: "p" + "".join(map(str, p)) for p in perms}
    ident = (0, 1, 2)
    morphisms = [(tok[p], "*", "*") for p in perms]
    composition = {}
    for g in perms:
        for f in perms:
            gf = tuple(g[f[i]] for i in range(3))  # f then g
            composition[(tok[g], tok[f])] = tok[gf]
    return category(["*"], morphisms, {"*": tok[ident]}, composition, name="S3")


def all_categories():
    return {
        "ONE": one(),
        "TWO": two(),
        "SPAN": span(),
        "PAIR": pair(),
        "PUSH3": push3(),
        "Z2": z2(),
        "Z3": z3(),
        "S3": s3(),
    }


# ---------------------------------------------------------------------------
# standard Cat-valued diagram fixtures
# ---------------------------------------------------------------------------


def span_push3_diagram():
    """SPAN-shaped gluing whose Cat-colimit is PUSH3.

    Fibres TWO over the feet, ONE over the apex; the apex point goes to
    endpoint 1 of the left copy and endpoint 0 of the right copy, so the
    pushout glues the two intervals end to start.
    """
    from .grothendieck import CatDiagram

    sh, pt, iv = span(), one(), two()
    into_1 = FinFunctor(pt, iv, {"*": "1"}, {"1": "id1"})
    into_0 = FinFunctor(pt, iv, {"*": "0"}, {"1": "id0"})
    return CatDiagram(
        shape=sh,
        fibres={"l": iv, "s": pt, "r": iv},
        transitions={
            "idl": "id",
            "ids": "id",
            "idr": "id",
            "le": into_1,
            "ri": into_0,
        },
        variance="covariant",
    )


def loop_coequalizer_diagram():
    """PAIR-shaped coequalizer of the two endpoint inclusions ONE ⇉ TWO.

    Identifies 0 with 1, creating a free loop: the Cat-colimit is the monoid
    of natural numbers, i.e. infinite.
    """
    from .grothendieck import CatDiagram

    sh, pt, iv = pair(), one(), two()
    into_0 = FinFunctor(pt, iv, {"*": "0"}, {"1": "id0"})
    into_1 = FinFunctor(pt, iv, {"*": "1"}, {"1": "id1"})
    return CatDiagram(
        shape=sh,
        fibres={"p": pt, "q": iv},
        transitions={"idp": "id", "idq": "id", "fst": into_0, "snd": into_1},
        variance="covariant",
    )


def semidirect_diagram():
    """Z2 acting on Z3 by inversion; its total category is S3."""
    from .grothendieck import CatDiagram

    base, fib = z2(), z3()
    invert = FinFunctor(fib, fib, {"*": "*"}, {"e": "e", "r": "rr", "rr": "r"})
    return CatDiagram(
        shape=base,
        fibres={"*": fib},
        transitions={"e": "id", "s": invert},
        variance="covariant",
    )


def all_cat_diagrams():
    """The corpus of Cat-valued diagram fixtures, keyed by name.

    ``loop-coeq`` is the deliberately non-terminating one.
    """
    return {
        "span-push3": span_push3_diagram(),
        "semidirect": semidirect_diagram(),
        "loop-coeq": loop_coequalizer_diagram(),
    }
