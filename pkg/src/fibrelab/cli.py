"""Command-line interface: JSON file formats, batch commands, and
machine-readable verification reports.

Exit codes: 0 = pass, 1 = property violated, 2 = invalid input,
3 = resource bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import fixtures
from .catcolim import (
    certify_cofinal_quotient,
    colimit_cat,
    comparison_q,
)
from .diagcat import DiagObject, strict_hom_bijection
from .errors import BoundExceeded, FibrelabError, ResourceExceeded
from .fincat import (
    FinFunctor,
    comma,
    identity_functor,
    opposite,
    product,
    validate_category,
)
from .finset import FinFunction, FinSet, SetDiagram, colimit_set, limit_set
from .fibrations import (
    bifibration_check,
    cleavage_from_groth,
    free_cofibration,
    lift_limit,
    search_cleavage,
    verify_split_cofibration,
    verify_split_fibration,
)
from .formulas import (
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
from .grothendieck import (
    CatDiagram,
    groth_co,
    groth_contra,
    guitart_check,
    guitart_hat,
)
from .kan import lan, ran
from .randgen import random_set_diagram
from .report import (
    VerificationReport,
    failed,
    invalid_input,
    passed,
    resource_exceeded,
)

EXIT_CODES = {
    "pass": 0,
    "fail": 1,
    "invalid_input": 2,
    "resource_exceeded": 3,
}


# -- serialization -----------------------------------------------------------

def _load(path):
    with open(path) as fh:
        return json.load(fh)


def load_category(raw):
    return validate_category(raw)


def load_functor(raw):
    src = load_category(raw["source"])
    tgt = load_category(raw["target"])
    return FinFunctor(
        src, tgt, raw["on_objects"], raw["on_morphisms"]
    ).check()


def functor_to_json(f):
    return {
        "format": "fibrelab/1",
        "source": f.source.to_dict(),
        "target": f.target.to_dict(),
        "on_objects": dict(f.on_objects),
        "on_morphisms": dict(f.on_morphisms),
    }


def load_set_diagram(raw):
    shape = load_category(raw["shape"])
    sets = {a: FinSet(tuple(v)) for a, v in raw["sets"].items()}
    functions = {
        m: FinFunction(sets[shape.dom(m)], sets[shape.cod(m)], mapping)
        for m, mapping in raw["functions"].items()
    }
    for m in shape.mor_tokens:
        if shape.is_identity(m) and m not in functions:
            a = shape.dom(m)
            functions[m] = FinFunction(
                sets[a], sets[a], {e: e for e in sets[a]}
            )
    return SetDiagram(shape, sets, functions).check()


def set_diagram_to_json(x):
    return {
        "format": "fibrelab/1",
        "shape": x.shape.to_dict(),
        "sets": {a: list(x.sets[a]) for a in x.shape.objects},
        "functions": {
            m: dict(x.functions[m].mapping)
            for m in x.shape.mor_tokens
            if not x.shape.is_identity(m)
        },
    }


def load_cat_diagram(raw):
    base = load_category(raw["base"])
    fibres = {a: load_category(v) for a, v in raw["fibres"].items()}
    variance = raw.get("variance", "covariant")
    transitions = {}
    for u, spec in raw.get("transitions", {}).items():
        if spec == "id":
            transitions[u] = "id"
            continue
        src, tgt = (
            (base.dom(u), base.cod(u))
            if variance == "covariant"
            else (base.cod(u), base.dom(u))
        )
        transitions[u] = FinFunctor(
            fibres[src], fibres[tgt], spec["on_objects"], spec["on_morphisms"]
        )
    return CatDiagram(base, fibres, transitions, variance).check()


def cat_diagram_to_json(phi):
    out = {
        "format": "fibrelab/1",
        "kind": "cat-diagram",
        "base": phi.shape.to_dict(),
        "variance": phi.variance,
        "fibres": {a: phi.fibres[a].to_dict() for a in phi.shape.objects},
        "transitions": {},
    }
    for u in phi.shape.mor_tokens:
        if phi.shape.is_identity(u):
            continue
        t = phi.transition(u)
        out["transitions"][u] = {
            "on_objects": dict(t.on_objects),
            "on_morphisms": dict(t.on_morphisms),
        }
    return out


# -- output ------------------------------------------------------------------

def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(args, report, started):
    if not args.no_timing:
        report.stats["elapsed_s"] = round(time.time() - started, 3)
    _emit(args, report.to_dict(include_timing=not args.no_timing))
    return EXIT_CODES[report.status]


# -- commands ----------------------------------------------------------------

def _cmd_validate(args):
    started = time.time()
    try:
        c = load_category(_load(args.path))
    except (FibrelabError, KeyError, ValueError) as exc:
        return _finish(
            args, invalid_input("validate", {"error": str(exc)}), started
        )
    return _finish(
        args,
        passed("validate", objects=len(c.objects), morphisms=len(c.morphisms)),
        started,
    )


def _cmd_opposite(args):
    c = load_category(_load(args.path))
    _emit(args, opposite(c).to_dict())
    return 0


def _cmd_product(args):
    a = load_category(_load(args.left))
    b = load_category(_load(args.right))
    _emit(args, product(a, b).to_dict())
    return 0


def _cmd_comma(args):
    f = load_functor(_load(args.left))
    g = load_functor(_load(args.right))
    _emit(args, comma(f, g).category.to_dict())
    return 0


def _cmd_colimit_set(args):
    started = time.time()
    x = load_set_diagram(_load(args.path))
    if args.dual:
        try:
            cone = limit_set(x)
        except ResourceExceeded as exc:
            return _finish(
                args,
                resource_exceeded("limit-set", {"error": str(exc)}),
                started,
            )
        witness = {
            "apex": list(cone.apex),
            "legs": {a: dict(cone.legs[a].mapping) for a in x.shape.objects},
        }
        return _finish(
            args, passed("limit-set", witness=witness, size=len(cone.apex)), started
        )
    cocone = colimit_set(x)
    witness = {
        "apex": list(cocone.apex),
        "legs": {a: dict(cocone.legs[a].mapping) for a in x.shape.objects},
    }
    return _finish(
        args,
        passed("colimit-set", witness=witness, size=len(cocone.apex)),
        started,
    )


def _cmd_kan(args):
    started = time.time()
    f = load_functor(_load(args.functor))
    x = load_set_diagram(_load(args.diagram))
    result = ran(f, x) if args.dual else lan(f, x)
    name = "ran" if args.dual else "lan"
    return _finish(
        args,
        passed(
            name,
            witness={"extension": set_diagram_to_json(result.extension)},
            sizes=sum(len(s) for s in result.extension.sets.values()),
        ),
        started,
    )


def _cmd_colimit_cat(args):
    started = time.time()
    phi = load_cat_diagram(_load(args.phi))
    try:
        res = colimit_cat(phi, bound=args.bound)
    except BoundExceeded as exc:
        return _finish(
            args,
            resource_exceeded(
                "colimit-cat", {"error": str(exc), "trace": exc.trace}
            ),
            started,
        )
    return _finish(
        args,
        passed(
            "colimit-cat",
            witness={"colimit": res.colimit.to_dict()},
            **res.saturation_stats,
        ),
        started,
    )


def _cmd_grothendieck(args):
    phi = load_cat_diagram(_load(args.phi))
    gr = groth_contra(phi) if args.dual else groth_co(phi)
    _emit(args, gr.total.to_dict())
    return 0


def _cmd_guitart(args):
    started = time.time()
    phi = load_cat_diagram(_load(args.phi))
    t = load_set_diagram(_load(args.t))
    hat = guitart_hat(phi, t)
    back = guitart_check(hat)
    if back.sets != t.sets or any(
        back.functions[m] != t.functions[m] for m in t.shape.mor_tokens
    ):
        return _finish(
            args, failed("guitart", {"round_trip": "check∘hat ≠ id"}), started
        )
    return _finish(
        args,
        passed("guitart", members=len(phi.shape.objects)),
        started,
    )


def _cmd_check_fibration(args, direction):
    started = time.time()
    p = load_functor(_load(args.path))
    data = search_cleavage(p, direction)
    if data is None:
        return _finish(
            args,
            failed("check-%s" % direction, {"missing_liftings": True}),
            started,
        )
    verify = (
        verify_split_fibration
        if direction == "fibration"
        else verify_split_cofibration
    )
    report, _ = verify(data)
    report.check_name = "check-%s" % direction
    return _finish(args, report, started)


def _cmd_bifibration(args):
    started = time.time()
    phi = load_cat_diagram(_load(args.phi))
    gr = groth_co(phi)
    delta = cleavage_from_groth(gr)
    theta = search_cleavage(gr.projection, "fibration")
    if theta is None:
        return _finish(
            args,
            failed("bifibration", {"no_cartesian_liftings": True}),
            started,
        )
    try:
        witness = bifibration_check(theta, delta)
    except FibrelabError as exc:
        return _finish(args, failed("bifibration", {"error": str(exc)}), started)
    return _finish(
        args,
        passed(
            "bifibration",
            units=len(witness.units),
            counits=len(witness.counits),
        ),
        started,
    )


def _cmd_lift_limit(args):
    started = time.time()
    phi = load_cat_diagram(_load(args.phi))
    f = load_functor(_load(args.f))
    gr = groth_co(phi)
    delta = cleavage_from_groth(gr)
    theta = search_cleavage(gr.projection, "fibration")
    if theta is None:
        return _finish(
            args, failed("lift-limit", {"no_cartesian_liftings": True}), started
        )
    try:
        cone, report = lift_limit(theta, delta, f)
    except FibrelabError as exc:
        return _finish(args, failed("lift-limit", {"error": str(exc)}), started)
    report.check_name = "lift-limit"
    report.witness = report.witness or {"apex": cone.apex}
    return _finish(args, report, started)


def _cmd_free_cofibration(args):
    started = time.time()
    p = load_functor(_load(args.path))
    free = free_cofibration(p)
    report, _ = verify_split_cofibration(cleavage_from_groth(free.result))
    report.check_name = "free-cofibration"
    report.stats["total_objects"] = len(free.result.total.objects)
    report.stats["total_morphisms"] = len(free.result.total.morphisms)
    return _finish(args, report, started)


def _cmd_strictify(args):
    started = time.time()
    x = load_functor(_load(args.x))
    y = load_functor(_load(args.y))
    dx = DiagObject(x.source, x, "cat")
    dy = DiagObject(y.source, y, "cat")
    report = strict_hom_bijection(dx, dy)
    report.check_name = "strictify"
    return _finish(args, report, started)


def _cmd_comparison_q(args):
    started = time.time()
    phi = load_cat_diagram(_load(args.phi))
    try:
        res = colimit_cat(phi, bound=args.bound)
    except BoundExceeded as exc:
        return _finish(
            args,
            resource_exceeded("comparison-q", {"error": str(exc)}),
            started,
        )
    q = comparison_q(phi, res)
    report = certify_cofinal_quotient(q)
    report.check_name = "comparison-q"
    return _finish(args, report, started)


def _formula_command(args, run):
    started = time.time()
    try:
        report = run()
    except BoundExceeded as exc:
        return _finish(
            args,
            resource_exceeded(args.command, {"error": str(exc)}),
            started,
        )
    except ResourceExceeded as exc:
        return _finish(
            args,
            resource_exceeded(args.command, {"error": str(exc)}),
            started,
        )
    report.check_name = args.command
    return _finish(args, report, started)


def _cmd_check_cdf(args):
    phi = load_cat_diagram(_load(args.phi))
    x = load_set_diagram(_load(args.x))
    if args.dual:
        return _formula_command(
            args, lambda: check_limit_recomposition(phi, x, args.bound)
        )
    return _formula_command(args, lambda: check_cdf(phi, x, args.bound))


def _cmd_check_tfcf(args):
    phi = load_cat_diagram(_load(args.phi))
    t = load_set_diagram(_load(args.t))
    if args.dual:
        return _formula_command(args, lambda: check_twisted_limit(phi, t))
    return _formula_command(args, lambda: check_tfcf(phi, t))


def _cmd_check_fubini(args):
    d_cat = load_category(_load(args.d))
    e_cat = load_category(_load(args.e))
    t = load_set_diagram(_load(args.t))
    return _formula_command(args, lambda: check_fubini(d_cat, e_cat, t))


def _cmd_check_general_cdf(args):
    phi = load_cat_diagram(_load(args.phi))
    t = load_set_diagram(_load(args.t))
    if args.dual:
        fam = backward_hat(phi, t)
        return _formula_command(
            args, lambda: check_general_limit_recomposition(fam, args.bound)
        )
    fam = guitart_hat(phi, t)
    return _formula_command(args, lambda: check_general_cdf(fam, args.bound))


# -- corpus ------------------------------------------------------------------

def _corpus_category(name, c, results):
    results.append(("validate", name, passed("validate")))


def _corpus_cat_diagram(name, phi, args, results):
    from .fibrations import reconstitute

    if phi.variance != "covariant":
        return
    gr = groth_co(phi)
    rep = reconstitute(cleavage_from_groth(gr))
    results.append(("grothendieck-round-trip", name, rep))
    t = random_set_diagram(random.Random(args.seed), gr.total)
    hat = guitart_hat(phi, t)
    back = guitart_check(hat)
    ok = back.sets == t.sets and all(
        back.functions[m] == t.functions[m] for m in t.shape.mor_tokens
    )
    results.append(
        (
            "guitart-round-trip",
            name,
            passed("guitart") if ok else failed("guitart", {"fixture": name}),
        )
    )
    try:
        res = colimit_cat(phi, bound=args.bound)
    except BoundExceeded as exc:
        results.append(
            (
                "colimit-cat",
                name,
                resource_exceeded("colimit-cat", {"error": str(exc)}),
            )
        )
        return
    results.append(("colimit-cat", name, passed("colimit-cat")))
    q = comparison_q(phi, res)
    results.append(("comparison-q", name, certify_cofinal_quotient(q)))
    rng = random.Random(args.seed)
    for _ in range(max(args.cases, 1)):
        x = random_set_diagram(rng, res.colimit)
        results.append(("check-cdf", name, check_cdf(phi, x, kres=res)))


def _cmd_corpus(args):
    started = time.time()
    results = []
    if args.dir:
        if not os.path.isdir(args.dir):
            report = invalid_input("corpus", {"missing_directory": args.dir})
            return _finish(args, report, started)
        for fname in sorted(os.listdir(args.dir)):
            if not fname.endswith(".json"):
                continue
            raw = _load(os.path.join(args.dir, fname))
            kind = raw.get("kind", "category")
            name = os.path.splitext(fname)[0]
            try:
                if kind == "cat-diagram":
                    _corpus_cat_diagram(
                        name, load_cat_diagram(raw), args, results
                    )
                else:
                    _corpus_category(name, load_category(raw), results)
            except FibrelabError as exc:
                results.append(
                    (kind, name, invalid_input(kind, {"error": str(exc)}))
                )
    else:
        for name, c in fixtures.all_categories().items():
            _corpus_category(name, c, results)
        for name, phi in fixtures.all_cat_diagrams().items():
            _corpus_cat_diagram(name, phi, args, results)
    matrix = {}
    for check, name, rep in results:
        matrix.setdefault(check, {})[name] = rep.status
    n_fail = sum(1 for _, _, r in results if r.status in ("fail", "invalid_input"))
    summary = {
        "format": "fibrelab/1",
        "check_name": "corpus",
        "status": "pass" if n_fail == 0 else "fail",
        "matrix": matrix,
        "counts": {
            "total": len(results),
            "fail": n_fail,
            "resource_exceeded": sum(
                1 for _, _, r in results if r.status == "resource_exceeded"
            ),
        },
        "seed": args.seed,
    }
    if not args.no_timing:
        summary["elapsed_s"] = round(time.time() - started, 3)
    _emit(args, summary)
    return 0 if n_fail == 0 else 1


def _cmd_explain(args):
    try:
        raw = _load(args.path)
        status = raw["status"]
        name = raw["check_name"]
    except (OSError, KeyError, ValueError, json.JSONDecodeError):
        sys.stdout.write("not a readable report file\n")
        return 2
    lines = ["%s: %s" % (name, status.upper())]
    stats = raw.get("stats") or {}
    if stats:
        lines.append(
            "  sizes: "
            + ", ".join("%s=%s" % (k, v) for k, v in sorted(stats.items()))
        )
    if raw.get("seed") is not None:
        lines.append("  seed: %s" % raw["seed"])
    witness = raw.get("witness")
    if status == "resource_exceeded" and witness and "trace" in witness:
        lines.append("  growth trace: %s" % witness["trace"])
    elif witness and status != "pass":
        lines.append("  witness:")
        for k, v in sorted(witness.items()):
            lines.append("    %s: %s" % (k, v))
    if "matrix" in raw:
        for check, row in sorted(raw["matrix"].items()):
            lines.append(
                "  %s: %s"
                % (check, ", ".join("%s=%s" % kv for kv in sorted(row.items())))
            )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


# -- argument parsing --------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="fibrelab",
        description="Finite-category-theory engine: verify decomposition "
        "formulas, fibration structure, and Kan extensions on explicit data.",
    )
    parser.add_argument("--output", help="write the report/result to a file")
    parser.add_argument(
        "--no-timing",
        action="store_true",
        help="omit elapsed time for byte-identical reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", _cmd_validate, help="validate a category file")
    p.add_argument("path")
    p = add("opposite", _cmd_opposite, help="opposite category")
    p.add_argument("path")
    p = add("product", _cmd_product, help="product of two categories")
    p.add_argument("left")
    p.add_argument("right")
    p = add("comma", _cmd_comma, help="comma category of two functors")
    p.add_argument("left")
    p.add_argument("right")
    p = add("colimit-set", _cmd_colimit_set, help="colimit of a set diagram")
    p.add_argument("path")
    p.add_argument("--dual", action="store_true", help="compute the limit")
    p = add("limit-set", _cmd_colimit_set, help="limit of a set diagram")
    p.add_argument("path")
    p.set_defaults(dual=True)
    p = add("kan", _cmd_kan, help="pointwise Kan extension")
    p.add_argument("--functor", required=True)
    p.add_argument("--diagram", required=True)
    p.add_argument("--dual", action="store_true", help="right Kan extension")
    p = add("colimit-cat", _cmd_colimit_cat, help="colimit of categories")
    p.add_argument("--phi", required=True)
    p.add_argument("--bound", type=int, default=10000)
    p = add("grothendieck", _cmd_grothendieck, help="total category of a diagram")
    p.add_argument("--phi", required=True)
    p.add_argument("--dual", action="store_true", help="contravariant variant")
    p = add("guitart", _cmd_guitart, help="hat/check round trip")
    p.add_argument("--phi", required=True)
    p.add_argument("--t", required=True)
    p = add(
        "check-fibration",
        lambda a: _cmd_check_fibration(a, "fibration"),
        help="search a cleavage and verify the split laws",
    )
    p.add_argument("path")
    p = add(
        "check-cofibration",
        lambda a: _cmd_check_fibration(a, "cofibration"),
        help="search a cocleavage and verify the split laws",
    )
    p.add_argument("path")
    p = add("bifibration", _cmd_bifibration, help="units, counits, hom bijections")
    p.add_argument("--phi", required=True)
    p = add("lift-limit", _cmd_lift_limit, help="lift a base limit along a bifibration")
    p.add_argument("--phi", required=True)
    p.add_argument("--f", required=True)
    p = add("free-cofibration", _cmd_free_cofibration, help="free split cofibration")
    p.add_argument("path")
    p = add("strictify", _cmd_strictify, help="strictification hom bijection")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = add("comparison-q", _cmd_comparison_q, help="cofinal quotient certificate")
    p.add_argument("--phi", required=True)
    p.add_argument("--bound", type=int, default=10000)
    p = add("check-cdf", _cmd_check_cdf, help="colimit decomposition formula")
    p.add_argument("--phi", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--bound", type=int, default=10000)
    p.add_argument("--dual", action="store_true", help="limit recomposition")
    p = add("check-tfcf", _cmd_check_tfcf, help="twisted Fubini formula")
    p.add_argument("--phi", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--dual", action="store_true", help="twisted limit variant")
    p = add("check-fubini", _cmd_check_fubini, help="Fubini over a product shape")
    p.add_argument("--d", required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--t", required=True)
    p = add(
        "check-general-cdf",
        _cmd_check_general_cdf,
        help="general decomposition for a family built from a total diagram",
    )
    p.add_argument("--phi", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--bound", type=int, default=10000)
    p.add_argument("--dual", action="store_true", help="general recomposition")
    p = add("corpus", _cmd_corpus, help="run the standard checks over fixtures")
    p.add_argument("dir", nargs="?", help="fixture directory (default: built-in)")
    p.add_argument("--bound", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=3)
    p = add("explain", _cmd_explain, help="render a report file as text")
    p.add_argument("path")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (FibrelabError, AssertionError) as exc:
        sys.stdout.write(
            json.dumps(
                {
                    "format": "fibrelab/1",
                    "check_name": args.command,
                    "status": "invalid_input",
                    "witness": {"error": str(exc)},
                },
                indent=2,
                sort_keys=True,
            )
            + "\n"
        )
        return 2
    except FileNotFoundError as exc:
        sys.stdout.write("missing input file: %s\n" % exc.filename)
        return 2


if __name__ == "__main__":
    sys.exit(main())
