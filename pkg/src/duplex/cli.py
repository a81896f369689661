"""Batch front end: ``duplex <verb> <inputs> [flags]``.

Every run prints one canonical JSON verdict on stdout and exits with

    0  valid / true
    1  invalid / false (the verdict carries a witness)
    2  input error (unreadable or malformed JSON, unknown names, bad shapes)
    3  budget or cap exhausted

Input formats are described in the README; categories use the layout of
:mod:`duplex.io`, and anywhere a category is expected ``{"fixture": name}``
picks one from the built-in catalog.
"""

import argparse
import json
import random
import sys

from . import __version__
from .budget import as_budget
from .errors import (
    BudgetExceeded,
    CoalgebraInvalid,
    DuplexError,
    GroupoidTooLarge,
    InvalidCategory,
    TheoremViolation,
)
from .io import SCHEMA, InputError, canonical_dumps, category_from_json, digest, functor_from_json

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Outcome(Exception):
    """Raised by a verb to finish with a verdict."""

    def __init__(self, ok, result, witness=None):
        super().__init__(ok)
        self.ok, self.result, self.witness = ok, result, witness


def _plain(obj):
    """Make witnesses and payloads JSON-safe (tuples, sets, dataclasses, ints as keys)."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((_plain(v) for v in obj), key=canonical_dumps)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return repr(obj)


# -- input decoding --------------------------------------------------------


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _need(doc, key, what="document"):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"{what} lacks {key!r}")
    return doc[key]


def _category(doc, validate=True):
    if isinstance(doc, dict) and "fixture" in doc:
        from .fixtures import extended_fixtures
        cats = extended_fixtures(10**9)
        if doc["fixture"] not in cats:
            raise InputError(f"unknown fixture category {doc['fixture']!r}")
        return cats[doc["fixture"]]
    if not isinstance(doc, dict):
        raise InputError("a category must be a JSON object")
    return category_from_json(doc, validate)


def _obj(C, name):
    try:
        return C.obj_names.index(str(name))
    except ValueError:
        raise InputError(f"unknown object {name!r}") from None


def _mor(C, name):
    try:
        return C.mor_names.index(str(name))
    except ValueError:
        raise InputError(f"unknown morphism {name!r}") from None


def _endofunctor(C, doc):
    return functor_from_json(doc, C, C)


def _nat(F, G, doc):
    from .fincat import NatTrans
    D = F.cod
    try:
        return NatTrans(F, G, [_mor(D, doc[n]) for n in F.dom.obj_names])
    except (KeyError, TypeError) as exc:
        raise InputError(f"natural transformation incomplete: {exc!r}") from exc


def _comonad(C, doc):
    from .fincat import Comonad, identity_functor
    G = _endofunctor(C, _need(doc, "endo", "comonad"))
    delta = _nat(G, G.then(G), _need(doc, "comult", "comonad"))
    eps = _nat(G, identity_functor(C), _need(doc, "counit", "comonad"))
    return Comonad(C, G, delta, eps)


def _law(doc):
    from .fincat import DistributiveLaw, check_comonad, check_distributive_law
    C = _category(_need(doc, "category", "law"))
    g, h = _comonad(C, _need(doc, "g", "law")), _comonad(C, _need(doc, "h", "law"))
    for name, c in (("g", g), ("h", h)):
        r = check_comonad(c)
        if not r:
            raise Outcome(False, {"valid": False, "comonad": name, "failure": r.failure}, r.witness)
    law = DistributiveLaw(g, h, _nat(g.endo.then(h.endo), h.endo.then(g.endo), _need(doc, "lam", "law")))
    r = check_distributive_law(law)
    if not r:
        raise Outcome(False, {"valid": False, "failure": r.failure}, r.witness)
    return law


def _coalgebras(law, doc):
    from .bohmstefan import LeftCoalgebra, RightCoalgebra
    A = law.g.base
    right, left = _need(doc, "right", "coalgebras"), _need(doc, "left", "coalgebras")
    r = RightCoalgebra(law, _obj(A, _need(right, "x")), _mor(A, _need(right, "xi")))
    P = _category(left["target"]) if "target" in left else A
    f = functor_from_json(_need(left, "f"), A, P)
    phi = _nat(law.h.endo.then(f), law.g.endo.then(f), _need(left, "phi"))
    return LeftCoalgebra(law, f, phi), r


def _set_family(doc, N):
    from .duplicial import DuplicialFamily
    from .simplicial import SetTarget, TruncAugSimplicial

    def levels(key):
        return {int(k): v for k, v in _need(doc, key, "set-valued object").items()}

    def maps(tables):
        return tuple(tuple(int(v) for v in m) for m in tables)

    try:
        lv = levels("levels")
        aug = bool(doc.get("augmented", False))
        top = max(lv)
        X = TruncAugSimplicial(SetTarget(), top, {n: int(k) for n, k in lv.items()},
                               {n: maps(v) for n, v in levels("faces").items()},
                               {n: maps(v) for n, v in levels("degens").items()}, aug)
        t = {n: tuple(int(v) for v in m) for n, m in levels("t").items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed set-valued family: {exc!r}") from exc
    return DuplicialFamily(X, t)


def _nerve_data(C, doc):
    from .nerve import NerveDuplicialData
    try:
        tobj = tuple(_obj(C, doc["t_obj"][n]) for n in C.obj_names)
        tmor = tuple(_mor(C, doc["t_mor"][n]) for n in C.mor_names)
    except (KeyError, TypeError) as exc:
        raise InputError(f"nerve data incomplete: {exc!r}") from exc
    return NerveDuplicialData(tobj, tmor)


def _ring(doc):
    from .hochschild import FinRing, ring_fixtures, zmod_ring
    if "fixture" in doc:
        rings = ring_fixtures()
        if doc["fixture"] not in rings:
            raise InputError(f"unknown fixture ring {doc['fixture']!r}")
        return rings[doc["fixture"]]
    if "zmod" in doc:
        return zmod_ring(int(doc["zmod"]))
    return FinRing(_need(doc, "add", "ring"), _need(doc, "mul", "ring"),
                   doc.get("zero", 0), doc.get("one", 1), doc.get("name"))


def _bimodule(A, doc):
    from .hochschild import FinBimoduleAb, regular_bimodule
    if doc.get("regular"):
        return regular_bimodule(A)
    return FinBimoduleAb(A, _need(doc, "add", "bimodule"), _need(doc, "left", "bimodule"),
                         _need(doc, "right", "bimodule"), doc.get("zero", 0), doc.get("name"))


def _moncat(doc):
    from .laxmod import StrictMonCat, check_monoidal, discrete_monoidal, monoidal_fixtures
    if "fixture" in doc:
        fx = monoidal_fixtures()
        if doc["fixture"] not in fx:
            raise InputError(f"unknown monoidal fixture {doc['fixture']!r}")
        return fx[doc["fixture"]]
    if "monoid" in doc:
        M = discrete_monoidal(doc["monoid"], int(doc.get("unit", 0)), doc.get("name"))
    else:
        C = _category(_need(doc, "category", "monoidal category"))
        try:
            tobj = {(a, b): _obj(C, doc["tensor_obj"][a][b]) for a in C.objects for b in C.objects}
            tmor = {(u, v): _mor(C, doc["tensor_mor"][u][v]) for u in C.morphisms for v in C.morphisms}
        except (KeyError, IndexError, TypeError) as exc:
            raise InputError(f"tensor table incomplete: {exc!r}") from exc
        M = StrictMonCat(C, tobj, tmor, _obj(C, _need(doc, "unit")), name=doc.get("name"))
    r = check_monoidal(M)
    if not r:
        raise Outcome(False, {"valid": False, "failure": r.failure}, r.witness)
    return M


# -- verbs -----------------------------------------------------------------


def cmd_check_category(args, docs):
    from .fincat import validate_category
    C = _category(docs[0], validate=False)
    try:
        validate_category(C)
    except InvalidCategory as exc:
        raise Outcome(False, {"valid": False, "failure": str(exc)}, exc.witness) from None
    return True, {"valid": True, "objects": C.n_obj, "morphisms": C.n_mor, "groupoid": C.is_groupoid()}


def cmd_check_comonad(args, docs):
    from .fincat import check_comonad
    doc = docs[0]
    C = _category(_need(doc, "category", "comonad"))
    r = check_comonad(_comonad(C, doc))
    if not r:
        raise Outcome(False, {"valid": False, "failure": r.failure}, r.witness)
    return True, {"valid": True}


def _family(args, doc):
    from .nerve import nerve_family
    if "nerve" in doc:
        C = _category(doc["nerve"])
        D = _nerve_data(C, doc)
        F = nerve_family(C, D.t_obj, D.t_mor, args.trunc)
        if F is None:
            raise Outcome(False, {"verdict": f"invalid@N={args.trunc}", "kind": "invalid",
                                  "truncation": args.trunc, "failure": "t does not map chains to chains"})
        return F
    return _set_family(_need(doc, "sets", "family"), args.trunc)


def cmd_check_duplicial(args, docs):
    from .duplicial import classify_duplicial
    c = classify_duplicial(_family(args, docs[0]))
    result = {"verdict": str(c), "kind": c.kind, "truncation": c.N}
    if not c.valid:
        raise Outcome(False, {**result, "failure": c.report.failure}, c.report.witness)
    if c.report.failure:
        result["first_failure_above"] = {"failure": c.report.failure, "witness": _plain(c.report.witness)}
    return True, result


def cmd_compose_op(args, docs):
    from .dupcat import compose_duplicial, format_operator, parse_operator
    ops = [parse_operator(text) for text in args.operators]
    out = ops[-1]
    for o in reversed(ops[:-1]):
        out = compose_duplicial(o, out)
    return True, {"operands": [format_operator(o) for o in ops], "normal_form": format_operator(out),
                  "t_power": out.k, "values": list(out.simp.values)}


def _family_payload(F):
    """Levels, faces, degeneracies and ``t`` of a family valued in a category, by name."""
    X, P = F.base, F.target.cat
    ob, mo = P.obj_names, P.mor_names
    return {"levels": {str(n): ob[v] for n, v in sorted(X.levels.items())},
            "faces": {str(n): [mo[d] for d in v] for n, v in sorted(X.faces.items())},
            "degens": {str(n): [mo[s] for s in v] for n, v in sorted(X.degens.items())},
            "t": {str(n): mo[t] for n, t in sorted(F.t.items())}}


def cmd_bohm_stefan(args, docs):
    from .bohmstefan import bs_operator
    from .duplicial import classify_duplicial
    law = _law(docs[0])
    l, r = _coalgebras(law, docs[1])
    F = bs_operator(l, r, args.trunc)
    c = classify_duplicial(F)
    result = {"verdict": str(c), "family": _family_payload(F)}
    if not c.valid:
        raise Outcome(False, result, c.report.witness)
    return True, result


def cmd_bs_cap(args, docs):
    from .duplicial import classify_duplicial
    from .laxmod import cap_comparison
    law = _law(docs[0])
    l, r = _coalgebras(law, docs[1])
    cmp = cap_comparison(l, r, args.trunc)
    c = classify_duplicial(cmp["family"])
    result = {"verdict": str(c), "equals_bs_operator": cmp["equals_bs_operator"],
              "equals_reversed": cmp["equals_reversed"], "family": _family_payload(cmp["family"])}
    if not c.valid:
        raise Outcome(False, result, c.report.witness)
    return True, result


def cmd_h0(args, docs):
    from .hochschild import zeroth_homology
    A = _ring(docs[0])
    H = zeroth_homology(A, _bimodule(A, docs[1]))
    return True, {"invariant_factors": list(H.invariant_factors), "free_rank": H.free_rank}


def cmd_h0_co(args, docs):
    from .hochschild import zeroth_cohomology
    A = _ring(docs[0])
    H = zeroth_cohomology(A, _bimodule(A, docs[1]))
    return True, {"elements": list(H.elements), "invariant_factors": list(H.invariant_factors)}


def cmd_lax_centre(args, docs):
    from .laxmod import lax_h0, regular_bimodule
    M = _moncat(docs[0])
    H = lax_h0(regular_bimodule(M), as_budget(args.budget))
    A = M.base
    objs = [{"object": A.obj_names[o.x],
             "half_braiding": {A.obj_names[a]: (None if m is None else A.mor_names[m]) for a, m in enumerate(o.xi)}}
            for o in H.objects]
    return True, {"objects": objs, "morphisms": H.category.n_mor, "count": len(objs)}


def cmd_nerve_check(args, docs):
    from .nerve import check_nerve_data, classify_category_structures
    C = _category(docs[0])
    if len(docs) > 1:
        r, _ = check_nerve_data(C, _nerve_data(C, docs[1]), args.trunc)
        if not r:
            raise Outcome(False, {"valid": False, "failure": r.failure, "truncation": args.trunc}, r.witness)
        return True, {"valid": True, **r.details}
    rep = classify_category_structures(C, args.trunc, as_budget(args.budget))
    return rep.admits_duplicial, rep.as_dict()


def cmd_pi1(args, docs):
    from .nerve import pi1
    C = _category(docs[0])
    P = pi1(C, cap=args.cap)
    comps = [{"base": base, "generators": list(gens), "vertex_group_order": order}
             for base, gens, order in P.presentations]
    return True, {"objects": P.groupoid.n_obj, "morphisms": P.groupoid.n_mor, "components": comps,
                  "p": list(P.p.mor)}


def cmd_monoidal_check(args, docs):
    from .nerve import check_monoidal_duplicial
    M = _moncat(docs[0])
    A = M.base
    ds = [_obj(A, args.d)] if args.d is not None else list(A.objects)
    reports = {A.obj_names[d]: check_monoidal_duplicial(M, d) for d in ds}
    payload = {k: r.as_dict() for k, r in reports.items()}
    if args.d is not None:
        r = next(iter(reports.values()))
        return r.duplicial, {"d": args.d, **payload[args.d]}
    bad = [k for k, r in reports.items() if not all(r.implications().values())]
    if bad:
        raise Outcome(False, {"reports": payload}, bad)
    return True, {"reports": payload}


# -- sweeps ----------------------------------------------------------------


def _sweep_bohm_stefan(args, budget):
    from .bohmstefan import soundness_sweep
    from .fixtures import extended_fixtures
    n, failures = soundness_sweep(extended_fixtures(8), args.trunc, budget)
    return n, [f[:2] for f in failures]


def _sweep_rewriting(args, budget):
    from .dupcat import compose_duplicial, random_operator, soundness_sweep
    from .fixtures import category_fixtures
    from .nerve import canonical_groupoid_data, nerve_family
    cats = category_fixtures()
    n, failures = 0, []
    for name in ("Z2", "Z3"):
        F = nerve_family(cats[name], *canonical_groupoid_data(cats[name]), args.trunc)
        r = soundness_sweep(F, args.trunc)
        n += r.details.get("pairs", 0)
        if not r:
            failures.append((name, r.failure, r.witness))
    rng = random.Random(args.seed)
    for _ in range(1000):
        degs = [rng.randint(0, 6) for _ in range(4)]
        c = random_operator(rng, degs[0], degs[1])
        b = random_operator(rng, degs[1], degs[2])
        a = random_operator(rng, degs[2], degs[3])
        budget.spend()
        n += 1
        if compose_duplicial(a, compose_duplicial(b, c)) != compose_duplicial(compose_duplicial(a, b), c):
            failures.append(("associativity", repr((a, b, c))))
    return n, failures


def _sweep_nerve(args, budget):
    from .fixtures import extended_fixtures
    from .nerve import classify_category_structures
    n, failures = 0, []
    for name, C in extended_fixtures(6).items():
        n += 1
        try:
            classify_category_structures(C, args.trunc, budget)
        except TheoremViolation as exc:
            failures.append((name, str(exc)))
    return n, failures


def _sweep_monoidal(args, budget):
    from .laxmod import monoidal_fixtures
    from .nerve import check_monoidal_duplicial
    n, failures = 0, []
    for name, M in monoidal_fixtures().items():
        for d in M.base.objects:
            n += 1
            budget.spend()
            imp = check_monoidal_duplicial(M, d).implications()
            failures += [(name, d, k) for k, v in imp.items() if not v]
    return n, failures


SUITES = {"bohm-stefan": _sweep_bohm_stefan, "rewriting": _sweep_rewriting,
          "nerve": _sweep_nerve, "monoidal": _sweep_monoidal}


def cmd_sweep(args, docs):
    budget = as_budget(args.budget)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    out, ok = {}, True
    for name in names:
        n, failures = SUITES[name](args, budget)
        out[name] = {"instances": n, "failures": _plain(failures[:20]), "failure_count": len(failures)}
        ok = ok and not failures
    return ok, {"suites": out}


# -- driver ----------------------------------------------------------------

VERBS = {
    "check-category": (cmd_check_category, ["category"]),
    "check-comonad": (cmd_check_comonad, ["comonad"]),
    "check-duplicial": (cmd_check_duplicial, ["family"]),
    "compose-op": (cmd_compose_op, []),
    "bohm-stefan": (cmd_bohm_stefan, ["law", "coalgebras"]),
    "bs-cap": (cmd_bs_cap, ["law", "coalgebras"]),
    "h0": (cmd_h0, ["ring", "bimodule"]),
    "h0-co": (cmd_h0_co, ["ring", "bimodule"]),
    "lax-centre": (cmd_lax_centre, ["moncat"]),
    "nerve-check": (cmd_nerve_check, ["category", "data?"]),
    "pi1": (cmd_pi1, ["category"]),
    "monoidal-check": (cmd_monoidal_check, ["moncat"]),
    "sweep": (cmd_sweep, []),
}


def build_parser():
    p = argparse.ArgumentParser(prog="duplex", description="Checks for duplicial structure on finite data.")
    p.add_argument("--version", action="version", version=f"duplex {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb, (_, inputs) in VERBS.items():
        s = sub.add_parser(verb)
        for name in inputs:
            if name.endswith("?"):
                s.add_argument(name[:-1], nargs="?")
            else:
                s.add_argument(name)
        s.add_argument("--trunc", type=int, default=4, help="truncation N (default 4)")
        s.add_argument("--cap", type=int, default=10**5, help="Pi_1 morphism cap (default 100000)")
        s.add_argument("--budget", type=int, default=10**7, help="enumeration budget (default 10^7)")
        s.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (default 0)")
        if verb == "compose-op":
            s.add_argument("operators", nargs="+", help="operators, leftmost applied last")
        if verb == "monoidal-check":
            s.add_argument("--d", help="dualizing object (default: every object)")
        if verb == "sweep":
            s.add_argument("--suite", choices=["all", *sorted(SUITES)], default="all")
    return p


def _input_paths(args):
    names = [n.rstrip("?") for n in VERBS[args.verb][1]]
    return [getattr(args, n) for n in names if getattr(args, n) is not None]


def run(argv=None):
    """Execute one command line; returns ``(exit_code, verdict_dict)``."""
    args = build_parser().parse_args(argv)
    fn = VERBS[args.verb][0]
    verdict = {
        "schema": SCHEMA,
        "command": args.verb,
        "limits": {"truncation": args.trunc, "cap": args.cap, "budget": args.budget, "seed": args.seed},
        "version": __version__,
    }
    code, witness = EXIT_OK, None
    try:
        docs = [_load(path) for path in _input_paths(args)]
        extra = list(getattr(args, "operators", []) or [])
        if getattr(args, "d", None) is not None:
            extra.append(["d", args.d])
        if getattr(args, "suite", None) is not None:
            extra.append(["suite", args.suite])
        verdict["inputs"] = digest([docs, extra])
        try:
            ok, result = fn(args, docs)
        except Outcome as o:
            ok, result, witness = o.ok, o.result, o.witness
        code = EXIT_OK if ok else EXIT_INVALID
        verdict["result"] = _plain(result)
    except (BudgetExceeded, GroupoidTooLarge) as exc:
        code, witness = EXIT_BUDGET, exc.witness
        verdict["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except (CoalgebraInvalid, TheoremViolation) as exc:
        code, witness = EXIT_INVALID, exc.witness
        verdict["result"] = {"valid": False, "failure": str(exc)}
    except (DuplexError, KeyError, TypeError, ValueError, IndexError) as exc:
        code = EXIT_INPUT
        witness = getattr(exc, "witness", None)
        verdict["error"] = {"type": type(exc).__name__, "message": str(exc)}
    verdict.setdefault("inputs", None)
    verdict["ok"] = code == EXIT_OK
    verdict["witness"] = _plain(witness)
    return code, verdict


def main(argv=None):
    code, verdict = run(argv)
    sys.stdout.write(canonical_dumps(verdict) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
