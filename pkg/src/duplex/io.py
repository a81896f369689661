"""JSON documents for categories, functors and natural transformations.

Layout (``"duplex-schema": 1``)::

    {"objects": ["a", "b"],
     "morphisms": [{"id": "1a", "src": "a", "tgt": "a"}, ...],
     "identity": {"a": "1a", ...},
     "comp": [["g", "f", "gf"], ...]}

``identity`` may be omitted when every object has exactly one endomorphism
whose id is ``"1_<object>"`` or when it is the unique endomorphism acting as
an identity in ``comp``.
"""

import hashlib
import json

from .errors import BadIdentity, DuplexError, MissingComposite
from .fincat import FinCategory, FinFunctor, NatTrans

SCHEMA = 1


class InputError(DuplexError):
    """Malformed document (CLI exit code 2)."""


def category_from_json(doc, validate=True):
    if doc.get("duplex-schema", SCHEMA) != SCHEMA:
        raise InputError(f"unsupported duplex-schema {doc.get('duplex-schema')!r}")
    try:
        objects = [str(o) for o in doc["objects"]]
        obj_id = {o: k for k, o in enumerate(objects)}
        mors = doc["morphisms"]
        names = [str(m["id"]) for m in mors]
        mor_id = {n: k for k, n in enumerate(names)}
        morphisms = [(str(m["id"]), obj_id[str(m["src"])], obj_id[str(m["tgt"])]) for m in mors]
        comp = {}
        for g, f, gf in doc.get("comp", []):
            for n in (g, f, gf):
                if str(n) not in mor_id:
                    raise MissingComposite(f"composite table mentions unknown morphism {n!r}", (g, f))
            comp[mor_id[str(g)], mor_id[str(f)]] = mor_id[str(gf)]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed category document: {exc!r}") from exc
    if len(obj_id) != len(objects) or len(mor_id) != len(names):
        raise InputError("duplicate object or morphism ids")
    if "identity" in doc:
        try:
            identity = [mor_id[str(doc["identity"][o])] for o in objects]
        except KeyError as exc:
            raise BadIdentity(f"identity missing or unknown for {exc}", None) from exc
    else:
        identity = [_infer_identity(x, morphisms, comp) for x in range(len(objects))]
    C = FinCategory(objects, morphisms, identity, comp, name=doc.get("name"))
    if validate:
        from .fincat import validate_category
        validate_category(C)
    return C


def _infer_identity(x, morphisms, comp):
    endos = [k for k, (_, s, t) in enumerate(morphisms) if s == x and t == x]
    for e in endos:
        ok = all(comp.get((e, f)) == f for f, (_, s, t) in enumerate(morphisms) if t == x) and \
            all(comp.get((g, e)) == g for g, (_, s, t) in enumerate(morphisms) if s == x)
        if ok:
            return e
    raise BadIdentity(f"no identity found for object {x}", (x,))


def category_to_json(C):
    return {
        "duplex-schema": SCHEMA,
        "objects": list(C.obj_names),
        "morphisms": [{"id": n, "src": C.obj_names[s], "tgt": C.obj_names[t]}
                      for n, s, t in zip(C.mor_names, C.src, C.tgt)],
        "identity": {C.obj_names[x]: C.mor_names[C.ident[x]] for x in C.objects},
        "comp": [[C.mor_names[g], C.mor_names[f], C.mor_names[gf]]
                 for (g, f), gf in sorted(C.comp.items())],
        **({"name": C.name} if C.name else {}),
    }


def functor_to_json(F):
    C, D = F.dom, F.cod
    return {"obj_map": {C.obj_names[x]: D.obj_names[F.obj[x]] for x in C.objects},
            "mor_map": {C.mor_names[f]: D.mor_names[F.mor[f]] for f in C.morphisms}}


def functor_from_json(doc, C, D):
    oid = {n: k for k, n in enumerate(D.obj_names)}
    mid = {n: k for k, n in enumerate(D.mor_names)}
    try:
        obj = [oid[str(doc["obj_map"][n])] for n in C.obj_names]
        mor = [mid[str(doc["mor_map"][n])] for n in C.mor_names]
    except KeyError as exc:
        raise InputError(f"functor table incomplete: {exc}") from exc
    return FinFunctor(C, D, obj, mor)


def nat_to_json(alpha):
    C, D = alpha.src.dom, alpha.src.cod
    return {C.obj_names[x]: D.mor_names[alpha[x]] for x in C.objects}


def nat_from_json(doc, F, G):
    C, D = F.dom, F.cod
    mid = {n: k for k, n in enumerate(D.mor_names)}
    try:
        return NatTrans(F, G, [mid[str(doc[n])] for n in C.obj_names])
    except KeyError as exc:
        raise InputError(f"natural transformation incomplete: {exc}") from exc


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj):
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()
