"""Named fixture catalog shared by tests, the acceptance suite and the CLI sweep."""

from functools import lru_cache
from itertools import permutations, product

from .fincat import (
    FinCategory,
    cyclic_group_category,
    discrete_category,
    monoid_category,
    parallel_pair,
    poset_category,
    terminal_category,
)


def _is_assoc(m):
    k = range(len(m))
    return all(m[m[a][b]][c] == m[a][m[b][c]] for a in k for b in k for c in k)


def small_monoids(order):
    """All monoids of the given order up to isomorphism, unit = element 0."""
    seen, out = set(), []
    rest = range(1, order)
    cells = [(a, b) for a in rest for b in rest]
    for vals in product(range(order), repeat=len(cells)):
        m = [[(a if b == 0 else b if a == 0 else None) for b in range(order)] for a in range(order)]
        for (a, b), v in zip(cells, vals):
            m[a][b] = v
        if not _is_assoc(m):
            continue
        forms = []
        for p in permutations(rest):
            pi = (0,) + p
            inv = {pi[i]: i for i in range(order)}
            forms.append(tuple(tuple(pi[m[inv[a]][inv[b]]] for b in range(order))
                               for a in range(order)))
        key = min(forms)
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out


def group_table(elements, mul):
    """Multiplication table of a group listed with its unit first."""
    idx = {e: i for i, e in enumerate(elements)}
    return [[idx[mul(a, b)] for b in elements] for a in elements]


def s3_table():
    elements = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    return group_table(elements, lambda p, q: tuple(p[q[i]] for i in range(3)))


def klein_table():
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return group_table(elements, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2))


def codiscrete_category(n):
    """Exactly one arrow between any two objects: a contractible groupoid."""
    pairs = [(a, a) for a in range(n)] + [(a, b) for a in range(n) for b in range(n) if a != b]
    ids = {p: k for k, p in enumerate(pairs)}
    morphisms = [(f"{a}->{b}", a, b) for a, b in pairs]
    comp = {(ids[b, c], ids[a, b]): ids[a, c] for a, b in pairs for (b2, c) in pairs if b2 == b}
    return FinCategory(n, morphisms, list(range(n)), comp, name=f"codiscrete{n}")


def coproduct_category(C, D, name=None):
    """Disjoint union; ids of ``D`` are shifted after those of ``C``."""
    no, nm = C.n_obj, C.n_mor
    morphisms = [(f"L{C.mor_names[f]}", C.src[f], C.tgt[f]) for f in C.morphisms]
    morphisms += [(f"R{D.mor_names[f]}", D.src[f] + no, D.tgt[f] + no) for f in D.morphisms]
    comp = dict(C.comp)
    comp.update({(g + nm, f + nm): gf + nm for (g, f), gf in D.comp.items()})
    ident = list(C.ident) + [i + nm for i in D.ident]
    objects = [f"L{o}" for o in C.obj_names] + [f"R{o}" for o in D.obj_names]
    return FinCategory(objects, morphisms, ident, comp, name=name)


def idempotent_monoid():
    return monoid_category([[0, 1], [1, 1]], names=["1", "e"], name="idempotent")


@lru_cache(maxsize=None)
def _catalog():
    return _build_catalog()


def category_fixtures():
    """Named small categories, all with at most 6 morphisms.

    The catalog covers every monoid of order at most 3 up to isomorphism.
    A fresh dict is returned; the category objects are shared.
    """
    return dict(_catalog())


def _build_catalog():
    cats = {
        "terminal": terminal_category(),
        "discrete2": discrete_category(2),
        "discrete3": discrete_category(3),
        "arrow": poset_category(2, [(0, 1)], name="arrow"),
        "chain3": poset_category(3, [(0, 1), (1, 2)], name="chain3"),
        "span": poset_category(3, [(0, 1), (0, 2)], name="span"),
        "cospan": poset_category(3, [(1, 0), (2, 0)], name="cospan"),
        "codiscrete2": codiscrete_category(2),
        "Z2": cyclic_group_category(2),
        "Z3": cyclic_group_category(3),
        "Z4": cyclic_group_category(4),
        "Z5": cyclic_group_category(5),
        "Z6": cyclic_group_category(6),
        "Z2xZ2": monoid_category(klein_table(), name="Z2xZ2"),
        "S3": monoid_category(s3_table(), name="S3"),
        "idempotent": idempotent_monoid(),
        "parallel_pair": parallel_pair(),
        "Z2+terminal": coproduct_category(cyclic_group_category(2), terminal_category(), name="Z2+terminal"),
        "arrow+terminal": coproduct_category(poset_category(2, [(0, 1)]), terminal_category(),
                                             name="arrow+terminal"),
    }
    for k, m in enumerate(small_monoids(3)):
        cats[f"monoid3_{k}"] = monoid_category(m, name=f"monoid3_{k}")
    return cats


def dihedral4_table():
    # (rotation r, flip s) with s r s = r^-1
    elements = [(r, f) for f in (0, 1) for r in range(4)]
    return group_table(elements, lambda a, b: ((a[0] + (b[0] if a[1] == 0 else -b[0])) % 4, a[1] ^ b[1]))


def quaternion_table():
    # unit quaternions as (sign, axis) with axis in 1, i, j, k
    mul_axis = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
                (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
                (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
                (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

    def mul(a, b):
        sign, axis = mul_axis[a[1], b[1]]
        return (a[0] * b[0] * sign, axis)

    elements = [(s, a) for s in (1, -1) for a in range(4)]
    return group_table(elements, mul)


@lru_cache(maxsize=None)
def _extended():
    from .fincat import product_category
    cats = dict(category_fixtures())
    cats.update({
        "Z7": cyclic_group_category(7),
        "Z8": cyclic_group_category(8),
        "Z2xZ4": product_category(cyclic_group_category(2), cyclic_group_category(4)),
        "D4": monoid_category(dihedral4_table(), name="D4"),
        "Q8": monoid_category(quaternion_table(), name="Q8"),
        "arrowxZ2": product_category(poset_category(2, [(0, 1)]), cyclic_group_category(2)),
        "Z2+Z2": coproduct_category(cyclic_group_category(2), cyclic_group_category(2), name="Z2+Z2"),
        "arrow+Z2": coproduct_category(poset_category(2, [(0, 1)]), cyclic_group_category(2),
                                       name="arrow+Z2"),
    })
    cats["Z2xZ4"].name = "Z2xZ4"
    cats["arrowxZ2"].name = "arrowxZ2"
    for k, m in enumerate(small_monoids(4)):
        cats[f"monoid4_{k}"] = monoid_category(m, name=f"monoid4_{k}")
    return cats


def extended_fixtures(max_morphisms=8):
    """The catalog plus further groups, products and all monoids of order 4."""
    return {k: v for k, v in _extended().items() if v.n_mor <= max_morphisms}


def fixture(name):
    return category_fixtures()[name]
