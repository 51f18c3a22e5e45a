"""Named example groups used by the self-test runner and the test suite."""

from __future__ import annotations

from .groups import FiniteGroup, build_group


def cyclic_spec(n, label=None):
    n = int(n)
    return {
        "kind": "table",
        "n": n,
        "mul": [[(i + j) % n for j in range(n)] for i in range(n)],
        "label": label or f"Z{n}",
    }


def abelian_spec(*ns):
    if len(ns) == 1:
        return cyclic_spec(ns[0])
    return {
        "kind": "product",
        "factors": [cyclic_spec(n) for n in ns],
        "label": "x".join(f"Z{n}" for n in ns),
    }


def symmetric3_spec():
    return {
        "kind": "permutations",
        "degree": 3,
        "generators": ["(1 2 3)", "(1 2)"],
        "label": "S3",
    }


def dihedral4_spec():
    return {
        "kind": "permutations",
        "degree": 4,
        "generators": ["(1 2 3 4)", "(1 3)"],
        "label": "D4",
    }


def a4_shape_spec(p=2):
    """Order 3p^2: the plane over F_p rotated by an order-3 map with no
    eigenvector; p = 2 gives the order-12 alternating-type group."""
    return {
        "kind": "semidirect",
        "p": int(p),
        "m": 2,
        "matrices": [[[0, -1], [1, -1]]],
        "acting": cyclic_spec(3),
        "label": f"(Z/{p})^2:Z3" if p != 2 else "A4",
    }


def beta_shape_spec(p):
    """Order 6p^2: the plane over F_p acted on by the order-6 symmetric group."""
    return {
        "kind": "semidirect",
        "p": int(p),
        "m": 2,
        "matrices": [[[-1, -1], [1, 0]], [[0, 1], [1, 0]]],
        "acting": symmetric3_spec(),
        "label": f"(Z/{p})^2:S3",
    }


def quaternion8():
    """The order-8 quaternion group, by its unit multiplication table.

    Elements 0..7 are 1, -1, i, -i, j, -j, k, -k.
    """
    units = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def q_mul(a, b):
        sa, xa = (-1, a[1:]) if a.startswith("-") else (1, a)
        sb, xb = (-1, b[1:]) if b.startswith("-") else (1, b)
        table = {
            ("1", "1"): (1, "1"),
            ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
            ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
        }
        s, x = table[(xa, xb)]
        s *= sa * sb
        return ("" if s == 1 else "-") + x

    pos = {u: i for i, u in enumerate(units)}
    table = [[pos[q_mul(a, b)] for b in units] for a in units]
    return FiniteGroup(table, identity=0, label="Q8")


_REGISTRY = {
    "Z1": lambda: build_group(cyclic_spec(1)),
    "Z2": lambda: build_group(cyclic_spec(2)),
    "Z3": lambda: build_group(cyclic_spec(3)),
    "Z4": lambda: build_group(cyclic_spec(4)),
    "Z6": lambda: build_group(abelian_spec(2, 3)),
    "Z8": lambda: build_group(cyclic_spec(8)),
    "Z12": lambda: build_group(cyclic_spec(12)),
    "V4": lambda: build_group(abelian_spec(2, 2)),
    "Z2xZ4": lambda: build_group(abelian_spec(2, 4)),
    "Z3xZ3": lambda: build_group(abelian_spec(3, 3)),
    "E8": lambda: build_group(abelian_spec(2, 2, 2)),
    "S3": lambda: build_group(symmetric3_spec()),
    "D4": lambda: build_group(dihedral4_spec()),
    "Q8": quaternion8,
    "A4": lambda: build_group(a4_shape_spec(2)),
}


def catalog_group(name):
    return _REGISTRY[name]()


def catalog_names(max_order=None):
    names = []
    for name in _REGISTRY:
        if max_order is None or catalog_group(name).order <= max_order:
            names.append(name)
    return names
