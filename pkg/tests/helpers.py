"""Independent oracles used to freeze expected values.

The cube-category term model represents a morphism n -> d as the tuple of
its d output coordinates: each entry is a constant sign or a distinct
source coordinate.  Composition is substitution.  The free cubical set on
one d-dimensional generator has the morphisms n -> d as its n-cells, with
faces and degeneracies given by precomposition, so this model evaluates
any face/degeneracy composite without touching the implementation under
test.
"""

from __future__ import annotations

import itertools

MINUS = ("-",)
PLUS = ("+",)


def var(j):
    return ("v", j)


def compose(outer, inner):
    """outer . inner, where inner is applied first."""
    out = []
    for entry in outer:
        if entry[0] == "v":
            out.append(inner[entry[1]])
        else:
            out.append(entry)
    return tuple(out)


def eps(i, n, sign):
    """Insert constant `sign` at output position i: a map n -> n+1."""
    out = []
    v = 0
    for pos in range(n + 1):
        if pos == i:
            out.append((sign,))
        else:
            out.append(var(v))
            v += 1
    return tuple(out)


def eta(i, n):
    """Collapse source coordinate i: a map n+1 -> n."""
    return tuple(var(j if j < i else j + 1) for j in range(n))


def sigma(i, n):
    """Swap source coordinates i and i+1: a map n -> n."""
    out = [var(j) for j in range(n)]
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def cube_maps(n, d, symmetric=False):
    """All morphisms n -> d of the (symmetric) cube category."""
    maps = []
    for r in range(min(n, d) + 1):
        for var_slots in itertools.combinations(range(d), r):
            const_slots = [p for p in range(d) if p not in var_slots]
            for consts in itertools.product("-+", repeat=len(const_slots)):
                sources = itertools.permutations(range(n), r) if symmetric \
                    else itertools.combinations(range(n), r)
                for src in sources:
                    out = [None] * d
                    for slot, j in zip(var_slots, src):
                        out[slot] = var(j)
                    for slot, s in zip(const_slots, consts):
                        out[slot] = (s,)
                    maps.append(tuple(out))
    return maps


def oracle_face(cell_map, n, i, sign):
    return compose(cell_map, eps(i, n - 1, sign))


def oracle_degeneracy(cell_map, n, i):
    return compose(cell_map, eta(i, n))


def oracle_transpose(cell_map, n, i):
    return compose(cell_map, sigma(i, n))
