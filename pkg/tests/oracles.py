"""Slow reference computations on plain tuples of Fractions.

Nothing here imports the package.  Sets are frozensets of atom indices,
vectors are tuples, ``INF`` stands for the point at infinity.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations, product

INF = "inf"


def F(x) -> Fraction:
    return Fraction(str(x))


def vadd(a, b):
    if a == INF or b == INF:
        return INF
    return tuple(x + y for x, y in zip(a, b))


def vscale(r, a):
    if a == INF:
        return INF if r > 0 else None
    return tuple(r * x for x in a)


def vzero(dim):
    return (Fraction(0),) * dim


def vle(a, b):
    if b == INF:
        return True
    if a == INF:
        return False
    return all(x <= y for x, y in zip(a, b))


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


def measure_of(atoms, subset, dim):
    """Sum of atom values over ``subset``."""
    total = vzero(dim)
    for i in subset:
        total = vadd(total, atoms[i])
    return total


def partition_extreme(mu_atoms, nu_atoms, delta, dim, mode):
    """Coordinatewise max/min over G in delta of mu(G) + nu(delta - G)."""
    best = None
    for g in powerset(delta):
        v = vadd(measure_of(mu_atoms, g, dim), measure_of(nu_atoms, delta - g, dim))
        if best is None:
            best = v
        elif mode == "sup":
            best = INF if INF in (best, v) else tuple(map(max, best, v))
        else:
            if best == INF:
                best = v
            elif v != INF:
                best = tuple(map(min, best, v))
    return best


def integral(values, atoms, dim):
    total = vzero(dim)
    for f, a in zip(values, atoms):
        if f != 0:
            total = vadd(total, vscale(f, a))
    return total


def apply_columns(columns, x, dim):
    return integral(x, columns, dim)


def modulus_by_signs(columns, x, dim):
    """sup over sign vectors s of T(s*x), coordinatewise."""
    best = None
    for signs in product((-1, 1), repeat=len(columns)):
        v = apply_columns(columns, [s * xi for s, xi in zip(signs, x)], dim)
        best = v if best is None else tuple(map(max, best, v))
    return best


def grid_sup(columns, inside, n, dim, grid=(Fraction(0), Fraction(1, 2), Fraction(1))):
    """sup of T(f) over grid functions supported in ``inside``."""
    best = None
    for vals in product(grid, repeat=len(inside)):
        f = [Fraction(0)] * n
        for i, v in zip(sorted(inside), vals):
            f[i] = v
        img = apply_columns(columns, f, dim)
        best = img if best is None else tuple(map(max, best, img))
    return best


def grid_inf(columns, inside, n, dim, grid=(Fraction(0), Fraction(1, 2), Fraction(1))):
    """inf of T(f) over grid functions equal to 1 on ``inside``."""
    outside = [i for i in range(n) if i not in inside]
    best = None
    for vals in product(grid, repeat=len(outside)):
        f = [Fraction(1) if i in inside else Fraction(0) for i in range(n)]
        for i, v in zip(outside, vals):
            f[i] = v
        img = apply_columns(columns, f, dim)
        best = img if best is None else tuple(map(min, best, img))
    return best


def nat_in(kind, items, k):
    """Membership of ``k`` in Fin(items) or CoFin(items)."""
    return (k in items) if kind == "fin" else (k not in items)


def nat_measure(exceptional, tail, kind, items, dim, window=200):
    """Value of an eventually constant measure on a finite or cofinite set,
    read off by summing a long truncation."""
    if kind == "cofin" and any(t != 0 for t in tail):
        return INF
    total = vzero(dim)
    for k in range(window):
        if nat_in(kind, items, k):
            total = vadd(total, exceptional.get(k, tail))
    return total


def sup_norm(v):
    return max((abs(x) for x in v), default=Fraction(0))


def one_norm(v):
    return sum((abs(x) for x in v), Fraction(0))
