"""Seeded random objects for law checking and fuzzing.

Everything is drawn from a caller-supplied :class:`random.Random`, so a case
is reproducible from its seed alone.  Entries are rationals with numerator
and denominator bounded by ``MAGNITUDE``; small integers (including zero)
are over-represented so that ties and zero coordinates are common.
"""

from __future__ import annotations

import random
from .lattice import Q

from .instance import Instance
from .integral import SimpleFunction
from .lattice import ONE_NORM, SUP_NORM, Infinity, LatticeElement
from .measures import PosMeasure, SignedMeasure
from .operators import RegularOperator
from .spaces import NATURALS, EventuallyConstant, FiniteSpace

MAGNITUDE = 100
NAT_WINDOW = 10


def rational(rng: random.Random, nonneg: bool = False) -> Q:
    lo = 0 if nonneg else -MAGNITUDE
    if rng.random() < 0.35:
        return Q(rng.randint(max(lo, -3), 3))
    return Q(rng.randint(lo, MAGNITUDE), rng.randint(1, MAGNITUDE))


def vector(rng: random.Random, dim: int, nonneg: bool = False) -> LatticeElement:
    return LatticeElement._raw(tuple(rational(rng, nonneg) for _ in range(dim)))


def pos_measure(rng: random.Random, space: FiniteSpace, dim: int, allow_inf: bool = False) -> PosMeasure:
    atoms = [vector(rng, dim, nonneg=True) for _ in range(space.n)]
    if allow_inf and space.n:
        atoms[rng.randrange(space.n)] = Infinity(dim)
    return PosMeasure(space, tuple(atoms), dim)


def signed_measure(rng: random.Random, space: FiniteSpace, dim: int) -> SignedMeasure:
    return SignedMeasure(space, tuple(vector(rng, dim) for _ in range(space.n)), dim)


def function(rng: random.Random, space: FiniteSpace, nonneg: bool = False) -> SimpleFunction:
    return SimpleFunction(space, tuple(rational(rng, nonneg) for _ in range(space.n)))


def operator(rng: random.Random, space: FiniteSpace, dim: int, positive: bool = False) -> RegularOperator:
    return RegularOperator(space, tuple(vector(rng, dim, positive) for _ in range(space.n)), dim)


def _nat_support(rng: random.Random) -> list[int]:
    return sorted(rng.sample(range(NAT_WINDOW), rng.randint(0, 4)))


def nat_pos_measure(rng: random.Random, dim: int, finite: bool | None = None) -> PosMeasure:
    if finite is None:
        finite = rng.random() < 0.5
    tail = LatticeElement.zero(dim) if finite else vector(rng, dim, nonneg=True)
    if not finite and tail.is_zero():
        tail = LatticeElement._raw((Q(1),) + tail.coords[1:])
    exc = {n: vector(rng, dim, nonneg=True) for n in _nat_support(rng)}
    return PosMeasure(NATURALS, EventuallyConstant.of(exc, tail), dim)


def nat_function(rng: random.Random, eventually_zero: bool = False, nonneg: bool = False) -> SimpleFunction:
    tail = Q(0) if eventually_zero else rational(rng, nonneg)
    exc = {n: rational(rng, nonneg) for n in _nat_support(rng)}
    return SimpleFunction(NATURALS, EventuallyConstant.of(exc, tail))


def nat_operator(rng: random.Random, dim: int, nob: bool | None = None) -> RegularOperator:
    mu = nat_pos_measure(rng, dim, finite=nob)
    return RegularOperator(NATURALS, mu.values, dim)


def random_instance(rng: random.Random, max_dim: int = 4, max_atoms: int = 5) -> Instance:
    """One fuzz case: a finite space with measures, operators and functions
    on it, plus objects on the naturals."""
    dim = rng.randint(1, max_dim)
    n = rng.randint(1, max_atoms)
    space = FiniteSpace.of_size(n)
    norm = SUP_NORM if rng.random() < 0.5 else ONE_NORM
    measures = {
        "mu": pos_measure(rng, space, dim),
        "nu": pos_measure(rng, space, dim),
        "rho": pos_measure(rng, space, dim),
        "mu_inf": pos_measure(rng, space, dim, allow_inf=True),
        "sigma": signed_measure(rng, space, dim),
        "tau": signed_measure(rng, space, dim),
        "nat_mu": nat_pos_measure(rng, dim),
        "nat_nu": nat_pos_measure(rng, dim),
        "nat_fin": nat_pos_measure(rng, dim, finite=True),
    }
    operators = {
        "T": operator(rng, space, dim),
        "S": operator(rng, space, dim),
        "P": operator(rng, space, dim, positive=True),
        "nat_T": nat_operator(rng, dim),
    }
    functions = {
        "f": function(rng, space),
        "g": function(rng, space),
        "h": function(rng, space, nonneg=True),
        "nat_f": nat_function(rng),
        "nat_h": nat_function(rng, nonneg=True),
    }
    return Instance(dim, norm, space, measures, operators, functions)
