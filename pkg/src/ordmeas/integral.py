"""The order integral of simple functions.

On a finite space every function is simple.  On the naturals we integrate
eventually-constant functions; their level sets are finite or cofinite, so
the elementary-function definition ``sum r_i mu(level set of r_i)`` applies
directly, with ``0 * inf = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from .lattice import Q
from typing import Optional, Sequence, Union

from .errors import NotIntegrableError, NotMonotoneError, SpaceMismatchError
from .lattice import (
    ExtElement,
    Infinity,
    LatticeElement,
    as_rational,
    ext_add,
    ext_le,
    ext_scale,
    ext_sup,
)
from .measures import (
    Measure,
    PosMeasure,
    abs_measure,
    evaluate,
    neg_part,
    pos_part,
)
from .spaces import NATURALS, EventuallyConstant, FiniteSet, FiniteSpace, NatSet, NatSpace, combine


@dataclass(frozen=True)
class SimpleFunction:
    """Rational values per atom, or an eventually constant sequence on the naturals."""

    space: Union[FiniteSpace, NatSpace]
    values: Union[tuple, EventuallyConstant]

    def __post_init__(self):
        if isinstance(self.space, FiniteSpace):
            values = tuple(as_rational(v) for v in self.values)
            if len(values) != self.space.n:
                raise SpaceMismatchError(f"expected {self.space.n} values, got {len(values)}")
        else:
            if not isinstance(self.values, EventuallyConstant):
                raise TypeError("functions on the naturals need EventuallyConstant values")
            values = self.values.map(as_rational)
        object.__setattr__(self, "values", values)

    @classmethod
    def finite(cls, space: FiniteSpace, values) -> SimpleFunction:
        return cls(space, tuple(values))

    @classmethod
    def on_naturals(cls, exceptional: dict, tail=0) -> SimpleFunction:
        return cls(NATURALS, EventuallyConstant.of(dict(exceptional), as_rational(tail)))

    @classmethod
    def indicator(cls, delta) -> SimpleFunction:
        if isinstance(delta, FiniteSet):
            return cls(delta.space, tuple(1 if i in delta else 0 for i in range(delta.space.n)))
        if delta.cofinite:
            return cls.on_naturals({n: 0 for n in delta.items}, 1)
        return cls.on_naturals({n: 1 for n in delta.items}, 0)

    @classmethod
    def constant(cls, space, c) -> SimpleFunction:
        if isinstance(space, FiniteSpace):
            return cls(space, (as_rational(c),) * space.n)
        return cls.on_naturals({}, c)

    def at(self, i: int) -> Q:
        if isinstance(self.values, EventuallyConstant):
            return self.values.at(i)
        return self.values[i]

    def pos(self) -> SimpleFunction:
        return SimpleFunction(self.space, combine(lambda v: max(v, Q(0)), self.values))

    def neg(self) -> SimpleFunction:
        return SimpleFunction(self.space, combine(lambda v: max(-v, Q(0)), self.values))

    def __abs__(self) -> SimpleFunction:
        return SimpleFunction(self.space, combine(abs, self.values))

    def __add__(self, other: SimpleFunction) -> SimpleFunction:
        _check_space(self, other)
        return SimpleFunction(self.space, combine(lambda a, b: a + b, self.values, other.values))

    def __mul__(self, r) -> SimpleFunction:
        r = as_rational(r)
        return SimpleFunction(self.space, combine(lambda v: r * v, self.values))

    __rmul__ = __mul__

    def __le__(self, other: SimpleFunction) -> bool:
        _check_space(self, other)
        flags = combine(lambda a, b: a <= b, self.values, other.values)
        if isinstance(flags, EventuallyConstant):
            return all(v for _, v in flags.exceptional) and flags.tail
        return all(flags)

    def is_nonnegative(self) -> bool:
        if isinstance(self.values, EventuallyConstant):
            return self.values.tail >= 0 and all(v >= 0 for _, v in self.values.exceptional)
        return all(v >= 0 for v in self.values)

    def sup_norm(self) -> Q:
        if isinstance(self.values, EventuallyConstant):
            vals = [v for _, v in self.values.exceptional] + [self.values.tail]
        else:
            vals = list(self.values)
        return max((abs(v) for v in vals), default=Q(0))

    def level_sets(self) -> list[tuple[Q, object]]:
        """``(value, set)`` pairs partitioning the space, sorted by value."""
        if isinstance(self.values, EventuallyConstant):
            seq = self.values
            levels = {}
            for k, v in seq.exceptional:
                levels.setdefault(v, []).append(k)
            out = [(v, NatSet.fin(ks)) for v, ks in levels.items()]
            out.append((seq.tail, NatSet.cofin(seq.support())))
            return sorted(out, key=lambda p: p[0])
        masks = {}
        for i, v in enumerate(self.values):
            masks[v] = masks.get(v, 0) | (1 << i)
        return sorted(((v, FiniteSet(self.space, m)) for v, m in masks.items()), key=lambda p: p[0])

    def __str__(self) -> str:
        from .lattice import format_rational

        if isinstance(self.values, EventuallyConstant):
            exc = ", ".join(f"{k}: {format_rational(v)}" for k, v in self.values.exceptional)
            return f"{{{exc}}} tail {format_rational(self.values.tail)}"
        return "(" + ",".join(format_rational(v) for v in self.values) + ")"


def _check_space(a, b) -> None:
    if a.space != b.space:
        raise SpaceMismatchError("objects live on different spaces")


def integrate_pos(f: SimpleFunction, mu: PosMeasure, decomposition: str = "levels") -> ExtElement:
    """Order integral of a nonnegative simple function against a positive measure.

    ``decomposition="levels"`` sums ``r * mu({f = r})`` over the distinct
    values; ``"atoms"`` refines to single atoms (plus the cofinite remainder
    on the naturals).  Both must agree.
    """
    _check_space(f, mu)
    if not f.is_nonnegative():
        raise ValueError("integrate_pos needs a nonnegative integrand")
    total: ExtElement = LatticeElement.zero(mu.dim)
    if decomposition == "levels":
        for r, level in f.level_sets():
            total = ext_add(total, ext_scale(r, evaluate(mu, level)))
        return total
    if decomposition != "atoms":
        raise ValueError(f"unknown decomposition {decomposition!r}")
    if isinstance(f.space, FiniteSpace):
        for i in range(f.space.n):
            total = ext_add(total, ext_scale(f.at(i), mu.values[i]))
        return total
    keys = sorted(set(f.values.support()) | set(mu.values.support()))
    for n in keys:
        total = ext_add(total, ext_scale(f.at(n), evaluate(mu, NatSet.fin((n,)))))
    return ext_add(total, ext_scale(f.values.tail, evaluate(mu, NatSet.cofin(keys))))


def _integrate_against_pos(f: SimpleFunction, mu: PosMeasure) -> LatticeElement:
    plus = integrate_pos(f.pos(), mu)
    minus = integrate_pos(f.neg(), mu)
    if isinstance(plus, Infinity) or isinstance(minus, Infinity):
        raise NotIntegrableError("not order-integrable: a one-sided integral is infinite")
    return plus - minus


def integrate(f: SimpleFunction, mu: Measure) -> LatticeElement:
    """Signed order integral ``int f+ dmu - int f- dmu``.

    Signed measures are split as ``mu+ - mu-``; see
    :func:`integrate_decomposed` for an arbitrary decomposition.
    """
    if isinstance(mu, PosMeasure):
        return _integrate_against_pos(f, mu)
    return integrate_decomposed(f, pos_part(mu), neg_part(mu))


def integrate_decomposed(f: SimpleFunction, nu1: PosMeasure, nu2: PosMeasure) -> LatticeElement:
    """Integral against ``nu1 - nu2`` for finite positive ``nu1``, ``nu2``."""
    return _integrate_against_pos(f, nu1) - _integrate_against_pos(f, nu2)


@dataclass(frozen=True)
class TriangleReport:
    lhs: LatticeElement
    rhs: LatticeElement
    holds: bool


def triangle_check(f: SimpleFunction, mu: Measure) -> TriangleReport:
    """Check ``|int f dmu| <= int |f| d|mu|`` coordinatewise."""
    lhs = abs(integrate(f, mu))
    rhs = integrate_pos(abs(f), abs_measure(mu))
    if isinstance(rhs, Infinity):
        return TriangleReport(lhs, rhs, True)
    return TriangleReport(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class MonotoneConvergenceReport:
    integrals: tuple
    increasing: bool
    supremum: ExtElement
    limit_integral: ExtElement
    holds: bool


def monotone_convergence_check(
    seq: Sequence[SimpleFunction], mu: PosMeasure, stable_from: Optional[int] = None
) -> MonotoneConvergenceReport:
    """Integrals of an increasing, eventually constant sequence increase to the
    integral of its limit."""
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    if stable_from is None:
        stable_from = len(seq) - 1
    if not 0 <= stable_from < len(seq):
        raise ValueError(f"stable index {stable_from} outside the sequence")
    for k in range(len(seq) - 1):
        if not seq[k] <= seq[k + 1]:
            raise NotMonotoneError(f"function {k + 1} is not above function {k}")
    if any(g != seq[stable_from] for g in seq[stable_from:]):
        raise NotMonotoneError(f"sequence is not constant from index {stable_from}")
    if not seq[0].is_nonnegative():
        raise ValueError("monotone convergence needs nonnegative functions")
    integrals = tuple(integrate_pos(g, mu) for g in seq)
    increasing = all(ext_le(a, b) for a, b in zip(integrals, integrals[1:]))
    supremum = ext_sup(integrals)
    limit_integral = integrate_pos(seq[stable_from], mu)
    return MonotoneConvergenceReport(
        integrals, increasing, supremum, limit_integral, increasing and supremum == limit_integral
    )
