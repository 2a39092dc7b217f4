"""Regular operators from simple functions on a space into the lattice.

An operator is stored by its columns, the images of the atom indicators.
On the naturals the columns form an eventually-constant sequence; an
operator with a nonzero tail column is only defined on eventually-zero
functions, which is where infinite representing measures come from.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from .lattice import Q
from itertools import product
from typing import Optional, Sequence, Union

from .errors import DimensionError, EnumerationLimitError, NotInDomainError, SpaceMismatchError
from .integral import SimpleFunction
from .lattice import LatticeElement, LatticeNorm, norm
from .spaces import (
    ENUMERATION_LIMIT,
    NATURALS,
    EventuallyConstant,
    FiniteSet,
    FiniteSpace,
    NatSpace,
    combine,
    submasks,
)


@dataclass(frozen=True)
class RegularOperator:
    space: Union[FiniteSpace, NatSpace]
    columns: Union[tuple, EventuallyConstant]
    dim: int

    def __post_init__(self):
        if isinstance(self.space, FiniteSpace):
            cols = tuple(self.columns)
            if len(cols) != self.space.n:
                raise SpaceMismatchError(f"expected {self.space.n} columns, got {len(cols)}")
            entries = cols
            object.__setattr__(self, "columns", cols)
        else:
            if not isinstance(self.columns, EventuallyConstant):
                raise TypeError("operators on the naturals need EventuallyConstant columns")
            entries = [v for _, v in self.columns.exceptional] + [self.columns.tail]
        for c in entries:
            if not isinstance(c, LatticeElement):
                raise TypeError("operator columns must be finite lattice elements")
            if c.dim != self.dim:
                raise DimensionError(f"column of dimension {c.dim}, expected {self.dim}")

    @classmethod
    def from_columns(cls, space: FiniteSpace, columns: Sequence) -> RegularOperator:
        cols = tuple(c if isinstance(c, LatticeElement) else LatticeElement(c) for c in columns)
        if not cols:
            raise ValueError("cannot infer the dimension of an operator on an empty space")
        return cls(space, cols, cols[0].dim)

    @classmethod
    def from_rows(cls, space: FiniteSpace, rows: Sequence[Sequence]) -> RegularOperator:
        """Build from a matrix whose rows are codomain coordinates."""
        return cls.from_columns(space, list(zip(*rows)))

    @classmethod
    def on_naturals(cls, exceptional: dict, tail) -> RegularOperator:
        tail = tail if isinstance(tail, LatticeElement) else LatticeElement(tail)
        exc = {int(k): (v if isinstance(v, LatticeElement) else LatticeElement(v)) for k, v in exceptional.items()}
        return cls(NATURALS, EventuallyConstant.of(exc, tail), tail.dim)

    @classmethod
    def zero(cls, space, dim: int) -> RegularOperator:
        z = LatticeElement.zero(dim)
        if isinstance(space, NatSpace):
            return cls(space, EventuallyConstant((), z), dim)
        return cls(space, (z,) * space.n, dim)

    @cached_property
    def _table(self) -> list:
        """``T(chi_D)`` for every set of a finite space, indexed by mask."""
        _require_enumerable(self.space)
        table = [LatticeElement.zero(self.dim)] * (1 << self.space.n)
        for m in range(1, 1 << self.space.n):
            low = m & -m
            table[m] = table[m ^ low] + self.columns[low.bit_length() - 1]
        return table

    def column(self, i: int) -> LatticeElement:
        if isinstance(self.columns, EventuallyConstant):
            return self.columns.at(i)
        return self.columns[i]

    def is_positive(self) -> bool:
        if isinstance(self.columns, EventuallyConstant):
            return self.columns.tail.is_positive() and all(
                v.is_positive() for _, v in self.columns.exceptional
            )
        return all(c.is_positive() for c in self.columns)

    def __call__(self, f: SimpleFunction) -> LatticeElement:
        return apply(self, f)

    def __neg__(self) -> RegularOperator:
        return RegularOperator(self.space, combine(lambda c: -c, self.columns), self.dim)

    def __add__(self, other: RegularOperator) -> RegularOperator:
        _same(self, other)
        return RegularOperator(self.space, combine(lambda a, b: a + b, self.columns, other.columns), self.dim)

    def __sub__(self, other: RegularOperator) -> RegularOperator:
        return self + (-other)

    def __str__(self) -> str:
        if isinstance(self.columns, EventuallyConstant):
            exc = ", ".join(f"{k}: {v}" for k, v in self.columns.exceptional)
            return f"{{{exc}}} tail {self.columns.tail}"
        return " ".join(str(c) for c in self.columns)


def _same(t: RegularOperator, s: RegularOperator) -> None:
    if t.space != s.space:
        raise SpaceMismatchError("operators live on different spaces")
    if t.dim != s.dim:
        raise DimensionError(f"dimension mismatch: {t.dim} vs {s.dim}")


def apply(t: RegularOperator, f: SimpleFunction) -> LatticeElement:
    """``T(f) = sum_i f(i) * column_i`` over the atoms where it is finite."""
    if f.space != t.space:
        raise SpaceMismatchError("function and operator live on different spaces")
    total = LatticeElement.zero(t.dim)
    if isinstance(t.space, FiniteSpace):
        for v, c in zip(f.values, t.columns):
            if v:
                total = total + c * v
        return total
    cols, fv = t.columns, f.values
    if fv.tail == 0:
        indices = fv.support()
    elif cols.tail.is_zero():
        indices = cols.support()
    else:
        raise NotInDomainError(
            "not in domain: an operator with a nonzero tail column only accepts eventually-zero functions"
        )
    for n in indices:
        v = fv.at(n)
        if v:
            total = total + cols.at(n) * v
    return total


def modulus(t: RegularOperator) -> RegularOperator:
    """``|T|``: columns are the coordinatewise absolute values."""
    return RegularOperator(t.space, combine(abs, t.columns), t.dim)


def positive_part(t: RegularOperator) -> RegularOperator:
    return RegularOperator(t.space, combine(LatticeElement.pos, t.columns), t.dim)


def negative_part(t: RegularOperator) -> RegularOperator:
    return RegularOperator(t.space, combine(LatticeElement.neg, t.columns), t.dim)


def join(t: RegularOperator, s: RegularOperator) -> RegularOperator:
    _same(t, s)
    return RegularOperator(t.space, combine(lambda a, b: a | b, t.columns, s.columns), t.dim)


def meet(t: RegularOperator, s: RegularOperator) -> RegularOperator:
    _same(t, s)
    return RegularOperator(t.space, combine(lambda a, b: a & b, t.columns, s.columns), t.dim)


def dominated_by(s: RegularOperator, t: RegularOperator) -> bool:
    """``|S| <= |T|`` columnwise."""
    _same(s, t)
    flags = combine(lambda a, b: abs(a) <= abs(b), s.columns, t.columns)
    if isinstance(flags, EventuallyConstant):
        return all(v for _, v in flags.exceptional) and flags.tail
    return all(flags)


def _require_enumerable(space) -> None:
    if not isinstance(space, FiniteSpace):
        raise SpaceMismatchError("brute-force enumeration needs a finite space")
    if space.n > ENUMERATION_LIMIT:
        raise EnumerationLimitError(f"{space.n} atoms exceed the enumeration bound of {ENUMERATION_LIMIT}")


def modulus_oracle(t: RegularOperator, x: SimpleFunction) -> LatticeElement:
    """``sup{|T y| : |y| <= x}`` by enumerating the vertices ``s * x`` of the box."""
    _require_enumerable(t.space)
    if not x.is_nonnegative():
        raise ValueError("the modulus oracle needs a nonnegative test function")
    best = None
    for signs in product((1, -1), repeat=t.space.n):
        y = SimpleFunction(t.space, tuple(s * v for s, v in zip(signs, x.values)))
        val = abs(apply(t, y))
        best = val if best is None else best | val
    return best


@dataclass(frozen=True)
class OperatorNormReport:
    t_T: Optional[LatticeElement]
    regular_norm: Optional[Q]
    is_nob: bool


def nob_report(t: RegularOperator, n: LatticeNorm) -> OperatorNormReport:
    """Least order bound ``t_T = sup{|T| x : 0 <= x <= 1}`` and ``||T||_r = ||t_T||``.

    Every operator on a finite space is norm to order bounded.  On the
    naturals (domain: eventually-zero functions under the sup norm) this
    holds exactly when the tail column vanishes.
    """
    mod = modulus(t)
    if isinstance(t.space, FiniteSpace):
        t_t = apply(mod, SimpleFunction.constant(t.space, 1))
        return OperatorNormReport(t_t, norm(n, t_t), True)
    if not mod.columns.tail.is_zero():
        return OperatorNormReport(None, None, False)
    t_t = LatticeElement.zero(t.dim)
    for _, c in mod.columns.exceptional:
        t_t = t_t + c
    return OperatorNormReport(t_t, norm(n, t_t), True)


def _rk(t: RegularOperator, s: RegularOperator, delta: FiniteSet, pick) -> LatticeElement:
    _same(t, s)
    _require_enumerable(t.space)
    if delta.space != t.space:
        raise SpaceMismatchError(f"set {delta} is not in the operators' space")
    tt, st, d = t._table, s._table, delta.mask
    best = None
    for g in submasks(d):
        val = tt[g] + st[d ^ g]
        best = val if best is None else pick(best, val)
    return best


def rk_sup(t: RegularOperator, s: RegularOperator, delta: FiniteSet) -> LatticeElement:
    """``sup{T(chi_G) + S(chi_(D-G)) : G measurable, G in D}``, i.e. ``(T v S)(chi_D)``."""
    return _rk(t, s, delta, lambda a, b: a | b)


def rk_inf(t: RegularOperator, s: RegularOperator, delta: FiniteSet) -> LatticeElement:
    return _rk(t, s, delta, lambda a, b: a & b)
