"""Exact rational vectors under the coordinatewise order, plus a point at infinity.

A :class:`LatticeElement` is an immutable tuple of exact rational coordinates
(``gmpy2.mpq``, which compares and hashes like :class:`fractions.Fraction`).
The extended space adds one absorbing element per dimension,
:class:`Infinity`, which sits above every finite element.  Python-level
``ExtElement`` values are therefore either a ``LatticeElement`` or an
``Infinity``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from gmpy2 import mpq, mpz

from .errors import DimensionError

Q = mpq
_Q_TYPE = type(mpq(0))
_Z_TYPE = type(mpz(0))
Rational = Union[int, Fraction, _Q_TYPE]


def as_rational(value) -> _Q_TYPE:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if type(value) is _Q_TYPE:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _Z_TYPE)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return mpq(int(num), int(den))
            return mpq(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_new = object.__new__
_add, _sub, _neg, _le, _ge = operator.add, operator.sub, operator.neg, operator.le, operator.ge
_set_coords = None  # the slot descriptor, bound once the class exists


class LatticeElement:
    """A vector of exact rationals; all operations are coordinatewise."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(as_rational(c) for c in coords))

    @classmethod
    def _raw(cls, coords: tuple) -> LatticeElement:
        obj = _new(cls)
        _set_coords(obj, coords)
        return obj

    @classmethod
    def zero(cls, dim: int) -> LatticeElement:
        return cls._raw((Q(0),) * dim)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeElement is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check(self, other: LatticeElement) -> tuple:
        if type(other) is not LatticeElement:
            raise TypeError(f"expected LatticeElement, got {type(other).__name__}")
        if len(other.coords) != len(self.coords):
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other.coords

    def __add__(self, other: LatticeElement) -> LatticeElement:
        return _make(tuple(map(_add, self.coords, self._check(other))))

    def __sub__(self, other: LatticeElement) -> LatticeElement:
        return _make(tuple(map(_sub, self.coords, self._check(other))))

    def __neg__(self) -> LatticeElement:
        return _make(tuple(map(_neg, self.coords)))

    def __mul__(self, r) -> LatticeElement:
        r = as_rational(r)
        return _make(tuple(r * a for a in self.coords))

    __rmul__ = __mul__

    def __or__(self, other: LatticeElement) -> LatticeElement:
        """Join (coordinatewise max)."""
        return _make(tuple(map(max, self.coords, self._check(other))))

    def __and__(self, other: LatticeElement) -> LatticeElement:
        """Meet (coordinatewise min)."""
        return _make(tuple(map(min, self.coords, self._check(other))))

    def __abs__(self) -> LatticeElement:
        return _make(tuple(map(abs, self.coords)))

    def pos(self) -> LatticeElement:
        return LatticeElement._raw(tuple(a if a > 0 else Q(0) for a in self.coords))

    def neg(self) -> LatticeElement:
        return LatticeElement._raw(tuple(-a if a < 0 else Q(0) for a in self.coords))

    def __le__(self, other) -> bool:
        if isinstance(other, Infinity):
            return True
        return all(map(_le, self.coords, self._check(other)))

    def __ge__(self, other) -> bool:
        if isinstance(other, Infinity):
            return False
        return all(map(_ge, self.coords, self._check(other)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_positive(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeElement) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"LatticeElement{self}"


_set_coords = LatticeElement.coords.__set__


def _make(coords: tuple) -> LatticeElement:
    obj = _new(LatticeElement)
    _set_coords(obj, coords)
    return obj


@dataclass(frozen=True)
class Infinity:
    """The single point added on top of the lattice of a given dimension."""

    dim: int

    def __le__(self, other) -> bool:
        return isinstance(other, Infinity)

    def __ge__(self, other) -> bool:
        return True

    def __str__(self) -> str:
        return "inf"


ExtElement = Union[LatticeElement, Infinity]


def vec(*coords) -> LatticeElement:
    """Shorthand constructor: ``vec(1, 0)``."""
    return LatticeElement(coords)


def is_finite(a: ExtElement) -> bool:
    return isinstance(a, LatticeElement)


def ext_dim(a: ExtElement) -> int:
    return a.dim


def ext_add(a: ExtElement, b: ExtElement) -> ExtElement:
    if isinstance(a, Infinity):
        if a.dim != b.dim:
            raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
        return a
    if isinstance(b, Infinity):
        if a.dim != b.dim:
            raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
        return b
    return a + b


def ext_scale(r, a: ExtElement) -> ExtElement:
    """Action of the nonnegative rationals, with ``0 * inf == 0``."""
    r = as_rational(r)
    if r < 0:
        raise ValueError(f"negative scalar {format_rational(r)} on the extended positive cone")
    if isinstance(a, Infinity):
        return LatticeElement.zero(a.dim) if r == 0 else a
    return a * r


def ext_sup(items: Sequence[ExtElement]) -> ExtElement:
    items = list(items)
    if not items:
        raise ValueError("supremum of an empty family")
    dim = items[0].dim
    for a in items:
        if a.dim != dim:
            raise DimensionError(f"dimension mismatch: {dim} vs {a.dim}")
        if isinstance(a, Infinity):
            return a
    return _coordwise(max, items)


def ext_inf(items: Sequence[ExtElement]) -> ExtElement:
    """Infimum in the extended space; infinite members do not affect it."""
    items = list(items)
    if not items:
        raise ValueError("infimum of an empty family")
    dim = items[0].dim
    for a in items:
        if a.dim != dim:
            raise DimensionError(f"dimension mismatch: {dim} vs {a.dim}")
    finite = [a for a in items if isinstance(a, LatticeElement)]
    if not finite:
        return items[0]
    return _coordwise(min, finite)


def _coordwise(pick, items: list) -> LatticeElement:
    if len(items) == 1:
        return items[0]
    return LatticeElement._raw(tuple(pick(col) for col in zip(*(a.coords for a in items))))


def ext_le(a: ExtElement, b: ExtElement) -> bool:
    if isinstance(b, Infinity):
        return True
    if isinstance(a, Infinity):
        return False
    return a <= b


def format_ext(a: ExtElement) -> str:
    return str(a)


@dataclass(frozen=True)
class LatticeNorm:
    """A lattice norm on rational vectors: ``kind`` is ``"sup"`` or ``"one"``.

    Optional positive weights rescale each coordinate before the max/sum.
    """

    kind: str = "sup"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("sup", "one"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        weights = tuple(as_rational(w) for w in self.weights)
        if any(w <= 0 for w in weights):
            raise ValueError("norm weights must be positive")
        object.__setattr__(self, "weights", weights)

    def __call__(self, x: LatticeElement) -> _Q_TYPE:
        return norm(self, x)

    def __str__(self) -> str:
        if not self.weights:
            return self.kind
        return f"{self.kind}[{','.join(format_rational(w) for w in self.weights)}]"


SUP_NORM = LatticeNorm("sup")
ONE_NORM = LatticeNorm("one")


def norm(n: LatticeNorm, x: LatticeElement) -> _Q_TYPE:
    if n.weights:
        if len(n.weights) != x.dim:
            raise DimensionError(f"norm has {len(n.weights)} weights, vector has dim {x.dim}")
        mags = [w * abs(c) for w, c in zip(n.weights, x.coords)]
    else:
        mags = [abs(c) for c in x.coords]
    if n.kind == "sup":
        return max(mags, default=Q(0))
    return sum(mags, Q(0))
