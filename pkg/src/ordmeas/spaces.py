"""Measurable spaces small enough to compute with.

Two kinds of space are supported:

* :class:`FiniteSpace` -- finitely many labelled atoms; the sigma-algebra is
  every union of atoms, and a measurable set is a bitmask (:class:`FiniteSet`).
* :data:`NATURALS` -- the natural numbers with the sets that are finite or
  cofinite (:class:`NatSet`).  This family is closed under the Boolean
  operations and contains everything the infinite-measure constructions need.

:class:`EventuallyConstant` is the storage used for anything indexed by the
naturals (atom values of measures, functions, operator columns): finitely
many exceptional entries and one tail value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

from .errors import EnumerationLimitError, SpaceMismatchError

ENUMERATION_LIMIT = 16


@dataclass(frozen=True)
class FiniteSpace:
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(str(a) for a in self.atoms)
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom labels must be unique")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def of_size(cls, n: int, prefix: str = "a") -> FiniteSpace:
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def index(self, label: str) -> int:
        try:
            return self.atoms.index(label)
        except ValueError:
            raise KeyError(f"no atom named {label!r}") from None

    def empty(self) -> FiniteSet:
        return FiniteSet(self, 0)

    def whole(self) -> FiniteSet:
        return FiniteSet(self, self.full_mask)

    def atom(self, i: int) -> FiniteSet:
        return FiniteSet(self, 1 << i)

    def set_of(self, labels: Iterable[str]) -> FiniteSet:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return FiniteSet(self, mask)

    def all_sets(self) -> list[FiniteSet]:
        return subsets_of(self, self.whole())

    def __str__(self) -> str:
        return "{" + ",".join(self.atoms) + "}"


@dataclass(frozen=True)
class FiniteSet:
    space: FiniteSpace
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.space.full_mask:
            raise ValueError(f"mask {self.mask:#b} outside a {self.space.n}-atom space")

    def _same(self, other: FiniteSet) -> None:
        if not isinstance(other, FiniteSet) or other.space != self.space:
            raise SpaceMismatchError("sets live in different spaces")

    def __or__(self, other: FiniteSet) -> FiniteSet:
        self._same(other)
        return FiniteSet(self.space, self.mask | other.mask)

    def __and__(self, other: FiniteSet) -> FiniteSet:
        self._same(other)
        return FiniteSet(self.space, self.mask & other.mask)

    def __sub__(self, other: FiniteSet) -> FiniteSet:
        self._same(other)
        return FiniteSet(self.space, self.mask & ~other.mask)

    def complement(self) -> FiniteSet:
        return FiniteSet(self.space, self.space.full_mask & ~self.mask)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def indices(self) -> list[int]:
        return [i for i in range(self.space.n) if self.mask >> i & 1]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def issubset(self, other: FiniteSet) -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "{" + ",".join(self.space.atoms[i] for i in self.indices()) + "}"


class NatSpace:
    """The natural numbers 0, 1, 2, ... with finite and cofinite sets."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def empty(self) -> NatSet:
        return NatSet(frozenset(), False)

    def whole(self) -> NatSet:
        return NatSet(frozenset(), True)

    def atom(self, n: int) -> NatSet:
        return NatSet(frozenset((n,)), False)

    def __repr__(self) -> str:
        return "NATURALS"

    __str__ = __repr__

    def __reduce__(self):
        return (NatSpace, ())


NATURALS = NatSpace()


@dataclass(frozen=True)
class NatSet:
    """``cofinite=False``: the finite set ``items``; otherwise its complement."""

    items: frozenset
    cofinite: bool = False

    def __post_init__(self):
        items = frozenset(int(n) for n in self.items)
        if any(n < 0 for n in items):
            raise ValueError("natural numbers are nonnegative")
        object.__setattr__(self, "items", items)

    @classmethod
    def _make(cls, items: frozenset, cofinite: bool) -> NatSet:
        # trusted constructor: items already a frozenset of naturals
        obj = object.__new__(cls)
        object.__setattr__(obj, "items", items)
        object.__setattr__(obj, "cofinite", cofinite)
        return obj

    space = NATURALS

    @classmethod
    def fin(cls, items: Iterable[int] = ()) -> NatSet:
        return cls(frozenset(items), False)

    @classmethod
    def cofin(cls, items: Iterable[int] = ()) -> NatSet:
        return cls(frozenset(items), True)

    def __contains__(self, n: int) -> bool:
        return (n in self.items) != self.cofinite

    def complement(self) -> NatSet:
        return NatSet._make(self.items, not self.cofinite)

    def __or__(self, other: NatSet) -> NatSet:
        return nat_ops(self, other, "union")

    def __and__(self, other: NatSet) -> NatSet:
        return nat_ops(self, other, "intersection")

    def __sub__(self, other: NatSet) -> NatSet:
        return nat_ops(self, other, "difference")

    def is_finite(self) -> bool:
        return not self.cofinite

    def issubset(self, other: NatSet) -> bool:
        return (self - other) == NatSet.fin()

    def __str__(self) -> str:
        tag = "cofin" if self.cofinite else "fin"
        return f"{tag}:[{','.join(str(n) for n in sorted(self.items))}]"


MeasurableSet = Union[FiniteSet, NatSet]


def nat_ops(a: NatSet, b: NatSet | None = None, op: str = "union") -> NatSet:
    """Boolean operations on finite/cofinite subsets of the naturals."""
    if op == "complement":
        return a.complement()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "difference":
        b = b.complement()
        op = "intersection"
    if op == "intersection":
        if not a.cofinite and not b.cofinite:
            return NatSet._make(a.items & b.items, False)
        if a.cofinite and b.cofinite:
            return NatSet._make(a.items | b.items, True)
        fin, cof = (a, b) if b.cofinite else (b, a)
        return NatSet._make(fin.items - cof.items, False)
    if op != "union":
        raise ValueError(f"unknown set operation {op!r}")
    if not a.cofinite and not b.cofinite:
        return NatSet._make(a.items | b.items, False)
    if a.cofinite and b.cofinite:
        return NatSet._make(a.items & b.items, True)
    fin, cof = (a, b) if b.cofinite else (b, a)
    return NatSet._make(cof.items - fin.items, True)


def subsets_of(space: FiniteSpace, delta: FiniteSet) -> list[FiniteSet]:
    """Every measurable subset of ``delta``, ordered by mask."""
    if delta.space != space:
        raise SpaceMismatchError("set does not belong to this space")
    if len(delta) > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"{len(delta)} atoms exceed the enumeration bound of {ENUMERATION_LIMIT}"
        )
    return [FiniteSet(space, m) for m in sorted(submasks(delta.mask))]


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (descending; includes 0 and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def refinement_cells(space: FiniteSpace, generators: list[FiniteSet]) -> list[int]:
    """Masks of the atoms of the sigma-algebra generated by ``generators``."""
    cells = [space.full_mask] if space.n else []
    for g in generators:
        if g.space != space:
            raise SpaceMismatchError("generator does not belong to this space")
        split = []
        for c in cells:
            for part in (c & g.mask, c & ~g.mask):
                if part:
                    split.append(part)
        cells = split
    return sorted(cells, key=lambda m: (m & -m).bit_length())


def generate_sigma_algebra(space: FiniteSpace, generators: list[FiniteSet]) -> FiniteSpace:
    """Coarsen ``space`` to the algebra generated by ``generators``.

    Singleton cells keep their atom label; merged cells are labelled
    ``{x,y,...}``.
    """
    labels = []
    for cell in refinement_cells(space, generators):
        members = FiniteSet(space, cell).indices()
        if len(members) == 1:
            labels.append(space.atoms[members[0]])
        else:
            labels.append("{" + ",".join(space.atoms[i] for i in members) + "}")
    return FiniteSpace(tuple(labels))


@dataclass(frozen=True)
class EventuallyConstant:
    """A sequence indexed by the naturals that equals ``tail`` off a finite set.

    ``exceptional`` is kept canonical: sorted, and entries equal to the tail
    are dropped, so equality of instances is equality of sequences.
    """

    exceptional: tuple
    tail: object

    def __post_init__(self):
        items = dict(self.exceptional)
        if any(int(n) < 0 for n in items):
            raise ValueError("indices must be natural numbers")
        canon = tuple(sorted((int(n), v) for n, v in items.items() if v != self.tail))
        object.__setattr__(self, "exceptional", canon)

    @classmethod
    def of(cls, exceptional: dict, tail) -> EventuallyConstant:
        return cls(tuple(exceptional.items()), tail)

    def at(self, n: int):
        for k, v in self.exceptional:
            if k == n:
                return v
        return self.tail

    def support(self) -> list[int]:
        return [k for k, _ in self.exceptional]

    def as_dict(self) -> dict:
        return dict(self.exceptional)

    def map(self, fn: Callable) -> EventuallyConstant:
        return EventuallyConstant(tuple((k, fn(v)) for k, v in self.exceptional), fn(self.tail))

    def fresh_index(self) -> int:
        """An index past every exceptional one."""
        return max(self.support(), default=-1) + 1


def combine(fn: Callable, *seqs):
    """Apply ``fn`` entrywise across tuples or across EventuallyConstants."""
    first = seqs[0]
    if isinstance(first, EventuallyConstant):
        keys = sorted(set().union(*(s.support() for s in seqs)))
        table = [s.as_dict() for s in seqs]
        exc = tuple(
            (k, fn(*(t.get(k, s.tail) for t, s in zip(table, seqs)))) for k in keys
        )
        return EventuallyConstant(exc, fn(*(s.tail for s in seqs)))
    if any(len(s) != len(first) for s in seqs):
        raise SpaceMismatchError("atom counts differ")
    return tuple(fn(*xs) for xs in zip(*seqs))
