"""Positive (extended-cone valued) and signed (lattice valued) measures.

Measures are stored atom by atom.  On a :class:`FiniteSpace` the value of a
set is the sum of its atom values; on the naturals the atom values form an
:class:`EventuallyConstant` sequence, and a cofinite set has infinite measure
exactly when the tail is nonzero.  Sigma-additivity therefore holds by
construction, and the lattice operations are atomwise.

The partition formulas (sup or inf of ``mu(G) + nu(D - G)`` over measurable
``G`` inside ``D``) are implemented separately by enumeration and serve as
the oracle for the atomwise fast paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

from .errors import (
    DimensionError,
    EnumerationLimitError,
    InfiniteMeasureError,
    NotMonotoneError,
    SpaceMismatchError,
)
from .lattice import (
    ExtElement,
    Infinity,
    LatticeElement,
    LatticeNorm,
    Q,
    as_rational,
    ext_add,
    ext_inf,
    ext_le,
    ext_scale,
    ext_sup,
    norm,
    vec,
)
from .spaces import (
    ENUMERATION_LIMIT,
    NATURALS,
    EventuallyConstant,
    FiniteSet,
    FiniteSpace,
    MeasurableSet,
    NatSet,
    NatSpace,
    combine,
    submasks,
)

Space = Union[FiniteSpace, NatSpace]

# finite spaces this small keep a value table for every set
TABLE_ATOMS = 6


class _AtomwiseMeasure:
    space: Space
    dim: int
    values: Union[tuple, EventuallyConstant]

    def _validate(self) -> None:
        if isinstance(self.space, FiniteSpace):
            if not isinstance(self.values, tuple) or len(self.values) != self.space.n:
                raise SpaceMismatchError(
                    f"expected {self.space.n} atom values, got {len(self.values)}"
                )
            entries = self.values
        elif isinstance(self.space, NatSpace):
            if not isinstance(self.values, EventuallyConstant):
                raise TypeError("measures on the naturals need EventuallyConstant values")
            entries = [v for _, v in self.values.exceptional] + [self.values.tail]
        else:
            raise TypeError(f"unsupported space {self.space!r}")
        for v in entries:
            if v.dim != self.dim:
                raise DimensionError(f"atom value of dimension {v.dim}, expected {self.dim}")

    def atom_value(self, i: int) -> ExtElement:
        if isinstance(self.values, EventuallyConstant):
            return self.values.at(i)
        return self.values[i]

    def __call__(self, delta: MeasurableSet) -> ExtElement:
        return evaluate(self, delta)

    @cached_property
    def _table(self) -> list:
        """Values of every measurable set of a finite space, indexed by mask."""
        n = self.space.n
        if n > ENUMERATION_LIMIT:
            raise EnumerationLimitError(f"{n} atoms exceed the enumeration bound")
        table = [LatticeElement.zero(self.dim)] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            table[m] = ext_add(table[m ^ low], self.values[low.bit_length() - 1])
        return table

    def is_finite(self) -> bool:
        return isinstance(evaluate(self, self.space.whole()), LatticeElement)

    def __str__(self) -> str:
        if isinstance(self.values, EventuallyConstant):
            exc = ", ".join(f"{k}: {v}" for k, v in self.values.exceptional)
            return f"{{{exc}}} tail {self.values.tail}"
        return " ".join(str(v) for v in self.values)


@dataclass(frozen=True, eq=True)
class PosMeasure(_AtomwiseMeasure):
    """A measure with values in the positive cone plus infinity.

    Infinite atom values are allowed on finite spaces only; on the naturals
    infinity arises from a nonzero tail.
    """

    space: Space
    values: Union[tuple, EventuallyConstant]
    dim: int

    def __post_init__(self):
        self._validate()
        if isinstance(self.space, NatSpace):
            entries = [v for _, v in self.values.exceptional] + [self.values.tail]
            if any(isinstance(v, Infinity) for v in entries):
                raise ValueError("atom values on the naturals must be finite")
        else:
            entries = self.values
        for v in entries:
            if isinstance(v, LatticeElement) and not v.is_positive():
                raise ValueError(f"positive measure with negative atom value {v}")

    @classmethod
    def finite(cls, space: FiniteSpace, atoms: Sequence, dim: Optional[int] = None) -> PosMeasure:
        atoms = tuple(_coerce_ext(a, dim) for a in atoms)
        return cls(space, atoms, _infer_dim(atoms, dim))

    @classmethod
    def on_naturals(cls, exceptional: dict, tail, dim: Optional[int] = None) -> PosMeasure:
        tail = _coerce_vec(tail)
        exc = {int(k): _coerce_vec(v) for k, v in exceptional.items()}
        return cls(NATURALS, EventuallyConstant.of(exc, tail), tail.dim)

    @classmethod
    def zero(cls, space: Space, dim: int) -> PosMeasure:
        z = LatticeElement.zero(dim)
        if isinstance(space, NatSpace):
            return cls(space, EventuallyConstant((), z), dim)
        return cls(space, (z,) * space.n, dim)

    def to_signed(self) -> SignedMeasure:
        if not self.is_finite():
            raise InfiniteMeasureError("an infinite measure is not lattice valued")
        return SignedMeasure(self.space, self.values, self.dim)


@dataclass(frozen=True, eq=True)
class SignedMeasure(_AtomwiseMeasure):
    """A lattice-valued measure: a difference of two finite positive measures."""

    space: Space
    values: Union[tuple, EventuallyConstant]
    dim: int

    def __post_init__(self):
        self._validate()
        if isinstance(self.space, NatSpace):
            if not self.values.tail.is_zero():
                raise ValueError("signed measures on the naturals must have zero tail")
            entries = [v for _, v in self.values.exceptional]
        else:
            entries = self.values
        if any(isinstance(v, Infinity) for v in entries):
            raise ValueError("signed measures take finite values")

    @classmethod
    def finite(cls, space: FiniteSpace, atoms: Sequence, dim: Optional[int] = None) -> SignedMeasure:
        atoms = tuple(_coerce_vec(a) for a in atoms)
        return cls(space, atoms, _infer_dim(atoms, dim))

    @classmethod
    def on_naturals(cls, exceptional: dict, dim: int) -> SignedMeasure:
        exc = {int(k): _coerce_vec(v) for k, v in exceptional.items()}
        return cls(NATURALS, EventuallyConstant.of(exc, LatticeElement.zero(dim)), dim)

    @classmethod
    def zero(cls, space: Space, dim: int) -> SignedMeasure:
        return PosMeasure.zero(space, dim).to_signed()

    @classmethod
    def difference(cls, nu1: PosMeasure, nu2: PosMeasure) -> SignedMeasure:
        return add(nu1.to_signed(), scale(-1, nu2.to_signed()))

    def to_pos(self) -> PosMeasure:
        """The same measure in the positive cone; fails unless it is positive."""
        return PosMeasure(self.space, self.values, self.dim)

    @cached_property
    def _parts(self) -> tuple:
        return (
            PosMeasure(self.space, combine(LatticeElement.pos, self.values), self.dim),
            PosMeasure(self.space, combine(LatticeElement.neg, self.values), self.dim),
        )


Measure = Union[PosMeasure, SignedMeasure]


def _coerce_vec(v) -> LatticeElement:
    if isinstance(v, LatticeElement):
        return v
    return LatticeElement(v)


def _coerce_ext(v, dim):
    if isinstance(v, (LatticeElement, Infinity)):
        return v
    if v == "inf":
        if dim is None:
            raise ValueError("need an explicit dimension to place 'inf'")
        return Infinity(dim)
    return LatticeElement(v)


def _infer_dim(values, dim):
    dims = {v.dim for v in values}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise DimensionError(f"inconsistent dimensions {sorted(dims)}")
    if not dims:
        raise ValueError("cannot infer the dimension of a measure on an empty space")
    return dims.pop()


def _same_space(*measures) -> None:
    first = measures[0]
    for m in measures[1:]:
        if m.space != first.space:
            raise SpaceMismatchError("measures live on different spaces")
        if m.dim != first.dim:
            raise DimensionError(f"dimension mismatch: {first.dim} vs {m.dim}")
        if type(m) is not type(first):
            raise TypeError("cannot mix positive and signed measures")


def evaluate(mu: Measure, delta: MeasurableSet) -> ExtElement:
    """Value of ``mu`` on a measurable set of its space."""
    if isinstance(mu.space, FiniteSpace):
        if not isinstance(delta, FiniteSet) or delta.space != mu.space:
            raise SpaceMismatchError(f"set {delta} is not in the space of the measure")
        if mu.space.n <= TABLE_ATOMS or "_table" in mu.__dict__:
            return mu._table[delta.mask]
        total = LatticeElement.zero(mu.dim)
        for i in delta.indices():
            total = ext_add(total, mu.values[i])
        return total
    if not isinstance(delta, NatSet):
        raise SpaceMismatchError(f"set {delta} is not a set of naturals")
    seq = mu.values
    total = LatticeElement.zero(mu.dim)
    if delta.cofinite:
        if not seq.tail.is_zero():
            return Infinity(mu.dim)
        for k, v in seq.exceptional:
            if k not in delta.items:
                total = total + v
        return total
    for n in delta.items:
        total = total + seq.at(n)
    return total


def add(mu: Measure, nu: Measure) -> Measure:
    _same_space(mu, nu)
    return type(mu)(mu.space, combine(ext_add, mu.values, nu.values), mu.dim)


def scale(r, mu: Measure) -> Measure:
    r = as_rational(r)
    if isinstance(mu, PosMeasure):
        if r < 0:
            raise ValueError("positive measures can only be scaled by r >= 0")
        values = combine(lambda v: ext_scale(r, v), mu.values)
    else:
        values = combine(lambda v: v * r, mu.values)
    return type(mu)(mu.space, values, mu.dim)


def join(mu: Measure, nu: Measure) -> Measure:
    """Supremum in the measure cone (or lattice), computed atomwise."""
    _same_space(mu, nu)
    return type(mu)(mu.space, combine(lambda a, b: ext_sup((a, b)), mu.values, nu.values), mu.dim)


def meet(mu: Measure, nu: Measure) -> Measure:
    """Infimum, computed atomwise.

    Positive operands must be finite: for infinite measures the partition
    formula need not describe the infimum (see :func:`counterexample_report`).
    """
    _same_space(mu, nu)
    if isinstance(mu, PosMeasure):
        for m, name in ((mu, "first"), (nu, "second")):
            if not m.is_finite():
                raise InfiniteMeasureError(
                    f"meet requires finite measures; the {name} operand is infinite "
                    "and the infimum formula can fail for infinite measures"
                )
    return type(mu)(mu.space, combine(lambda a, b: a & b, mu.values, nu.values), mu.dim)


def leq(mu: Measure, nu: Measure) -> bool:
    """``mu <= nu`` setwise; on atomic spaces this is the atomwise order."""
    _same_space(mu, nu)
    flags = combine(ext_le, mu.values, nu.values)
    if isinstance(flags, EventuallyConstant):
        return all(v for _, v in flags.exceptional) and flags.tail
    return all(flags)


def partition_candidates(mu: Measure, nu: Measure, delta: MeasurableSet) -> list:
    """The pairs ``(G, D - G)`` enumerated by :func:`partition_formula`.

    On a finite space this is every measurable ``G`` inside ``D``.  On the
    naturals, atoms outside the union ``R`` of the exceptional supports carry
    the tail values of both measures, so it suffices to let ``G`` range over
    subsets ``A`` of ``R & D`` and over ``A`` together with all of ``D - R``.
    """
    _same_space(mu, nu)
    if isinstance(mu.space, FiniteSpace):
        if not isinstance(delta, FiniteSet) or delta.space != mu.space:
            raise SpaceMismatchError(f"set {delta} is not in the space of the measures")
        if len(delta) > ENUMERATION_LIMIT:
            raise EnumerationLimitError(
                f"{len(delta)} atoms exceed the enumeration bound of {ENUMERATION_LIMIT}"
            )
        space = mu.space
        return [
            (FiniteSet(space, g), FiniteSet(space, delta.mask ^ g))
            for g in sorted(submasks(delta.mask))
        ]
    support = set(mu.values.support()) | set(nu.values.support())
    inside = sorted(n for n in support if n in delta)
    if len(inside) > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"{len(inside)} exceptional atoms exceed the enumeration bound of {ENUMERATION_LIMIT}"
        )
    rest = delta - NatSet.fin(inside)
    pairs = []
    for bits in range(1 << len(inside)):
        a = NatSet.fin(n for i, n in enumerate(inside) if bits >> i & 1)
        pairs.append((a, delta - a))
        if rest != NatSet.fin():
            pairs.append((a | rest, delta - (a | rest)))
    return pairs


def partition_formula(mu: Measure, nu: Measure, delta: MeasurableSet, mode: str = "sup") -> ExtElement:
    """``sup`` (or ``inf``) of ``mu(G) + nu(D - G)`` over measurable ``G`` in ``D``.

    Brute force; this is the reference the atomwise :func:`join` and
    :func:`meet` are checked against.
    """
    if mode not in ("sup", "inf"):
        raise ValueError(f"mode must be 'sup' or 'inf', not {mode!r}")
    pick = ext_sup if mode == "sup" else ext_inf
    if isinstance(mu.space, FiniteSpace):
        if not isinstance(delta, FiniteSet) or delta.space != mu.space:
            raise SpaceMismatchError(f"set {delta} is not in the space of the measures")
        _same_space(mu, nu)
        if len(delta) > ENUMERATION_LIMIT:
            raise EnumerationLimitError(
                f"{len(delta)} atoms exceed the enumeration bound of {ENUMERATION_LIMIT}"
            )
        tm, tn, d = mu._table, nu._table, delta.mask
        return pick([ext_add(tm[g], tn[d ^ g]) for g in submasks(d)])
    return pick(
        [ext_add(evaluate(mu, g), evaluate(nu, rest)) for g, rest in partition_candidates(mu, nu, delta)]
    )


def sup_family(measures: Sequence[Measure]) -> Measure:
    """Least upper bound of a non-empty finite family."""
    measures = list(measures)
    if not measures:
        raise ValueError("supremum of an empty family of measures")
    _same_space(*measures)
    first = measures[0]
    values = combine(lambda *xs: ext_sup(xs), *(m.values for m in measures))
    return type(first)(first.space, values, first.dim)


def inf_family(measures: Sequence[Measure]) -> Measure:
    measures = list(measures)
    if not measures:
        raise ValueError("infimum of an empty family of measures")
    result = measures[0]
    for m in measures[1:]:
        result = meet(result, m)
    return result


def default_probes(mu: Measure) -> list:
    """Sets used to confirm setwise statements: every set on small finite
    spaces; on the naturals, all finite/cofinite combinations of the support
    plus one fresh point."""
    if isinstance(mu.space, FiniteSpace):
        if mu.space.n <= 10:
            return mu.space.all_sets()
        return [mu.space.empty(), mu.space.whole()] + [mu.space.atom(i) for i in range(mu.space.n)]
    pts = sorted(set(mu.values.support()))[:8]
    pts.append(mu.values.fresh_index())
    probes = []
    for bits in range(1 << len(pts)):
        chosen = [p for i, p in enumerate(pts) if bits >> i & 1]
        probes.append(NatSet.fin(chosen))
        probes.append(NatSet.cofin(chosen))
    return probes


def sup_increasing_sequence(
    seq: Sequence[Measure], stable_from: Optional[int] = None, probes: Optional[list] = None
) -> Measure:
    """Supremum of an increasing sequence that is constant from ``stable_from`` on.

    The result is the setwise supremum; it is checked against every probe set.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    _same_space(*seq)
    if stable_from is None:
        stable_from = len(seq) - 1
    if not 0 <= stable_from < len(seq):
        raise ValueError(f"stable index {stable_from} outside the sequence")
    for k in range(len(seq) - 1):
        if not leq(seq[k], seq[k + 1]):
            raise NotMonotoneError(f"term {k + 1} is not above term {k}")
    for k in range(stable_from, len(seq)):
        if seq[k] != seq[stable_from]:
            raise NotMonotoneError(f"sequence is not constant from index {stable_from}")
    limit = seq[stable_from]
    for delta in probes if probes is not None else default_probes(limit):
        setwise = ext_sup([evaluate(m, delta) for m in seq])
        if setwise != evaluate(limit, delta):
            raise AssertionError(f"setwise supremum disagrees with the limit at {delta}")
    return limit


def pos_part(mu: SignedMeasure) -> PosMeasure:
    return mu._parts[0]


def neg_part(mu: SignedMeasure) -> PosMeasure:
    return mu._parts[1]


def abs_measure(mu: Measure) -> PosMeasure:
    if isinstance(mu, PosMeasure):
        return mu
    return PosMeasure(mu.space, combine(abs, mu.values), mu.dim)


def measure_norm(n: LatticeNorm, mu: Measure) -> Q:
    """``||mu|| = || |mu|(X) ||``."""
    total = evaluate(abs_measure(mu), mu.space.whole())
    if isinstance(total, Infinity):
        raise InfiniteMeasureError("infinite measures have no norm")
    return norm(n, total)


def _format(v) -> str:
    return str(v)


def counterexample_report() -> dict:
    """Reproduce the two lattice-valued counterexamples.

    1. On the naturals, ``mu(D) = |D| x`` and ``nu(D) = |D| y`` with disjoint
       positive ``x = (1,0)``, ``y = (0,1)``.  Their infimum as measures is 0,
       but the infimum partition formula evaluates to infinity at the whole
       space.
    2. On a one-point space, ``mu({p}) = (1,-1)`` has ``mu+ = (1,0)`` and
       ``mu- = (0,1)``, yet no measurable partition realizes them.

    A finite-space twin of (1) shows formula and meet agreeing when the
    measures are finite.
    """
    x, y = vec(1, 0), vec(0, 1)
    mu = PosMeasure.on_naturals({}, x)
    nu = PosMeasure.on_naturals({}, y)
    # Measures below both mu and nu are below them on every atom; atomic
    # sigma-additivity makes the atomwise infimum the infimum in the cone.
    measure_inf = PosMeasure(NATURALS, combine(lambda a, b: ext_inf((a, b)), mu.values, nu.values), 2)
    whole = NATURALS.whole()
    formula_at_n = partition_formula(mu, nu, whole, "inf")
    finite_sets = [NatSet.fin(s) for s in ([], [0], [1, 2], [0, 3, 5])]
    formula_on_finite = all(
        partition_formula(mu, nu, d, "inf") == evaluate(measure_inf, d) for d in finite_sets
    )
    try:
        meet(mu, nu)
        meet_rejected = False
    except InfiniteMeasureError:
        meet_rejected = True
    infimum = {
        "x": _format(x),
        "y": _format(y),
        "mu_at_N": _format(evaluate(mu, whole)),
        "nu_at_N": _format(evaluate(nu, whole)),
        "measure_inf": "0" if measure_inf == PosMeasure.zero(NATURALS, 2) else str(measure_inf),
        "measure_inf_at_N": _format(evaluate(measure_inf, whole)),
        "formula_at_N": _format(formula_at_n),
        "formula_matches_on_finite_sets": formula_on_finite,
        "meet_rejects_infinite_operands": meet_rejected,
    }
    infimum["pass"] = (
        infimum["measure_inf"] == "0"
        and isinstance(formula_at_n, Infinity)
        and formula_on_finite
        and meet_rejected
    )

    point = FiniteSpace(("p",))
    hmu = SignedMeasure.finite(point, [vec(1, -1)])
    plus, minus = pos_part(hmu), neg_part(hmu)
    p = point.whole()
    partitions = []
    for pos_mask in (0, 1):
        pos_set = FiniteSet(point, pos_mask)
        neg_set = pos_set.complement()
        works = all(
            evaluate(plus, a) == evaluate(hmu, a & pos_set)
            and evaluate(minus, a) == -evaluate(hmu, a & neg_set)
            for a in point.all_sets()
        )
        partitions.append({"positive_set": str(pos_set), "negative_set": str(neg_set), "realizes": works})
    hahn = {
        "mu_p": _format(evaluate(hmu, p)),
        "mu_plus": _format(evaluate(plus, p)),
        "mu_minus": _format(evaluate(minus, p)),
        "partitions_checked": len(partitions),
        "partitions": partitions,
        "hahn_partition_exists": any(q["realizes"] for q in partitions),
    }
    hahn["pass"] = (
        hahn["mu_plus"] == "(1,0)" and hahn["mu_minus"] == "(0,1)" and not hahn["hahn_partition_exists"]
    )

    two = FiniteSpace(("a1", "a2"))
    tmu = PosMeasure.finite(two, [x, x])
    tnu = PosMeasure.finite(two, [y, y])
    formula = partition_formula(tmu, tnu, two.whole(), "inf")
    via_meet = evaluate(meet(tmu, tnu), two.whole())
    twin = {
        "formula_at_X": _format(formula),
        "meet_at_X": _format(via_meet),
        "agree": formula == via_meet,
    }
    twin["pass"] = twin["agree"]
    return {
        "infimum_counterexample": infimum,
        "hahn_counterexample": hahn,
        "finite_twin": twin,
        "pass": infimum["pass"] and hahn["pass"] and twin["pass"],
    }
