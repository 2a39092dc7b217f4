"""Operator <-> measure correspondence and the checks built on it.

``operator_to_measure`` evaluates an operator on indicators;
``measure_to_operator`` integrates against a measure.  The two are computed
by independent routes (``apply`` versus ``integrate``), so comparing them is a
real check of the representation theorem on each instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from .lattice import Q
from itertools import product
from typing import Optional, Sequence, Union

from . import measures as M
from . import operators as O
from .errors import SpaceMismatchError
from .integral import SimpleFunction, integrate, integrate_pos
from .lattice import ONE_NORM, SUP_NORM, LatticeElement, LatticeNorm, ext_inf, norm
from .measures import PosMeasure, SignedMeasure, evaluate
from .operators import RegularOperator, apply, nob_report
from .spaces import NATURALS, EventuallyConstant, FiniteSet, FiniteSpace, NatSet, NatSpace


def operator_to_measure(t: RegularOperator) -> Union[SignedMeasure, PosMeasure]:
    """``mu_T(D) = T+(chi_D) - T-(chi_D)``, stored by atoms.

    On the naturals ``T`` must be positive and the result is a positive,
    possibly infinite, measure.
    """
    if isinstance(t.space, FiniteSpace):
        plus, minus = O.positive_part(t), O.negative_part(t)
        atoms = []
        for i in range(t.space.n):
            chi = SimpleFunction.indicator(t.space.atom(i))
            atoms.append(apply(plus, chi) - apply(minus, chi))
        return SignedMeasure(t.space, tuple(atoms), t.dim)
    if not t.is_positive():
        raise ValueError("only positive operators on the naturals are represented here")
    cols = t.columns
    exc = {n: apply(t, SimpleFunction.indicator(NatSet.fin((n,)))) for n in cols.support()}
    generic = SimpleFunction.indicator(NatSet.fin((cols.fresh_index(),)))
    return PosMeasure(NATURALS, EventuallyConstant.of(exc, apply(t, generic)), t.dim)


def measure_to_operator(mu: Union[SignedMeasure, PosMeasure]) -> RegularOperator:
    """The integration operator ``f -> int f dmu``, recorded by its columns."""
    if isinstance(mu, PosMeasure) and isinstance(mu.space, FiniteSpace):
        mu = mu.to_signed()
    if isinstance(mu.space, FiniteSpace):
        cols = tuple(
            integrate(SimpleFunction.indicator(mu.space.atom(i)), mu) for i in range(mu.space.n)
        )
        return RegularOperator(mu.space, cols, mu.dim)

    def column(n):
        chi = SimpleFunction.indicator(NatSet.fin((n,)))
        if isinstance(mu, PosMeasure):
            return integrate_pos(chi, mu)
        return integrate(chi, mu)

    exc = {n: column(n) for n in mu.values.support()}
    return RegularOperator(
        NATURALS, EventuallyConstant.of(exc, column(mu.values.fresh_index())), mu.dim
    )


@dataclass
class ReprCheckReport:
    roundtrip_ok: bool = True
    bipositive_ok: bool = True
    isometry_ok: bool = True
    lattice_hom_ok: bool = True
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.roundtrip_ok and self.bipositive_ok and self.isometry_ok and self.lattice_hom_ok

    def to_dict(self) -> dict:
        return {
            "roundtrip_ok": self.roundtrip_ok,
            "bipositive_ok": self.bipositive_ok,
            "isometry_ok": self.isometry_ok,
            "lattice_hom_ok": self.lattice_hom_ok,
            "witnesses": self.witnesses,
        }


def _measure_nonneg(mu) -> bool:
    return all(v.is_positive() for v in mu._table)


def _operator_nonneg(t: RegularOperator) -> bool:
    # nonnegative on the atom-indicator basis, hence on all f >= 0 by linearity
    return all(
        apply(t, SimpleFunction.indicator(t.space.atom(i))).is_positive() for i in range(t.space.n)
    )


def isomorphism_check(
    obj: Union[RegularOperator, SignedMeasure],
    norms: Sequence[LatticeNorm] = (SUP_NORM, ONE_NORM),
    other: Union[RegularOperator, SignedMeasure, None] = None,
) -> ReprCheckReport:
    """Check roundtrip, bipositivity, isometry and the lattice homomorphism
    property for one finite-space instance."""
    if isinstance(norms, LatticeNorm):
        norms = (norms,)
    if isinstance(obj, RegularOperator):
        t = obj
    else:
        t = measure_to_operator(obj)
    if not isinstance(t.space, FiniteSpace):
        raise SpaceMismatchError("isomorphism_check works on finite spaces")
    if other is None:
        s = -t
    elif isinstance(other, RegularOperator):
        s = other
    else:
        s = measure_to_operator(other)
    rep = ReprCheckReport()
    w = rep.witnesses
    space = t.space
    mu_t = operator_to_measure(t)
    mu_s = operator_to_measure(s)

    # (a) roundtrips
    back = measure_to_operator(mu_t)
    if back != t:
        rep.roundtrip_ok = False
        w["roundtrip_operator"] = {"T": str(t), "I(mu_T)": str(back)}
    if not isinstance(obj, RegularOperator):
        again = operator_to_measure(measure_to_operator(obj))
        if again != obj:
            rep.roundtrip_ok = False
            w["roundtrip_measure"] = {"mu": str(obj), "mu_(I_mu)": str(again)}
    for d in space.all_sets():
        chi = SimpleFunction.indicator(d)
        if not (apply(t, chi) == evaluate(mu_t, d) == apply(back, chi)):
            rep.roundtrip_ok = False
            w.setdefault("roundtrip_set", str(d))
            break

    # (b) bipositivity, on T and operators derived from it
    for name, op in (
        ("T", t),
        ("|T|", O.modulus(t)),
        ("T+", O.positive_part(t)),
        ("-T-", -O.negative_part(t)),
        ("T v S", O.join(t, s)),
    ):
        if _operator_nonneg(op) != _measure_nonneg(operator_to_measure(op)):
            rep.bipositive_ok = False
            w.setdefault("bipositive", name)

    # (c) isometry ||I_mu||_r = || |mu|(X) ||
    for n in norms:
        r_norm = nob_report(back, n).regular_norm
        m_norm = M.measure_norm(n, mu_t)
        if r_norm != m_norm:
            rep.isometry_ok = False
            w.setdefault("isometry", {"norm": str(n), "regular": str(r_norm), "measure": str(m_norm)})

    # (d) lattice homomorphism
    joined = M.join(mu_t, mu_s)
    met = M.meet(mu_t, mu_s)
    if operator_to_measure(O.join(t, s)) != joined or operator_to_measure(O.meet(t, s)) != met:
        rep.lattice_hom_ok = False
        w["lattice_hom"] = "columnwise join/meet disagrees with measure join/meet"
    if operator_to_measure(O.modulus(t)) != M.abs_measure(mu_t).to_signed():
        rep.lattice_hom_ok = False
        w.setdefault("lattice_hom", "modulus disagrees with |mu_T|")
    for d in space.all_sets():
        if O.rk_sup(t, s, d) != evaluate(joined, d) or O.rk_inf(t, s, d) != evaluate(met, d):
            rep.lattice_hom_ok = False
            w.setdefault("lattice_hom_set", str(d))
            break
    return rep


@dataclass(frozen=True)
class RecoveryReport:
    open_value: LatticeElement
    open_witness: str
    open_attained: bool
    open_matches_measure: bool
    compact_value: LatticeElement
    compact_witness: str
    compact_attained: bool
    compact_matches_measure: bool
    grid_size: int
    non_vertex_maximizers: int

    @property
    def ok(self) -> bool:
        return (
            self.open_attained
            and self.open_matches_measure
            and self.compact_attained
            and self.compact_matches_measure
        )


GRID = (Q(0), Q(1, 2), Q(1))


def recover_on_open(t: RegularOperator, v: FiniteSet) -> RecoveryReport:
    """Recover ``mu_T(V)`` as a sup over ``0 <= f <= 1`` supported in ``V``,
    and ``mu_T(V)`` again (``V`` is compact too) as an inf over ``f = 1`` on ``V``.

    On a discrete finite space every set is open and compact.  Test functions
    range over the grid ``{0, 1/2, 1}``; the optimum of the linear objective
    sits at a vertex, and the report records whether it is attained at
    ``chi_V``.
    """
    if not isinstance(t.space, FiniteSpace):
        raise SpaceMismatchError("recovery formulas are checked on finite spaces")
    if v.space != t.space:
        raise SpaceMismatchError(f"set {v} is not in the operator's space")
    if not t.is_positive():
        raise ValueError("recovery formulas need a positive operator")
    if t.space.n > 8:
        raise ValueError("grid oracle limited to 8 atoms")
    n = t.space.n
    mu_t = operator_to_measure(t)
    inside = v.indices()
    outside = v.complement().indices()
    target = evaluate(mu_t, v)
    chi_v = SimpleFunction.indicator(v)

    def grid(free, fixed_one):
        for vals in product(GRID, repeat=len(free)):
            f = [Q(0)] * n
            for i in fixed_one:
                f[i] = Q(1)
            for i, x in zip(free, vals):
                f[i] = x
            yield vals, SimpleFunction(t.space, tuple(f))

    sup_val = None
    images = []
    for vals, f in grid(inside, ()):
        img = apply(t, f)
        images.append((vals, img))
        sup_val = img if sup_val is None else sup_val | img
    open_attained = apply(t, chi_v) == sup_val
    non_vertex = sum(
        1 for vals, img in images if img == sup_val and any(x == GRID[1] for x in vals)
    )

    inf_val = None
    for _, f in grid(outside, inside):
        img = apply(t, f)
        inf_val = img if inf_val is None else inf_val & img
    compact_attained = apply(t, chi_v) == inf_val

    return RecoveryReport(
        open_value=sup_val,
        open_witness=str(chi_v),
        open_attained=open_attained,
        open_matches_measure=sup_val == target,
        compact_value=inf_val,
        compact_witness=str(chi_v),
        compact_attained=compact_attained,
        compact_matches_measure=inf_val == target,
        grid_size=len(images),
        non_vertex_maximizers=non_vertex,
    )


TRUNCATION_WINDOW = 64


@dataclass(frozen=True)
class NobDichotomyReport:
    measure_finite: bool
    is_nob: bool
    truncation_bounded: bool
    regular_norm: Optional[Q]
    measure_norm: Optional[Q]

    @property
    def ok(self) -> bool:
        agree = self.measure_finite == self.is_nob == self.truncation_bounded
        return agree and self.regular_norm == self.measure_norm


def nob_dichotomy_check(t: RegularOperator, n: LatticeNorm = SUP_NORM) -> NobDichotomyReport:
    """For positive ``T`` on eventually-zero sequences: ``mu_T`` is finite iff
    ``T`` is norm to order bounded.

    Three independent readings: the representing measure at the whole space,
    the tail column of ``T``, and the partial sums ``|T|(chi_{0..N-1})`` over
    the truncation window (bounded iff they stop growing in its second half).
    """
    if not isinstance(t.space, NatSpace):
        raise SpaceMismatchError("the dichotomy concerns operators on the naturals")
    if not t.is_positive():
        raise ValueError("the dichotomy is stated for positive operators")
    half = TRUNCATION_WINDOW // 2
    if t.columns.support() and max(t.columns.support()) >= half:
        raise ValueError(f"exceptional columns must sit below index {half}")
    mu_t = operator_to_measure(t)
    total = evaluate(mu_t, NATURALS.whole())
    measure_finite = isinstance(total, LatticeElement)
    report = nob_report(t, n)
    mod = O.modulus(t)
    partial = {
        k: apply(mod, SimpleFunction.indicator(NatSet.fin(range(k))))
        for k in (half, TRUNCATION_WINDOW)
    }
    bounded = partial[half] == partial[TRUNCATION_WINDOW]
    m_norm = M.measure_norm(n, mu_t) if measure_finite else None
    return NobDichotomyReport(measure_finite, report.is_nob, bounded, report.regular_norm, m_norm)


@dataclass(frozen=True)
class PsiReport:
    valid_measure: bool
    isometric: bool
    lattice_hom: bool
    projection_ok: bool
    projection_values: tuple

    @property
    def ok(self) -> bool:
        return self.valid_measure and self.isometric and self.lattice_hom and self.projection_ok


def psi(space: FiniteSpace, x: int, e: LatticeElement) -> SignedMeasure:
    """The point mass ``mu_e``: ``e`` on sets containing atom ``x``, else 0."""
    z = LatticeElement.zero(e.dim)
    return SignedMeasure(space, tuple(e if i == x else z for i in range(space.n)), e.dim)


def psi_embedding_check(
    space: FiniteSpace,
    x: int,
    e: LatticeElement,
    probes: Sequence[PosMeasure] = (),
    norms: Sequence[LatticeNorm] = (SUP_NORM, ONE_NORM),
) -> PsiReport:
    """Check the point-mass embedding of the lattice into measures and the
    band projection ``P(mu)(D) = inf{mu(G) : x in G}`` for ``x in D``."""
    z = LatticeElement.zero(e.dim)
    mu_e = psi(space, x, e)
    sets = space.all_sets()

    def defined(d):
        return e if x in d else z

    valid = all(evaluate(mu_e, d) == defined(d) for d in sets)
    isometric = all(M.measure_norm(n, mu_e) == norm(n, e) for n in norms)
    lattice_hom = M.abs_measure(mu_e) == psi(space, x, abs(e)).to_pos() and M.pos_part(
        mu_e
    ) == psi(space, x, e.pos()).to_pos()
    projection_ok = True
    values = []
    containing = [d for d in sets if x in d]
    for mu in probes:
        proj = ext_inf([evaluate(mu, g) for g in containing])
        values.append(proj)
        if proj != evaluate(mu, space.atom(x)):
            projection_ok = False
        # P(mu) keeps mu's value at x (possibly infinite) and is 0 elsewhere
        p_mu = PosMeasure(space, tuple(proj if i == x else z for i in range(space.n)), e.dim)
        if not M.leq(p_mu, mu):
            projection_ok = False
    return PsiReport(valid, isometric, lattice_hom, projection_ok, tuple(values))


@dataclass(frozen=True)
class AbstractTransferInstance:
    """Maps ``mu``, ``nu`` on ``S' + {s}``; keys of the dicts are point labels."""

    points: tuple
    s: str
    mu: dict
    nu: dict


@dataclass(frozen=True)
class TransferReport:
    rejected: bool
    holds: Optional[bool]
    reason: str = ""


def regularity_transfer_check(inst: AbstractTransferInstance, mode: str = "sup") -> TransferReport:
    """If ``nu <= nu(s)``, ``mu - nu <= (mu - nu)(s)`` on ``S'`` and
    ``mu(s) = sup mu(S')`` then ``nu(s) = sup nu(S')`` (dually for ``inf``).
    Instances violating the hypotheses are rejected, not failed."""
    if mode not in ("sup", "inf"):
        raise ValueError(f"mode must be 'sup' or 'inf', not {mode!r}")
    if not inst.points:
        return TransferReport(True, None, "S' is empty")
    s, mu, nu = inst.s, inst.mu, inst.nu
    below = (lambda a, b: a <= b) if mode == "sup" else (lambda a, b: a >= b)
    pick = (lambda a, b: a | b) if mode == "sup" else (lambda a, b: a & b)
    slack_s = mu[s] - nu[s]
    for p in inst.points:
        if not below(nu[p], nu[s]):
            return TransferReport(True, None, f"nu({p}) not on the right side of nu(s)")
        if not below(mu[p] - nu[p], slack_s):
            return TransferReport(True, None, f"(mu-nu)({p}) not on the right side of (mu-nu)(s)")
    best_mu = _fold(pick, [mu[p] for p in inst.points])
    if best_mu != mu[s]:
        return TransferReport(True, None, f"mu(s) is not the {mode} of mu over S'")
    best_nu = _fold(pick, [nu[p] for p in inst.points])
    return TransferReport(False, best_nu == nu[s])


def _fold(fn, items):
    acc = items[0]
    for it in items[1:]:
        acc = fn(acc, it)
    return acc


def generate_transfer_instance(
    rng: random.Random, dim: int, size: int, mode: str = "sup", magnitude: int = 100
) -> AbstractTransferInstance:
    """Build an instance satisfying the hypotheses by construction.

    Per coordinate one point of ``S'`` carries both the largest ``nu`` and the
    largest slack ``mu - nu`` (the hypotheses force this).  ``mu(s)`` is the
    max of ``mu`` over ``S'``, and ``nu(s)`` is derived as ``mu(s)`` minus the
    slack at ``s``; the conclusion is then a genuine identity to check.
    """
    sign = 1 if mode == "sup" else -1
    pts = tuple(f"p{i}" for i in range(size))
    nu_c = [[Q(rng.randint(-magnitude, magnitude), rng.randint(1, 12)) for _ in range(dim)] for _ in pts]
    sl_c = [[Q(rng.randint(0, magnitude), rng.randint(1, 12)) for _ in range(dim)] for _ in pts]
    for j in range(dim):
        k = rng.randrange(size)
        nu_c[k][j] = max(sign * r[j] for r in nu_c) * sign
        sl_c[k][j] = max(sign * r[j] for r in sl_c) * sign
    nu = {p: LatticeElement(c) for p, c in zip(pts, nu_c)}
    slack = {p: LatticeElement(c) for p, c in zip(pts, sl_c)}
    mu = {p: nu[p] + slack[p] for p in pts}
    pick = (lambda a, b: a | b) if mode == "sup" else (lambda a, b: a & b)
    mu_s = _fold(pick, list(mu.values()))
    slack_s = _fold(pick, list(slack.values()))
    mu["s"] = mu_s
    nu["s"] = mu_s - slack_s
    return AbstractTransferInstance(pts, "s", mu, nu)
