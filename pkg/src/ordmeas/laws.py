"""Executable laws: every invariant the library promises, as checks over an
:class:`~ordmeas.instance.Instance`.

A law is a function ``(inst, rng) -> iterable of (ok, witness)``.  It picks
the objects it applies to from the instance (by kind and space) and may draw
extra random data from ``rng``.  Each yielded pair is one checked case; the
witness is a small JSON-ready dict naming the objects and values involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from .lattice import Q
from itertools import combinations
from typing import Callable, Iterable

from . import generate as G
from . import measures as M
from . import operators as O
from .integral import (
    SimpleFunction,
    integrate,
    integrate_decomposed,
    integrate_pos,
    monotone_convergence_check,
    triangle_check,
)
from .lattice import (
    ONE_NORM,
    SUP_NORM,
    Infinity,
    LatticeElement,
    ext_add,
    ext_inf,
    ext_le,
    ext_scale,
    ext_sup,
    norm,
)
from .measures import PosMeasure, SignedMeasure, evaluate
from .operators import RegularOperator, apply
from .representation import (
    TRUNCATION_WINDOW,
    generate_transfer_instance,
    isomorphism_check,
    nob_dichotomy_check,
    operator_to_measure,
    psi_embedding_check,
    recover_on_open,
    regularity_transfer_check,
)
from .spaces import NATURALS, FiniteSet, FiniteSpace, NatSet, combine

SUITES = ("lattice", "measures", "integral", "operators", "repr")

@dataclass(frozen=True)
class Law:
    name: str
    suite: str
    fn: Callable


LAWS: list[Law] = []


def law(suite: str, name: str):
    def register(fn):
        LAWS.append(Law(f"{suite}.{name}", suite, fn))
        return fn

    return register


def laws_for(suite: str) -> list[Law]:
    if suite == "all":
        return list(LAWS)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    return [l for l in LAWS if l.suite == suite]


# -- object selection --------------------------------------------------------

def _finite_space(obj) -> bool:
    return isinstance(obj.space, FiniteSpace)


def _pos(inst, finite_space=None, finite_measure=None):
    out = []
    for name, mu in inst.measures.items():
        if not isinstance(mu, PosMeasure):
            continue
        if finite_space is not None and _finite_space(mu) != finite_space:
            continue
        if finite_measure is not None and mu.is_finite() != finite_measure:
            continue
        out.append((name, mu))
    return out


def _signed(inst, finite_space=True):
    return [
        (k, m) for k, m in inst.measures.items()
        if isinstance(m, SignedMeasure) and _finite_space(m) == finite_space
    ]


def _ops(inst, finite_space=True):
    return [(k, t) for k, t in inst.operators.items() if _finite_space(t) == finite_space]


def _funcs(inst, space):
    return [(k, f) for k, f in inst.functions.items() if f.space == space]


PAIRS_PER_SPACE = 3


def _pairs(objs, limit: int = PAIRS_PER_SPACE):
    """Unordered pairs of distinct objects on the same space, in listing
    order, at most ``limit`` per space."""
    out, seen = [], {}
    for a, b in combinations(objs, 2):
        space = a[1].space
        if space == b[1].space and seen.get(space, 0) < limit:
            seen[space] = seen.get(space, 0) + 1
            out.append((a, b))
    return out


def _enumerable(space) -> bool:
    return isinstance(space, FiniteSpace) and space.n <= 8


def _s(x) -> str:
    return str(x)


def _vectors(inst, rng: random.Random, extra: int = 4) -> list[LatticeElement]:
    vs = []
    for mu in inst.measures.values():
        if isinstance(mu.space, FiniteSpace):
            vs.extend(v for v in mu.values if isinstance(v, LatticeElement))
        else:
            vs.extend(v for _, v in mu.values.exceptional)
            vs.append(mu.values.tail)
    for t in inst.operators.values():
        if isinstance(t.space, FiniteSpace):
            vs.extend(t.columns)
    vs = vs[:12]
    vs.extend(G.vector(rng, inst.dim) for _ in range(extra))
    return vs


def _random_nonneg(rng, space: FiniteSpace) -> SimpleFunction:
    return G.function(rng, space, nonneg=True)


# -- lattice -----------------------------------------------------------------

@law("lattice", "modular")
def _lattice_modular(inst, rng):
    vs = _vectors(inst, rng)
    for x, y in zip(vs, vs[1:]):
        lhs = (x | y) + (x & y)
        yield lhs == x + y, {"x": _s(x), "y": _s(y), "value": _s(lhs)}


@law("lattice", "parts")
def _lattice_parts(inst, rng):
    for x in _vectors(inst, rng):
        p, n = x.pos(), x.neg()
        ok = p - n == x and (p & n).is_zero() and abs(x) == p + n
        yield ok, {"x": _s(x), "pos": _s(p), "neg": _s(n)}


def _ext_list(rng, dim, k):
    out = []
    for _ in range(k):
        out.append(Infinity(dim) if rng.random() < 0.1 else G.vector(rng, dim, nonneg=True))
    return out


@law("lattice", "sup_distributes_over_sums")
def _lattice_sup_sums(inst, rng):
    for _ in range(3):
        a = _ext_list(rng, inst.dim, rng.randint(1, 4))
        b = _ext_list(rng, inst.dim, rng.randint(1, 4))
        lhs = ext_sup([ext_add(x, y) for x in a for y in b])
        rhs = ext_add(ext_sup(a), ext_sup(b))
        yield lhs == rhs, {"sup(A+B)": _s(lhs), "supA+supB": _s(rhs)}


@law("lattice", "translation")
def _lattice_translation(inst, rng):
    for _ in range(3):
        s = [G.vector(rng, inst.dim) for _ in range(rng.randint(1, 4))]
        x = G.vector(rng, inst.dim)
        shifted = [x + v for v in s]
        ok = ext_sup(shifted) == x + ext_sup(s) and ext_inf(shifted) == x + ext_inf(s)
        yield ok, {"x": _s(x), "sup": _s(ext_sup(shifted)), "inf": _s(ext_inf(shifted))}


@law("lattice", "homogeneity")
def _lattice_homogeneity(inst, rng):
    for _ in range(3):
        s = _ext_list(rng, inst.dim, rng.randint(1, 4))
        r = G.rational(rng, nonneg=True)
        lhs = ext_sup([ext_scale(r, v) for v in s])
        rhs = ext_scale(r, ext_sup(s))
        yield lhs == rhs, {"r": _s(r), "sup(rS)": _s(lhs), "r sup(S)": _s(rhs)}


@law("lattice", "extended_arithmetic")
def _lattice_extended(inst, rng):
    inf = Infinity(inst.dim)
    x = G.vector(rng, inst.dim, nonneg=True)
    zero = LatticeElement.zero(inst.dim)
    ok = (
        ext_add(x, inf) == inf
        and ext_add(inf, inf) == inf
        and ext_scale(0, inf) == zero
        and ext_scale(Q(1, 2), inf) == inf
        and ext_le(x, inf)
        and ext_inf([x, inf]) == x
        and ext_inf([inf]) == inf
        and ext_sup([x, inf]) == inf
    )
    yield ok, {"x": _s(x)}


@law("lattice", "norm_monotone")
def _lattice_norm(inst, rng):
    for x in _vectors(inst, rng, extra=2)[:8]:
        bump = G.vector(rng, inst.dim, nonneg=True)
        y = abs(x) + bump
        if rng.random() < 0.5:
            y = -y
        for n in (SUP_NORM, ONE_NORM, inst.norm):
            ok = norm(n, x) <= norm(n, y) and norm(n, x) == norm(n, abs(x))
            yield ok, {"norm": _s(n), "x": _s(x), "y": _s(y)}
        a, b = abs(x), bump
        yield norm(ONE_NORM, a) + norm(ONE_NORM, b) == norm(ONE_NORM, a + b), {"x": _s(a), "y": _s(b)}


# -- measures ----------------------------------------------------------------

@law("measures", "modular_identity")
def _measures_modular(inst, rng):
    for (a, mu), (b, nu) in _pairs(_pos(inst, finite_measure=True)):
        lhs = M.add(M.join(mu, nu), M.meet(mu, nu))
        whole = mu.space.whole()
        ok = lhs == M.add(mu, nu)
        yield ok, {"measures": [a, b], "value": _s(evaluate(lhs, whole))}


NAT_PROBES = 8


def _probe_sets(mu, rng):
    """Every set of a small finite space; a seeded sample of probes on the naturals."""
    if isinstance(mu.space, FiniteSpace):
        return mu.space.all_sets() if mu.space.n <= 8 else [mu.space.whole()]
    probes = M.default_probes(mu)
    return rng.sample(probes, min(NAT_PROBES, len(probes)))


@law("measures", "join_meet_match_partition_formula")
def _measures_oracle(inst, rng):
    for (a, mu), (b, nu) in _pairs(_pos(inst)):
        j = M.join(mu, nu)
        finite = mu.is_finite() and nu.is_finite()
        m = M.meet(mu, nu) if finite else None
        probes = _probe_sets(M.add(mu, nu), rng)
        for d in probes:
            ok = evaluate(j, d) == M.partition_formula(mu, nu, d, "sup")
            if m is not None:
                ok = ok and evaluate(m, d) == M.partition_formula(mu, nu, d, "inf")
            if not ok:
                yield False, {"measures": [a, b], "set": _s(d)}
                break
        else:
            yield True, {"measures": [a, b], "sets": len(probes)}


def _truncation_oracle(mu, nu, delta: NatSet, window: int, mode: str):
    inside = [k for k in range(window) if k in delta]
    far = delta - NatSet.fin(range(window))
    pick = ext_sup if mode == "sup" else ext_inf
    vals = []
    for bits in range(1 << len(inside)):
        g = NatSet.fin(k for i, k in enumerate(inside) if bits >> i & 1)
        for gamma in (g, g | far):
            vals.append(ext_add(evaluate(mu, gamma), evaluate(nu, delta - gamma)))
    return pick(vals)


@law("measures", "naturals_candidates_match_truncation")
def _measures_truncation(inst, rng):
    for (a, mu), (b, nu) in _pairs(_pos(inst, finite_space=False)):
        support = set(mu.values.support()) | set(nu.values.support())
        window = max(support, default=0) + 3
        if window > 13:
            continue
        pts = list(range(window))
        for cofinite in (False, True):
            if cofinite:
                keep = rng.sample(pts, min(len(pts), rng.randint(0, 5)))
                delta = NatSet.cofin(p for p in pts if p not in keep)
            else:
                delta = NatSet.fin(rng.sample(pts, min(len(pts), rng.randint(0, 6))))
            for mode in ("sup", "inf"):
                got = M.partition_formula(mu, nu, delta, mode)
                want = _truncation_oracle(mu, nu, delta, window, mode)
                yield got == want, {"measures": [a, b], "set": _s(delta), "mode": mode,
                                    "formula": _s(got), "truncation": _s(want)}


@law("measures", "lattice_laws")
def _measures_lattice_laws(inst, rng):
    objs = _pos(inst, finite_measure=True)
    for (a, mu), (b, nu) in _pairs(objs):
        ok = (
            M.join(mu, nu) == M.join(nu, mu)
            and M.meet(mu, nu) == M.meet(nu, mu)
            and M.join(mu, M.meet(mu, nu)) == mu
            and M.meet(mu, M.join(mu, nu)) == mu
            and M.join(mu, mu) == mu
        )
        yield ok, {"measures": [a, b]}
    for x, y, z in combinations(objs, 3):
        if not x[1].space == y[1].space == z[1].space:
            continue
        mu, nu, rho = x[1], y[1], z[1]
        ok = M.join(M.join(mu, nu), rho) == M.join(mu, M.join(nu, rho)) and M.meet(
            M.meet(mu, nu), rho
        ) == M.meet(mu, M.meet(nu, rho))
        yield ok, {"measures": [x[0], y[0], z[0]]}


@law("measures", "translation")
def _measures_translation(inst, rng):
    objs = _pos(inst, finite_measure=True)
    for x, y, z in combinations(objs, 3):
        if not x[1].space == y[1].space == z[1].space:
            continue
        mu, nu, sg = x[1], y[1], z[1]
        ok = M.join(M.add(mu, sg), M.add(nu, sg)) == M.add(M.join(mu, nu), sg) and M.meet(
            M.add(mu, sg), M.add(nu, sg)
        ) == M.add(M.meet(mu, nu), sg)
        yield ok, {"measures": [x[0], y[0], z[0]]}
    for (a, mu), (b, nu) in _pairs(_signed(inst)):
        sg = M.join(mu, nu)
        ok = M.join(M.add(mu, sg), M.add(nu, sg)) == M.add(M.join(mu, nu), sg)
        yield ok, {"measures": [a, b]}


@law("measures", "signed_norm_chain")
def _measures_norm_chain(inst, rng):
    for name, mu in _signed(inst):
        if not _enumerable(mu.space):
            continue
        absm = M.abs_measure(mu)
        for n in (SUP_NORM, ONE_NORM):
            total = M.measure_norm(n, mu)
            for d in mu.space.all_sets():
                a, b = norm(n, evaluate(mu, d)), norm(n, evaluate(absm, d))
                if not a <= b <= total:
                    yield False, {"measure": name, "norm": _s(n), "set": _s(d)}
                    break
            else:
                yield True, {"measure": name, "norm": _s(n), "value": _s(total)}


@law("measures", "signed_parts")
def _measures_parts(inst, rng):
    for name, mu in _signed(inst) + _signed(inst, finite_space=False):
        p, q = M.pos_part(mu), M.neg_part(mu)
        ok = SignedMeasure.difference(p, q) == mu and M.add(p, q) == M.abs_measure(mu)
        if ok and _enumerable(mu.space):
            zero = SignedMeasure.zero(mu.space, mu.dim)
            for d in mu.space.all_sets():
                if evaluate(p, d) != M.partition_formula(mu, zero, d, "sup"):
                    ok = False
                    break
                if -evaluate(q, d) != M.partition_formula(mu, zero, d, "inf"):
                    ok = False
                    break
        yield ok, {"measure": name, "pos": _s(p), "neg": _s(q)}


@law("measures", "domination_transfer")
def _measures_domination(inst, rng):
    for (a, mu), (b, nu) in _pairs(_pos(inst, finite_space=True, finite_measure=True)):
        big = M.add(mu, nu)
        # atomwise difference; the constructor refuses non-positive atoms
        diff = PosMeasure(big.space, combine(lambda x, y: x - y, big.values, nu.values), big.dim)
        ok = diff == mu and all(
            evaluate(big, d) - evaluate(nu, d) == evaluate(diff, d) for d in _probe_sets(big, rng)
        )
        yield ok, {"measures": [a, b]}


@law("measures", "naturals_additivity")
def _measures_nat_additivity(inst, rng):
    for name, mu in _pos(inst, finite_space=False):
        for _ in range(4):
            pts = list(range(mu.values.fresh_index() + 3))
            a = NatSet.fin(rng.sample(pts, rng.randint(0, len(pts))))
            if rng.random() < 0.5:
                a = a.complement()
            b_items = rng.sample(pts, rng.randint(0, len(pts)))
            b = NatSet.fin(b_items) - a
            lhs = evaluate(mu, a | b)
            rhs = ext_add(evaluate(mu, a), evaluate(mu, b))
            yield lhs == rhs, {"measure": name, "A": _s(a), "B": _s(b), "value": _s(lhs)}


@law("measures", "suprema_of_families")
def _measures_families(inst, rng):
    objs = _pos(inst)
    for (a, mu), (b, nu) in _pairs(objs):
        j = M.join(mu, nu)
        ok = M.sup_family([mu, nu, j]) == j and M.sup_family([mu]) == mu
        probes = _probe_sets(j, rng)
        ok = ok and M.sup_increasing_sequence([mu, j, j], 1, probes) == j
        if mu.is_finite():
            scaled = [M.scale(min(k, 3), mu) for k in range(1, 6)]
            ok = ok and M.sup_increasing_sequence(scaled, 2, probes) == M.scale(3, mu)
        yield ok, {"measures": [a, b]}


@law("measures", "al_additivity")
def _measures_al(inst, rng):
    for (a, mu), (b, nu) in _pairs(_pos(inst, finite_measure=True)):
        lhs = M.measure_norm(ONE_NORM, mu) + M.measure_norm(ONE_NORM, nu)
        rhs = M.measure_norm(ONE_NORM, M.add(mu, nu))
        yield lhs == rhs, {"measures": [a, b], "value": _s(rhs)}


# -- integral ----------------------------------------------------------------

def _nonneg_funcs(inst, space, rng):
    fs = [(k, abs(f)) for k, f in _funcs(inst, space)]
    if isinstance(space, FiniteSpace):
        fs.append(("random", _random_nonneg(rng, space)))
    return fs


@law("integral", "decomposition_independence")
def _integral_decomp(inst, rng):
    for name, mu in _pos(inst):
        for fname, f in _nonneg_funcs(inst, mu.space, rng):
            a = integrate_pos(f, mu, "levels")
            b = integrate_pos(f, mu, "atoms")
            yield a == b, {"measure": name, "function": fname, "value": _s(a)}


@law("integral", "linearity")
def _integral_linear(inst, rng):
    for name, mu in _pos(inst, finite_measure=True) + _signed(inst):
        fs = _funcs(inst, mu.space)
        for (fa, f), (ga, g) in zip(fs, fs[1:]):
            a, b = G.rational(rng, nonneg=True), G.rational(rng, nonneg=True)
            lhs = integrate(f * a + g * b, mu)
            rhs = integrate(f, mu) * a + integrate(g, mu) * b
            yield lhs == rhs, {"measure": name, "functions": [fa, ga], "a": _s(a), "b": _s(b)}


@law("integral", "additive_in_measure")
def _integral_measure_additive(inst, rng):
    for (a, mu), (b, nu) in _pairs(_pos(inst)):
        for fname, f in _nonneg_funcs(inst, mu.space, rng):
            lhs = integrate_pos(f, M.add(mu, nu))
            rhs = ext_add(integrate_pos(f, mu), integrate_pos(f, nu))
            r = G.rational(rng, nonneg=True)
            hom = integrate_pos(f, M.scale(r, mu)) == ext_scale(r, integrate_pos(f, mu))
            yield lhs == rhs and hom, {"measures": [a, b], "function": fname, "r": _s(r)}


@law("integral", "monotone")
def _integral_monotone(inst, rng):
    for name, mu in _pos(inst):
        for fname, f in _funcs(inst, mu.space):
            if isinstance(f.space, FiniteSpace):
                g = f + _random_nonneg(rng, f.space)
            else:
                g = f + SimpleFunction.constant(NATURALS, G.rational(rng, nonneg=True))
            if mu.is_finite():
                ok = integrate(f, mu) <= integrate(g, mu)
            else:
                ok = ext_le(integrate_pos(f.pos(), mu), integrate_pos(g.pos(), mu))
            yield ok, {"measure": name, "function": fname}


@law("integral", "signed_decomposition_invariance")
def _integral_signed(inst, rng):
    for name, mu in _signed(inst) + _signed(inst, finite_space=False):
        shift = [m for _, m in _pos(inst, finite_measure=True) if m.space == mu.space]
        for fname, f in _funcs(inst, mu.space):
            base = integrate(f, mu)
            ok = base == integrate_decomposed(f, M.pos_part(mu), M.neg_part(mu))
            for sg in shift[:2]:
                ok = ok and base == integrate_decomposed(
                    f, M.add(M.pos_part(mu), sg), M.add(M.neg_part(mu), sg)
                )
            yield ok, {"measure": name, "function": fname, "value": _s(base)}


@law("integral", "indicator")
def _integral_indicator(inst, rng):
    for name, mu in _signed(inst) + _pos(inst, finite_space=True):
        for d in _probe_sets(mu, rng):
            chi = SimpleFunction.indicator(d)
            if isinstance(mu, PosMeasure):
                got = integrate_pos(chi, mu)
            else:
                got = integrate(chi, mu)
            if got != evaluate(mu, d):
                yield False, {"measure": name, "set": _s(d)}
                break
        else:
            yield True, {"measure": name}


@law("integral", "triangle")
def _integral_triangle(inst, rng):
    for name, mu in _signed(inst) + _signed(inst, finite_space=False):
        for fname, f in _funcs(inst, mu.space):
            rep = triangle_check(f, mu)
            yield rep.holds, {"measure": name, "function": fname, "lhs": _s(rep.lhs), "rhs": _s(rep.rhs)}


@law("integral", "norm_to_order_bound")
def _integral_bound(inst, rng):
    for name, mu in _signed(inst) + _signed(inst, finite_space=False):
        total = evaluate(M.abs_measure(mu), mu.space.whole())
        for fname, f in _funcs(inst, mu.space):
            lhs = abs(integrate(f, mu))
            yield lhs <= total * f.sup_norm(), {"measure": name, "function": fname, "value": _s(lhs)}


@law("integral", "monotone_convergence")
def _integral_mct(inst, rng):
    for name, mu in _pos(inst):
        for fname, f in _nonneg_funcs(inst, mu.space, rng)[:2]:
            k = rng.randint(1, 4)
            seq = [f * Q(min(i, k), k) for i in range(k + 3)]
            rep = monotone_convergence_check(seq, mu, k)
            yield rep.holds, {"measure": name, "function": fname, "limit": _s(rep.limit_integral)}


# -- operators ---------------------------------------------------------------

@law("operators", "modulus_matches_oracle")
def _ops_modulus(inst, rng):
    for name, t in _ops(inst):
        if not _enumerable(t.space):
            continue
        mod = O.modulus(t)
        tests = [SimpleFunction.constant(t.space, 1)] + [
            _random_nonneg(rng, t.space) for _ in range(5)
        ]
        for x in tests:
            fast, slow = apply(mod, x), O.modulus_oracle(t, x)
            if fast != slow:
                yield False, {"operator": name, "x": _s(x), "fast": _s(fast), "oracle": _s(slow)}
                break
        else:
            yield True, {"operator": name, "modulus": _s(mod)}
        ok = O.modulus(-t) == mod and O.modulus(mod) == mod
        yield ok, {"operator": name, "check": "symmetry"}


@law("operators", "t_T_bound")
def _ops_tt(inst, rng):
    for name, t in _ops(inst):
        rep = O.nob_report(t, inst.norm)
        ok = rep.is_nob and rep.regular_norm == norm(inst.norm, rep.t_T)
        fs = [f for _, f in _funcs(inst, t.space)] + [G.function(rng, t.space) for _ in range(3)]
        for f in fs:
            ok = ok and abs(apply(t, f)) <= rep.t_T * f.sup_norm()
        yield ok, {"operator": name, "t_T": _s(rep.t_T), "regular_norm": _s(rep.regular_norm)}


def _dominated(rng, t: RegularOperator) -> RegularOperator:
    cols = []
    for c in t.columns:
        cols.append(
            LatticeElement._raw(
                tuple(a * Q(rng.randint(-4, 4), 4) for a in c.coords)
            )
        )
    return RegularOperator(t.space, tuple(cols), t.dim)


@law("operators", "dominated_bound")
def _ops_dominated(inst, rng):
    for name, t in _ops(inst):
        tt = O.nob_report(t, inst.norm).t_T
        others = [(k, s) for k, s in _ops(inst) if s.space == t.space and O.dominated_by(s, t)]
        others.append(("random", _dominated(rng, t)))
        for sname, s in others:
            ok = O.dominated_by(s, t)
            for f in [f for _, f in _funcs(inst, t.space)] + [G.function(rng, t.space)]:
                ok = ok and abs(apply(s, f)) <= tt * (2 * f.sup_norm())
            yield ok, {"operator": name, "dominated": sname}


@law("operators", "riesz_kantorovich")
def _ops_rk(inst, rng):
    for (a, t), (b, s) in _pairs(_ops(inst)):
        if not _enumerable(t.space):
            continue
        j, m = O.join(t, s), O.meet(t, s)
        bad = None
        for d in t.space.all_sets():
            chi = SimpleFunction.indicator(d)
            if O.rk_sup(t, s, d) != apply(j, chi) or O.rk_inf(t, s, d) != apply(m, chi):
                bad = d
                break
        yield bad is None, {"operators": [a, b], "set": _s(bad) if bad else None}
        if bad is None:
            # additivity over a random disjoint split
            whole = t.space.whole().mask
            m1 = rng.randint(0, whole)
            d1, d2 = FiniteSet(t.space, m1), FiniteSet(t.space, whole ^ m1)
            ok = O.rk_sup(t, s, d1) + O.rk_sup(t, s, d2) == O.rk_sup(t, s, t.space.whole())
            yield ok, {"operators": [a, b], "split": [_s(d1), _s(d2)]}


@law("operators", "naturals_nob")
def _ops_nat(inst, rng):
    for name, t in _ops(inst, finite_space=False):
        rep = O.nob_report(t, inst.norm)
        ok = rep.is_nob == t.columns.tail.is_zero()
        f = G.nat_function(rng, eventually_zero=True)
        value = apply(t, f)
        expected = LatticeElement.zero(t.dim)
        for k in f.values.support():
            expected = expected + t.column(k) * f.at(k)
        ok = ok and value == expected
        if rep.is_nob:
            ok = ok and abs(value) <= rep.t_T * f.sup_norm()
        yield ok, {"operator": name, "is_nob": rep.is_nob, "value": _s(value)}


# -- representation ----------------------------------------------------------

ISO_OBJECTS = 2


@law("repr", "isomorphism")
def _repr_iso(inst, rng):
    ops = [o for o in _ops(inst) if _enumerable(o[1].space)][:ISO_OBJECTS]
    for i, (name, t) in enumerate(ops):
        other = next((s for k, s in ops[i + 1:] if s.space == t.space), None)
        rep = isomorphism_check(t, (SUP_NORM, ONE_NORM, inst.norm), other)
        yield rep.ok, {"operator": name, **rep.to_dict()}
    for name, mu in _signed(inst)[:ISO_OBJECTS]:
        if _enumerable(mu.space):
            rep = isomorphism_check(mu, (SUP_NORM, ONE_NORM, inst.norm))
            yield rep.ok, {"measure": name, **rep.to_dict()}


@law("repr", "recovery_formulas")
def _repr_recovery(inst, rng):
    for name, t in _ops(inst):
        if t.space.n > 5:
            continue
        pos = t if t.is_positive() else O.modulus(t)
        sets = t.space.all_sets()
        if t.space.n > 3:
            sets = rng.sample(sets, 4)
        for v in sets:
            rep = recover_on_open(pos, v)
            if not rep.ok:
                yield False, {"operator": name, "V": _s(v), "value": _s(rep.open_value)}
                break
        else:
            yield True, {"operator": name, "sets": len(sets)}


@law("repr", "nob_dichotomy")
def _repr_dichotomy(inst, rng):
    for name, t in _ops(inst, finite_space=False):
        pos = t if t.is_positive() else O.modulus(t)
        if max(pos.columns.support(), default=0) >= TRUNCATION_WINDOW // 2:
            continue
        rep = nob_dichotomy_check(pos, inst.norm)
        yield rep.ok, {"operator": name, "measure_finite": rep.measure_finite, "is_nob": rep.is_nob}


@law("repr", "naturals_representation")
def _repr_nat(inst, rng):
    for name, t in _ops(inst, finite_space=False):
        pos = t if t.is_positive() else O.modulus(t)
        mu = operator_to_measure(pos)
        ok = True
        for d in M.default_probes(mu)[:16]:
            val = evaluate(mu, d)
            if d.is_finite():
                ok = ok and val == apply(pos, SimpleFunction.indicator(d))
            else:
                ok = ok and isinstance(val, Infinity) == (not pos.columns.tail.is_zero())
        yield ok, {"operator": name, "measure": _s(mu)}


@law("repr", "psi_embedding")
def _repr_psi(inst, rng):
    spaces = []
    for obj in list(inst.measures.values()) + list(inst.operators.values()):
        if _enumerable(obj.space) and obj.space not in spaces:
            spaces.append(obj.space)
    for space in spaces:
        probes = [m for _, m in _pos(inst, finite_space=True) if m.space == space]
        x = rng.randrange(space.n)
        e = G.vector(rng, inst.dim)
        rep = psi_embedding_check(space, x, e, probes, (SUP_NORM, ONE_NORM, inst.norm))
        yield rep.ok, {"atom": space.atoms[x], "e": _s(e),
                       "projections": [_s(v) for v in rep.projection_values]}


@law("repr", "regularity_transfer")
def _repr_transfer(inst, rng):
    for mode in ("sup", "inf"):
        for _ in range(2):
            t = generate_transfer_instance(rng, inst.dim, rng.randint(1, 5), mode)
            rep = regularity_transfer_check(t, mode)
            yield (not rep.rejected) and bool(rep.holds), {
                "mode": mode, "nu_s": _s(t.nu[t.s]), "reason": rep.reason,
            }


# -- running -----------------------------------------------------------------

def law_rng(seed, case: int, name: str) -> random.Random:
    return random.Random(f"ordmeas:{seed}:{case}:{name}")


def run_law(l: Law, inst, rng: random.Random) -> tuple[int, int, object, object]:
    """``(checked, failed, first witness, first failing witness)``."""
    checked = failed = 0
    example = first_failure = None
    try:
        for ok, witness in l.fn(inst, rng):
            checked += 1
            if example is None:
                example = witness
            if not ok:
                failed += 1
                if first_failure is None:
                    first_failure = witness
    except Exception as exc:  # a crash inside a law is a violation, not an input error
        checked += 1
        failed += 1
        if first_failure is None:
            first_failure = {"error": f"{type(exc).__name__}: {exc}"}
    return checked, failed, example, first_failure


def run_laws(laws: Iterable[Law], inst, seed, case: int) -> dict:
    return {l.name: run_law(l, inst, law_rng(seed, case, l.name)) for l in laws}


def merge(results: Iterable[tuple[int, dict]], laws: Iterable[Law]) -> dict:
    """Fold per-instance results (in index order) into a report table."""
    table = {
        l.name: {"checked": 0, "failed": 0, "example": None, "first_failure": None} for l in laws
    }
    for case, res in results:
        for name, (checked, failed, example, failure) in res.items():
            row = table[name]
            row["checked"] += checked
            row["failed"] += failed
            if row["example"] is None and example is not None:
                row["example"] = example
            if row["first_failure"] is None and failure is not None:
                row["first_failure"] = {"instance": case, "witness": failure}
    return table
