"""Algebraic laws as hypothesis properties."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ordmeas import (
    ONE_NORM,
    SUP_NORM,
    FiniteSet,
    FiniteSpace,
    Infinity,
    LatticeElement,
    PosMeasure,
    RegularOperator,
    SignedMeasure,
    SimpleFunction,
    abs_measure,
    apply,
    evaluate,
    ext_add,
    ext_inf,
    ext_scale,
    ext_sup,
    integrate,
    integrate_pos,
    isomorphism_check,
    measure_norm,
    neg_part,
    nob_report,
    norm,
    operator_to_measure,
    pos_part,
    rk_sup,
)
from ordmeas import measures as M
from ordmeas import operators as Op
from ordmeas.lattice import ext_le

small = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonneg = st.fractions(min_value=0, max_value=50, max_denominator=12)
norms = st.sampled_from([SUP_NORM, ONE_NORM])


def vectors(dim, values=small):
    return st.tuples(*[values] * dim).map(LatticeElement)


@st.composite
def vector_lists(draw, k=3, values=small):
    dim = draw(st.integers(1, 4))
    return [draw(vectors(dim, values)) for _ in range(k)]


@st.composite
def families(draw):
    dim = draw(st.integers(1, 4))
    xs = draw(st.lists(vectors(dim), min_size=1, max_size=4))
    ys = draw(st.lists(vectors(dim), min_size=1, max_size=4))
    return dim, xs, ys


# -- lattice core -----------------------------------------------------------


@given(vector_lists(k=2))
def test_modular_identity_for_vectors(v):
    x, y = v
    assert (x | y) + (x & y) == x + y


@given(vector_lists(k=1))
def test_positive_and_negative_parts(v):
    (x,) = v
    assert x.pos() - x.neg() == x
    assert (x.pos() & x.neg()).is_zero()
    assert abs(x) == x.pos() + x.neg()


@given(vector_lists(k=3))
def test_lattice_axioms(v):
    x, y, z = v
    assert x | y == y | x and x & y == y & x
    assert (x | y) | z == x | (y | z)
    assert x | (x & y) == x and x & (x | y) == x
    assert x & (y | z) == (x & y) | (x & z)


@given(families())
def test_sup_of_pairwise_sums(data):
    _, xs, ys = data
    sums = [x + y for x in xs for y in ys]
    assert ext_sup(sums) == ext_sup(xs) + ext_sup(ys)
    assert ext_inf(sums) == ext_inf(xs) + ext_inf(ys)


@given(families())
def test_translation_invariance(data):
    dim, xs, ys = data
    x = ys[0]
    assert ext_sup([x + s for s in xs]) == x + ext_sup(xs)
    assert ext_inf([x + s for s in xs]) == x + ext_inf(xs)


@given(families(), nonneg)
def test_positive_homogeneity(data, r):
    _, xs, _ = data
    assert ext_sup([s * r for s in xs]) == ext_sup(xs) * r
    assert ext_inf([s * r for s in xs]) == ext_inf(xs) * r


@given(vector_lists(k=2), norms)
def test_norm_is_a_lattice_norm(v, n):
    x, y = v
    assert norm(n, x) == norm(n, abs(x))
    if abs(x) <= abs(y):
        assert norm(n, x) <= norm(n, y)
    assert norm(n, abs(x) | abs(y)) >= max(norm(n, x), norm(n, y))


@given(vector_lists(k=2, values=nonneg))
def test_one_norm_is_additive_on_the_cone(v):
    x, y = v
    assert norm(ONE_NORM, x + y) == norm(ONE_NORM, x) + norm(ONE_NORM, y)


@given(vector_lists(k=2, values=nonneg), nonneg)
def test_extended_arithmetic(v, r):
    x, y = v
    inf = Infinity(x.dim)
    assert ext_add(x, inf) == inf == ext_add(inf, ext_add(y, inf))
    assert ext_scale(0, inf) == LatticeElement.zero(x.dim)
    assert ext_scale(r, inf) == (inf if r > 0 else LatticeElement.zero(x.dim))
    assert ext_le(x, inf) and not ext_le(inf, x)
    assert ext_inf([x, inf]) == x and ext_sup([x, inf]) == inf


# -- measures ---------------------------------------------------------------


@st.composite
def finite_measures(draw, k=2, signed=False):
    n = draw(st.integers(1, 5))
    dim = draw(st.integers(1, 4))
    space = FiniteSpace.of_size(n)
    values = small if signed else nonneg
    cls = SignedMeasure if signed else PosMeasure
    ms = [cls.finite(space, [draw(vectors(dim, values)) for _ in range(n)]) for _ in range(k)]
    return space, ms


@settings(deadline=None)
@given(finite_measures(k=3))
def test_measure_lattice_laws(data):
    space, (mu, nu, rho) = data
    j, m = M.join, M.meet
    assert M.add(j(mu, nu), m(mu, nu)) == M.add(mu, nu)
    assert j(mu, nu) == j(nu, mu) and m(mu, nu) == m(nu, mu)
    assert j(j(mu, nu), rho) == j(mu, j(nu, rho))
    assert m(m(mu, nu), rho) == m(mu, m(nu, rho))
    assert j(mu, m(mu, nu)) == mu and m(mu, j(mu, nu)) == mu
    assert j(M.add(mu, rho), M.add(nu, rho)) == M.add(j(mu, nu), rho)


@settings(deadline=None)
@given(finite_measures(k=1, signed=True), norms)
def test_signed_norm_chain(data, n):
    space, (sigma,) = data
    a = abs_measure(sigma)
    assert a == M.add(pos_part(sigma), neg_part(sigma))
    top = measure_norm(n, sigma)
    for d in space.all_sets():
        assert norm(n, evaluate(sigma, d)) <= norm(n, evaluate(a, d)) <= top


@settings(deadline=None)
@given(finite_measures(k=2))
def test_domination_transfer(data):
    space, (mu, nu) = data
    big = M.add(mu, nu)
    diff = PosMeasure(space, tuple(b - v for b, v in zip(big.values, nu.values)), mu.dim)
    for d in space.all_sets():
        assert evaluate(diff, d) == evaluate(big, d) - evaluate(nu, d)
        assert evaluate(diff, d).is_positive()


@settings(deadline=None)
@given(finite_measures(k=2))
def test_al_additivity(data):
    _, (mu, nu) = data
    assert measure_norm(ONE_NORM, mu) + measure_norm(ONE_NORM, nu) == measure_norm(ONE_NORM, M.add(mu, nu))


@settings(deadline=None)
@given(finite_measures(k=1), st.data())
def test_additivity_on_disjoint_sets(data, draw):
    space, (mu,) = data
    a = draw.draw(st.integers(0, space.full_mask))
    b = draw.draw(st.integers(0, space.full_mask)) & ~a
    sa, sb = FiniteSet(space, a), FiniteSet(space, b)
    assert evaluate(mu, sa | sb) == evaluate(mu, sa) + evaluate(mu, sb)
    assert evaluate(mu, space.empty()).is_zero()


# -- integral ---------------------------------------------------------------


@st.composite
def integrands(draw, k=2, values=small):
    space, (mu,) = draw(finite_measures(k=1))
    fs = [SimpleFunction.finite(space, draw(st.lists(values, min_size=space.n, max_size=space.n))) for _ in range(k)]
    return space, mu, fs


@settings(deadline=None)
@given(integrands(), nonneg, nonneg)
def test_integral_linearity(data, a, b):
    _, mu, (f, g) = data
    assert integrate(f * a + g * b, mu) == integrate(f, mu) * a + integrate(g, mu) * b


@settings(deadline=None)
@given(finite_measures(k=2), st.data(), nonneg)
def test_integral_additive_and_homogeneous_in_measure(data, draw, alpha):
    space, (mu, nu) = data
    f = SimpleFunction.finite(space, draw.draw(st.lists(nonneg, min_size=space.n, max_size=space.n)))
    assert integrate_pos(f, M.add(mu, nu)) == integrate_pos(f, mu) + integrate_pos(f, nu)
    assert integrate_pos(f, M.scale(alpha, mu)) == integrate_pos(f, mu) * alpha


@settings(deadline=None)
@given(integrands())
def test_integral_monotone(data):
    _, mu, (f, g) = data
    lo = SimpleFunction(f.space, tuple(min(a, b) for a, b in zip(f.values, g.values)))
    assert integrate(lo, mu) <= integrate(f, mu)


@settings(deadline=None)
@given(finite_measures(k=1, signed=True), st.data())
def test_norm_to_order_bound(data, draw):
    space, (sigma,) = data
    f = SimpleFunction.finite(space, draw.draw(st.lists(small, min_size=space.n, max_size=space.n)))
    bound = evaluate(abs_measure(sigma), space.whole()) * f.sup_norm()
    assert abs(integrate(f, sigma)) <= bound


# -- operators and representation -------------------------------------------


@st.composite
def operator_pairs(draw):
    n = draw(st.integers(1, 4))
    dim = draw(st.integers(1, 3))
    space = FiniteSpace.of_size(n)
    t = RegularOperator.from_columns(space, [draw(vectors(dim)) for _ in range(n)])
    s = RegularOperator.from_columns(space, [draw(vectors(dim)) for _ in range(n)])
    return space, t, s


@settings(deadline=None, max_examples=60)
@given(operator_pairs())
def test_rk_sup_is_additive_over_disjoint_sets(data):
    space, t, s = data
    for d in space.all_sets():
        rest = space.whole() - d
        assert rk_sup(t, s, d) + rk_sup(t, s, rest) == rk_sup(t, s, space.whole())


@settings(deadline=None, max_examples=60)
@given(operator_pairs(), norms)
def test_finite_space_operators_are_nob(data, n):
    _, t, _ = data
    rep = nob_report(t, n)
    assert rep.is_nob and rep.regular_norm == norm(n, rep.t_T)


@settings(deadline=None, max_examples=40)
@given(operator_pairs())
def test_representation_isomorphism(data):
    _, t, s = data
    rep = isomorphism_check(t, other=s)
    assert rep.ok, rep.witnesses


@settings(deadline=None, max_examples=60)
@given(operator_pairs())
def test_bipositivity(data):
    space, t, _ = data
    positive_on_cone = all(
        apply(t, SimpleFunction.indicator(space.atom(i))).is_positive() for i in range(space.n)
    )
    mu = operator_to_measure(t)
    assert positive_on_cone == all(evaluate(mu, d).is_positive() for d in space.all_sets())
    assert Op.modulus(t).is_positive()


@given(st.fractions(min_value=0, max_value=3, max_denominator=4))
def test_scaling_by_fraction_is_exact(r):
    x = LatticeElement((Fraction(1, 3), Fraction(-2, 7)))
    assert (x * r) * 21 == LatticeElement((7 * r, -6 * r))
