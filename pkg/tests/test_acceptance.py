"""Acceptance criteria, one test each.  Every comparison is exact.

Run alone with ``pytest tests/test_acceptance.py -v``; a summary with one
PASS/FAIL line per criterion is printed at the end of the session.
"""

import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from ordmeas import (
    ONE_NORM,
    SUP_NORM,
    FiniteSpace,
    RegularOperator,
    apply,
    evaluate,
    isomorphism_check,
    measure_norm,
    modulus,
    modulus_oracle,
    nob_dichotomy_check,
    nob_report,
    partition_formula,
    psi_embedding_check,
    recover_on_open,
    regularity_transfer_check,
    triangle_check,
)
from ordmeas import generate as G
from ordmeas import measures as M
from ordmeas.cli import main
from ordmeas.lattice import Q
from ordmeas.operators import dominated_by
from ordmeas.representation import generate_transfer_instance

from . import oracles as O

DATA = Path(__file__).parent / "data"


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def measure_pairs(count=1000, seed="accept:modular"):
    """Random finite positive measure pairs: dim <= 4, atoms <= 5,
    numerators and denominators <= 100."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        out.append((G.pos_measure(rng, space, dim), G.pos_measure(rng, space, dim)))
    return out


PAIRS = measure_pairs()


@pytest.mark.criterion(1, "modular identity")
def test_modular_identity(criterion):
    def run():
        bad = 0
        for mu, nu in PAIRS:
            lhs = M.add(M.join(mu, nu), M.meet(mu, nu))
            rhs = M.add(mu, nu)
            if lhs != rhs or evaluate(lhs, mu.space.whole()) != evaluate(rhs, mu.space.whole()):
                bad += 1
        return bad

    bad, secs = timed(run)
    assert bad == 0
    assert secs < 10
    criterion.done(f"{len(PAIRS)} instances, {secs:.2f}s (limit 10s)")


@pytest.mark.criterion(2, "join/meet fast paths equal the partition formula")
def test_oracle_equivalence(criterion):
    def run():
        sets = bad = 0
        for mu, nu in PAIRS:
            j, m = M.join(mu, nu), M.meet(mu, nu)
            for d in mu.space.all_sets():
                sets += 1
                if evaluate(j, d) != partition_formula(mu, nu, d, "sup"):
                    bad += 1
                if evaluate(m, d) != partition_formula(mu, nu, d, "inf"):
                    bad += 1
        return sets, bad

    (sets, bad), secs = timed(run)
    assert bad == 0
    assert secs < 30
    # the library brute force itself agrees with the plain-tuple oracle
    for mu, nu in PAIRS[:100]:
        a, b = [tuple(v) for v in mu.values], [tuple(v) for v in nu.values]
        for d in mu.space.all_sets():
            idx = frozenset(d.indices())
            assert tuple(partition_formula(mu, nu, d, "sup")) == O.partition_extreme(a, b, idx, mu.dim, "sup")
            assert tuple(partition_formula(mu, nu, d, "inf")) == O.partition_extreme(a, b, idx, mu.dim, "inf")
    criterion.done(f"{len(PAIRS)} instances, {sets} sets, {secs:.2f}s (limit 30s)")


@pytest.mark.criterion(3, "counterexample reproduction")
def test_counterexamples(criterion, capsys):
    golden = (DATA / "counterexamples.json").read_text()

    def run():
        outs = []
        for _ in range(2):
            code = main(["counterexamples", "--json"])
            outs.append((code, capsys.readouterr().out))
        return outs

    outs, secs = timed(run)
    assert all(code == 0 and out == golden for code, out in outs)
    report = M.counterexample_report()
    inf_part, hahn = report["infimum_counterexample"], report["hahn_counterexample"]
    assert (inf_part["x"], inf_part["y"]) == ("(1,0)", "(0,1)")
    assert inf_part["measure_inf"] == "0" and inf_part["formula_at_N"] == "inf"
    assert (hahn["mu_plus"], hahn["mu_minus"]) == ("(1,0)", "(0,1)")
    assert hahn["hahn_partition_exists"] is False
    assert secs < 1
    criterion.done(f"golden report byte-identical twice, {secs:.2f}s (limit 1s)")


@pytest.mark.criterion(4, "representation isomorphism")
def test_representation_isomorphism(criterion):
    rng = random.Random("accept:iso")
    cases = []
    for _ in range(500):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        cases.append((G.operator(rng, space, dim), G.operator(rng, space, dim)))

    def run():
        return [isomorphism_check(t, (SUP_NORM, ONE_NORM), other=s) for t, s in cases]

    reports, secs = timed(run)
    failed = [r.witnesses for r in reports if not r.ok]
    assert not failed, failed[:3]
    assert secs < 20
    criterion.done(f"{len(cases)} instances, both norms, {secs:.2f}s (limit 20s)")


@pytest.mark.criterion(5, "modulus oracle")
def test_modulus_oracle(criterion):
    rng = random.Random("accept:modulus")
    cases = []
    for _ in range(500):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        t = G.operator(rng, space, dim)
        cases.append((t, [G.function(rng, space, nonneg=True) for _ in range(5)]))

    def run():
        bad = 0
        for t, xs in cases:
            mod = modulus(t)
            for x in xs:
                if apply(mod, x) != modulus_oracle(t, x):
                    bad += 1
        return bad

    bad, secs = timed(run)
    assert bad == 0
    for t, xs in cases[:100]:
        cols = [tuple(c) for c in t.columns]
        for x in xs:
            assert tuple(apply(modulus(t), x)) == O.modulus_by_signs(cols, list(x.values), t.dim)
    assert secs < 20
    criterion.done(f"{len(cases)} operators x 5 vectors, {secs:.2f}s (limit 20s)")


@pytest.mark.criterion(6, "order bound t_T and dominated operators")
def test_order_bound(criterion):
    rng = random.Random("accept:t_T")
    checks = 0
    for _ in range(500):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        t = G.operator(rng, space, dim)
        t_t = nob_report(t, SUP_NORM).t_T
        # |S| <= |T| columnwise: shrink every entry by a factor in [-1, 1]
        s = RegularOperator(
            space,
            tuple(
                type(c)(tuple(x * Q(rng.randint(-6, 6), 6) for x in c.coords)) for c in t.columns
            ),
            dim,
        )
        assert dominated_by(s, t)
        for _ in range(4):
            f = G.function(rng, space)
            bound = t_t * f.sup_norm()
            assert abs(apply(t, f)) <= bound
            assert abs(apply(s, f)) <= bound * 2
            checks += 1
    criterion.done(f"{checks} (T, S, f) triples")


@pytest.mark.criterion(7, "recovery formulas")
def test_recovery(criterion):
    rng = random.Random("accept:recovery")
    ops = []
    for n in (1, 2, 3):
        space = FiniteSpace.of_size(n)
        for _ in range(150):
            ops.append(G.operator(rng, space, rng.randint(1, 4), positive=True))
    ops.append(RegularOperator.from_rows(FiniteSpace.of_size(3), [[1, 0, 2], [0, 1, 1]]))

    def run():
        sets = 0
        for t in ops:
            cols = [tuple(c) for c in t.columns]
            for v in t.space.all_sets():
                sets += 1
                rep = recover_on_open(t, v)
                assert rep.ok
                inside = frozenset(v.indices())
                assert tuple(rep.open_value) == O.grid_sup(cols, inside, t.space.n, t.dim)
                assert tuple(rep.compact_value) == O.grid_inf(cols, inside, t.space.n, t.dim)
                assert tuple(rep.open_value) == O.measure_of(cols, inside, t.dim)
        return sets

    sets, secs = timed(run)
    assert secs < 10
    criterion.done(f"{len(ops)} positive operators, every V ({sets} sets), {secs:.2f}s (limit 10s)")


@pytest.mark.criterion(8, "nob dichotomy on the naturals")
def test_nob_dichotomy(criterion):
    rng = random.Random("accept:nob")
    seen = {True: 0, False: 0}
    for _ in range(200):
        dim = rng.randint(1, 4)
        t = G.nat_operator(rng, dim)
        rep = nob_dichotomy_check(t, rng.choice((SUP_NORM, ONE_NORM)))
        assert rep.ok
        assert rep.measure_finite == rep.is_nob
        # independent reading: sum a long truncation of the columns
        exc = {k: tuple(v) for k, v in t.columns.exceptional}
        whole = O.nat_measure(exc, tuple(t.columns.tail), "cofin", frozenset(), dim)
        assert (whole != O.INF) == rep.is_nob
        seen[rep.is_nob] += 1
    assert seen[True] and seen[False]
    criterion.done(f"200 operators ({seen[True]} nob, {seen[False]} not)")


@pytest.mark.criterion(9, "regularity transfer")
def test_regularity_transfer(criterion):
    rng = random.Random("accept:transfer")
    for mode in ("sup", "inf"):
        for _ in range(1000):
            inst = generate_transfer_instance(rng, rng.randint(1, 4), rng.randint(1, 6), mode)
            rep = regularity_transfer_check(inst, mode)
            assert not rep.rejected, rep.reason
            assert rep.holds
    criterion.done("1000 constructed instances per mode")


@pytest.mark.criterion(10, "AL additivity and point-mass embedding")
def test_al_and_psi(criterion):
    rng = random.Random("accept:al")
    for _ in range(500):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        mu, nu = G.pos_measure(rng, space, dim), G.pos_measure(rng, space, dim)
        assert measure_norm(ONE_NORM, mu) + measure_norm(ONE_NORM, nu) == measure_norm(ONE_NORM, M.add(mu, nu))
    probes = 0
    for _ in range(300):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        x = rng.randrange(n)
        e = G.vector(rng, dim)
        ps = [G.pos_measure(rng, space, dim, allow_inf=rng.random() < 0.3) for _ in range(3)]
        rep = psi_embedding_check(space, x, e, ps)
        assert rep.ok
        for mu, value in zip(ps, rep.projection_values):
            assert value == evaluate(mu, space.atom(x))
        probes += len(ps)
    criterion.done(f"500 measure pairs, 300 embeddings with {probes} probes")


@pytest.mark.criterion(11, "triangle inequality")
def test_triangle(criterion):
    rng = random.Random("accept:triangle")
    for _ in range(1000):
        dim, n = rng.randint(1, 4), rng.randint(1, 5)
        space = FiniteSpace.of_size(n)
        sigma = G.signed_measure(rng, space, dim)
        f = G.function(rng, space)
        rep = triangle_check(f, sigma)
        assert rep.holds and rep.lhs <= rep.rhs
        want = O.integral([abs(v) for v in f.values], [tuple(map(abs, a)) for a in sigma.values], dim)
        assert tuple(rep.rhs) == want
    criterion.done("1000 (f, signed measure) pairs")


def _fuzz(jobs):
    proc = subprocess.run(
        [sys.executable, "-m", "ordmeas", "fuzz", "--seed", "42", "--cases", "1000", "--json", "--jobs", str(jobs)],
        capture_output=True,
        check=False,
    )
    return proc.returncode, proc.stdout, proc.stderr.decode()


@pytest.mark.criterion(12, "fuzz determinism")
def test_fuzz_determinism(criterion):
    (first, second), secs = timed(lambda: (_fuzz(1), _fuzz(2)))
    assert first[0] == 0, first[2]
    assert second[0] == 0, second[2]
    assert first[1] == second[1]
    assert b'"status": "pass"' in first[1]
    criterion.done(f"two runs (1 and 2 workers) byte-identical, {secs:.1f}s total")

