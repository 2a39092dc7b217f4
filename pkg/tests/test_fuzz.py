import json
import random

import pytest

from ordmeas import parse_instance
from ordmeas.fuzz import fuzz, make_case, shrink
from ordmeas.instance import dump_instance
from ordmeas.laws import LAWS, SUITES, Law, laws_for, run_law


def test_same_seed_same_report():
    a = json.dumps(fuzz(5, 6), indent=2)
    b = json.dumps(fuzz(5, 6), indent=2)
    assert a == b
    assert json.loads(a)["status"] == "pass"


def test_report_does_not_depend_on_workers():
    one = json.dumps(fuzz(7, 5, jobs=1, suite="measures"))
    two = json.dumps(fuzz(7, 5, jobs=2, suite="measures"))
    assert one == two


def test_cases_are_reproducible():
    assert make_case(1, 3, 4, 5) == make_case(1, 3, 4, 5)
    assert make_case(1, 3, 4, 5) != make_case(1, 4, 4, 5)


def test_bounds_are_respected():
    for i in range(20):
        inst = make_case(0, i, 2, 3)
        assert 1 <= inst.dim <= 2 and 1 <= inst.space.n <= 3


@pytest.mark.parametrize("kw", [{"cases": 0}, {"cases": 1, "max_dim": 0}, {"cases": 1, "max_atoms": 9}])
def test_bad_arguments(kw):
    with pytest.raises(ValueError):
        fuzz(0, **kw)


def test_every_suite_is_registered():
    assert {law.suite for law in LAWS} == set(SUITES)
    assert len(laws_for("all")) == len(LAWS)
    with pytest.raises(ValueError):
        laws_for("nonsense")


def _false_law(inst, rng):
    # "mu is zero on the first atom": false for almost every random instance
    mu = inst.measures["mu"]
    yield mu.values[0].is_zero(), {"atom": mu.space.atoms[0]}


FALSE = Law("test.first_atom_zero", "test", _false_law)


def test_shrinking_minimizes_atoms_dimension_and_values():
    inst = next(make_case(0, i, 4, 5) for i in range(50) if make_case(0, i, 4, 5).space.n >= 3)
    doc = dump_instance(inst)
    assert run_law(FALSE, inst, random.Random(0))[1] == 1
    small = shrink(doc, FALSE, random.Random(0).getstate())
    assert len(small["space"]["atoms"]) == 1
    assert small["lattice"]["dim"] == 1
    value = small["measures"]["mu"]["atoms"][0][0]
    assert value == 1
    again = shrink(doc, FALSE, random.Random(0).getstate())
    assert again == small
    assert run_law(FALSE, parse_instance(small), random.Random(0))[1] == 1


def test_passing_instance_is_left_alone():
    inst = make_case(0, 0, 4, 5)
    law = Law("test.true", "test", lambda i, rng: [(True, {})])
    doc = dump_instance(inst)
    assert shrink(doc, law, random.Random(0).getstate()) == doc


def test_failure_produces_reproducer(monkeypatch):
    import ordmeas.fuzz as F

    monkeypatch.setattr(F, "laws_for", lambda suite: [FALSE])
    report = F.fuzz(0, 3)
    assert report["status"] == "fail"
    rep = report["reproducer"]
    assert rep["law"] == FALSE.name
    assert rep["instance_file"]["lattice"]["dim"] == 1
