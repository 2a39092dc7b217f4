"""Seeded fuzzing of the law set, with deterministic shrinking.

Case ``i`` of a run with seed ``s`` is generated from
``random.Random(f"ordmeas:{s}:{i}")`` and each law draws from its own
generator keyed by ``(s, i, law)``.  Results are merged by case index, so the
report does not depend on how cases were scheduled across workers.
"""

from __future__ import annotations

import copy
import random
import re
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .errors import InstanceError
from .generate import random_instance
from .instance import dump_instance, dump_rational, parse_instance
from .lattice import Q
from .laws import Law, law_rng, laws_for, merge, run_law, run_laws

MAX_DIM = 4
MAX_ATOMS = 5


def case_rng(seed, i: int) -> random.Random:
    return random.Random(f"ordmeas:{seed}:{i}")


def make_case(seed, i: int, max_dim: int, max_atoms: int):
    return random_instance(case_rng(seed, i), max_dim, max_atoms)


def _run_chunk(args):
    seed, indices, max_dim, max_atoms, suite = args
    laws = laws_for(suite)
    out = []
    for i in indices:
        inst = make_case(seed, i, max_dim, max_atoms)
        out.append((i, run_laws(laws, inst, seed, i)))
    return out


def fuzz(
    seed,
    cases: int,
    max_dim: int = MAX_DIM,
    max_atoms: int = MAX_ATOMS,
    jobs: int = 1,
    suite: str = "all",
) -> dict:
    """Run ``cases`` random instances through the law suite; return the report."""
    if cases < 1:
        raise ValueError("need at least one case")
    if not 1 <= max_dim <= MAX_DIM:
        raise ValueError(f"--dim must be between 1 and {MAX_DIM}")
    if not 1 <= max_atoms <= MAX_ATOMS:
        raise ValueError(f"--atoms must be between 1 and {MAX_ATOMS}")
    laws = laws_for(suite)
    if jobs <= 1:
        results = _run_chunk((seed, range(cases), max_dim, max_atoms, suite))
    else:
        chunks = [list(range(k, cases, jobs)) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_run_chunk, [(seed, c, max_dim, max_atoms, suite) for c in chunks if c])
            results = sorted((r for part in parts for r in part), key=lambda r: r[0])
    table = merge(results, laws)
    failed = any(row["failed"] for row in table.values())
    report = {
        "seed": seed,
        "cases": cases,
        "max_dim": max_dim,
        "max_atoms": max_atoms,
        "suite": suite,
        "laws": table,
        "status": "fail" if failed else "pass",
    }
    if failed:
        name, row = next((k, r) for k, r in table.items() if r["failed"])
        case = row["first_failure"]["instance"]
        law = next(l for l in laws if l.name == name)
        inst = make_case(seed, case, max_dim, max_atoms)
        report["reproducer"] = {
            "law": name,
            "instance": case,
            "instance_file": shrink(dump_instance(inst), law, law_rng(seed, case, name).getstate()),
        }
    return report


# -- shrinking ---------------------------------------------------------------

def _fails(doc: dict, law: Law, rng_state) -> bool:
    try:
        inst = parse_instance(doc)
    except (InstanceError, ValueError):
        return False
    rng = random.Random()
    rng.setstate(rng_state)
    return run_law(law, inst, rng)[1] > 0


def _drop_atom(doc: dict, k: int) -> Optional[dict]:
    space = doc.get("space")
    if not space or space.get("kind") != "finite" or len(space["atoms"]) <= 1:
        return None
    new = copy.deepcopy(doc)
    del new["space"]["atoms"][k]
    for group, key in (("measures", "atoms"), ("operators", "columns")):
        for body in new.get(group, {}).values():
            if "space" not in body and key in body:
                del body[key][k]
    for name, body in new.get("functions", {}).items():
        if isinstance(body, list):
            del body[k]
    return new


def _drop_coord(doc: dict, j: int) -> Optional[dict]:
    dim = doc["lattice"]["dim"]
    if dim <= 1:
        return None
    new = copy.deepcopy(doc)
    new["lattice"]["dim"] = dim - 1
    norm = new["lattice"].get("norm")
    if isinstance(norm, dict) and norm.get("weights"):
        del norm["weights"][j]

    def cut(v):
        if isinstance(v, list):
            del v[j]

    for group, key in (("measures", "atoms"), ("operators", "columns")):
        for body in new.get(group, {}).values():
            for v in body.get(key, []):
                cut(v)
            for v in body.get("exceptional", {}).values():
                cut(v)
            if "tail" in body:
                cut(body["tail"])
    return new


_RATIONAL = re.compile(r"-?\d+(/\d+)?$")


def _leaves(node, path=()):
    """Paths to every rational entry of the object groups."""
    if isinstance(node, dict):
        for k, v in node.items():
            if k not in ("kind", "space"):
                yield from _leaves(v, path + (k,))
    elif isinstance(node, list):
        for i, v in enumerate(node):
            yield from _leaves(v, path + (i,))
    elif isinstance(node, int) and not isinstance(node, bool):
        yield path
    elif isinstance(node, str) and _RATIONAL.match(node):
        yield path


def _size(q: Q) -> int:
    return abs(q.numerator) + q.denominator


def _simpler(value) -> list:
    """Candidate replacements for a rational, simplest first."""
    q = Q(value)
    out = []
    for cand in (Q(0), Q(int(q)), Q((q > 0) - (q < 0))):
        if _size(cand) < _size(q) and dump_rational(cand) not in out:
            out.append(dump_rational(cand))
    return out


def _set_path(doc, path, value):
    node = doc
    for p in path[:-1]:
        node = node[p]
    node[path[-1]] = value


def _get_path(doc, path):
    node = doc
    for p in path:
        node = node[p]
    return node


def shrink(doc: dict, law: Law, rng_state) -> dict:
    """Minimize a failing instance: atoms first, then dimension, then magnitudes."""
    if not _fails(doc, law, rng_state):
        return doc
    changed = True
    while changed:
        changed = False
        k = 0
        while doc.get("space", {}).get("kind") == "finite" and k < len(doc["space"]["atoms"]):
            cand = _drop_atom(doc, k)
            if cand is not None and _fails(cand, law, rng_state):
                doc, changed = cand, True
            else:
                k += 1
    changed = True
    while changed:
        changed = False
        for j in range(doc["lattice"]["dim"]):
            cand = _drop_coord(doc, j)
            if cand is not None and _fails(cand, law, rng_state):
                doc, changed = cand, True
                break
    groups = {k: doc[k] for k in ("measures", "operators", "functions") if k in doc}
    for path in list(_leaves(groups)):
        for simpler in _simpler(_get_path(groups, path)):
            cand = copy.deepcopy(doc)
            _set_path(cand, path, simpler)
            if _fails(cand, law, rng_state):
                doc = cand
                groups = {k: doc[k] for k in ("measures", "operators", "functions") if k in doc}
                break
    return doc
