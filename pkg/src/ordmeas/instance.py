"""Instance files: JSON documents naming measures, operators and functions.

Layout::

    {
      "lattice": {"dim": 2, "norm": "sup"},
      "space": {"kind": "finite", "atoms": ["a1", "a2", "a3"]},
      "measures": {
        "mu": {"kind": "pos", "atoms": [[1, 0], [0, 2], [1, 1]]},
        "mu_counter": {"kind": "pos", "space": {"kind": "naturals"},
                       "exceptional": {}, "tail": [1, 0]}
      },
      "operators": {"T": {"columns": [[1, 3], [-2, 0], [0, -1]]}},
      "functions": {"f": [2, -1, 3]}
    }

Rationals are integers or ``"p/q"`` strings; ``"inf"`` may appear only as an
atom value of a positive measure on a finite space.  Any object may carry
its own ``"space"``; otherwise the top-level one applies.  Parsing rejects
anything malformed instead of coercing it.

A measure may also be given setwise, ``"values": {"a1": [...], "a1+a2":
[...]}``; every atom must appear as a singleton and every listed set must
agree with the sum of its atoms, so non-additive set functions are refused.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from .lattice import Q
from typing import Any, Union

from .errors import InstanceError
from .integral import SimpleFunction
from .lattice import (
    ExtElement,
    Infinity,
    LatticeElement,
    LatticeNorm,
    as_rational,
    format_rational,
)
from .measures import PosMeasure, SignedMeasure, evaluate
from .operators import RegularOperator
from .spaces import NATURALS, EventuallyConstant, FiniteSpace, NatSet, NatSpace

Space = Union[FiniteSpace, NatSpace]


@dataclass
class Instance:
    dim: int
    norm: LatticeNorm
    space: Space | None = None
    measures: dict = field(default_factory=dict)
    operators: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)

    def lookup(self, name: str):
        for table in (self.measures, self.operators, self.functions):
            if name in table:
                return table[name]
        raise InstanceError(f"no object named {name!r}")


# -- scalars and vectors -----------------------------------------------------

def load_rational(v) -> Q:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InstanceError(f"expected an integer or 'p/q' string, got {v!r}")
    if isinstance(v, str) and not re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", v):
        raise InstanceError(f"malformed rational {v!r}")
    try:
        return as_rational(v)
    except (ValueError, TypeError) as exc:
        raise InstanceError(str(exc)) from exc


def dump_rational(q: Q):
    return int(q) if q.denominator == 1 else format_rational(q)


def load_vec(v, dim: int) -> LatticeElement:
    if not isinstance(v, list):
        raise InstanceError(f"expected a list of {dim} rationals, got {v!r}")
    if len(v) != dim:
        raise InstanceError(f"vector {v!r} has length {len(v)}, lattice dimension is {dim}")
    return LatticeElement._raw(tuple(load_rational(c) for c in v))


def dump_vec(x: LatticeElement) -> list:
    return [dump_rational(c) for c in x.coords]


def load_ext(v, dim: int) -> ExtElement:
    if v == "inf":
        return Infinity(dim)
    return load_vec(v, dim)


def dump_ext(a: ExtElement):
    return "inf" if isinstance(a, Infinity) else dump_vec(a)


# -- spaces, sets, norms -----------------------------------------------------

def load_space(doc) -> Space:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InstanceError(f"malformed space {doc!r}")
    if doc["kind"] == "naturals":
        return NATURALS
    if doc["kind"] == "finite":
        atoms = doc.get("atoms")
        if not isinstance(atoms, list) or not all(isinstance(a, str) and a for a in atoms):
            raise InstanceError("finite space needs a list of nonempty atom labels")
        if any(re.search(r"[+\-\s]", a) or a.startswith(("fin:", "cofin:")) or a == "*" for a in atoms):
            raise InstanceError("atom labels may not contain '+', '-', whitespace or set keywords")
        try:
            return FiniteSpace(tuple(atoms))
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc
    raise InstanceError(f"unknown space kind {doc['kind']!r}")


def dump_space(space: Space) -> dict:
    if isinstance(space, NatSpace):
        return {"kind": "naturals"}
    return {"kind": "finite", "atoms": list(space.atoms)}


def load_natset(doc) -> NatSet:
    if isinstance(doc, dict) and len(doc) == 1:
        (key, items), = doc.items()
        if key in ("fin", "cofin") and isinstance(items, list):
            if not all(isinstance(n, int) and not isinstance(n, bool) and n >= 0 for n in items):
                raise InstanceError(f"malformed natural numbers {items!r}")
            return NatSet(frozenset(items), key == "cofin")
    raise InstanceError(f"malformed set of naturals {doc!r}")


def dump_natset(s: NatSet) -> dict:
    return {"cofin" if s.cofinite else "fin": sorted(s.items)}


def load_norm(doc, dim: int) -> LatticeNorm:
    try:
        if isinstance(doc, str):
            return LatticeNorm(doc)
        if isinstance(doc, dict):
            weights = tuple(load_rational(w) for w in doc.get("weights", []))
            if weights and len(weights) != dim:
                raise InstanceError("norm weights must match the lattice dimension")
            return LatticeNorm(doc.get("kind", "sup"), weights)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    raise InstanceError(f"malformed norm {doc!r}")


def dump_norm(n: LatticeNorm):
    if not n.weights:
        return n.kind
    return {"kind": n.kind, "weights": [dump_rational(w) for w in n.weights]}


_TOKEN = re.compile(r"\s*(cofin:\[[^\]]*\]|fin:\[[^\]]*\]|[+\-]|[^+\-\s]+)")


def parse_set(expr: str, space: Space):
    """Parse a set expression: terms joined by ``+`` (union) and ``-``
    (difference), evaluated left to right.

    Terms are atom labels on finite spaces, or ``fin:[...]``, ``cofin:[...]``
    and bare numbers on the naturals; ``*`` is the whole space and the empty
    string the empty set.
    """
    pos, tokens = 0, []
    expr = expr.strip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m:
            raise InstanceError(f"cannot parse set expression {expr!r}")
        tokens.append(m.group(1))
        pos = m.end()
    result = space.empty()
    if not tokens:
        return result
    op = "+"
    expect_term = True
    for tok in tokens:
        if expect_term:
            if tok in "+-":
                raise InstanceError(f"operator {tok!r} where a set was expected in {expr!r}")
            term = _parse_term(tok, space)
            result = result | term if op == "+" else result - term
            expect_term = False
        else:
            if tok not in "+-":
                raise InstanceError(f"missing operator before {tok!r} in {expr!r}")
            op = tok
            expect_term = True
    if expect_term:
        raise InstanceError(f"dangling operator in {expr!r}")
    return result


def _parse_term(tok: str, space: Space):
    if tok == "*":
        return space.whole()
    if isinstance(space, NatSpace):
        m = re.fullmatch(r"(fin|cofin):\[([^\]]*)\]", tok)
        if m:
            body = m.group(2).strip()
            try:
                items = [int(x) for x in body.split(",")] if body else []
            except ValueError:
                raise InstanceError(f"malformed natural numbers in {tok!r}") from None
            if any(n < 0 for n in items):
                raise InstanceError(f"negative number in {tok!r}")
            return NatSet(frozenset(items), m.group(1) == "cofin")
        if tok.isdigit():
            return NatSet.fin((int(tok),))
        raise InstanceError(f"unknown set term {tok!r} on the naturals")
    try:
        return space.set_of([tok])
    except KeyError:
        raise InstanceError(f"unknown atom {tok!r}") from None


def format_set(s) -> str:
    if isinstance(s, NatSet):
        return str(s)
    return "+".join(s.space.atoms[i] for i in s.indices())


# -- objects -----------------------------------------------------------------

def _object_space(doc: dict, default: Space | None) -> Space:
    if "space" in doc:
        return load_space(doc["space"])
    if default is None:
        raise InstanceError("object without a space and no top-level space")
    return default


def _load_nat_seq(doc: dict, load_entry, zero):
    exc = doc.get("exceptional", {})
    if not isinstance(exc, dict):
        raise InstanceError("'exceptional' must map indices to values")
    table = {}
    for k, v in exc.items():
        if not (isinstance(k, str) and k.isdigit()):
            raise InstanceError(f"exceptional index {k!r} is not a natural number")
        table[int(k)] = load_entry(v)
    tail = load_entry(doc["tail"]) if "tail" in doc else zero
    return EventuallyConstant.of(table, tail)


def _dump_nat_seq(seq: EventuallyConstant, dump_entry) -> dict:
    return {
        "exceptional": {str(k): dump_entry(v) for k, v in seq.exceptional},
        "tail": dump_entry(seq.tail),
    }


def load_measure(doc, dim: int, default: Space | None):
    if not isinstance(doc, dict):
        raise InstanceError(f"malformed measure {doc!r}")
    kind = doc.get("kind")
    if kind not in ("pos", "signed"):
        raise InstanceError(f"measure kind must be 'pos' or 'signed', got {kind!r}")
    space = _object_space(doc, default)
    cls = PosMeasure if kind == "pos" else SignedMeasure
    try:
        if isinstance(space, NatSpace):
            if "atoms" in doc or "values" in doc:
                raise InstanceError("measures on the naturals use 'exceptional' and 'tail'")
            values = _load_nat_seq(doc, lambda v: load_vec(v, dim), LatticeElement.zero(dim))
            return cls(space, values, dim)
        if "values" in doc:
            return _load_setwise(doc["values"], cls, space, dim)
        atoms = doc.get("atoms")
        if not isinstance(atoms, list):
            raise InstanceError("finite-space measure needs an 'atoms' list")
        if kind == "signed" and "inf" in atoms:
            raise InstanceError("'inf' is only allowed in positive measures")
        loader = (lambda v: load_ext(v, dim)) if kind == "pos" else (lambda v: load_vec(v, dim))
        return cls(space, tuple(loader(a) for a in atoms), dim)
    except InstanceError:
        raise
    except (ValueError, TypeError) as exc:
        raise InstanceError(str(exc)) from exc


def _load_setwise(values, cls, space: FiniteSpace, dim: int):
    if not isinstance(values, dict):
        raise InstanceError("'values' must map set expressions to values")
    loader = (lambda v: load_ext(v, dim)) if cls is PosMeasure else (lambda v: load_vec(v, dim))
    given = [(parse_set(expr, space), loader(v)) for expr, v in values.items()]
    atoms = [None] * space.n
    for s, v in given:
        if len(s) == 1:
            atoms[s.indices()[0]] = v
    missing = [space.atoms[i] for i, a in enumerate(atoms) if a is None]
    if missing:
        raise InstanceError(f"setwise measure lacks singleton values for {missing}")
    mu = cls(space, tuple(atoms), dim)
    for s, v in given:
        if evaluate(mu, s) != v:
            raise InstanceError(
                f"set function is not additive: value {v} on {format_set(s)!r} "
                f"but its atoms sum to {evaluate(mu, s)}"
            )
    return mu


def dump_measure(mu, default: Space | None) -> dict:
    doc = {"kind": "pos" if isinstance(mu, PosMeasure) else "signed"}
    if mu.space != default:
        doc["space"] = dump_space(mu.space)
    if isinstance(mu.space, NatSpace):
        doc.update(_dump_nat_seq(mu.values, dump_vec))
    else:
        doc["atoms"] = [dump_ext(a) for a in mu.values]
    return doc


def load_operator(doc, dim: int, default: Space | None) -> RegularOperator:
    if not isinstance(doc, dict):
        raise InstanceError(f"malformed operator {doc!r}")
    space = _object_space(doc, default)
    try:
        if isinstance(space, NatSpace):
            cols = _load_nat_seq(doc, lambda v: load_vec(v, dim), LatticeElement.zero(dim))
            return RegularOperator(space, cols, dim)
        cols = doc.get("columns")
        if not isinstance(cols, list):
            raise InstanceError("finite-space operator needs a 'columns' list")
        return RegularOperator(space, tuple(load_vec(c, dim) for c in cols), dim)
    except InstanceError:
        raise
    except (ValueError, TypeError) as exc:
        raise InstanceError(str(exc)) from exc


def dump_operator(t: RegularOperator, default: Space | None) -> dict:
    doc = {}
    if t.space != default:
        doc["space"] = dump_space(t.space)
    if isinstance(t.space, NatSpace):
        doc.update(_dump_nat_seq(t.columns, dump_vec))
    else:
        doc["columns"] = [dump_vec(c) for c in t.columns]
    return doc


def load_function(doc, default: Space | None) -> SimpleFunction:
    if isinstance(doc, list):
        doc = {"values": doc}
    if not isinstance(doc, dict):
        raise InstanceError(f"malformed function {doc!r}")
    space = _object_space(doc, default)
    try:
        if isinstance(space, NatSpace):
            return SimpleFunction(space, _load_nat_seq(doc, load_rational, Q(0)))
        values = doc.get("values")
        if not isinstance(values, list):
            raise InstanceError("finite-space function needs a list of values")
        return SimpleFunction(space, tuple(load_rational(v) for v in values))
    except InstanceError:
        raise
    except (ValueError, TypeError) as exc:
        raise InstanceError(str(exc)) from exc


def dump_function(f: SimpleFunction, default: Space | None):
    if isinstance(f.space, NatSpace):
        doc = _dump_nat_seq(f.values, dump_rational)
        if f.space != default:
            doc = {"space": dump_space(f.space), **doc}
        return doc
    values = [dump_rational(v) for v in f.values]
    if f.space != default:
        return {"space": dump_space(f.space), "values": values}
    return values


# -- whole files -------------------------------------------------------------

def parse_instance(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance file must be a JSON object")
    unknown = set(doc) - {"lattice", "space", "measures", "operators", "functions"}
    if unknown:
        raise InstanceError(f"unknown top-level keys {sorted(unknown)}")
    lat = doc.get("lattice")
    if not isinstance(lat, dict) or not isinstance(lat.get("dim"), int) or isinstance(lat.get("dim"), bool):
        raise InstanceError("'lattice' must give an integer 'dim'")
    dim = lat["dim"]
    if dim < 1:
        raise InstanceError("lattice dimension must be positive")
    n = load_norm(lat.get("norm", "sup"), dim)
    space = load_space(doc["space"]) if "space" in doc else None
    inst = Instance(dim, n, space)
    seen = set()
    for key, loader, table in (
        ("measures", lambda d: load_measure(d, dim, space), inst.measures),
        ("operators", lambda d: load_operator(d, dim, space), inst.operators),
        ("functions", lambda d: load_function(d, space), inst.functions),
    ):
        group = doc.get(key, {})
        if not isinstance(group, dict):
            raise InstanceError(f"'{key}' must be an object mapping names to definitions")
        for name, body in group.items():
            if name in seen:
                raise InstanceError(f"duplicate name {name!r}")
            seen.add(name)
            try:
                table[name] = loader(body)
            except InstanceError as exc:
                raise InstanceError(f"{key[:-1]} {name!r}: {exc}") from None
    return inst


def dump_instance(inst: Instance) -> dict:
    doc: dict = {"lattice": {"dim": inst.dim, "norm": dump_norm(inst.norm)}}
    if inst.space is not None:
        doc["space"] = dump_space(inst.space)
    doc["measures"] = {k: dump_measure(v, inst.space) for k, v in inst.measures.items()}
    doc["operators"] = {k: dump_operator(v, inst.space) for k, v in inst.operators.items()}
    doc["functions"] = {k: dump_function(v, inst.space) for k, v in inst.functions.items()}
    return doc


def load_instance_file(path) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from exc
    return parse_instance(doc)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(dump_instance(inst), indent=2)
