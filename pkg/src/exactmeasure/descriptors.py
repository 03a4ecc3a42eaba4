"""JSON descriptors for spaces, sets, measures, functions and batteries.

Numbers are strings such as ``"3/4"``, ``"inf"`` or plain integers.  Inside
battery terms they may be rational expressions in ``n`` (``"1/2 + 1/(n+2)"``).

Spaces
    ``{"universe": 3}``, ``{"universe": ["a", "b"], "sigma": [[], ["a"], ...]}``,
    ``"real"`` or ``"plane"``.  A measure descriptor carries its own space:
    ``universe``/``sigma`` keys make it finite, otherwise it lives on the line.
Sets
    finite: a list of labels; line: an interval string or a list of them;
    plane: a list of ``[xset, yset]`` boxes.
Measures
    ``{"kind": "table", "universe": 3, "weights": ["1", "2", "0"]}``,
    ``{"kind": "counting", "y": ...}``, ``{"kind": "dirac", "at": ...}``,
    ``{"kind": "lebesgue"}``, ``{"kind": "tensor", "factors": [m1, m2]}``,
    ``{"kind": "restricted", "base": m, "to": set}``.
Functions
    ``{"kind": "step", "terms": [{"coef": "1", "support": "[0,1]"}]}``,
    ``{"kind": "pwl", "pieces": [{"interval": "[0,1)", "a": "1", "b": "0"}]}``,
    ``{"kind": "map", "values": {"e0": "1"}}``,
    ``{"kind": "step2d", "xs": [...], "ys": [...], "cells": [[...]]}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional

from .boxes import BoxSet
from .exprs import eval_rational, eval_xreal
from .functions import FiniteMap, MeasurableFn, PiecewiseLinear, Step
from .intervals import IntervalSet, parse_interval_set
from .lebint import ConvergenceCase
from .measures import Counting, Dirac, FiniteTable, LebesgueR, Measure, Restricted, tensor_measure
from .product import StepFn2D
from .setsys import FiniteUniverse, SubsetFamily
from .simplefn import Repr, SimpleFn
from .spaces import FiniteProductSpace, FiniteSpace, MeasurableSpace, PlaneSpace, RealLine
from .xreal import format_xreal


class DescriptorError(ValueError):
    """A descriptor does not match the expected shape."""


def _need(d: dict, key: str):
    if not isinstance(d, dict):
        raise DescriptorError(f"expected an object with key {key!r}, got {d!r}")
    if key not in d:
        raise DescriptorError(f"missing key {key!r}")
    return d[key]


def parse_universe(u) -> FiniteUniverse:
    if isinstance(u, int) and not isinstance(u, bool):
        return FiniteUniverse(u)
    if isinstance(u, list):
        return FiniteUniverse(len(u), tuple(str(x) for x in u))
    raise DescriptorError(f"bad universe {u!r}")


def parse_space(d) -> MeasurableSpace:
    if d == "real":
        return RealLine()
    if d == "plane":
        return PlaneSpace()
    if isinstance(d, dict) and "universe" in d:
        u = parse_universe(d["universe"])
        sigma = None
        if d.get("sigma") is not None:
            sigma = parse_family(u, d["sigma"])
        return FiniteSpace(u, sigma)
    raise DescriptorError(f"bad space {d!r}")


def parse_family(u: FiniteUniverse, sets) -> SubsetFamily:
    if not isinstance(sets, list):
        raise DescriptorError("a family is a list of label lists")
    return SubsetFamily(u, [u.mask(s) for s in sets])


def parse_set(space: MeasurableSpace, d, env=None):
    if isinstance(space, FiniteSpace):
        if not isinstance(d, list):
            raise DescriptorError("finite sets are lists of labels")
        return space.universe.mask(d)
    if isinstance(space, RealLine):
        return parse_interval_set(d, env)
    if isinstance(space, PlaneSpace):
        return BoxSet([(parse_interval_set(x, env), parse_interval_set(y, env)) for x, y in d])
    raise DescriptorError(f"cannot parse sets of {space!r}")


def format_set(space: MeasurableSpace, a) -> Any:
    if isinstance(space, FiniteSpace):
        return space.universe.label_list(a)
    if hasattr(a, "to_json"):
        return a.to_json()
    return str(a)


def parse_measure(d) -> Measure:
    kind = _need(d, "kind")
    if kind == "lebesgue":
        return LebesgueR()
    if kind == "tensor":
        factors = _need(d, "factors")
        if len(factors) != 2:
            raise DescriptorError("a tensor measure has two factors")
        return tensor_measure(parse_measure(factors[0]), parse_measure(factors[1]))
    if kind == "restricted":
        base = parse_measure(_need(d, "base"))
        return Restricted(base, parse_set(base.space, _need(d, "to")))
    space = parse_space(d) if "universe" in d else RealLine()
    if kind == "table":
        if not isinstance(space, FiniteSpace):
            raise DescriptorError("table measures need a finite universe")
        w = _need(d, "weights")
        weights = {k: eval_xreal(v) for k, v in w.items()} if isinstance(w, dict) else [eval_xreal(v) for v in w]
        return FiniteTable(space, weights)
    if kind == "counting":
        y = d.get("y")
        if isinstance(space, FiniteSpace):
            return Counting(space, space.full() if y is None else space.universe.mask(y))
        if y is None:
            raise DescriptorError("counting measures on the line need a set y")
        if isinstance(y, list) and all(not isinstance(v, str) or "," not in v for v in y):
            return Counting(space, [eval_rational(v) for v in y])
        return Counting(space, parse_interval_set(y))
    if kind == "dirac":
        at = _need(d, "at")
        if isinstance(space, FiniteSpace):
            return Dirac(space, space.universe.index(at))
        return Dirac(space, eval_rational(at))
    raise DescriptorError(f"unknown measure kind {kind!r}")


def parse_fn(d, space: Optional[MeasurableSpace] = None, env=None) -> MeasurableFn:
    """Parse a function descriptor; ``space`` is needed for finite maps."""
    kind = _need(d, "kind")
    if kind == "pwl":
        pieces = []
        for p in _need(d, "pieces"):
            ivs = parse_interval_set(_need(p, "interval"), env).components
            a, b = eval_rational(p.get("a", 0), env), eval_rational(p.get("b", 0), env)
            pieces.extend((iv, a, b) for iv in ivs)
        return PiecewiseLinear(pieces)
    if kind == "step":
        sp = space if isinstance(space, (RealLine, PlaneSpace)) else RealLine()
        terms = [(eval_rational(_need(t, "coef"), env), parse_set(sp, _need(t, "support"), env)) for t in _need(d, "terms")]
        return Step(SimpleFn(sp, terms))
    if kind == "map":
        if "universe" in d:
            space = parse_space(d)
        if not isinstance(space, FiniteSpace):
            raise DescriptorError("finite maps need a finite space")
        vals = _need(d, "values")
        if isinstance(vals, dict):
            vals = {k: eval_xreal(v, env) for k, v in vals.items()}
            if isinstance(space, FiniteProductSpace):
                vals = {_product_label(space, k): v for k, v in vals.items()}
        else:
            vals = [eval_xreal(v, env) for v in vals]
        return FiniteMap(space, vals)
    if kind == "step2d":
        return parse_step2d(d, env).to_step()
    raise DescriptorError(f"unknown function kind {kind!r}")


def _product_label(space: FiniteProductSpace, key) -> int:
    if isinstance(key, str) and key.startswith("(") and key.endswith(")") and "," in key:
        a, b = key[1:-1].split(",", 1)
        return space.pair(space.left.universe.index(a.strip()), space.right.universe.index(b.strip()))
    return space.universe.index(key)


def parse_step2d(d, env=None) -> StepFn2D:
    xs = [eval_rational(x, env) for x in _need(d, "xs")]
    ys = [eval_rational(y, env) for y in _need(d, "ys")]
    cells = [[eval_rational(v, env) for v in row] for row in _need(d, "cells")]
    return StepFn2D(xs, ys, cells)


def parse_simple(space: MeasurableSpace, d, env=None) -> SimpleFn:
    terms = [(eval_rational(_need(t, "coef"), env), parse_set(space, _need(t, "support"), env)) for t in _need(d, "terms")]
    return SimpleFn(space, terms, Repr(d.get("repr", "simple")))


def format_simple(f: SimpleFn) -> dict:
    return {
        "repr": f.repr.value,
        "terms": [{"coef": format_xreal(c), "support": format_set(f.space, s)} for c, s in f.terms],
    }


def parse_case(d, space: Optional[MeasurableSpace] = None) -> ConvergenceCase:
    """A battery case: ``term`` is a function descriptor with expressions in ``n``."""
    term_desc = _need(d, "term")

    def term(n: int, _desc=term_desc):
        return parse_fn(_desc, space, {"n": n})

    limit = parse_fn(_need(d, "limit"), space)
    dom = parse_fn(d["dominator"], space) if d.get("dominator") else None
    rate_expr = d.get("rate")
    rate = (lambda n, _e=rate_expr: eval_rational(_e, {"n": n})) if rate_expr is not None else None
    liminf = eval_xreal(d["liminf"]) if d.get("liminf") is not None else None
    return ConvergenceCase(str(d.get("name", "case")), term, limit, dom, rate, liminf, int(d.get("start", 0)))


def parse_battery(items, space: Optional[MeasurableSpace] = None) -> List[ConvergenceCase]:
    if not isinstance(items, list):
        raise DescriptorError("a battery is a list of cases")
    return [parse_case(d, space) for d in items]
