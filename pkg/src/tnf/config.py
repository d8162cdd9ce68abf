"""Declarative configuration for (generator, operation) pairs.

JSON syntax; decimals parse exactly (0.25 means a quarter, not the nearest
double) and fractions may be written as strings like "1/3".  Any exponential
piece forces the float backend; requesting the exact backend on such a
configuration is a schema error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .monotone import Exponential, Linear, Piece, PiecewiseIncreasingFn
from .numerics import Num, parse_number
from .tnorms import (
    CLOSED_SQUARE,
    HALF_OPEN,
    LUKASIEWICZ,
    MIN,
    NILPOTENT_MIN,
    PRODUCT,
    ZERO,
    OrdinalSum,
    ScaledSubnorm,
    Summand,
    TNormExpr,
)
from .verify import CheckOptions


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class BuildResult:
    generator: PiecewiseIncreasingFn
    tnorm: TNormExpr
    options: CheckOptions
    backend: str  # "exact" | "float"
    oracle_grid: int


def _num(doc, path) -> Num:
    try:
        return parse_number(doc)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None


def _require(doc, key, path, kind=dict):
    if not isinstance(doc, kind):
        raise ConfigError(path, f"expected {kind.__name__}")
    if key not in doc:
        raise ConfigError(path, f"missing key {key!r}")
    return doc[key]


def _form(doc, path):
    kind = _require(doc, "kind", path)
    if kind == "linear":
        return Linear(_num(_require(doc, "slope", path), f"{path}.slope"),
                      _num(_require(doc, "intercept", path), f"{path}.intercept"))
    if kind == "exponential":
        return Exponential(
            float(_num(_require(doc, "offset", path), f"{path}.offset")),
            float(_num(_require(doc, "scale", path), f"{path}.scale")),
            float(_num(_require(doc, "rate", path), f"{path}.rate")))
    raise ConfigError(path, f"unknown form kind {kind!r}")


def parse_generator(doc, path="generator") -> PiecewiseIncreasingFn:
    pieces_doc = _require(doc, "pieces", path, dict)
    if not isinstance(pieces_doc, list) or not pieces_doc:
        raise ConfigError(f"{path}.pieces", "expected a non-empty list")
    pieces = []
    for i, p in enumerate(pieces_doc):
        pp = f"{path}.pieces[{i}]"
        left = _num(_require(p, "left", pp), f"{pp}.left")
        form = _form(_require(p, "form", pp), f"{pp}.form")
        raw = _require(p, "value_at_left", pp)
        if raw == "continuous":
            # the value at the breakpoint equals the right limit there,
            # computed through the same arithmetic as the form itself
            value = form.value(left)
        else:
            value = _num(raw, f"{pp}.value_at_left")
        pieces.append(Piece(left, form, value))
    raw = _require(doc, "value_at_one", path)
    if raw == "continuous":
        value_at_one = pieces[-1].form.value(1)
    else:
        value_at_one = _num(raw, f"{path}.value_at_one")
    try:
        return PiecewiseIncreasingFn(pieces, value_at_one)
    except (ValueError, AssertionError) as exc:
        raise ConfigError(path, f"invalid generator: {exc}") from None


_LEAVES = {
    "min": MIN,
    "product": PRODUCT,
    "lukasiewicz": LUKASIEWICZ,
    "nilpotent_min": NILPOTENT_MIN,
    "zero": ZERO,
}

_SEMANTICS = {"closed": CLOSED_SQUARE, "half_open": HALF_OPEN}


def parse_tnorm(doc, path="tnorm") -> TNormExpr:
    kind = _require(doc, "kind", path)
    if kind in _LEAVES:
        return _LEAVES[kind]
    if kind == "scaled":
        lam = _num(_require(doc, "lambda", path), f"{path}.lambda")
        inner = parse_tnorm(_require(doc, "inner", path), f"{path}.inner")
        try:
            return ScaledSubnorm(lam, inner)
        except ValueError as exc:
            raise ConfigError(path, str(exc)) from None
    if kind == "ordinal_sum":
        sem = _require(doc, "semantics", path)
        if sem not in _SEMANTICS:
            raise ConfigError(f"{path}.semantics",
                              f"expected 'closed' or 'half_open', got {sem!r}")
        raw = _require(doc, "summands", path)
        if not isinstance(raw, list) or not raw:
            raise ConfigError(f"{path}.summands", "expected a non-empty list")
        summands = []
        for i, s in enumerate(raw):
            sp = f"{path}.summands[{i}]"
            child = parse_tnorm(_require(s, "child", sp), f"{sp}.child")
            try:
                summands.append(Summand(
                    _num(_require(s, "a", sp), f"{sp}.a"),
                    _num(_require(s, "b", sp), f"{sp}.b"),
                    child,
                    s.get("child_kind", "")))
            except ValueError as exc:
                raise ConfigError(sp, str(exc)) from None
        try:
            return OrdinalSum(_SEMANTICS[sem], tuple(summands))
        except ValueError as exc:
            raise ConfigError(path, str(exc)) from None
    raise ConfigError(path, f"unknown operation kind {kind!r}")


def _float_generator(f: PiecewiseIncreasingFn) -> PiecewiseIncreasingFn:
    """Coerce a generator to floats.  Breakpoint values that exactly equal a
    one-sided limit are re-derived through the float pipeline so that the
    equalities survive the coercion."""

    def cast(form):
        if isinstance(form, Linear):
            return Linear(float(form.slope), float(form.intercept))
        return form

    pieces = []
    for p in f.pieces:
        form = cast(p.form)
        left, right = f.side_limits(p.left)
        if p.value_at_left == right:
            value = form.value(float(p.left))
        elif p.value_at_left == left and p.left != f.domain[0]:
            prev = pieces[-1]
            value = prev.form.value(float(p.left))
        else:
            value = float(p.value_at_left)
        pieces.append(Piece(float(p.left), form, value))
    hi = f.domain[1]
    left, _ = f.side_limits(hi)
    if f.value_at_end == left:
        end = pieces[-1].form.value(float(hi))
    else:
        end = float(f.value_at_end)
    return PiecewiseIncreasingFn(pieces, end, f.domain, f.codomain)


def parse_config(doc: Union[str, dict]) -> BuildResult:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc, parse_float=Fraction, parse_int=Fraction)
        except json.JSONDecodeError as exc:
            raise ConfigError("$", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("$", "expected a JSON object")
    f = parse_generator(_require(doc, "generator", "$"))
    tnorm = parse_tnorm(_require(doc, "tnorm", "$"))
    check = doc.get("check", {})
    if not isinstance(check, dict):
        raise ConfigError("check", "expected an object")
    grid = int(check.get("grid", 64))
    oracle_grid = int(check.get("oracle_grid", 41))
    tol = check.get("tol")
    opts = CheckOptions(probe_grid=grid,
                        max_refine=int(check.get("max_refine", 12)),
                        tol=float(tol) if tol is not None else None)
    backend = check.get("backend")
    exact_capable = f.is_exact and tnorm.is_exact()
    if backend == "exact":
        if not exact_capable:
            raise ConfigError("check.backend",
                              "exact backend requires linear pieces with "
                              "rational coefficients throughout")
    elif backend == "float":
        f = _float_generator(f)
    elif backend is None:
        backend = "exact" if exact_capable else "float"
    else:
        raise ConfigError("check.backend",
                          f"expected 'exact' or 'float', got {backend!r}")
    return BuildResult(f, tnorm, opts, backend, oracle_grid)


# ---------------------------------------------------------------------------
# serialization (round-trip partner of parse_config)


def _num_out(v: Num):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return f"{v.numerator}/{v.denominator}"
    return v


def serialize_generator(f: PiecewiseIncreasingFn) -> dict:
    def form_out(form):
        if isinstance(form, Linear):
            return {"kind": "linear", "slope": _num_out(form.slope),
                    "intercept": _num_out(form.intercept)}
        return {"kind": "exponential", "offset": form.offset,
                "scale": form.scale, "rate": form.rate}

    def value_out(value, form, left):
        # right-continuous junctions serialize symbolically so float-valued
        # ones survive the decimal round trip bit for bit
        if value == form.value(left):
            return "continuous"
        return _num_out(value)

    return {
        "pieces": [{"left": _num_out(p.left), "form": form_out(p.form),
                    "value_at_left": value_out(p.value_at_left, p.form, p.left)}
                   for p in f.pieces],
        "value_at_one": value_out(f.value_at_end, f.pieces[-1].form,
                                  f.domain[1]),
    }


def serialize_tnorm(t: TNormExpr) -> dict:
    for name, leaf in _LEAVES.items():
        if t == leaf:
            return {"kind": name}
    if isinstance(t, ScaledSubnorm):
        return {"kind": "scaled", "lambda": _num_out(t.lam),
                "inner": serialize_tnorm(t.inner)}
    if isinstance(t, OrdinalSum):
        sem = "closed" if t.semantics == CLOSED_SQUARE else "half_open"
        return {"kind": "ordinal_sum", "semantics": sem,
                "summands": [{"a": _num_out(s.a), "b": _num_out(s.b),
                              "child": serialize_tnorm(s.child),
                              "child_kind": s.child_kind}
                             for s in t.summands]}
    raise ValueError(f"cannot serialize {t!r}")


def serialize_config(res: BuildResult) -> dict:
    return {
        "generator": serialize_generator(res.generator),
        "tnorm": serialize_tnorm(res.tnorm),
        "check": {
            "grid": res.options.probe_grid,
            "max_refine": res.options.max_refine,
            "backend": res.backend,
            "oracle_grid": res.oracle_grid,
            **({"tol": res.options.tol} if res.options.tol is not None else {}),
        },
    }
