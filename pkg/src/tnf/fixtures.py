"""Built-in example configurations for the ``example`` command.

Each fixture carries the declarative config, the published closed form of
the generated function (when one exists), and the expected verdicts; the
runner replays the checks against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .config import BuildResult, parse_config

E_1 = math.exp(-1)


@dataclass(frozen=True)
class Fixture:
    fixture_id: str
    title: str
    config: dict
    expected_check: str                 # "proven" | "refuted"
    expect_tnorm: bool
    closed_form: Optional[Callable]
    expected_class: Optional[str]
    witness: Optional[tuple] = None     # published counterexample triple

    def build(self) -> BuildResult:
        return parse_config(dict(self.config))


def _upper_exp():
    # 0.5 + 0.5 e^(2x - 2)
    return {"kind": "exponential", "offset": 0.5,
            "scale": 0.5 * math.exp(-2), "rate": 2.0}


def _gen(pieces, value_at_one):
    return {"pieces": pieces, "value_at_one": value_at_one}


def _linear(slope, intercept):
    return {"kind": "linear", "slope": slope, "intercept": intercept}


_TWO_BLOCK = {
    "kind": "ordinal_sum", "semantics": "closed",
    "summands": [
        {"a": 0, "b": "1/2", "child": {"kind": "lukasiewicz"}},
        {"a": "1/2", "b": 1, "child": {"kind": "product"}},
    ],
}

_NILP_BLOCK = {
    "kind": "ordinal_sum", "semantics": "closed",
    "summands": [
        {"a": 0, "b": "1/2", "child": {"kind": "nilpotent_min"}},
        {"a": "1/2", "b": 1, "child": {"kind": "product"}},
    ],
}

_PROD_BLOCK = {
    "kind": "ordinal_sum", "semantics": "closed",
    "summands": [
        {"a": 0, "b": "1/2", "child": {"kind": "product"}},
        {"a": "1/2", "b": 1, "child": {"kind": "product"}},
    ],
}


def _cf_31i(x, y):
    return max(0.0, float(x) + float(y) - 1.0)


def _cf_31ii(x, y):
    x, y = float(x), float(y)
    if x <= 0.5 and y <= 0.5:
        return 0.0
    if x > 0.5 and y > 0.5:
        return 0.5 + 0.5 * (2 * x - 1) * (2 * y - 1)
    return min(x, y)


def _cf_31iii(x, y):
    x, y = float(x), float(y)
    if x < 0.5 and y < 0.5:
        return 0.0
    if x >= 0.5 and y >= 0.5:
        return 0.5 + 0.5 * (2 * x - 1) * (2 * y - 1)
    return min(x, y)


def _cf_31iv(x, y):
    x, y = float(x), float(y)
    if x <= 0.5 and y <= 0.5:
        return 0.0
    if x > 0.5 and y > 0.5:
        return 0.5 + 0.5 * max(2 * x + 2 * y - 3, 0.0)
    return min(x, y)


def _cf_41ii(x, y):
    x, y = float(x), float(y)
    if x > 0.5 and y > 0.5:
        return 0.5 + 0.5 * max(2 * x + 2 * y - 3, 0.0)
    return min(x, y)


def _cf_41iii(x, y):
    x, y = float(x), float(y)
    if x < 0.5 and y < 0.5:
        return 1.6 * x * y
    if x > 0.5 and y > 0.5:
        return 0.5 + 0.5 * max(2 * x + 2 * y - 3, 0.0)
    return min(x, y)


def _cf_min(x, y):
    return min(float(x), float(y))


_F_HALVING = _gen(
    [{"left": 0, "form": _linear("1/2", 0), "value_at_left": 0},
     {"left": "1/2", "form": _linear(1, 0), "value_at_left": "1/4"}], 1)

_F_HALVING_HIGH = _gen(
    [{"left": 0, "form": _linear("1/2", 0), "value_at_left": 0},
     {"left": "1/2", "form": _linear(1, 0), "value_at_left": "1/2"}], 1)

_F_HALVING_EXP = _gen(
    [{"left": 0, "form": _linear("1/2", 0), "value_at_left": 0},
     {"left": "1/2", "form": _upper_exp(), "value_at_left": "1/4"}], 1)

_F_41II = _gen(
    [{"left": 0, "form": _linear("1/5", "3/10"), "value_at_left": "3/10"},
     {"left": "1/2", "form": _upper_exp(), "value_at_left": "2/5"}], 1)

_F_41III = _gen(
    [{"left": 0, "form": _linear("4/5", 0), "value_at_left": 0},
     {"left": "1/2", "form": _upper_exp(), "value_at_left": "continuous"}], 1)


FIXTURES = {
    "3.1.i": Fixture(
        "3.1.i",
        "exponential generator with the product: the generated function is "
        "the bounded difference",
        {"generator": _gen([{"left": 0,
                             "form": {"kind": "exponential", "offset": 0.0,
                                      "scale": E_1, "rate": 1.0},
                             "value_at_left": E_1}], 1),
         "tnorm": {"kind": "product"}},
        "proven", True, _cf_31i, "OrdinallyIrreducible"),
    "3.1.ii": Fixture(
        "3.1.ii",
        "halved lower generator (value 1/4 at the junction) with a two-block "
        "sum",
        {"generator": _F_HALVING, "tnorm": _TWO_BLOCK},
        "proven", True, _cf_31ii, "NonTrivialOrdinalSum"),
    "3.1.iii": Fixture(
        "3.1.iii",
        "halved lower generator jumping to 1/2 at the junction",
        {"generator": _F_HALVING_HIGH, "tnorm": _TWO_BLOCK},
        "proven", True, _cf_31iii, "NonTrivialOrdinalSum"),
    "3.1.iv": Fixture(
        "3.1.iv",
        "halved lower generator with an exponential upper piece: "
        "associativity fails",
        {"generator": _F_HALVING_EXP, "tnorm": _TWO_BLOCK},
        "refuted", False, _cf_31iv, "NotAssociative",
        witness=(0.75, 0.75, 0.5)),
    "4.1.i": Fixture(
        "4.1.i",
        "the 3.1.iv pair through the summand decomposition: the adjacency "
        "condition fails",
        {"generator": _F_HALVING_EXP, "tnorm": _TWO_BLOCK},
        "refuted", False, _cf_31iv, "NotAssociative",
        witness=(0.75, 0.75, 0.5)),
    "4.1.ii": Fixture(
        "4.1.ii",
        "affine lower piece with a nilpotent-minimum block: associative",
        {"generator": _F_41II, "tnorm": _NILP_BLOCK},
        "proven", True, _cf_41ii, "NonTrivialOrdinalSum"),
    "4.1.iii": Fixture(
        "4.1.iii",
        "steeper affine lower piece with two product blocks: associative",
        {"generator": _F_41III, "tnorm": _PROD_BLOCK},
        "proven", True, _cf_41iii, "NonTrivialOrdinalSum"),
    "6.tm": Fixture(
        "6.tm",
        "upper-half affine generator with the nilpotent minimum collapses "
        "to the minimum",
        {"generator": _gen([{"left": 0, "form": _linear("1/2", "1/2"),
                             "value_at_left": "1/2"}], 1),
         "tnorm": {"kind": "nilpotent_min"}},
        "proven", True, _cf_min, "TM"),
}


def fixture_ids() -> list:
    return list(FIXTURES)


def get_fixture(fixture_id: str) -> Fixture:
    try:
        return FIXTURES[fixture_id]
    except KeyError:
        raise KeyError(
            f"unknown example id {fixture_id!r}; valid ids: "
            + ", ".join(fixture_ids())) from None
