import json
import math
from fractions import Fraction

import pytest

from tnf.config import (
    ConfigError,
    parse_config,
    serialize_config,
)
from tnf.monotone import Linear
from tnf.tnorms import OrdinalSum, ScaledSubnorm

F = Fraction


def halving_config():
    return {
        "generator": {
            "pieces": [
                {"left": 0, "form": {"kind": "linear", "slope": "1/2",
                                     "intercept": 0}, "value_at_left": 0},
                {"left": "1/2", "form": {"kind": "linear", "slope": 1,
                                         "intercept": 0},
                 "value_at_left": "1/4"},
            ],
            "value_at_one": 1,
        },
        "tnorm": {
            "kind": "ordinal_sum", "semantics": "closed",
            "summands": [
                {"a": 0, "b": "1/2", "child": {"kind": "lukasiewicz"}},
                {"a": "1/2", "b": 1, "child": {"kind": "product"}},
            ],
        },
    }


class TestParse:
    def test_roundtrip_structures(self):
        res = parse_config(json.dumps(halving_config()))
        doc = serialize_config(res)
        res2 = parse_config(json.dumps(doc))
        assert serialize_config(res2) == doc
        assert res2.generator.pieces == res.generator.pieces
        assert res2.tnorm == res.tnorm

    def test_decimal_parses_exactly(self):
        doc = halving_config()
        doc["generator"]["pieces"][1]["value_at_left"] = 0.25
        res = parse_config(json.dumps(doc))
        assert res.generator(F(1, 2)) == F(1, 4)
        assert res.backend == "exact"

    def test_auto_backend_float_with_exponential(self):
        doc = halving_config()
        doc["generator"]["pieces"][1]["form"] = {
            "kind": "exponential", "offset": 0.5,
            "scale": 0.5 * math.exp(-2), "rate": 2.0}
        res = parse_config(json.dumps(doc))
        assert res.backend == "float"

    def test_exact_backend_rejects_exponential(self):
        doc = halving_config()
        doc["generator"]["pieces"][1]["form"] = {
            "kind": "exponential", "offset": 0.5,
            "scale": 0.5 * math.exp(-2), "rate": 2.0}
        doc["check"] = {"backend": "exact"}
        with pytest.raises(ConfigError, match="backend"):
            parse_config(json.dumps(doc))

    def test_forced_float_backend(self):
        doc = halving_config()
        doc["check"] = {"backend": "float"}
        res = parse_config(json.dumps(doc))
        assert res.backend == "float"
        assert isinstance(res.generator.pieces[0].form.slope, float)

    def test_scaled_and_nested(self):
        doc = halving_config()
        doc["tnorm"] = {"kind": "scaled", "lambda": "1/2",
                        "inner": {"kind": "product"}}
        res = parse_config(json.dumps(doc))
        assert isinstance(res.tnorm, ScaledSubnorm)

    def test_check_options(self):
        doc = halving_config()
        doc["check"] = {"grid": 12, "max_refine": 3, "tol": 1e-8,
                        "oracle_grid": 31}
        res = parse_config(json.dumps(doc))
        assert res.options.probe_grid == 12
        assert res.options.max_refine == 3
        assert res.options.tol == 1e-8
        assert res.oracle_grid == 31


class TestErrors:
    def test_located_error_missing_key(self):
        doc = halving_config()
        del doc["generator"]["value_at_one"]
        with pytest.raises(ConfigError, match="generator"):
            parse_config(json.dumps(doc))

    def test_located_error_bad_form(self):
        doc = halving_config()
        doc["generator"]["pieces"][0]["form"] = {"kind": "cubic"}
        with pytest.raises(ConfigError, match=r"pieces\[0\]"):
            parse_config(json.dumps(doc))

    def test_located_error_bad_number(self):
        doc = halving_config()
        doc["generator"]["pieces"][0]["left"] = "zero"
        with pytest.raises(ConfigError, match="left"):
            parse_config(json.dumps(doc))

    def test_invalid_generator_reported(self):
        doc = halving_config()
        doc["generator"]["pieces"][1]["value_at_left"] = "1/8"  # below left limit
        with pytest.raises(ConfigError, match="generator"):
            parse_config(json.dumps(doc))

    def test_adjacency_violation_reported(self):
        doc = halving_config()
        doc["tnorm"] = {
            "kind": "ordinal_sum", "semantics": "half_open",
            "summands": [
                {"a": 0, "b": "1/2", "child": {"kind": "zero"}},
                {"a": "1/2", "b": 1, "child": {"kind": "lukasiewicz"}},
            ]}
        with pytest.raises(ConfigError, match="tnorm"):
            parse_config(json.dumps(doc))

    def test_invalid_json(self):
        with pytest.raises(ConfigError, match="JSON"):
            parse_config("{not json")


class TestFixtures:
    def test_all_fixtures_build(self):
        from tnf.fixtures import FIXTURES

        for fid, fixture in FIXTURES.items():
            res = fixture.build()
            assert res.generator is not None, fid
            assert res.tnorm is not None, fid

    def test_fixture_ids(self):
        from tnf.fixtures import fixture_ids

        assert fixture_ids() == ["3.1.i", "3.1.ii", "3.1.iii", "3.1.iv",
                                 "4.1.i", "4.1.ii", "4.1.iii", "6.tm"]

    def test_unknown_id(self):
        from tnf.fixtures import get_fixture

        with pytest.raises(KeyError, match="valid ids"):
            get_fixture("9.9.ix")
