"""Number backend shared by the whole package.

Values are either exact (int / Fraction) or floats.  A configuration whose
generator uses only linear pieces with rational coefficients stays exact end
to end; any exponential piece forces the float backend.  Mixed arithmetic
degrades to float automatically, which is what we want.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Num = Union[int, Fraction, float]

# Snapping tolerance for float-backed set membership / endpoint comparisons.
MEMBERSHIP_EPS = 1e-12
# Tolerance for numeric property checks on the float backend.
CHECK_EPS = 1e-9
# A refutation witness must miss associativity by at least this much.
WITNESS_EPS = 1e-6


def is_exact(x: Num) -> bool:
    return not isinstance(x, float)


def all_exact(*xs: Num) -> bool:
    return all(is_exact(x) for x in xs)


def as_float(x: Num) -> float:
    return float(x)


def parse_number(v) -> Num:
    """Parse a config scalar: int/Fraction kept, floats kept, strings like
    "1/3" or "0.25" parsed exactly."""
    if isinstance(v, bool):
        raise ValueError(f"not a number: {v!r}")
    if isinstance(v, (int, Fraction, float)):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse number {v!r}") from exc
    raise ValueError(f"cannot parse number {v!r}")


def eq_within(a: Num, b: Num, tol: Num) -> bool:
    if tol == 0:
        return a == b
    return abs(a - b) <= tol


def fmt12(x: Num) -> str:
    """Decimal with 12 significant digits, for CSV output."""
    return f"{float(x):.12g}"
