"""Exact rational type: gmpy2's ``mpq`` when available, else ``fractions.Fraction``."""
from fractions import Fraction

try:  # pragma: no cover - depends on the environment
    from gmpy2 import mpq as Q

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    Q = Fraction
    HAVE_GMPY2 = False


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(int(value.numerator), int(value.denominator))


def fraction_str(value) -> str:
    f = to_fraction(value)
    return f"{f.numerator}/{f.denominator}"
