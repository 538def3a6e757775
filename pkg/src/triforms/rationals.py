"""Exact rational scalars: construction, p-adic valuation, serialization.

Every coefficient in this package is an arbitrary-precision reduced
fraction.  gmpy2's mpq is used when available (about 5x faster than
fractions.Fraction); the two are interchangeable through the QQ
constructor below, and nothing downstream depends on which backend is
active.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _backend

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _backend = Fraction
    RATIONAL_BACKEND = "fractions"


def QQ(num=0, den=None):
    """Exact rational from integers, a rational, or a 'num/den' string."""
    if den is not None:
        return _backend(num, den)
    if isinstance(num, str):
        return parse_rational(num)
    return _backend(num)


#: Additive and multiplicative identities, shared.
ZERO = QQ(0)
ONE = QQ(1)


def is_rational(x) -> bool:
    return isinstance(x, (type(ZERO), Fraction, int))


def numden(x):
    """(numerator, denominator) of a reduced rational, as Python ints."""
    x = _backend(x)
    return int(x.numerator), int(x.denominator)


def int_valuation(n: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(x, p: int):
    """v_p of a rational: v_p(num) - v_p(den) on the reduced fraction.

    Returns None for x = 0 (the conventional +infinity).
    """
    num, den = numden(x)
    if num == 0:
        return None
    if num % p == 0:
        return int_valuation(num, p)
    if den % p == 0:
        return -int_valuation(den, p)
    return 0


def rational_to_str(x) -> str:
    """Serialize as 'num/den', e.g. '-5/12'; integers keep '/1'."""
    num, den = numden(x)
    return f"{num}/{den}"


def parse_rational(s: str):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return _backend(int(num), int(den))
    return _backend(int(s))
