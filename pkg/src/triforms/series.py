"""Exact truncated power series and Laurent series over the rationals.

All series carry an explicit truncation order and immutable coefficient
tuples; every operation is a pure function returning a fresh series.
Binary operations truncate at the minimum of the operand truncations,
never silently extending.  There is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    ConstantTermNotOne,
    NonzeroConstantTerm,
    NotInvertible,
    ZeroConstantTerm,
)
from .rationals import ONE, QQ, ZERO, is_rational, padic_valuation, rational_to_str


class TruncatedSeries:
    """c_0 + c_1 q + ... + c_N q^N with exact rational coefficients."""

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs, truncation: Optional[int] = None):
        coeffs = [QQ(c) for c in coeffs]
        if truncation is None:
            truncation = len(coeffs) - 1
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        if len(coeffs) < truncation + 1:
            coeffs += [ZERO] * (truncation + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", tuple(coeffs[: truncation + 1]))
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, truncation: int) -> "TruncatedSeries":
        return cls([], truncation)

    @classmethod
    def one(cls, truncation: int) -> "TruncatedSeries":
        return cls([ONE], truncation)

    @classmethod
    def identity(cls, truncation: int) -> "TruncatedSeries":
        """The series q."""
        return cls([ZERO, ONE], truncation)

    # -- inspection ------------------------------------------------------

    def __getitem__(self, n: int):
        if not 0 <= n <= self.truncation:
            raise IndexError(f"coefficient index {n} outside 0..{self.truncation}")
        return self.coeffs[n]

    @property
    def constant_term(self):
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.truncation))

    def agrees_with(self, other: "TruncatedSeries") -> Optional[int]:
        """First index (up to the common truncation) where coefficients
        differ, or None if they agree."""
        n = min(self.truncation, other.truncation)
        for i in range(n + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def __repr__(self):
        head = ", ".join(rational_to_str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.truncation > 5 else ""
        return f"TruncatedSeries([{head}{tail}], N={self.truncation})"

    # -- ring operations -------------------------------------------------

    def _binary_trunc(self, other: "TruncatedSeries") -> int:
        return min(self.truncation, other.truncation)

    def __add__(self, other):
        if is_rational(other):
            other = TruncatedSeries([other], self.truncation)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._binary_trunc(other)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.truncation)

    def __sub__(self, other):
        if is_rational(other):
            other = TruncatedSeries([other], self.truncation)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            c = QQ(other)
            return TruncatedSeries([c * x for x in self.coeffs], self.truncation)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._binary_trunc(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = ZERO
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc += a[i] * b[k - i]
            out.append(acc)
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: divide explicitly")
        result = TruncatedSeries.one(self.truncation)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __truediv__(self, other):
        if is_rational(other):
            c = QQ(other)
            if c == 0:
                raise ZeroDivisionError("division by zero rational")
            return self * (ONE / c)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return divide(self, other)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k (k >= 0), keeping the truncation order."""
        if k < 0:
            raise ValueError("shift exponent must be >= 0")
        return TruncatedSeries(
            [ZERO] * k + list(self.coeffs[: self.truncation + 1 - k]),
            self.truncation)

    def retruncate(self, n: int) -> "TruncatedSeries":
        """Drop coefficients above order n (n <= current truncation)."""
        if n > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: n + 1], n)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "coeffs": [rational_to_str(c) for c in self.coeffs],
            "truncation": self.truncation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        return cls([QQ(s) for s in data["coeffs"]], data["truncation"])


def divide(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """Power series division; den must have nonzero constant term."""
    if den.constant_term == 0:
        raise ZeroConstantTerm("denominator has zero constant term")
    n = min(num.truncation, den.truncation)
    inv0 = ONE / den.constant_term
    out = []
    for k in range(n + 1):
        acc = num.coeffs[k]
        for i in range(1, k + 1):
            if den.coeffs[i] and out[k - i]:
                acc -= den.coeffs[i] * out[k - i]
        out.append(acc * inv0)
    return TruncatedSeries(out, n)


def exp_series(u: TruncatedSeries) -> TruncatedSeries:
    """Power series exponential of u with u(0) = 0.

    Uses the derivative recurrence n e_n = sum_{k=1}^{n} k u_k e_{n-k};
    exact despite the n! denominators of the naive Taylor formula.
    """
    if u.constant_term != 0:
        raise NonzeroConstantTerm("exp needs constant term 0")
    n = u.truncation
    out = [ONE]
    for m in range(1, n + 1):
        acc = ZERO
        for k in range(1, m + 1):
            if u.coeffs[k] and out[m - k]:
                acc += k * u.coeffs[k] * out[m - k]
        out.append(acc / m)
    return TruncatedSeries(out, n)


def log_series(s: TruncatedSeries) -> TruncatedSeries:
    """Inverse of exp_series: log of a series with constant term 1."""
    if s.constant_term != 1:
        raise ConstantTermNotOne("log needs constant term 1")
    d = divide(theta_derivative(s), s)
    out = [ZERO]
    for m in range(1, s.truncation + 1):
        out.append(d.coeffs[m] / m)
    return TruncatedSeries(out, s.truncation)


def theta_derivative(s: TruncatedSeries) -> TruncatedSeries:
    """theta = q d/dq: c_n -> n c_n."""
    return TruncatedSeries(
        [n * c for n, c in enumerate(s.coeffs)], s.truncation)


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    """d/dq; the result is exact to order N - 1."""
    if s.truncation == 0:
        return TruncatedSeries.zero(0)
    return TruncatedSeries(
        [n * s.coeffs[n] for n in range(1, s.truncation + 1)],
        s.truncation - 1)


def substitute_power(s: TruncatedSeries, p: int) -> TruncatedSeries:
    """q -> q^p: coefficient at index p*n is c_n, all others 0."""
    if p < 1:
        raise ValueError("substitution exponent must be >= 1")
    n = s.truncation
    out = [ZERO] * (n + 1)
    for i, c in enumerate(s.coeffs):
        if p * i > n:
            break
        out[p * i] = c
    return TruncatedSeries(out, n)


def scale_argument(s: TruncatedSeries, kappa) -> TruncatedSeries:
    """q -> kappa*q: c_n -> kappa^n c_n."""
    kappa = QQ(kappa)
    out = []
    power = ONE
    for c in s.coeffs:
        out.append(power * c)
        power *= kappa
    return TruncatedSeries(out, s.truncation)


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(q)) for g with zero constant term (Horner evaluation)."""
    if g.constant_term != 0:
        raise NonzeroConstantTerm("composition needs inner constant term 0")
    n = min(f.truncation, g.truncation)
    result = TruncatedSeries([f.coeffs[n]], n)
    for k in range(n - 1, -1, -1):
        result = result * g + f.coeffs[k]
    return result


def reversion(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse g with s(g(q)) = q to order N.

    Newton iteration doubling the number of correct coefficients per
    step; each update works at the smallest sufficient truncation.
    """
    if s.constant_term != 0 or s.truncation < 1 or s.coeffs[1] == 0:
        raise NotInvertible("need s(0) = 0 and nonzero linear coefficient")
    n = s.truncation
    ds = derivative(s)  # exact to order N - 1
    g = TruncatedSeries([ZERO, ONE / s.coeffs[1]], 1)
    order = 1  # g is correct through q^order
    while order < n:
        order = min(2 * order, n)
        work = TruncatedSeries(g.coeffs, order)
        f_at = compose(s.retruncate(order), work)
        df_at = compose(ds.retruncate(min(ds.truncation, order)), work)
        if df_at.truncation < order:
            # padding is sound: the numerator below vanishes to high
            # order, so these indices never reach the correction window
            df_at = TruncatedSeries(df_at.coeffs, order)
        correction = divide(f_at - TruncatedSeries.identity(order), df_at)
        g = work - correction
    return g


# --------------------------------------------------------------------------
# Laurent series: finitely many negative exponents, truncated above.
# --------------------------------------------------------------------------

class LaurentSeries:
    """Sum of c_e q^e for lowest_exponent <= e <= truncation.

    The coefficient at the lowest exponent is nonzero unless the series
    is identically zero over its window (canonicalized on construction).
    """

    __slots__ = ("lowest_exponent", "coeffs", "truncation")

    def __init__(self, lowest_exponent: int, coeffs, truncation: Optional[int] = None):
        coeffs = [QQ(c) for c in coeffs]
        if truncation is None:
            truncation = lowest_exponent + len(coeffs) - 1
        width = truncation - lowest_exponent + 1
        if width < 0:
            raise ValueError("truncation below lowest exponent")
        if len(coeffs) < width:
            coeffs += [ZERO] * (width - len(coeffs))
        coeffs = coeffs[:width]
        # canonicalize: strip leading zeros
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lowest_exponent += 1
        if not coeffs:
            lowest_exponent = truncation + 1
        object.__setattr__(self, "lowest_exponent", lowest_exponent)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def from_truncated(cls, s: TruncatedSeries, shift: int = 0) -> "LaurentSeries":
        """View a power series as Laurent, optionally shifted by q^shift."""
        return cls(shift, list(s.coeffs), s.truncation + shift)

    def to_truncated(self) -> TruncatedSeries:
        """Back to a power series; all negative exponents must be absent."""
        if self.lowest_exponent < 0:
            raise ValueError("series has a pole; cannot convert")
        return TruncatedSeries(
            [ZERO] * self.lowest_exponent + list(self.coeffs), self.truncation)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int):
        if e > self.truncation:
            raise IndexError(f"exponent {e} above truncation {self.truncation}")
        if e < self.lowest_exponent:
            return ZERO
        return self.coeffs[e - self.lowest_exponent]

    @property
    def pole_order(self) -> int:
        return max(0, -self.lowest_exponent) if not self.is_zero() else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.truncation == other.truncation
                and self.lowest_exponent == other.lowest_exponent
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.lowest_exponent, self.coeffs, self.truncation))

    def agrees_with(self, other: "LaurentSeries") -> Optional[int]:
        """First exponent (up to the common truncation) where the two
        disagree, or None."""
        top = min(self.truncation, other.truncation)
        lo = min(self.lowest_exponent, other.lowest_exponent)
        for e in range(lo, top + 1):
            if self.coefficient(e) != other.coefficient(e):
                return e
        return None

    def __repr__(self):
        head = ", ".join(
            f"q^{self.lowest_exponent + i}:{rational_to_str(c)}"
            for i, c in enumerate(self.coeffs[:4]))
        return f"LaurentSeries({head}, ..., top={self.truncation})"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if is_rational(other):
            other = LaurentSeries(0, [other], self.truncation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        top = min(self.truncation, other.truncation)
        lo = min(self.lowest_exponent, other.lowest_exponent, top + 1)
        out = [self.coefficient(e) + other.coefficient(e) for e in range(lo, top + 1)]
        return LaurentSeries(lo, out, top)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(
            self.lowest_exponent, [-c for c in self.coeffs], self.truncation)

    def __sub__(self, other):
        if is_rational(other):
            other = LaurentSeries(0, [other], self.truncation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            return LaurentSeries(
                self.lowest_exponent, [QQ(other) * c for c in self.coeffs],
                self.truncation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            top = min(self.truncation + other.lowest_exponent,
                      other.truncation + self.lowest_exponent)
            return LaurentSeries(top + 1, [], top)
        lo = self.lowest_exponent + other.lowest_exponent
        top = min(self.truncation + other.lowest_exponent,
                  other.truncation + self.lowest_exponent)
        a = TruncatedSeries(list(self.coeffs), top - self.lowest_exponent
                            - other.lowest_exponent)
        b = TruncatedSeries(list(other.coeffs), top - self.lowest_exponent
                            - other.lowest_exponent)
        prod = a * b
        return LaurentSeries(lo, list(prod.coeffs), top)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: divide explicitly")
        result = LaurentSeries(0, [ONE], self.truncation - self.lowest_exponent)
        for _ in range(k):
            result = result * self
        return result

    def __truediv__(self, other):
        if is_rational(other):
            return self * (ONE / QQ(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if other.is_zero():
            raise ZeroConstantTerm("division by zero Laurent series")
        # other = q^l * unit; invert the unit part as a power series
        l = other.lowest_exponent
        unit = TruncatedSeries(list(other.coeffs), other.truncation - l)
        inv_unit = divide(TruncatedSeries.one(unit.truncation), unit)
        inv = LaurentSeries(-l, list(inv_unit.coeffs), inv_unit.truncation - l)
        return self * inv

    def __rtruediv__(self, other):
        if is_rational(other):
            # window wide enough that 1/self keeps its full precision
            width = max(0, self.truncation - self.lowest_exponent)
            num = LaurentSeries(0, [QQ(other)], width)
            return num / self
        return NotImplemented

    def theta(self) -> "LaurentSeries":
        """q d/dq on a Laurent series: c_e -> e c_e."""
        return LaurentSeries(
            self.lowest_exponent,
            [(self.lowest_exponent + i) * c for i, c in enumerate(self.coeffs)],
            self.truncation)

    def to_json(self) -> dict:
        return {
            "lowest_exponent": self.lowest_exponent,
            "coeffs": [rational_to_str(c) for c in self.coeffs],
            "truncation": self.truncation,
        }


# --------------------------------------------------------------------------
# p-adic valuation profiles
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ValuationProfile:
    """Per-coefficient p-adic valuations of a series.

    entries[i] is v_p of the coefficient at index start_index + i, or
    None when that coefficient is zero.  min_valuation is the minimum
    over finite entries (None if every coefficient vanishes).
    """

    prime: int
    entries: tuple
    min_valuation: Optional[int]
    start_index: int = 0

    def first_index_below(self, bound: int) -> Optional[int]:
        for i, v in enumerate(self.entries):
            if v is not None and v < bound:
                return self.start_index + i
        return None

    def is_integral(self) -> bool:
        return self.min_valuation is None or self.min_valuation >= 0

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "start_index": self.start_index,
            "entries": list(self.entries),
            "min_valuation": self.min_valuation,
        }


def valuation_profile(s, p: int) -> ValuationProfile:
    """Valuation profile of a TruncatedSeries or LaurentSeries."""
    if isinstance(s, LaurentSeries):
        coeffs, start = s.coeffs, s.lowest_exponent
    else:
        coeffs, start = s.coeffs, 0
    entries = tuple(padic_valuation(c, p) for c in coeffs)
    finite = [v for v in entries if v is not None]
    return ValuationProfile(
        prime=p,
        entries=entries,
        min_valuation=min(finite) if finite else None,
        start_index=start,
    )
