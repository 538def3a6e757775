"""Exception hierarchy shared across the package."""


class TriformsError(Exception):
    """Base class for all package-specific errors."""


# --- series arithmetic ---------------------------------------------------

class ZeroConstantTerm(TriformsError):
    """Division by a series whose constant term vanishes."""


class NonzeroConstantTerm(TriformsError):
    """exp (or a z*Q[[z]] argument) requires constant term 0."""


class ConstantTermNotOne(TriformsError):
    """log requires constant term 1."""


class NotInvertible(TriformsError):
    """Compositional inversion needs s(0) = 0 and s'(0) != 0."""


# --- Halphen solver ------------------------------------------------------

class SingularSystem(TriformsError):
    """The 3x3 coefficient system at some order n >= 2 is singular."""


class InconsistentOrderOne(TriformsError):
    """Rank-deficient order-1 system contradicts the prescribed t2 slope."""


class DegenerateDenominator(TriformsError):
    """t3 - t1 has zero linear coefficient; the Hauptmodul has no pole."""


# --- Dwork / classifiers -------------------------------------------------

class PrimeDividesDenominator(TriformsError):
    """The Dwork map needs p coprime to the denominator."""


class SharedFactor(TriformsError):
    """A classifier was called with gcd(p, 2*m1*m2) > 1."""


# --- verification lab ----------------------------------------------------

class RouteMismatch(TriformsError):
    """Halphen and hypergeometric Hauptmoduls disagree at some index."""

    def __init__(self, index, lhs, rhs):
        self.index = index
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"routes disagree at q^{index}: {lhs} vs {rhs}")


class FormulaMismatch(TriformsError):
    """t-product generator differs from its J-derivative formula."""


class VerificationFailure(TriformsError):
    """A CLI verification suite reported failing cells."""
