"""Exception hierarchy shared by all fracspec modules."""


class FracSpecError(Exception):
    """Base class for every error raised by fracspec."""


class DomainError(FracSpecError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class InfiniteError(FracSpecError, ArithmeticError):
    """A gamma quotient whose numerator sits on a pole."""


class AmbiguousError(FracSpecError, ArithmeticError):
    """A gamma quotient with poles in both numerator and denominator."""


class SingularTermError(FracSpecError, ArithmeticError):
    """A series term would acquire a negative exponent with nonzero coefficient."""

    def __init__(self, exponent: float, message: str | None = None):
        self.exponent = exponent
        super().__init__(message or f"term with exponent {exponent:.12g} is singular at r=0")


class GridError(FracSpecError, ValueError):
    """Two fractional series do not live on a common exponent grid."""


class SingularPointError(DomainError):
    """Evaluation point at r=0 or on the polar axis."""


class ToleranceError(FracSpecError, ArithmeticError):
    """A numerical procedure did not reach its tolerance."""

    def __init__(self, message: str, suggested_terms: int | None = None):
        self.suggested_terms = suggested_terms
        super().__init__(message)


class NoRootError(FracSpecError, ArithmeticError):
    """Root scan found no root inside the bracket."""


class StiffnessError(FracSpecError, ArithmeticError):
    """Fixed-step integration blew up before reaching the end of the grid."""


class DegenerateDenominatorError(FracSpecError, ArithmeticError):
    """A series recurrence hit a (near) zero denominator."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"vanishing recurrence denominator at n={index}")


class NoConvergenceError(FracSpecError, ArithmeticError):
    """Series partial sums failed to settle within the term cap."""

    def __init__(self, message: str, last_sums: tuple[float, float]):
        self.last_sums = last_sums
        super().__init__(f"{message} (last partial sums {last_sums[0]!r}, {last_sums[1]!r})")
