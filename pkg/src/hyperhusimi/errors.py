"""Exception types shared across the package."""


class HyperHusimiError(Exception):
    pass


class ParameterError(HyperHusimiError, ValueError):
    """Invalid model or function parameters."""


class DomainError(HyperHusimiError, ValueError):
    """Argument outside the domain where a formula is defined."""


class PoleError(DomainError):
    """A Gamma or Pochhammer denominator hits a pole."""


class DivergenceError(HyperHusimiError, ArithmeticError):
    """The series diverges for the requested arguments."""


class NoConvergenceError(HyperHusimiError, ArithmeticError):
    """Term budget exhausted before the tolerance was met."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(HyperHusimiError, ArithmeticError):
    """Adaptive quadrature gave up; ``estimate`` holds the best value found."""

    def __init__(self, message, estimate=None, abserr=None):
        super().__init__(message)
        self.estimate = estimate
        self.abserr = abserr


class MomentMismatchError(HyperHusimiError, ArithmeticError):
    pass
