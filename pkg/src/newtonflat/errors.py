"""Exception hierarchy shared by all modules."""


class NewtonFlatError(Exception):
    pass


class DimensionMismatch(NewtonFlatError, ValueError):
    pass


class NonRealInput(NewtonFlatError, ValueError):
    """A coefficient map violates Hermitian symmetry."""


class DegreeOverflow(NewtonFlatError, ValueError):
    pass


class EmptySupport(NewtonFlatError, ValueError):
    """The jet is flat, so its Newton polyhedron is empty."""


class FaceMismatch(NewtonFlatError, ValueError):
    pass


class WeightDoesNotDetermineFace(NewtonFlatError, ValueError):
    pass


class NotCanonical(NewtonFlatError):
    pass


class UnknownCanonicity(NewtonFlatError):
    pass


class NotModelForm(NewtonFlatError, ValueError):
    pass


class NotAHypersurface(NewtonFlatError, ValueError):
    """The gradient of the defining function vanishes at the origin."""


class BadCurve(NewtonFlatError, ValueError):
    """Curve jet is constant, not based at 0, or not a good parametrization."""


class SingularPoint(NewtonFlatError, ValueError):
    pass


class ExprSyntaxError(NewtonFlatError, ValueError):
    """Parse failure with a 0-based character offset and the expected tokens."""

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(expected)
        self.message = message
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class NonRealExpression(NewtonFlatError, ValueError):
    pass
