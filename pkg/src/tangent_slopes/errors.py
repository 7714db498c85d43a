"""Exception hierarchy shared by every module."""


class TangentSlopesError(Exception):
    """Base class for all library errors."""


class ParseError(TangentSlopesError, ValueError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        where = f" at position {position}" if position is not None else ""
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{hint}")


class UnknownVariable(ParseError):
    pass


class ExponentOverflow(ParseError):
    pass


class DegreeError(TangentSlopesError, ValueError):
    """An operation needs positive degree in some variable and did not get it."""


class InfiniteIntersection(TangentSlopesError):
    """The two curves share a component, so their intersection is not finite."""

    def __init__(self, common_factor):
        self.common_factor = common_factor
        super().__init__(f"curves share the component {common_factor}")


class TranslateOfSubtorus(TangentSlopesError):
    """The curve is (a union of) translates of the subtorus ``H_{p,q}``."""

    def __init__(self, slope, witness):
        self.slope = slope
        self.witness = witness
        super().__init__(
            f"curve is a translate of a subtorus: gcd(f, g_{{{slope.p},{slope.q}}}) = {witness}"
        )


class SingularPointOfCurve(TangentSlopesError, ValueError):
    """Both partial derivatives vanish at the point."""


class NotSingular(TangentSlopesError, ValueError):
    """A singular point was required but the point is smooth (or off the curve)."""


class PrecisionExhausted(TangentSlopesError):
    """Interval refinement hit the hard precision budget without deciding."""


class CertificationError(TangentSlopesError):
    """An exact re-check of a claimed fact failed.  Always a bug."""


class AuditFailure(TangentSlopesError, AssertionError):
    """A certified point violates one of the proven inequalities."""
