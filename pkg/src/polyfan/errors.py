"""Exception hierarchy shared by all polyfan modules."""


class PolyfanError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(PolyfanError):
    pass


class DimensionMismatch(PolyfanError):
    pass


class NotInDual(PolyfanError):
    pass


class NotSimplicial(PolyfanError):
    pass


class NotAFace(PolyfanError):
    pass


class NotFaceClosed(PolyfanError):
    def __init__(self, cone, missing):
        super().__init__(f"fan is not face closed: {cone} lacks face {missing}")
        self.cone = cone
        self.missing = missing


class BadIntersection(PolyfanError):
    def __init__(self, left, right):
        super().__init__(f"cones intersect badly: {left} vs {right}")
        self.left = left
        self.right = right


class EmptyFan(PolyfanError):
    pass


class NotInFan(PolyfanError):
    pass


class InvalidCenter(PolyfanError):
    def __init__(self, index, reason):
        super().__init__(f"center {index} is invalid: {reason}")
        self.index = index
        self.reason = reason


class EmptyX(PolyfanError):
    """X of a pseudo polyhedron must be nonempty."""


class Unbounded(PolyfanError):
    """A linear functional is unbounded below on the polyhedron."""


class ZeroPolynomial(PolyfanError):
    pass


class TooFewVariables(PolyfanError):
    pass


class NegativeWeight(PolyfanError):
    pass


class NotWeierstrass(PolyfanError):
    pass


class HeightZero(PolyfanError):
    pass


class IterationCapExceeded(PolyfanError):
    def __init__(self, trace):
        super().__init__("removable-face elimination did not terminate "
                         f"within the iteration cap ({len(trace)} steps done)")
        self.trace = trace


class BadSupport(PolyfanError):
    pass


class NotHSimple(PolyfanError):
    pass


class BadPrerequisites(PolyfanError):
    pass


class BadE(PolyfanError):
    pass


class InvalidContext(PolyfanError):
    pass


class NotAHeight(PolyfanError):
    pass


class InconsistentGamma(PolyfanError):
    """Characteristic function disagrees with the structure-constant route."""


class HeightNotDecreased(PolyfanError):
    """A recursion step failed to decrease the height strictly."""


class LinealityMismatch(PolyfanError):
    pass


class NotZSimple(PolyfanError):
    pass


class ParseError(PolyfanError):
    pass
