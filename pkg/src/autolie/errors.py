"""Exception hierarchy shared by all modules."""


class AutolieError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(AutolieError, ZeroDivisionError):
    pass


class TowerMismatch(AutolieError):
    """Operands live in different coefficient fields (conductor or parameter tower)."""


class EvalPole(AutolieError):
    """A substitution made a stored denominator vanish."""


class MissingBinding(AutolieError):
    pass


class ParseError(AutolieError):
    pass


class PoleOutsideGamma(AutolieError):
    """A function has a pole outside the declared point set."""


class ClosureOverflow(AutolieError):
    """Group closure exceeded the element bound (generators are not a finite group)."""


class RelationFailure(AutolieError):
    """A declared presentation relation does not hold in the generated group."""


class SameOrbit(AutolieError):
    """Two seed points lie on the same orbit where distinct orbits are required."""


class OrbitClash(AutolieError):
    """A point violates an orbit-disjointness side condition."""


class DimensionMismatch(AutolieError):
    pass


class NotInvariant(AutolieError):
    pass


class NotInSpan(AutolieError):
    """The exact linear system for a decomposition is inconsistent."""


class RangeExceeded(AutolieError):
    pass


class UnknownCase(AutolieError):
    pass


class UnknownGroup(AutolieError):
    pass


class MissingParam(AutolieError):
    pass
