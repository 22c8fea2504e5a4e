"""Exception hierarchy shared by every module."""
from __future__ import annotations


class ConvlatError(Exception):
    """Base class for all errors raised by the package."""


# -- convergence spaces ------------------------------------------------------

class ConvergenceError(ConvlatError):
    pass


class PointAxiomViolation(ConvergenceError):
    def __init__(self, point: str):
        super().__init__(f"point {point!r} is not a limit of its own principal ultrafilter")
        self.point = point


class MonotonicityViolation(ConvergenceError):
    def __init__(self, smaller: str, larger: str):
        super().__init__(f"{smaller} is contained in {larger} but lim {larger} is not contained in lim {smaller}")
        self.smaller = smaller
        self.larger = larger


class MissingEntry(ConvergenceError):
    def __init__(self, subset: str):
        super().__init__(f"no limit given for {subset}")
        self.subset = subset


class EmptyFilterBase(ConvergenceError):
    def __init__(self):
        super().__init__("the empty set does not generate a proper filter")


class NotReflexive(ConvergenceError):
    def __init__(self, point: str):
        super().__init__(f"relation is not reflexive at {point!r}")
        self.point = point


class CarrierMismatch(ConvergenceError):
    pass


class EmptyList(ConvergenceError):
    pass


class NotSurjective(ConvergenceError):
    pass


class NotATopology(ConvergenceError):
    pass


class CharacterizationMismatch(ConvlatError):
    """Two independent computations of the same notion disagreed."""


class UnknownProperty(ConvlatError):
    pass


# -- lattices ----------------------------------------------------------------

class LatticeError(ConvlatError):
    pass


class NotAPartialOrder(LatticeError):
    pass


class MeetMissing(LatticeError):
    def __init__(self, a: str, b: str):
        super().__init__(f"{a} and {b} have no meet")
        self.pair = (a, b)


class JoinMissing(LatticeError):
    def __init__(self, a: str, b: str):
        super().__init__(f"{a} and {b} have no join")
        self.pair = (a, b)


class NotAntitone(LatticeError):
    pass


class NotMonotone(LatticeError):
    pass


class NoPseudocomplement(LatticeError):
    def __init__(self, element: str):
        super().__init__(f"{element} has no pseudocomplement")
        self.element = element


class NotAPoint(LatticeError):
    pass


# -- enumeration / suites ----------------------------------------------------

class TooLarge(ConvlatError):
    pass


class UnknownSuite(ConvlatError):
    pass
