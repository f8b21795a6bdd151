"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: classification failures exit with 3,
internal consistency failures with 4, everything else user-facing with 2.
"""


class Mcg6Error(Exception):
    """Base class for all library errors."""


class DimensionError(Mcg6Error, ValueError):
    """Matrix or vector shapes do not fit together."""


class DomainError(Mcg6Error, ValueError):
    """An argument lies outside the domain of the operation."""


class ClassificationError(Mcg6Error, ValueError):
    """Invariants violate a congruence required of a real manifold.

    ``condition`` names the failed congruence so callers can report it.
    """

    def __init__(self, condition: str, message: str | None = None):
        self.condition = condition
        super().__init__(message or f"classification constraint violated: {condition}")


class CaseError(Mcg6Error, ValueError):
    """A spin-only operation got non-spin input or vice versa."""


class CoordinateError(Mcg6Error, ValueError):
    """A mod-2 test was requested in coordinates where it is not well defined."""


class UnknownNameError(Mcg6Error, KeyError):
    """Lookup of a registered name failed."""


class FixtureError(Mcg6Error, ValueError):
    """Encoded fixture data is malformed or self-inconsistent."""


class InternalConsistencyError(Mcg6Error, AssertionError):
    """A checked postcondition failed. Always a bug, never bad input."""


class AnalysisError(InternalConsistencyError):
    """The boundary framing search was exhausted outside any recognized case."""
