"""Exception types raised by covham.

Everything derives from ValueError so callers that only care about
"bad input" can catch one thing; the subclasses exist so tests and the
CLI can tell configuration mistakes apart from genuine domain errors.
"""


class CovhamError(ValueError):
    """Base class for all covham-specific errors."""


class ZeroModeError(CovhamError):
    """Massless mode with vanishing spatial momentum: k0 = 0 is not on the
    positive-energy shell and the 1/(2 k0) measure diverges."""


class ModeBudgetError(CovhamError):
    """Requested mode grid exceeds the configured mode budget."""


class CrossingError(CovhamError):
    """No equal-time crossing: the requested coordinate time lies outside
    the worldline's active domain."""


class CanonicalStructureError(CovhamError):
    """Canonical data violates the on-shell structure (polymomentum not
    proportional to k, or inconsistent branch content)."""


class GridDomainError(CovhamError):
    """A wave vector does not belong to the discrete mode grid."""


class ScenarioError(CovhamError):
    """Scenario file is malformed or internally inconsistent."""
