"""Exception types shared across the package."""


class ArtinError(Exception):
    """Base class for all errors raised by artin3."""


class BudgetExceeded(ArtinError):
    """A computation was refused because it exceeds an order or memory cap."""


class GroupError(ArtinError, ValueError):
    """Invalid group data: bad table, failed axiom, bad action."""


class CharacterError(ArtinError, ValueError):
    """Incompatible or corrupted character data."""


class CocycleError(ArtinError, ValueError):
    """A cochain violates the 2-cocycle identity."""
