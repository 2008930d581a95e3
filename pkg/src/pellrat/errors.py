"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for toolkit-specific failures."""


class IncompleteFactorization(ToolkitError):
    """A factorization did not complete within budget, so no certified
    squarefree decomposition (or anything downstream of it) is available."""


class PrecisionExhausted(ToolkitError):
    """An adaptive residue computation hit the precision cap before the
    requested valuation was resolved."""


class NoEmbedding(ToolkitError):
    """The prime does not split in the field, so no residue embedding exists."""


class NotAUnit(ToolkitError):
    """An element expected to be a unit has norm other than +-1."""


class DiscriminantTooLarge(ToolkitError):
    """Class-number enumeration refused to run above the configured ceiling."""


class DefectError(ToolkitError):
    """A check that is guaranteed to succeed computed False: implementation bug.

    Raised instead of returning a "false" verdict for statements the library
    certifies unconditionally; callers should treat this as a crash, not data.
    """
