"""Exception types shared across the package.

The CLI maps these onto its stable exit codes; see cli.EXIT_* constants.
"""


class SkinmapError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolationError(SkinmapError):
    """An argument violates a documented precondition (shape or dimension mismatch)."""


class InsufficientSamplesError(SkinmapError):
    """Too few (distinct) samples for the requested number of clusters or components."""


class DegenerateClusterError(SkinmapError):
    """A cluster ended up with no membership mass or too few hardened members."""


class DegenerateComponentError(SkinmapError):
    """A mixture component collapsed during fitting (vanishing weight)."""


class NumericDomainError(SkinmapError):
    """A numeric argument is outside its valid domain (e.g. covariance not positive-definite)."""


class DegenerateMaskError(SkinmapError):
    """A mask contains only one class, so rates/ROC are undefined."""


class DataError(SkinmapError):
    """Base class for input-data problems (files, manifests, specs)."""


class MissingFileError(DataError):
    """A referenced input file does not exist."""


class DecodeFailureError(DataError):
    """A file exists but could not be decoded in the expected format."""


class MaskMismatchError(DataError):
    """Image and mask dimensions differ."""


class EmptyTrainingSetError(DataError):
    """No skin-labeled pixels are available to sample from."""


class InvalidSpecError(DataError):
    """A synthetic-dataset spec or model file is malformed."""
