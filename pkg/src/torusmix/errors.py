"""Error types shared by all torusmix modules."""


class TorusMixError(Exception):
    """Base class for all domain errors raised by this package."""


class NonUnimodular(TorusMixError):
    """Matrix does not have determinant +1."""


class NotHyperbolic(TorusMixError):
    """Operation requires a matrix with |trace| > 2."""


class NotUnipotent(TorusMixError):
    """Operation requires a unipotent (or negated unipotent) matrix."""


class IdentityHasNoDistinguishedVector(TorusMixError):
    """+/-identity fixes every vector; no canonical fixed vector exists."""


class NotPolynomial(TorusMixError):
    """Symbolic expansion would produce non-polynomial entries."""


class NotCommuting(TorusMixError):
    """Operation requires pairwise commuting matrices."""


class TracesDiffer(TorusMixError):
    """Matrices do not share the same |trace|."""


class SharedModulusPairOnly(TorusMixError):
    """Two matrices with a shared eigenvalue modulus admit no cancellation
    witness; three are required."""


class CommutingInputs(TorusMixError):
    """Operation requires noncommuting inputs."""


class CommutingUnipotents(TorusMixError):
    """Operation requires noncommuting unipotent matrices."""


class ResolutionMismatch(TorusMixError):
    """Lattice refinement is not a multiple of every grid resolution."""


class ZeroFrequencyPresent(TorusMixError):
    """Orthogonalization is impossible when the mean (zero-frequency
    coefficient) is nonzero."""


class NonHyperbolicSample(TorusMixError):
    """A sampled family member is not hyperbolic."""
