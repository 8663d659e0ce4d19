"""Exception types raised by the certified routines.

Every class carries a ``code`` attribute equal to its name; the CLI prints it
as the first line on stderr so scripts can match on it.
"""


class CertRootsError(Exception):
    code = "CertRootsError"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__


class OracleInconsistent(CertRootsError):
    """Two answers of an oracle are incompatible with its accuracy claims."""


class ZeroConstantTerm(CertRootsError):
    """An operation needing a nonzero constant coefficient received zero."""


class ZeroDiscriminant(CertRootsError):
    """The polynomial has a repeated root."""


class SizeMismatch(CertRootsError):
    """Two divisors of different sizes were compared."""


class CenterOutsideDisk(CertRootsError):
    """A recentering point does not lie certifiably inside the unit disk."""


class CertificateViolated(CertRootsError):
    """The coefficient data contradicts the declared series certificate."""


class InsufficientOracle(CertRootsError):
    """The oracle cannot serve the coefficients the algorithm requires."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NoCandidate(CertRootsError):
    """Reconstruction found no rational meeting the requested bounds."""


class BadInput(CertRootsError):
    """Arguments violate a checked precondition."""


class DependentVectors(CertRootsError):
    """Lattice reduction received linearly dependent vectors."""


class MalformedInput(CertRootsError):
    """Text input could not be parsed."""
