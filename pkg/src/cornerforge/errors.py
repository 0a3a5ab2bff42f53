"""Exception hierarchy shared by all cornerforge modules."""


class CornerforgeError(Exception):
    """Base class for every error raised by cornerforge."""


class LatticeOverflowError(CornerforgeError, OverflowError):
    """An integer left the signed 64-bit range."""


class NoLeftInverseError(CornerforgeError, ValueError):
    """A lattice map is not injective (or not split) on the requested domain."""


class NotAFaceError(CornerforgeError, ValueError):
    """A cone or handle does not describe a face of the given monoid."""


class RelationError(CornerforgeError, ValueError):
    """Coordinates or exponents violate a binomial relation of a monoid."""

    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class NonInteriorError(CornerforgeError, ValueError):
    """A homomorphism sends the source into a proper face of the target."""

    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class NotASubcomplexError(CornerforgeError, ValueError):
    """A set of objects is not closed under taking faces."""


class InvalidRefinementError(CornerforgeError, ValueError):
    """A complex morphism fails (R1) or (R2)."""

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(str(v) for v in self.violations) or "invalid refinement"
        super().__init__(text)


class FactorizationError(CornerforgeError, ValueError):
    """A map does not factor through a single cone of a refinement."""


class ResolutionError(CornerforgeError, RuntimeError):
    """The resolution driver could not make every cone smooth."""


class DocumentError(CornerforgeError, ValueError):
    """A JSON document is malformed or fails schema validation."""
