"""Exception types raised by the engine.

Every error carries enough structured data to be serialized by the CLI.
"""


class KMError(Exception):
    """Base class; ``payload`` is a JSON-ready dict describing the failure."""

    def __init__(self, message, **payload):
        super().__init__(message)
        self.payload = payload

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self), **self.payload}


class NotAGCM(KMError):
    def __init__(self, axiom, entry, message=None):
        i, j = entry
        super().__init__(
            message or f"axiom {axiom} fails at entry ({i + 1},{j + 1})",
            axiom=axiom,
            entry=[i + 1, j + 1],
        )
        self.axiom = axiom
        self.entry = (i + 1, j + 1)


class NotSymmetrizable(KMError):
    pass


class NotRealRoot(KMError):
    pass


class CutoffExceeded(KMError):
    def __init__(self, degree, cutoff):
        super().__init__(
            f"product has degree {degree} outside cutoff {cutoff}",
            degree=degree,
            cutoff=cutoff,
        )
        self.degree = degree
        self.cutoff = cutoff


class WindowExceeded(KMError):
    def __init__(self, degree, window):
        super().__init__(
            f"result has a component in degree {degree} outside window {list(window)}",
            degree=degree,
            window=list(window),
        )
        self.degree = degree


class WindowFloorLoss(WindowExceeded):
    pass


class DepthExceedsCutoff(KMError):
    pass


class NotRestrictedLattice(KMError):
    pass


class GradingAxiomFailed(KMError):
    def __init__(self, axiom, witness):
        super().__init__(f"grading axiom {axiom} fails", axiom=axiom, witness=witness)
        self.axiom = axiom
        self.witness = witness


class NotSmear(KMError):
    pass


class WrongDegree(KMError):
    def __init__(self, j):
        super().__init__(f"factor for degree {j} is not homogeneous of degree {j}", degree=j)
        self.degree = j


class NonIntegrableLowering(KMError):
    pass


class NegativeImaginaryExponential(KMError):
    pass


class NotNegativeNorm(KMError):
    pass


class NotGroupElement(KMError):
    pass


class TruncationMismatch(KMError):
    pass
