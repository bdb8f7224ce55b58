"""Exception hierarchy.

Every error raised by the engine derives from :class:`SpecasymError` and
records the module that raised it, so the CLI can report provenance.
"""


class SpecasymError(Exception):
    module = "specasym"


class ClusterAmbiguity(SpecasymError):
    module = "matrix-spectral-kernel"


class PoleOnContour(SpecasymError):
    module = "matrix-spectral-kernel"


class ZeroSeparationFailure(SpecasymError):
    module = "matrix-spectral-kernel"


class BranchViolation(SpecasymError):
    module = "matrix-spectral-kernel"


class SingularFiber(SpecasymError):
    module = "symbol-core"


class OrderExceeded(SpecasymError):
    module = "symbol-core"


class DepthUnavailable(SpecasymError):
    module = "symbol-core"


class NotElliptic(SpecasymError):
    module = "resolvent-parametrix"


class LambdaOnSpectrum(SpecasymError):
    module = "resolvent-parametrix"


class EigenvalueOnCut(SpecasymError):
    module = "sectorial-projection"


class ClearanceFailure(SpecasymError):
    module = "sectorial-projection"


class DepthInsufficient(SpecasymError):
    module = "residue-asymmetry"


class NotSelfadjoint(SpecasymError):
    module = "residue-asymmetry"


class PreconditionError(SpecasymError):
    module = "residue-asymmetry"


class UnsupportedDimension(SpecasymError):
    module = "dirac-geometry"


class HeatCoefficientUnavailable(SpecasymError):
    module = "dirac-geometry"


class SchemaError(SpecasymError):
    module = "cli-harness"
