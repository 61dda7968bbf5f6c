"""Exception types raised across the package."""


class PglnError(Exception):
    """Base class for all package errors."""


class MalformedInput(PglnError):
    pass


class UngluedFace(PglnError):
    pass


class InconsistentPairing(PglnError):
    pass


class NotOriented(PglnError):
    pass


class DisconnectedLink(PglnError):
    pass


class VertexPoint(PglnError):
    """A vertex lattice point has no midpoint decomposition."""


class DegenerateShape(PglnError):
    pass


class LocalModeUnsupported(PglnError):
    """Shapes for an unglued simplex cannot be evaluated against a glued system."""


class ComponentMismatch(PglnError):
    pass


class NotInImage(PglnError):
    pass


class ShapeMismatch(PglnError):
    pass


class InvalidN(PglnError):
    pass
