"""Exception types shared across the toolkit."""


class TricrossError(Exception):
    """Base class for all domain errors raised by this package."""


class DiagramParseError(TricrossError):
    """Malformed diagram text. Carries line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonPlanarError(TricrossError):
    """Rotation system does not embed in the sphere; reports computed genus."""

    def __init__(self, genus):
        super().__init__(f"rotation system has genus {genus}, expected 0")
        self.genus = genus


class DisconnectedError(TricrossError):
    """Operation needs a connected diagram."""


class UnsupportedDiagramError(TricrossError):
    """Diagram shape outside what the pipeline handles."""


class StaleReportError(TricrossError):
    """A cut-vertex report no longer describes the diagram it came from."""


class LevelingNotFound(TricrossError):
    """Leveling search exhausted without success.

    For valid normalized inputs this indicates a defect, not a property of
    the diagram, so the message says so loudly.
    """

    def __init__(self, detail):
        super().__init__(
            "no bisected leveling found; this should be impossible for a "
            f"normalized connected triple-crossing diagram ({detail})"
        )


class NodeBudgetExceeded(TricrossError):
    """Skein resolution hit the configured node cap."""

    def __init__(self, budget):
        super().__init__(
            f"skein tree exceeded node budget {budget}; "
            "raise TRICROSS_NODE_BUDGET or simplify the input"
        )
        self.budget = budget


class ZeroPolynomialError(TricrossError):
    """v-span and span-class projection are undefined for the zero polynomial."""
