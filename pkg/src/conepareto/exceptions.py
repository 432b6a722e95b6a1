"""Exception types raised by conepareto."""


class ConeError(ValueError):
    """Invalid cone parameters or a cone that is not a proper ordering cone."""


class DegenerateConeError(ConeError):
    """The cone is not pointed or not solid."""


class DimensionError(ValueError):
    """A vector or matrix has the wrong shape."""


class ConvergenceError(RuntimeError):
    """The projection solver did not converge within its iteration cap."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class EstimationError(RuntimeError):
    """Every sample drawn for an empirical estimate was degenerate."""


class DataError(ValueError):
    """Malformed dataset or design set."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""
