"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A spec, parameter, or config file is outside the accepted domain."""


class InvariantViolation(RuntimeError):
    """A runtime self-check failed; indicates a bug, not bad user input."""


class ZeroErrorViolation(RuntimeError):
    """A run's recovered labels disagree with the ground truth."""

    def __init__(self, message: str, *, point: int | None = None,
                 trial: int | None = None, seed: object = None):
        super().__init__(message)
        self.point = point
        self.trial = trial
        self.seed = seed
