"""Exception types shared across stages."""


class ForgeError(Exception):
    """Base class for every error raised by corpusforge."""


class ConfigError(ForgeError, ValueError):
    """Invalid configuration: unknown profile, bad parameter, schema violation."""


class StageError(ForgeError):
    """A pipeline stage failed on a specific input."""

    def __init__(self, stage: str, input_id: str, cause: BaseException):
        self.stage = stage
        self.input_id = input_id
        self.cause = cause
        super().__init__(f"stage {stage!r} failed on {input_id!r}: {cause}")
