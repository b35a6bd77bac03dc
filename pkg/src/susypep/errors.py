"""Exception hierarchy shared by all susypep modules."""


class SusypepError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SusypepError):
    """An argument lies outside the physically meaningful domain."""


class NoSuchStateError(SusypepError):
    """The requested bound state does not exist for these parameters."""


class BracketError(SusypepError):
    """A search bracket does not contain the requested root/eigenvalue."""


class ConvergenceError(SusypepError):
    """An iterative procedure failed to converge within its budget."""


class ConfigError(SusypepError):
    """Invalid run configuration (CLI flags, preset or config file)."""
