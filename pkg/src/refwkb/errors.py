"""Exception types shared across the package."""


class RefWKBError(Exception):
    """Base class for all package errors."""


class ConfigError(RefWKBError):
    """Invalid configuration or potential specification."""


class NumericsError(RefWKBError):
    """A numerical routine failed to reach its accuracy target.

    Carries the originating module name and, when meaningful, the energy
    at which the failure occurred, so front ends can report both.
    """

    def __init__(self, module: str, message: str, energy: float | None = None):
        self.module = module
        self.energy = energy
        where = f"{module}" if energy is None else f"{module} at eps={energy:g}"
        super().__init__(f"[{where}] {message}")
