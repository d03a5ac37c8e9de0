"""Exception types shared across the package."""


class CapabilityError(RuntimeError):
    """Requested computation exceeds a hard resource bound (e.g. dense ED size)."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (symmetry residual, imaginary leakage, ...)."""


class DegenerateChannelError(ConsistencyError):
    """A momentum channel carries too little weight to define phases reliably."""
