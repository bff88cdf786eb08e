class L2InterpError(Exception):
    """Base class for all errors raised by l2interp."""


class UsageError(L2InterpError, ValueError):
    """Invalid user input: unknown kernel name, out-of-range L or K, bad rational."""


class KernelDomainError(L2InterpError, ValueError):
    """A kernel routine was evaluated outside its mathematical domain."""


class MalformedImageError(UsageError):
    """An image or table file could not be parsed."""


class TransformError(UsageError):
    """An affine transform could not be built from the given parameters."""


class ResourceLimitError(L2InterpError, RuntimeError):
    """A requested object exceeds a configured resource cap."""
