"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class PreconditionError(DomainError):
    """A stated precondition was checked and does not hold."""


class ResourceLimitError(RuntimeError):
    """An operation would exceed its configured memory/size budget."""


class BitmapFormatError(IOError):
    """A flag-bitmap file is structurally invalid."""


class BitmapVersionError(BitmapFormatError):
    """The bitmap file declares an unsupported format version."""


class BitmapTruncatedError(BitmapFormatError):
    """The bitmap file is shorter than its header promises."""


class BitmapChecksumError(BitmapFormatError):
    """The bitmap file's trailing checksum does not match its content."""
