"""Exception types raised across the package."""


class DisguiseError(Exception):
    """Base class for every error raised by imgdisguise."""


class ShapeError(DisguiseError, ValueError):
    """Input rejected: mismatched shapes, bad ranges or non-finite values."""


class PgmError(DisguiseError, ValueError):
    """Malformed PGM data. ``offset`` is the byte position of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class KeyfileError(DisguiseError):
    """Base class for keyfile decoding failures."""


class KeyFormatError(KeyfileError):
    pass


class KeyCorruptionError(KeyfileError):
    pass


class KeyVersionError(KeyfileError):
    pass
