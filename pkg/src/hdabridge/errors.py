"""Exception hierarchy.

Every error the library can raise derives from HdaBridgeError so the CLI
can map each class to a distinct exit code.
"""


class HdaBridgeError(Exception):
    """Base class for all library errors."""


class ParseError(HdaBridgeError):
    """A document could not be decoded or is missing required fields."""


class UnknownKind(HdaBridgeError):
    """A document carries a kind discriminator we do not handle."""


class StarClash(HdaBridgeError):
    """The reserved idle symbol '*' already occurs as an ordinary event."""


class NotEnabled(HdaBridgeError):
    """A word is not enabled at a marking; carries the deficient place."""

    def __init__(self, place, need, have):
        super().__init__(f"place {place!r} holds {have} token(s), needs {need}")
        self.place = place
        self.need = need
        self.have = have


class ExplosionLimit(HdaBridgeError):
    """State-space exploration exceeded the configured bound."""


class DimensionCapExceeded(HdaBridgeError):
    """Cells above the configured dimension exist and truncation was not requested."""


class CapExceeded(HdaBridgeError):
    """A derived region needs token counts above the configured cap."""


class NotLinear(HdaBridgeError):
    """Some cell label repeats an event."""


class NotOneDeterministic(HdaBridgeError):
    """Two distinct edges share source and label."""


class SquareIncomplete(HdaBridgeError):
    """An independence square cannot be closed in the underlying graph."""


class NotPartialOrder(HdaBridgeError):
    """The induced causality relation fails antisymmetry."""


class NoSuchFunctor(HdaBridgeError):
    """No translation exists between the requested kinds."""


class OutOfReachableFragment(HdaBridgeError):
    """A transposed morphism needs markings or cells hidden by the caps."""


class SizeLimit(HdaBridgeError):
    """An exhaustive search was refused because the instance is too large."""


class IndexOutOfRange(HdaBridgeError):
    """A face or transposition index is outside the cell's dimension."""


class ArityMismatch(HdaBridgeError):
    """A word action descriptor does not match the word's length."""
