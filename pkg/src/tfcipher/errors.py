"""Exception hierarchy shared by all tfcipher modules."""


class CipherError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(CipherError):
    """Generator or table parameters violate their invariants."""


class OutOfRange(CipherError):
    """No bucket rule covers the requested value."""


class NumericFault(CipherError):
    """Literal-mode recurrence hit a division by zero.

    Carries the partially generated stream so callers that document
    behaviour (the calibration sweep) can report how far the run got.
    """

    def __init__(self, message, step=None, partial=None):
        super().__init__(message)
        self.step = step
        self.partial = list(partial) if partial is not None else []


class UnsupportedSymbol(CipherError):
    """Character outside the 36-symbol alphabet."""


class KeyTooShort(CipherError):
    """Subkey shorter than the text it must cover."""


class ValueOutOfRange(CipherError):
    """Stream or alphabet value outside its permitted range."""


class EmptyInput(CipherError):
    """Statistic requested over an empty sample."""


class TooShort(CipherError):
    """Stream too short for the requested lag."""


class ZeroVariance(CipherError):
    """Correlation is undefined because one series is constant."""


class LengthMismatch(CipherError):
    """Streams being compared have different lengths."""


class FrameError(CipherError):
    """Base class for wire-format violations."""


class BadMagic(FrameError):
    pass


class BadVersion(FrameError):
    pass


class UnknownType(FrameError):
    pass


class TruncatedFrame(FrameError):
    pass


class DecodeError(FrameError):
    """Payload bytes do not parse as the expected structure."""


class ProtocolViolation(CipherError):
    """Frame arrived in a phase where it is not legal."""


class NonceMismatch(CipherError):
    """ACK echoed a nonce that differs from the one sent.

    ``err_frame`` holds the ERR frame the initiator should transmit
    before closing.
    """

    def __init__(self, message, err_frame=None):
        super().__init__(message)
        self.err_frame = err_frame


class ChannelClosed(CipherError):
    """Peer closed the transport."""


class KeystreamReuseWarning(Warning):
    """Traffic exceeded the derived stream; positions are being recycled."""
