"""Timestamp/nonce feedback keystream generator and mod-36 stream cipher.

The package splits into the stream derivation core (buckets, keystream),
the alphabet codec (codec36), empirical measurement (analysis, figures),
the variant sweep against the published sequence (calibrate), and the
acknowledged two-party session protocol (frames, session).  The cli
module exposes all of it as subcommands.
"""

from .buckets import (
    DEFAULT_TABLE,
    BucketRule,
    RelationshipTable,
    load_table,
    lookup_bucket,
    parse_table,
    theta,
)
from .codec36 import (
    ALPHABET,
    char_to_value,
    decrypt,
    decrypt_text,
    encrypt,
    encrypt_text,
    text_to_values,
    value_to_char,
    values_to_text,
)
from .errors import (
    BadMagic,
    BadVersion,
    ChannelClosed,
    CipherError,
    DecodeError,
    EmptyInput,
    FrameError,
    InvalidParams,
    KeystreamReuseWarning,
    KeyTooShort,
    LengthMismatch,
    NonceMismatch,
    NumericFault,
    OutOfRange,
    ProtocolViolation,
    TooShort,
    TruncatedFrame,
    UnknownType,
    UnsupportedSymbol,
    ValueOutOfRange,
    ZeroVariance,
)
from .keystream import (
    Coefficients,
    GeneratorParams,
    Mode,
    coefficients,
    derive_subkey,
    generate,
    keystream_from_bytes,
    keystream_from_text,
    keystream_to_bytes,
    keystream_to_text,
    step_canonical,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "BadMagic",
    "BadVersion",
    "BucketRule",
    "ChannelClosed",
    "CipherError",
    "Coefficients",
    "DEFAULT_TABLE",
    "DecodeError",
    "EmptyInput",
    "FrameError",
    "GeneratorParams",
    "InvalidParams",
    "KeyTooShort",
    "KeystreamReuseWarning",
    "LengthMismatch",
    "Mode",
    "NonceMismatch",
    "NumericFault",
    "OutOfRange",
    "ProtocolViolation",
    "RelationshipTable",
    "TooShort",
    "TruncatedFrame",
    "UnknownType",
    "UnsupportedSymbol",
    "ValueOutOfRange",
    "ZeroVariance",
    "char_to_value",
    "coefficients",
    "decrypt",
    "decrypt_text",
    "derive_subkey",
    "encrypt",
    "encrypt_text",
    "generate",
    "keystream_from_bytes",
    "keystream_from_text",
    "keystream_to_bytes",
    "keystream_to_text",
    "load_table",
    "lookup_bucket",
    "parse_table",
    "step_canonical",
    "text_to_values",
    "theta",
    "value_to_char",
    "values_to_text",
]
