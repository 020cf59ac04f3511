"""Mod-36 text codec: alphabet mapping plus keystream addition/subtraction.

The alphabet is digits 0-9 (values 0-9) followed by letters (values
10-35).  Input letters are accepted in either case; canonical renderings
are lowercase.  Encryption adds subkey values position by position and
reduces mod 36; decryption subtracts, which covers the borrow rule (add
36 first whenever the cipher value is smaller than the subkey value).
"""

from __future__ import annotations

from typing import Sequence

from .errors import KeyTooShort, UnsupportedSymbol, ValueOutOfRange

ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"
ALPHABET_SIZE = 36

_CHAR_VALUES = {c: v for v, c in enumerate(ALPHABET)}
_CHAR_VALUES.update({c.upper(): v for v, c in enumerate(ALPHABET) if c.isalpha()})


def char_to_value(c: str) -> int:
    """Map one alphabet character to its value; case-insensitive."""
    try:
        return _CHAR_VALUES[c]
    except (KeyError, TypeError):
        raise UnsupportedSymbol(f"character {c!r} is outside the 36-symbol alphabet") from None


def value_to_char(v: int) -> str:
    """Canonical character for a value in [0, 36)."""
    if not 0 <= v < ALPHABET_SIZE:
        raise ValueOutOfRange(f"alphabet value must lie in [0, 36), got {v}")
    return ALPHABET[v]


def text_to_values(text: str) -> list[int]:
    return [char_to_value(c) for c in text]


def values_to_text(values: Sequence[int]) -> str:
    return "".join(value_to_char(v) for v in values)


def _check_lengths(values: Sequence[int], subkey: Sequence[int]) -> None:
    if len(subkey) < len(values):
        raise KeyTooShort(f"subkey has {len(subkey)} values, need {len(values)}")


def encrypt(plain: Sequence[int], subkey: Sequence[int]) -> list[int]:
    """Add subkey values mod 36, position by position."""
    _check_lengths(plain, subkey)
    out = []
    for p, k in zip(plain, subkey):
        if not 0 <= p < ALPHABET_SIZE:
            raise ValueOutOfRange(f"plaintext value must lie in [0, 36), got {p}")
        out.append((p + k) % ALPHABET_SIZE)
    return out


def decrypt(cipher: Sequence[int], subkey: Sequence[int]) -> list[int]:
    """Subtract subkey values mod 36; exact inverse of :func:`encrypt`."""
    _check_lengths(cipher, subkey)
    out = []
    for c, k in zip(cipher, subkey):
        if not 0 <= c < ALPHABET_SIZE:
            raise ValueOutOfRange(f"ciphertext value must lie in [0, 36), got {c}")
        out.append((c - k) % ALPHABET_SIZE)
    return out


def encrypt_text(text: str, subkey: Sequence[int]) -> str:
    return values_to_text(encrypt(text_to_values(text), subkey))


def decrypt_text(text: str, subkey: Sequence[int]) -> str:
    return values_to_text(decrypt(text_to_values(text), subkey))
