"""Wire format for the session protocol.

Frame layout (all multi-byte integers big-endian)::

    offset  size  field
    0       2     magic 0x54 0x46 ("TF")
    2       1     version, currently 0x01
    3       1     frame type: 1 HELLO, 2 ACK, 3 DATA, 4 ERR
    4       2     payload length
    6       n     payload

HELLO payload::

    1 byte   seed_t1
    1 byte   timestamp count
    2 bytes  each timestamp
    1 byte   nonce length (>= 1)
    2 bytes  each nonce element

ACK payload echoes the nonce section of the HELLO byte for byte.  DATA
carries ciphertext rendered in the 36-symbol alphabet as ASCII.  ERR
carries an ASCII reason.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

from .errors import BadMagic, BadVersion, DecodeError, FrameError, TruncatedFrame, UnknownType

MAGIC = b"TF"
VERSION = 1
HEADER_LEN = 6
MAX_PAYLOAD = 0xFFFF


class FrameType(IntEnum):
    HELLO = 1
    ACK = 2
    DATA = 3
    ERR = 4


@dataclass(frozen=True)
class Frame:
    frame_type: FrameType
    payload: bytes = b""


def encode_frame(frame: Frame) -> bytes:
    if len(frame.payload) > MAX_PAYLOAD:
        raise FrameError(f"payload of {len(frame.payload)} bytes exceeds {MAX_PAYLOAD}")
    return (
        MAGIC
        + bytes([VERSION, FrameType(frame.frame_type)])
        + struct.pack(">H", len(frame.payload))
        + frame.payload
    )


def decode_frame(data: bytes) -> Frame:
    """Strict inverse of :func:`encode_frame`; ``data`` is one whole frame."""
    if len(data) < HEADER_LEN:
        raise TruncatedFrame(f"need at least {HEADER_LEN} header bytes, got {len(data)}")
    if data[:2] != MAGIC:
        raise BadMagic(f"bad magic {data[:2]!r}")
    if data[2] != VERSION:
        raise BadVersion(f"unsupported version {data[2]}")
    try:
        frame_type = FrameType(data[3])
    except ValueError:
        raise UnknownType(f"unknown frame type {data[3]}") from None
    (payload_len,) = struct.unpack(">H", data[4:6])
    payload = data[HEADER_LEN:]
    if len(payload) != payload_len:
        raise TruncatedFrame(f"payload length field says {payload_len}, got {len(payload)} bytes")
    return Frame(frame_type, payload)


def _encode_u16_list(values: Sequence[int], what: str) -> bytes:
    if not 0 < len(values) <= 0xFF:
        raise DecodeError(f"{what} count {len(values)} does not fit the wire format")
    out = bytearray([len(values)])
    for v in values:
        if not 0 <= v <= 0xFFFF:
            raise DecodeError(f"{what} element {v} does not fit in 16 bits")
        out += struct.pack(">H", v)
    return bytes(out)


def _decode_u16_list(data: bytes, offset: int, what: str) -> tuple[tuple[int, ...], int]:
    if offset >= len(data):
        raise DecodeError(f"{what} section missing")
    count = data[offset]
    offset += 1
    end = offset + 2 * count
    if count < 1 or end > len(data):
        raise DecodeError(f"{what} section truncated or empty")
    values = struct.unpack(f">{count}H", data[offset:end])
    return values, end


@dataclass(frozen=True)
class HelloPayload:
    seed_t1: int
    timestamps: tuple[int, ...]
    nonce: tuple[int, ...]

    def encode(self) -> bytes:
        if not 0 < self.seed_t1 <= 0xFF:
            raise DecodeError(f"seed {self.seed_t1} does not fit in one byte")
        return (
            bytes([self.seed_t1])
            + _encode_u16_list(self.timestamps, "timestamp")
            + _encode_u16_list(self.nonce, "nonce")
        )

    @classmethod
    def decode(cls, data: bytes) -> "HelloPayload":
        if len(data) < 1:
            raise DecodeError("HELLO payload empty")
        seed = data[0]
        timestamps, offset = _decode_u16_list(data, 1, "timestamp")
        nonce, offset = _decode_u16_list(data, offset, "nonce")
        if offset != len(data):
            raise DecodeError(f"{len(data) - offset} trailing bytes in HELLO payload")
        return cls(seed, timestamps, nonce)


def encode_ack(nonce: Sequence[int]) -> bytes:
    return _encode_u16_list(nonce, "nonce")


def decode_ack(data: bytes) -> tuple[int, ...]:
    nonce, offset = _decode_u16_list(data, 0, "nonce")
    if offset != len(data):
        raise DecodeError(f"{len(data) - offset} trailing bytes in ACK payload")
    return nonce
