"""Two-party handshake and encrypted message exchange.

The initiator sends HELLO carrying (seed, timestamps, nonce); the
responder echoes the nonce in an ACK.  Both ends then derive the same
keystream from those values plus the pre-shared key, which never crosses
the wire.  Derivation is fixed to the canonical engine with modulus 35 so
the result always indexes the alphabet.  After establishment each side
consumes keystream positions monotonically for both directions of DATA
traffic; if traffic outruns the stream it cycles and a reuse warning is
recorded.

Transport is any reliable ordered duplex byte channel.  Two are shipped:
an in-memory pair for tests and a thin socket wrapper the loopback demo
uses.
"""

from __future__ import annotations

import socket
import threading
import warnings
from enum import Enum

from . import codec36
from .errors import (
    ChannelClosed,
    KeystreamReuseWarning,
    NonceMismatch,
    ProtocolViolation,
    TruncatedFrame,
)
from .frames import (
    HEADER_LEN,
    Frame,
    FrameType,
    HelloPayload,
    decode_ack,
    decode_frame,
    encode_ack,
    encode_frame,
)
from .keystream import GeneratorParams, Mode, generate

SESSION_MODULUS = 35


class Role(Enum):
    INITIATOR = "initiator"
    RESPONDER = "responder"


class Phase(Enum):
    IDLE = "idle"
    HELLO_SENT = "hello-sent"
    HELLO_RECEIVED = "hello-received"
    ESTABLISHED = "established"
    CLOSED = "closed"


def _derive(key_r: int, seed_t1: int, timestamps, nonce) -> list[int]:
    params = GeneratorParams(
        key_r=key_r,
        timestamps=timestamps,
        nonce=nonce,
        seed_t1=seed_t1,
        modulus=SESSION_MODULUS,
        mode=Mode.CANONICAL,
    )
    return generate(params)


class Session:
    """State machine for one endpoint of one connection.

    Not internally synchronized; one connection, one owner.
    """

    def __init__(self, role: Role, key_r: int):
        self.role = role
        self.key_r = key_r
        self.phase = Phase.IDLE
        self.keystream: list[int] | None = None
        self.offset = 0
        self.reuse_warnings = 0
        self._hello: HelloPayload | None = None

    @classmethod
    def initiator(cls, key_r: int, params: GeneratorParams) -> "Session":
        """Initiating endpoint; session values are taken from ``params``.

        Only timestamps, nonce, and seed are used (and later sent); the
        derivation mode and modulus are fixed by the protocol.
        """
        sess = cls(Role.INITIATOR, key_r)
        sess._hello = HelloPayload(params.seed_t1, params.timestamps, params.nonce)
        return sess

    @classmethod
    def responder(cls, key_r: int) -> "Session":
        return cls(Role.RESPONDER, key_r)

    def _require(self, phase: Phase, role: Role, action: str) -> None:
        if self.role is not role:
            raise ProtocolViolation(f"{action} is not legal for the {self.role.value}")
        if self.phase is not phase:
            raise ProtocolViolation(f"{action} is not legal in phase {self.phase.value}")

    def initiate(self) -> Frame:
        """Build the HELLO frame and move to hello-sent."""
        self._require(Phase.IDLE, Role.INITIATOR, "initiate")
        assert self._hello is not None
        frame = Frame(FrameType.HELLO, self._hello.encode())
        self.phase = Phase.HELLO_SENT
        return frame

    def on_hello(self, frame: Frame) -> Frame:
        """Accept a HELLO, derive the keystream, return the echoing ACK."""
        self._require(Phase.IDLE, Role.RESPONDER, "on_hello")
        if frame.frame_type is not FrameType.HELLO:
            raise ProtocolViolation(f"expected HELLO, got {frame.frame_type.name}")
        hello = HelloPayload.decode(frame.payload)
        self.phase = Phase.HELLO_RECEIVED
        self._hello = hello
        self.keystream = _derive(self.key_r, hello.seed_t1, hello.timestamps, hello.nonce)
        self.phase = Phase.ESTABLISHED
        return Frame(FrameType.ACK, encode_ack(hello.nonce))

    def on_ack(self, frame: Frame) -> None:
        """Verify the nonce echo and establish, or close with an ERR frame."""
        self._require(Phase.HELLO_SENT, Role.INITIATOR, "on_ack")
        if frame.frame_type is FrameType.ERR:
            self.phase = Phase.CLOSED
            raise ProtocolViolation(f"peer error: {frame.payload.decode('ascii', 'replace')}")
        if frame.frame_type is not FrameType.ACK:
            raise ProtocolViolation(f"expected ACK, got {frame.frame_type.name}")
        assert self._hello is not None
        echoed = decode_ack(frame.payload)
        if echoed != self._hello.nonce:
            self.phase = Phase.CLOSED
            err = Frame(FrameType.ERR, b"nonce mismatch")
            raise NonceMismatch(
                f"ACK echoed {list(echoed)}, sent {list(self._hello.nonce)}", err_frame=err
            )
        self.keystream = _derive(
            self.key_r, self._hello.seed_t1, self._hello.timestamps, self._hello.nonce
        )
        self.phase = Phase.ESTABLISHED

    def on_err(self, frame: Frame) -> str:
        """Record a peer-reported error and close."""
        self.phase = Phase.CLOSED
        return frame.payload.decode("ascii", "replace")

    def _take(self, count: int) -> list[int]:
        assert self.keystream is not None
        stream = self.keystream
        if self.offset + count > len(stream) and self.reuse_warnings == 0:
            self.reuse_warnings += 1
            warnings.warn(
                f"traffic exceeded the {len(stream)}-value keystream; cycling positions",
                KeystreamReuseWarning,
                stacklevel=3,
            )
        taken = [stream[(self.offset + i) % len(stream)] for i in range(count)]
        self.offset += count
        return taken

    def send_message(self, text: str) -> Frame:
        """Encrypt ``text`` at the current stream offset into a DATA frame."""
        if self.phase is not Phase.ESTABLISHED:
            raise ProtocolViolation(f"send_message is not legal in phase {self.phase.value}")
        values = codec36.text_to_values(text)
        cipher = codec36.encrypt(values, self._take(len(values)))
        return Frame(FrameType.DATA, codec36.values_to_text(cipher).encode("ascii"))

    def recv_message(self, frame: Frame) -> str:
        """Decrypt a DATA frame at the current stream offset."""
        if self.phase is not Phase.ESTABLISHED:
            raise ProtocolViolation(f"recv_message is not legal in phase {self.phase.value}")
        if frame.frame_type is not FrameType.DATA:
            raise ProtocolViolation(f"expected DATA, got {frame.frame_type.name}")
        cipher = codec36.text_to_values(frame.payload.decode("ascii", "strict"))
        plain = codec36.decrypt(cipher, self._take(len(cipher)))
        return codec36.values_to_text(plain)


# ---------------------------------------------------------------------------
# Transports


class InMemoryChannel:
    """One end of an in-process duplex byte pipe."""

    def __init__(self) -> None:
        self._buf = bytearray()
        self._cond = threading.Condition()
        self._closed = False
        self.peer: "InMemoryChannel" | None = None

    @classmethod
    def pair(cls) -> tuple["InMemoryChannel", "InMemoryChannel"]:
        a, b = cls(), cls()
        a.peer, b.peer = b, a
        return a, b

    def send(self, data: bytes) -> None:
        peer = self.peer
        assert peer is not None
        with peer._cond:
            if peer._closed:
                raise ChannelClosed("peer end is closed")
            peer._buf += data
            peer._cond.notify_all()

    def recv_exact(self, count: int, timeout: float = 5.0) -> bytes:
        with self._cond:
            if not self._cond.wait_for(
                lambda: len(self._buf) >= count or self._closed, timeout=timeout
            ):
                raise ChannelClosed(f"timed out waiting for {count} bytes")
            if len(self._buf) < count:
                raise ChannelClosed("channel closed")
            out = bytes(self._buf[:count])
            del self._buf[:count]
            return out

    def close(self) -> None:
        for end in (self, self.peer):
            if end is None:
                continue
            with end._cond:
                end._closed = True
                end._cond.notify_all()


class SocketChannel:
    """Duplex channel over a connected stream socket."""

    def __init__(self, sock: socket.socket) -> None:
        self.sock = sock

    def send(self, data: bytes) -> None:
        try:
            self.sock.sendall(data)
        except OSError as exc:
            raise ChannelClosed(str(exc)) from exc

    def recv_exact(self, count: int) -> bytes:
        chunks = bytearray()
        while len(chunks) < count:
            try:
                chunk = self.sock.recv(count - len(chunks))
            except OSError as exc:
                raise ChannelClosed(str(exc)) from exc
            if not chunk:
                raise ChannelClosed("socket closed")
            chunks += chunk
        return bytes(chunks)

    def close(self) -> None:
        try:
            self.sock.close()
        except OSError:
            pass


def write_frame(channel, frame: Frame) -> None:
    channel.send(encode_frame(frame))


def read_frame(channel) -> Frame:
    header = channel.recv_exact(HEADER_LEN)
    payload_len = int.from_bytes(header[4:6], "big")
    try:
        payload = channel.recv_exact(payload_len) if payload_len else b""
    except ChannelClosed as exc:
        raise TruncatedFrame(f"channel closed inside a frame: {exc}") from exc
    return decode_frame(header + payload)


# ---------------------------------------------------------------------------
# Drivers shared by the loopback demo and the integration tests


def corrupt_ack(frame: Frame) -> Frame:
    """Flip the first nonce element of an ACK; used to exercise the ERR path."""
    nonce = list(decode_ack(frame.payload))
    nonce[0] = (nonce[0] + 1) & 0xFFFF
    return Frame(FrameType.ACK, encode_ack(nonce))


def run_initiator(channel, key_r: int, params: GeneratorParams, messages) -> list[str]:
    """Handshake, send each message, and expect it echoed back. Returns transcript."""
    lines = []
    sess = Session.initiator(key_r, params)
    write_frame(channel, sess.initiate())
    lines.append(
        f"HELLO sent: seed={params.seed_t1}, "
        f"{len(params.timestamps)} timestamps, {len(params.nonce)} nonce elements"
    )
    ack = read_frame(channel)
    try:
        sess.on_ack(ack)
    except NonceMismatch as exc:
        write_frame(channel, exc.err_frame)
        lines.append(f"ACK rejected ({exc}); ERR sent, session closed")
        return lines
    assert sess.keystream is not None
    lines.append(f"ACK verified; established with a {len(sess.keystream)}-value keystream")
    for text in messages:
        data = sess.send_message(text)
        write_frame(channel, data)
        lines.append(f"sent {text!r} as {data.payload.decode('ascii')!r}")
        echoed = sess.recv_message(read_frame(channel))
        lines.append(f"peer echoed {echoed!r}")
    channel.close()
    return lines


def run_responder(channel, key_r: int, corrupt_nonce: bool = False) -> list[str]:
    """Serve one session: ACK the HELLO, then echo DATA until the peer leaves."""
    lines = []
    sess = Session.responder(key_r)
    while True:
        try:
            frame = read_frame(channel)
        except ChannelClosed:
            lines.append("peer disconnected")
            break
        if frame.frame_type is FrameType.HELLO:
            ack = sess.on_hello(frame)
            if corrupt_nonce:
                ack = corrupt_ack(ack)
                lines.append("HELLO received; ACK sent with corrupted nonce echo")
            else:
                lines.append("HELLO received; ACK sent")
            write_frame(channel, ack)
        elif frame.frame_type is FrameType.DATA:
            text = sess.recv_message(frame)
            lines.append(f"received {text!r}; echoing")
            write_frame(channel, sess.send_message(text))
        elif frame.frame_type is FrameType.ERR:
            lines.append(f"peer reported error: {sess.on_err(frame)!r}")
            break
        else:
            raise ProtocolViolation(f"unexpected {frame.frame_type.name}")
    return lines


def run_loopback_demo(
    key_r: int, params: GeneratorParams, messages, corrupt_nonce: bool = False
) -> tuple[list[str], list[str]]:
    """Run initiator and responder over a localhost TCP socket pair."""
    listener = socket.create_server(("127.0.0.1", 0))
    port = listener.getsockname()[1]
    responder_lines: list[str] = []

    def serve() -> None:
        conn, _ = listener.accept()
        try:
            responder_lines.extend(run_responder(SocketChannel(conn), key_r, corrupt_nonce))
        finally:
            conn.close()

    thread = threading.Thread(target=serve, daemon=True)
    thread.start()
    client = socket.create_connection(("127.0.0.1", port), timeout=5.0)
    try:
        initiator_lines = run_initiator(SocketChannel(client), key_r, params, messages)
    finally:
        client.close()
    thread.join(timeout=5.0)
    listener.close()
    return initiator_lines, responder_lines
