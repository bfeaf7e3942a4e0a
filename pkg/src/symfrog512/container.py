"""The .syf encrypted file container.

Layout: a 152-byte header, ct_len ciphertext bytes, then a 32-byte final
tag (total size = plaintext length + 184). The header carries a keyed
authentication tag of its own, verified before any ciphertext is read,
so a wrong key or tampered header is rejected without touching the body.
All output is written to a temp file in the destination directory,
fsynced, and atomically renamed; a failed operation leaves no partial
destination file.
"""

from __future__ import annotations

import enum
import os
import struct
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import aead, kdf
from .aead import AeadParams, StreamVerdict, constant_time_eq
from .duplex import DS_HDR, DS_HDRTAG, DuplexState, TAG_BYTES

MAGIC = b"SYMFROG1"
FORMAT_VERSION = 1
HEADER_BYTES = 152
FLAG_KEY_DERIVED = 0x00000001
OVERHEAD_BYTES = HEADER_BYTES + TAG_BYTES  # 184

HDRTAG_ID_STRING = b"SYMFROG-HDRTAG-v1"

_HEADER_STRUCT = struct.Struct("<8sII32s32sQ32s32s")
assert _HEADER_STRUCT.size == HEADER_BYTES

_CHUNK = 64 * 1024


class ContainerFormatError(ValueError):
    """The input is not a well-formed container of a supported version."""


class Verdict(enum.Enum):
    OK = "ok"
    HEADER_AUTH_FAIL = "header_auth_fail"
    BODY_AUTH_FAIL = "body_auth_fail"
    FORMAT_ERROR = "format_error"


@dataclass
class Header:
    """The 152-byte container preamble, fields in wire order."""

    version: int = FORMAT_VERSION
    flags: int = 0
    salt: bytes = b"\x00" * 32
    nonce: bytes = b"\x00" * 32
    ct_len: int = 0
    reserved: bytes = b"\x00" * 32
    header_tag: bytes = b"\x00" * 32

    def serialize(self) -> bytes:
        return _HEADER_STRUCT.pack(
            MAGIC,
            self.version,
            self.flags,
            self.salt,
            self.nonce,
            self.ct_len,
            self.reserved,
            self.header_tag,
        )

    def serialize_zeroed(self) -> bytes:
        """Serialized form with the header_tag field zeroed (tag transcript input)."""
        return self.serialize()[: HEADER_BYTES - TAG_BYTES] + b"\x00" * TAG_BYTES

    @classmethod
    def parse(cls, data: bytes) -> "Header":
        """Parse and validate 152 header bytes.

        Magic, version, and unknown flag bits are checked here, before any
        key material is touched. The reserved field is accepted as-is (it
        is covered by the header tag regardless).
        """
        if len(data) != HEADER_BYTES:
            raise ContainerFormatError(
                f"header must be {HEADER_BYTES} bytes, got {len(data)}"
            )
        magic, version, flags, salt, nonce, ct_len, reserved, header_tag = (
            _HEADER_STRUCT.unpack(data)
        )
        if magic != MAGIC:
            raise ContainerFormatError("bad magic: not a SymFrog container")
        if version != FORMAT_VERSION:
            raise ContainerFormatError(f"unsupported container version {version}")
        if flags & ~FLAG_KEY_DERIVED:
            raise ContainerFormatError(f"unknown flag bits set: {flags:#010x}")
        return cls(
            version=version,
            flags=flags,
            salt=salt,
            nonce=nonce,
            ct_len=ct_len,
            reserved=reserved,
            header_tag=header_tag,
        )


def compute_header_tag(
    key: bytes, nonce: bytes, ad: bytes, header_zeroed: bytes
) -> bytes:
    """Keyed tag binding the header fields and external AD to (key, nonce).

    Runs a dedicated duplex transcript over "SYMFROG-HDRTAG-v1" followed
    by the 152 header bytes (tag field zeroed) and the AD, under its own
    pair of domain bytes so it can never collide with a body transcript.
    """
    if len(header_zeroed) != HEADER_BYTES:
        raise ValueError("header_zeroed must be the full 152 header bytes")
    if any(header_zeroed[HEADER_BYTES - TAG_BYTES:]):
        raise ValueError("header_tag field must be zeroed")
    d = DuplexState.init(key, nonce)
    d.absorb(HDRTAG_ID_STRING + header_zeroed + ad, DS_HDR)
    return d.finalize_tag(DS_HDRTAG)


@dataclass
class KeySource:
    """Either a raw 128-byte key or a passphrase plus KDF profile."""

    key: bytes | None = None
    passphrase: bytes | str | None = None
    profile: kdf.KdfProfile = field(default=kdf.MODERATE)

    def __post_init__(self) -> None:
        if (self.key is None) == (self.passphrase is None):
            raise ValueError("provide exactly one of key or passphrase")
        if self.key is not None and len(self.key) != 128:
            raise ValueError(f"raw key must be 128 bytes, got {len(self.key)}")

    @property
    def is_derived(self) -> bool:
        return self.passphrase is not None

    def resolve(self, salt: bytes) -> bytes:
        if self.key is not None:
            return self.key
        return kdf.derive_key(self.passphrase, salt, self.profile)


class _CountingReader:
    """Wrap a readable stream, reporting progress to an optional callback."""

    def __init__(self, raw, total: int, progress=None) -> None:
        self._raw = raw
        self._total = total
        self._done = 0
        self._progress = progress

    def read(self, n: int = -1) -> bytes:
        data = self._raw.read(n)
        self._done += len(data)
        if self._progress is not None:
            self._progress(self._done, self._total)
        return data


class _LimitedReader:
    """Expose at most `limit` bytes of an underlying stream."""

    def __init__(self, raw, limit: int) -> None:
        self._raw = raw
        self._remaining = limit

    def read(self, n: int = -1) -> bytes:
        if self._remaining <= 0:
            return b""
        if n is None or n < 0 or n > self._remaining:
            n = self._remaining
        data = self._raw.read(n)
        self._remaining -= len(data)
        return data


def _fsync_dir(path: Path) -> None:
    try:
        fd = os.open(path, os.O_RDONLY)
    except OSError:
        return
    try:
        os.fsync(fd)
    finally:
        os.close(fd)


def _make_temp(dest: Path):
    fd, tmp = tempfile.mkstemp(prefix=dest.name + ".", suffix=".tmp", dir=dest.parent)
    return os.fdopen(fd, "wb"), Path(tmp)


def encrypt_file(
    in_path,
    out_path,
    key_source: KeySource,
    ad: bytes = b"",
    nonce: bytes | None = None,
    progress=None,
) -> None:
    """Encrypt in_path to the container out_path.

    Passphrase mode draws a fresh random salt and sets the key-derived
    flag; raw-key mode stores an all-zero salt. The nonce is random
    unless supplied. The same (key, nonce, ad) keys both the header tag
    and the body transcript. Output appears atomically or not at all.
    """
    in_path = Path(in_path)
    out_path = Path(out_path)
    if nonce is None:
        nonce = kdf.generate_nonce()
    if len(nonce) != 32:
        raise ValueError(f"nonce must be 32 bytes, got {len(nonce)}")

    if key_source.is_derived:
        salt = kdf.generate_salt()
        flags = FLAG_KEY_DERIVED
    else:
        salt = b"\x00" * 32
        flags = 0
    key = key_source.resolve(salt)

    ct_len = in_path.stat().st_size
    header = Header(flags=flags, salt=salt, nonce=nonce, ct_len=ct_len)
    header.header_tag = compute_header_tag(key, nonce, ad, header.serialize_zeroed())

    params = AeadParams(key=key, nonce=nonce, ad=ad)
    tmp_file, tmp_path = _make_temp(out_path)
    try:
        with tmp_file, open(in_path, "rb") as src:
            tmp_file.write(header.serialize())
            reader = _CountingReader(src, ct_len, progress)
            tag = aead.encrypt_stream(params, reader, tmp_file)
            tmp_file.write(tag)
            tmp_file.flush()
            os.fsync(tmp_file.fileno())
        os.replace(tmp_path, out_path)
        _fsync_dir(out_path.parent)
    except BaseException:
        tmp_path.unlink(missing_ok=True)
        raise


def decrypt_file(
    in_file,
    out_path,
    key_source: KeySource,
    ad: bytes = b"",
    progress=None,
) -> Verdict:
    """Decrypt a container to out_path, returning a verdict.

    in_file may be a path or an open seekable binary stream. The header
    tag is verified first; on mismatch the function returns without
    reading a single body byte. Plaintext reaches out_path only when the
    final tag verifies (temp file plus atomic rename); on any non-OK
    verdict the destination is left untouched.
    """
    out_path = Path(out_path)
    if hasattr(in_file, "read"):
        return _decrypt_stream(in_file, out_path, key_source, ad, progress)
    with open(in_file, "rb") as f:
        return _decrypt_stream(f, out_path, key_source, ad, progress)


def _decrypt_stream(f, out_path: Path, key_source: KeySource, ad, progress) -> Verdict:
    f.seek(0, os.SEEK_END)
    file_size = f.tell()
    f.seek(0)
    if file_size < OVERHEAD_BYTES:
        return Verdict.FORMAT_ERROR

    raw_header = f.read(HEADER_BYTES)
    try:
        header = Header.parse(raw_header)
    except ContainerFormatError:
        return Verdict.FORMAT_ERROR

    # the file size is the ground truth for ciphertext length; a header
    # that disagrees is corrupt and is rejected before any key work
    if header.ct_len != file_size - OVERHEAD_BYTES:
        return Verdict.FORMAT_ERROR

    key = key_source.resolve(header.salt)

    header_zeroed = raw_header[: HEADER_BYTES - TAG_BYTES] + b"\x00" * TAG_BYTES
    expected = compute_header_tag(key, header.nonce, ad, header_zeroed)
    if not constant_time_eq(expected, header.header_tag):
        return Verdict.HEADER_AUTH_FAIL

    f.seek(HEADER_BYTES + header.ct_len)
    final_tag = f.read(TAG_BYTES)
    if len(final_tag) != TAG_BYTES:
        return Verdict.FORMAT_ERROR
    f.seek(HEADER_BYTES)

    params = AeadParams(key=key, nonce=header.nonce, ad=ad)
    tmp_file, tmp_path = _make_temp(out_path)
    try:
        with tmp_file:
            body = _CountingReader(
                _LimitedReader(f, header.ct_len), header.ct_len, progress
            )
            verdict = aead.decrypt_stream(params, body, final_tag, tmp_file)
            if verdict is StreamVerdict.OK:
                tmp_file.flush()
                os.fsync(tmp_file.fileno())
        if verdict is StreamVerdict.OK:
            os.replace(tmp_path, out_path)
            _fsync_dir(out_path.parent)
            return Verdict.OK
        tmp_path.unlink(missing_ok=True)
        return Verdict.BODY_AUTH_FAIL
    except BaseException:
        tmp_path.unlink(missing_ok=True)
        raise
