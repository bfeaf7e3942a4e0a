"""FrogHash-512: a plain sponge hash over the same 1024-bit permutation.

The state starts at zero with an ASCII domain string XORed into the
capacity, input is absorbed into the rate in 64-byte blocks with the
usual 10*1 padding (no domain-separation byte; separation from the AEAD
comes from the init string), and the 64-byte digest is read through the
output transform. More output can be squeezed with extra permutation
calls.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .duplex import output_transform, pad_rate_tail
from .permutation import (
    RATE_BYTES,
    ROUND_CONSTANTS,
    _count_calls,
    zero_state,
)

DIGEST_BYTES = 64
HASH_ID_STRING = b"SYMFROG-HASH-v1"

_READ_CHUNK = 64 * 1024


def _init_words() -> np.ndarray:
    s = zero_state()
    ident = HASH_ID_STRING.ljust(16, b"\x00")
    s[8:10] ^= np.frombuffer(ident, dtype="<u8")
    _kernels.permute24(s, ROUND_CONSTANTS)
    _count_calls(1)
    return s


class FrogHash512:
    """Incremental hasher, hashlib-style (update / digest / hexdigest)."""

    digest_size = DIGEST_BYTES
    block_size = RATE_BYTES

    def __init__(self, data: bytes = b"") -> None:
        self._words = _init_words()
        self._buffer = b""
        if data:
            self.update(data)

    def update(self, data: bytes) -> None:
        data = self._buffer + bytes(data)
        split = len(data) - (len(data) % RATE_BYTES)
        if split:
            blocks = np.frombuffer(data[:split], dtype="<u8").reshape(-1, 8)
            _kernels.absorb_blocks(
                self._words, blocks, np.uint64(0), ROUND_CONSTANTS
            )
            _count_calls(blocks.shape[0])
        self._buffer = data[split:]

    def _finalized_words(self) -> np.ndarray:
        words = self._words.copy()
        words[:8] ^= np.frombuffer(pad_rate_tail(self._buffer), dtype="<u8")
        _kernels.permute24(words, ROUND_CONSTANTS)
        _count_calls(1)
        return words

    def digest(self, length: int = DIGEST_BYTES) -> bytes:
        """Finalize a copy of the state and squeeze length output bytes.

        The first 64 bytes come straight from the output transform; each
        further 64-byte block is preceded by one permutation call. The
        hasher itself stays usable (more update calls are allowed).
        """
        if length < 1:
            raise ValueError("digest length must be at least 1")
        words = self._finalized_words()
        out = output_transform(words)
        if length > DIGEST_BYTES:
            extra = -(-(length - DIGEST_BYTES) // RATE_BYTES)
            blocks = np.empty((extra, 8), dtype=np.uint64)
            _kernels.squeeze_blocks(words, blocks, ROUND_CONSTANTS)
            _count_calls(extra)
            out += blocks.astype("<u8", copy=False).tobytes()
        return out[:length]

    def hexdigest(self, length: int = DIGEST_BYTES) -> str:
        return self.digest(length).hex()


def froghash(data) -> bytes:
    """Hash bytes or a readable binary stream to a 64-byte digest."""
    h = FrogHash512()
    if hasattr(data, "read"):
        while True:
            chunk = data.read(_READ_CHUNK)
            if not chunk:
                break
            h.update(chunk)
    else:
        h.update(data)
    return h.digest()


def froghash_extended(data, length: int) -> bytes:
    """Hash with an extended squeeze; the first 64 bytes equal froghash."""
    h = FrogHash512()
    if hasattr(data, "read"):
        while True:
            chunk = data.read(_READ_CHUNK)
            if not chunk:
                break
            h.update(chunk)
    else:
        h.update(data)
    return h.digest(length)
