"""Keyed duplex core: init, domain-separated absorption, output transform.

A transcript is a fixed sequence of phases; the state object tracks them
(Initialized -> AbsorbingAd -> Streaming -> Finalized) and raises
PhaseError on out-of-order use. Domain separation XORs a one-byte constant
into the least significant byte of word 15 before each permutation call.
"""

from __future__ import annotations

import enum

import numpy as np

from . import _kernels
from .permutation import (
    RATE_BYTES,
    ROUND_CONSTANTS,
    _count_calls,
    state_from_bytes,
)

KEY_BYTES = 128
NONCE_BYTES = 32
TAG_BYTES = 32

DS_AD = 0xA0
DS_CT = 0xC0
DS_TAG = 0xF0
DS_HDR = 0xB0
DS_HDRTAG = 0xB1

DOMAIN_BYTES = frozenset({DS_AD, DS_CT, DS_TAG, DS_HDR, DS_HDRTAG})

AEAD_ID_STRING = b"SYMFROG-512-AEAD-v1"
AEAD_VERSION_WORD = 0x0000000000000001


class LengthError(ValueError):
    """A key, nonce, or tag had the wrong length."""


class PhaseError(RuntimeError):
    """A duplex operation was invoked out of transcript order."""


class Phase(enum.Enum):
    INITIALIZED = 1
    ABSORBING_AD = 2
    STREAMING = 3
    FINALIZED = 4


def pad_rate_tail(tail: bytes) -> bytes:
    """Build the 64-byte rate mask for a final partial block.

    The tail (0..63 bytes) occupies the low positions, 0x80 is XORed at
    the position just past it, and 0x01 into the last rate byte. For a
    63-byte tail both pad bytes land on index 63 (0x80 ^ 0x01 = 0x81).
    """
    if len(tail) >= RATE_BYTES:
        raise ValueError(f"tail must be shorter than {RATE_BYTES} bytes")
    mask = bytearray(RATE_BYTES)
    mask[: len(tail)] = tail
    mask[len(tail)] ^= 0x80
    mask[RATE_BYTES - 1] ^= 0x01
    return bytes(mask)


def output_transform(words: np.ndarray) -> bytes:
    """512-bit output block: rate/capacity mix plus a SplitMix64 finalizer.

    Pure read; the state is not advanced. Never exposes raw state lanes.
    """
    out = np.empty(8, dtype=np.uint64)
    _kernels.out_words(np.asarray(words, dtype=np.uint64), out)
    return out.astype("<u8", copy=False).tobytes()


def _blocks_view(data) -> np.ndarray:
    """View a 64-multiple byte buffer as an (n, 8) array of LE64 words."""
    return np.frombuffer(data, dtype="<u8").reshape(-1, 8)


class DuplexState:
    """Single-owner keyed duplex state over the 1024-bit permutation."""

    __slots__ = ("words", "phase")

    def __init__(self, words: np.ndarray, phase: Phase) -> None:
        self.words = words
        self.phase = phase

    @classmethod
    def init(cls, key: bytes, nonce: bytes) -> "DuplexState":
        """Key setup: load the key, XOR nonce and identifier, permute once.

        The key fills all 16 words, the nonce XORs into words 12..15, and
        the ASCII identifier "SYMFROG-512-AEAD-v1" (zero-padded to 24
        bytes) XORs into words 8..10 with the version word into word 11.
        """
        if len(key) != KEY_BYTES:
            raise LengthError(f"key must be {KEY_BYTES} bytes, got {len(key)}")
        if len(nonce) != NONCE_BYTES:
            raise LengthError(f"nonce must be {NONCE_BYTES} bytes, got {len(nonce)}")
        s = state_from_bytes(key)
        s[12:16] ^= np.frombuffer(nonce, dtype="<u8")
        ident = AEAD_ID_STRING + b"\x00" * (24 - len(AEAD_ID_STRING))
        s[8:11] ^= np.frombuffer(ident, dtype="<u8")
        s[11] ^= np.uint64(AEAD_VERSION_WORD)
        _kernels.permute24(s, ROUND_CONSTANTS)
        _count_calls(1)
        return cls(s, Phase.INITIALIZED)

    # -- internal steps -----------------------------------------------------

    def _absorb_full(self, data, ds: int) -> None:
        """Absorb a 64-multiple buffer block by block (rate XOR, ds, permute)."""
        blocks = _blocks_view(data)
        _kernels.absorb_blocks(
            self.words, blocks, np.uint64(ds), ROUND_CONSTANTS
        )
        _count_calls(blocks.shape[0])

    def _absorb_tail(self, tail: bytes, ds: int) -> None:
        """The final padded absorption step; always runs, even for b''."""
        mask = pad_rate_tail(tail)
        self.words[:8] ^= np.frombuffer(mask, dtype="<u8")
        self.words[15] ^= np.uint64(ds)
        _kernels.permute24(self.words, ROUND_CONSTANTS)
        _count_calls(1)

    def _require(self, *phases: Phase) -> None:
        if self.phase not in phases:
            raise PhaseError(
                f"operation not permitted in phase {self.phase.name}"
            )

    # -- public transcript operations ---------------------------------------

    def absorb(self, data: bytes, ds: int) -> None:
        """Absorb a whole message under one domain byte, with 10*1 padding.

        Full 64-byte blocks first, then always one final padded step with
        the residual tail (possibly empty). Permutation calls made:
        len(data) // 64 + 1. One-shot: valid only directly after init.
        """
        self._require(Phase.INITIALIZED)
        data = bytes(data)
        split = len(data) - (len(data) % RATE_BYTES)
        if split:
            self._absorb_full(data[:split], ds)
        self._absorb_tail(data[split:], ds)
        self.phase = Phase.ABSORBING_AD

    def duplex_encrypt(self, plaintext: bytes, ds: int = DS_CT) -> bytes:
        """Encrypt full 64-byte blocks: C = P xor Out(S), absorb C, permute.

        Only whole blocks; the final partial block goes through
        duplex_tail_encrypt.
        """
        self._require(Phase.ABSORBING_AD, Phase.STREAMING)
        if len(plaintext) % RATE_BYTES:
            raise ValueError("duplex_encrypt requires a multiple of 64 bytes")
        self.phase = Phase.STREAMING
        pt = _blocks_view(plaintext)
        ct = np.empty_like(pt)
        _kernels.encrypt_blocks(self.words, pt, ct, np.uint64(ds), ROUND_CONSTANTS)
        _count_calls(pt.shape[0])
        return ct.astype("<u8", copy=False).tobytes()

    def duplex_decrypt(self, ciphertext: bytes, ds: int = DS_CT) -> bytes:
        """Decrypt full blocks; the state absorbs ciphertext, mirroring encrypt."""
        self._require(Phase.ABSORBING_AD, Phase.STREAMING)
        if len(ciphertext) % RATE_BYTES:
            raise ValueError("duplex_decrypt requires a multiple of 64 bytes")
        self.phase = Phase.STREAMING
        ct = _blocks_view(ciphertext)
        pt = np.empty_like(ct)
        _kernels.decrypt_blocks(self.words, ct, pt, np.uint64(ds), ROUND_CONSTANTS)
        _count_calls(ct.shape[0])
        return pt.astype("<u8", copy=False).tobytes()

    def duplex_tail_encrypt(self, tail: bytes, ds: int = DS_CT) -> bytes:
        """Final partial block (0..63 bytes): XOR keystream, absorb padded tail."""
        self._require(Phase.ABSORBING_AD, Phase.STREAMING)
        if len(tail) >= RATE_BYTES:
            raise ValueError("tail must be shorter than 64 bytes")
        if tail:
            z = self.output_block()
            ct_tail = bytes(a ^ b for a, b in zip(tail, z))
        else:
            ct_tail = b""
        self._absorb_tail(ct_tail, ds)
        self.phase = Phase.STREAMING
        return ct_tail

    def duplex_tail_decrypt(self, tail: bytes, ds: int = DS_CT) -> bytes:
        self._require(Phase.ABSORBING_AD, Phase.STREAMING)
        if len(tail) >= RATE_BYTES:
            raise ValueError("tail must be shorter than 64 bytes")
        if tail:
            z = self.output_block()
            pt_tail = bytes(a ^ b for a, b in zip(tail, z))
        else:
            pt_tail = b""
        self._absorb_tail(tail, ds)
        self.phase = Phase.STREAMING
        return pt_tail

    def output_block(self) -> bytes:
        """Read one 64-byte output block without advancing the state."""
        return output_transform(self.words)

    def finalize_tag(self, ds: int, n: int = TAG_BYTES) -> bytes:
        """Domain-separate, permute once, return the first n output bytes."""
        self._require(Phase.ABSORBING_AD, Phase.STREAMING)
        self.words[15] ^= np.uint64(ds)
        _kernels.permute24(self.words, ROUND_CONSTANTS)
        _count_calls(1)
        self.phase = Phase.FINALIZED
        return self.output_block()[:n]
