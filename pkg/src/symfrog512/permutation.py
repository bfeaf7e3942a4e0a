"""The P1024-v2 permutation: a 1024-bit state of 16 little-endian 64-bit words.

Words 0..7 are the rate, words 8..15 the capacity. A round applies five
layers in order: AddRoundConstants, Mixer, Chi, Kick, RotateShuffle. The
full permutation is 24 rounds. The hot path is compiled (``_kernels``);
the individual layer functions here are plain Python, kept for inspection
and testing, and an exact inverse is provided for bijectivity checks.
"""

from __future__ import annotations

import hashlib

import numpy as np

from . import _kernels

STATE_BYTES = 128
STATE_WORDS = 16
RATE_BYTES = 64
ROUNDS = 24

KICK_CONSTANT = 0x9E3779B97F4A7C15
RC_SEED_STRING = b"SymFrog-rc-v1"

_MASK = 0xFFFFFFFFFFFFFFFF

# word shuffle: new[i] = rotated[PI[i]]
PI = (0, 13, 10, 7, 4, 1, 14, 11, 8, 5, 2, 15, 12, 9, 6, 3)
_PI_INV = tuple(PI.index(i) for i in range(16))


def _rotl(x: int, n: int) -> int:
    return ((x << n) | (x >> (64 - n))) & _MASK


def _rotr(x: int, n: int) -> int:
    return ((x >> n) | (x << (64 - n))) & _MASK


# ---------------------------------------------------------------------------
# state (de)serialization
# ---------------------------------------------------------------------------

def state_from_bytes(data: bytes) -> np.ndarray:
    """Parse 128 bytes into 16 little-endian uint64 state words."""
    if len(data) != STATE_BYTES:
        raise ValueError(f"state must be {STATE_BYTES} bytes, got {len(data)}")
    return np.frombuffer(data, dtype="<u8").astype(np.uint64)


def state_to_bytes(words: np.ndarray) -> bytes:
    """Serialize 16 state words to 128 little-endian bytes."""
    arr = np.asarray(words, dtype=np.uint64)
    if arr.shape != (STATE_WORDS,):
        raise ValueError("state must be 16 words")
    return arr.astype("<u8", copy=False).tobytes()


def zero_state() -> np.ndarray:
    return np.zeros(STATE_WORDS, dtype=np.uint64)


# ---------------------------------------------------------------------------
# round constants
# ---------------------------------------------------------------------------

def derive_round_constants() -> np.ndarray:
    """Derive the 24x8 round-constant table from SHAKE256.

    Row r is SHAKE256("SymFrog-rc-v1" || LE32(r))[0..63] parsed as 8
    little-endian 64-bit words. Deterministic; derived once at import and
    cached in ROUND_CONSTANTS.
    """
    rc = np.empty((ROUNDS, 8), dtype=np.uint64)
    for r in range(ROUNDS):
        raw = hashlib.shake_256(RC_SEED_STRING + r.to_bytes(4, "little")).digest(64)
        rc[r] = np.frombuffer(raw, dtype="<u8")
    return rc


ROUND_CONSTANTS = derive_round_constants()
ROUND_CONSTANTS.setflags(write=False)


# ---------------------------------------------------------------------------
# permutation call accounting
# ---------------------------------------------------------------------------

_full_permutation_calls = 0


def permutation_call_count() -> int:
    """Cumulative count of full 24-round permutation applications.

    Every library path that advances a state by the full permutation
    (duplex absorb/stream/finalize, hashing, the functional ``permute``)
    increments this, so tests can verify transcript call accounting.
    Exact only under single-threaded use.
    """
    return _full_permutation_calls


def _count_calls(n: int) -> None:
    global _full_permutation_calls
    _full_permutation_calls += n


# ---------------------------------------------------------------------------
# round layers (reference form, plain Python ints)
# ---------------------------------------------------------------------------

def chi4(x0: int, x1: int, x2: int, x3: int) -> tuple[int, int, int, int]:
    """Nonlinear chi on a 4-word group, updates applied sequentially.

    x2's update reads the already-updated x0, and x3's reads the updated
    x0 and x1. The sequential form is triangular and therefore invertible;
    a variant that read all four old values would not be a bijection.
    """
    x0 ^= ~x1 & x2 & _MASK
    x1 ^= ~x2 & x3 & _MASK
    x2 ^= ~x3 & x0 & _MASK
    x3 ^= ~x0 & x1 & _MASK
    return x0 & _MASK, x1 & _MASK, x2 & _MASK, x3 & _MASK


def _chi4_inverse(x0: int, x1: int, x2: int, x3: int) -> tuple[int, int, int, int]:
    x3 ^= ~x0 & x1 & _MASK
    x2 ^= ~x3 & x0 & _MASK
    x1 ^= ~x2 & x3 & _MASK
    x0 ^= ~x1 & x2 & _MASK
    return x0 & _MASK, x1 & _MASK, x2 & _MASK, x3 & _MASK


def kick(state: np.ndarray) -> np.ndarray:
    """Data-dependent multiplicative mixing, two phases over all words."""
    s = [int(w) for w in np.asarray(state, dtype=np.uint64)]
    for i in range(0, 16, 2):
        s[i + 1] ^= (s[i] * (s[i] | 1)) & _MASK
    for i in range(1, 16, 2):
        k = (s[i] * ((s[i] | 1) ^ KICK_CONSTANT)) & _MASK
        s[(i + 1) % 16] ^= _rotl(k, 23)
    return np.array(s, dtype=np.uint64)


def rotate_shuffle(state: np.ndarray) -> np.ndarray:
    """Rotate each word by its original index parity (19/61), then shuffle."""
    s = [int(w) for w in np.asarray(state, dtype=np.uint64)]
    rot = [_rotl(s[i], 19 if i % 2 == 0 else 61) for i in range(16)]
    return np.array([rot[PI[i]] for i in range(16)], dtype=np.uint64)


# ---------------------------------------------------------------------------
# rounds and the permutation
# ---------------------------------------------------------------------------

def apply_round(state: np.ndarray, r: int) -> np.ndarray:
    """One round (AddRC, Mixer, Chi, Kick, RotateShuffle) for 0 <= r < 24."""
    if not 0 <= r < ROUNDS:
        raise ValueError(f"round index out of range: {r}")
    s = np.array(state, dtype=np.uint64)
    _kernels.apply_rounds(s, ROUND_CONSTANTS, r, r + 1)
    return s


def permute(state: np.ndarray) -> np.ndarray:
    """The full 24-round permutation. Pure: returns a new state array."""
    s = np.array(state, dtype=np.uint64)
    _kernels.permute24(s, ROUND_CONSTANTS)
    _count_calls(1)
    return s


def permute_rounds(state: np.ndarray, rounds: int) -> np.ndarray:
    """Reduced-round variant (diagnostics only; the AEAD always uses 24)."""
    if not 0 <= rounds <= ROUNDS:
        raise ValueError(f"round count out of range: {rounds}")
    s = np.array(state, dtype=np.uint64)
    _kernels.apply_rounds(s, ROUND_CONSTANTS, 0, rounds)
    return s


def inverse_round(state: np.ndarray, r: int) -> np.ndarray:
    """Exact inverse of apply_round; layers undone in reverse order."""
    if not 0 <= r < ROUNDS:
        raise ValueError(f"round index out of range: {r}")
    s = [int(w) for w in np.asarray(state, dtype=np.uint64)]

    # undo rotate+shuffle: unshuffle, then rotate right by the same offsets
    rot = [s[_PI_INV[i]] for i in range(16)]
    s = [_rotr(rot[i], 19 if i % 2 == 0 else 61) for i in range(16)]

    # undo kick: phase B first (its odd-word sources are still intact),
    # which restores the even words phase A reads from
    for i in range(1, 16, 2):
        k = (s[i] * ((s[i] | 1) ^ KICK_CONSTANT)) & _MASK
        s[(i + 1) % 16] ^= _rotl(k, 23)
    for i in range(0, 16, 2):
        s[i + 1] ^= (s[i] * (s[i] | 1)) & _MASK

    for g in range(0, 16, 4):
        s[g], s[g + 1], s[g + 2], s[g + 3] = _chi4_inverse(
            s[g], s[g + 1], s[g + 2], s[g + 3]
        )

    for i in range(8):
        s[i] ^= s[i + 8]
    rc = ROUND_CONSTANTS[r]
    for j in range(8):
        s[8 + j] ^= int(rc[j])
    return np.array(s, dtype=np.uint64)


def inverse_permute(state: np.ndarray) -> np.ndarray:
    """Exact inverse of permute (testing utility, not performance-tuned)."""
    s = np.asarray(state, dtype=np.uint64)
    for r in reversed(range(ROUNDS)):
        s = inverse_round(s, r)
    return s
