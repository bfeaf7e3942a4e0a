#!/usr/bin/env python3
"""A tour of the P1024-v2 permutation: state layout, rounds, bijectivity.

The state is 16 little-endian 64-bit words (128 bytes): words 0..7 are
the rate, words 8..15 the capacity. Run this script directly; it prints
as it goes.
"""

import numpy as np

from symfrog512 import (
    ROUND_CONSTANTS,
    apply_round,
    inverse_permute,
    permute,
    state_from_bytes,
    state_to_bytes,
)

print("== state serialization ==")
raw = bytes(range(128))
state = state_from_bytes(raw)
print(f"first word (LE of bytes 00..07): {int(state[0]):#018x}")
print(f"roundtrips exactly: {state_to_bytes(state) == raw}")

print("\n== round constants (derived from SHAKE256, cached at import) ==")
print(f"table shape: {ROUND_CONSTANTS.shape}")
print(f"rc[0][0] = {int(ROUND_CONSTANTS[0][0]):#018x}")
print(f"rc[23][7] = {int(ROUND_CONSTANTS[23][7]):#018x}")

print("\n== one round vs the full permutation ==")
zero = state_from_bytes(b"\x00" * 128)
one_round = apply_round(zero, 0)
full = permute(zero)
print(f"round 0 on the zero state, word 0: {int(one_round[0]):#018x}")
print(f"24 rounds on the zero state, word 0: {int(full[0]):#018x}")

print("\n== bijectivity ==")
rng = np.random.default_rng(42)
s = np.frombuffer(rng.bytes(128), dtype="<u8").astype(np.uint64)
roundtrip = inverse_permute(permute(s))
print(f"inverse_permute(permute(s)) == s: {np.array_equal(roundtrip, s)}")

print("\n== diffusion teaser ==")
flipped = s.copy()
flipped[0] ^= np.uint64(1)
for rounds in (1, 2, 4, 24):
    a, b = s.copy(), flipped.copy()
    for r in range(rounds):
        a, b = apply_round(a, r), apply_round(b, r)
    dist = sum(bin(int(x) ^ int(y)).count("1") for x, y in zip(a, b))
    print(f"after {rounds:>2} round(s): {dist:>4} of 1024 bits differ")
print("(the random-like expectation is 512; see 05_avalanche.py)")
