#!/usr/bin/env python3
"""FrogHash-512: the sponge hash that shares the AEAD's permutation.

64-byte digests, incremental hashing, and an extended squeeze for longer
output.
"""

import io

from symfrog512 import FrogHash512, froghash, froghash_extended

print("== one-shot digests ==")
print(f"froghash(b'')    = {froghash(b'').hex()}")
print(f"froghash(b'abc') = {froghash(b'abc').hex()}")

print("\n== one bit in, half the digest out ==")
d1 = froghash(b"the frog sat on a log")
d2 = froghash(b"the frog sat on a lof")  # one low bit differs
flipped = sum(bin(a ^ b).count("1") for a, b in zip(d1, d2))
print(f"{flipped} of 512 digest bits flipped")

print("\n== incremental hashing ==")
h = FrogHash512()
for piece in (b"the frog ", b"sat on ", b"a log"):
    h.update(piece)
print(f"piecewise == one-shot: {h.digest() == d1}")
print(f"stream source too    : {froghash(io.BytesIO(b'the frog sat on a log')) == d1}")

print("\n== extended output ==")
ext = froghash_extended(b"seed material", 160)
base = froghash(b"seed material")
print(f"first 64 bytes equal the plain digest: {ext[:64] == base}")
print(f"160-byte squeeze: {ext.hex()[:48]}...")
