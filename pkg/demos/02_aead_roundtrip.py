#!/usr/bin/env python3
"""AEAD in memory: encrypt, decrypt, tamper detection, and the nonce-reuse
hazard made visible.

The mode takes a 128-byte key, a 32-byte nonce, optional associated data,
and produces ciphertext the same length as the plaintext plus a 32-byte
tag.
"""

import secrets

from symfrog512 import AeadParams, decrypt_bytes, encrypt_bytes

key = secrets.token_bytes(128)
nonce = secrets.token_bytes(32)
params = AeadParams(key=key, nonce=nonce, ad=b"file metadata, authenticated")

plaintext = b"the frog jumps over the pond at midnight"
ciphertext, tag = encrypt_bytes(params, plaintext)
print(f"plaintext : {len(plaintext)} bytes")
print(f"ciphertext: {len(ciphertext)} bytes (same length)")
print(f"tag       : {tag.hex()}")

recovered = decrypt_bytes(params, ciphertext, tag)
print(f"decrypts back: {recovered == plaintext}")

print("\n== tamper detection ==")
tampered = bytearray(ciphertext)
tampered[5] ^= 0x01
print(f"one ciphertext bit flipped -> {decrypt_bytes(params, bytes(tampered), tag)}")
wrong_ad = AeadParams(key=key, nonce=nonce, ad=b"different metadata")
print(f"different associated data  -> {decrypt_bytes(wrong_ad, ciphertext, tag)}")

print("\n== why nonces must never repeat ==")
p1 = b"pay alice 100 dollars"
p2 = b"pay mallory 1e6 bucks"
c1, _ = encrypt_bytes(AeadParams(key=key, nonce=nonce), p1)
c2, _ = encrypt_bytes(AeadParams(key=key, nonce=nonce), p2)
xor_c = bytes(a ^ b for a, b in zip(c1, c2))
xor_p = bytes(a ^ b for a, b in zip(p1, p2))
print(f"C1 xor C2 == P1 xor P2: {xor_c == xor_p}")
print("reusing a (key, nonce) pair hands an attacker the XOR of plaintexts;")
print("the file container stores the nonce in the header to avoid this.")
