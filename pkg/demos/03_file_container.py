#!/usr/bin/env python3
"""The .syf file container: passphrase encryption, header inspection,
early rejection of a wrong passphrase.

Layout: 152-byte header | ciphertext | 32-byte tag. The header carries
its own keyed tag, checked before any ciphertext is read. Passphrase
mode runs Argon2id (MODERATE profile: 3 passes, 256 MiB), so each call
below takes about a second on purpose.
"""

import tempfile
from pathlib import Path

from symfrog512 import Header, KeySource, Verdict, decrypt_file, encrypt_file

workdir = Path(tempfile.mkdtemp(prefix="symfrog-demo-"))
secret = workdir / "diary.txt"
secret.write_text("dear diary, the pond was lovely today\n")

print("== encrypting with a passphrase ==")
encrypted = workdir / "diary.syf"
encrypt_file(secret, encrypted, KeySource(passphrase="correct horse"))
print(f"{secret.stat().st_size} plaintext bytes -> {encrypted.stat().st_size} "
      f"container bytes (constant 184-byte overhead)")

print("\n== header fields (everything an attacker can see) ==")
header = Header.parse(encrypted.read_bytes()[:152])
print(f"flags      : {header.flags:#x} (bit 0 = passphrase-derived key)")
print(f"salt       : {header.salt.hex()[:32]}...")
print(f"nonce      : {header.nonce.hex()[:32]}...")
print(f"ct_len     : {header.ct_len}")
print(f"header_tag : {header.header_tag.hex()[:32]}...")

print("\n== decrypting ==")
restored = workdir / "diary.restored.txt"
verdict = decrypt_file(encrypted, restored, KeySource(passphrase="correct horse"))
print(f"verdict: {verdict}")
print(f"bytes match: {restored.read_bytes() == secret.read_bytes()}")

print("\n== wrong passphrase: early reject ==")
verdict = decrypt_file(encrypted, workdir / "nope.txt", KeySource(passphrase="wrong"))
print(f"verdict: {verdict}")
print(f"no output file created: {not (workdir / 'nope.txt').exists()}")
print("(the header tag fails before a single ciphertext byte is read)")
assert verdict is Verdict.HEADER_AUTH_FAIL

print(f"\ndemo files left in {workdir}")
