"""Passphrase key derivation: Argon2id v1.3 with two fixed cost profiles.

MODERATE (3 passes, 256 MiB) is the default; SENSITIVE (4 passes, 1 GiB)
is for high-value keys and is deliberately slow. Both run single-lane.
A profile is never silently downgraded: if its memory cannot be
allocated, derivation fails.
"""

from __future__ import annotations

import secrets
import warnings
from dataclasses import dataclass

from cryptography.exceptions import InternalError
from cryptography.hazmat.primitives.kdf.argon2 import Argon2id

KEY_BYTES = 128
SALT_BYTES = 32


class KdfError(Exception):
    """Key derivation failed (typically: memory limit not allocatable)."""


class RngError(Exception):
    """The operating system entropy source is unavailable."""


@dataclass(frozen=True)
class KdfProfile:
    """Argon2id cost parameters. mem_limit is in bytes."""

    name: str
    ops_limit: int
    mem_limit: int


MODERATE = KdfProfile("moderate", ops_limit=3, mem_limit=256 * 1024 * 1024)
SENSITIVE = KdfProfile("sensitive", ops_limit=4, mem_limit=1024 * 1024 * 1024)


def derive_key(passphrase, salt: bytes, profile: KdfProfile = MODERATE) -> bytes:
    """Derive the 128-byte key from a passphrase with Argon2id v1.3.

    Deterministic for fixed (passphrase, salt, profile). An empty
    passphrase is permitted but warned about.
    """
    if isinstance(passphrase, str):
        passphrase = passphrase.encode("utf-8")
    if len(salt) != SALT_BYTES:
        raise ValueError(f"salt must be {SALT_BYTES} bytes, got {len(salt)}")
    if not passphrase:
        warnings.warn("deriving a key from an empty passphrase", stacklevel=2)
    kdf = Argon2id(
        salt=salt,
        length=KEY_BYTES,
        iterations=profile.ops_limit,
        lanes=1,
        memory_cost=profile.mem_limit // 1024,
    )
    try:
        return kdf.derive(passphrase)
    except (MemoryError, InternalError) as exc:
        raise KdfError(
            f"Argon2id failed for profile {profile.name!r} "
            f"({profile.mem_limit // (1024 * 1024)} MiB): {exc}"
        ) from exc


def generate_salt() -> bytes:
    """32 fresh bytes from the OS CSPRNG. Never falls back to weak randomness."""
    try:
        return secrets.token_bytes(SALT_BYTES)
    except NotImplementedError as exc:
        raise RngError("no OS entropy source available") from exc


def generate_nonce() -> bytes:
    """32 fresh random bytes for an AEAD nonce."""
    try:
        return secrets.token_bytes(32)
    except NotImplementedError as exc:
        raise RngError("no OS entropy source available") from exc
