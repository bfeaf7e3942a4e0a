"""SymFrog-512: duplex-sponge AEAD, FrogHash-512, and an encrypted file
container, all built on the 1024-bit P1024-v2 permutation.

The permutation state is 16 little-endian 64-bit words (512-bit rate,
512-bit capacity); the AEAD takes a 1024-bit key, a 256-bit nonce, and
produces a 256-bit tag. Keys may be raw or derived from a passphrase via
Argon2id. See the README for the file format and CLI.
"""

from .aead import (
    AeadParams,
    StreamVerdict,
    constant_time_eq,
    decrypt_bytes,
    decrypt_stream,
    encrypt_bytes,
    encrypt_stream,
)
from .container import (
    FLAG_KEY_DERIVED,
    HEADER_BYTES,
    OVERHEAD_BYTES,
    ContainerFormatError,
    Header,
    KeySource,
    Verdict,
    compute_header_tag,
    decrypt_file,
    encrypt_file,
)
from .diagnostics import (
    AvalancheReport,
    BenchReport,
    TestAllResult,
    run_avalanche,
    run_benchmark,
    run_test_all,
)
from .duplex import (
    DS_AD,
    DS_CT,
    DS_HDR,
    DS_HDRTAG,
    DS_TAG,
    DuplexState,
    LengthError,
    PhaseError,
    output_transform,
    pad_rate_tail,
)
from .froghash import FrogHash512, froghash, froghash_extended
from .kdf import (
    MODERATE,
    SENSITIVE,
    KdfError,
    KdfProfile,
    RngError,
    derive_key,
    generate_nonce,
    generate_salt,
)
from .permutation import (
    ROUND_CONSTANTS,
    ROUNDS,
    apply_round,
    chi4,
    derive_round_constants,
    inverse_permute,
    inverse_round,
    kick,
    permutation_call_count,
    permute,
    permute_rounds,
    rotate_shuffle,
    state_from_bytes,
    state_to_bytes,
)

__version__ = "1.0.0"
