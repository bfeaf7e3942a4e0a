"""Empirical diagnostics: avalanche measurement, benchmarks, regression vectors.

These reproduce the project's standing experiments: per-round diffusion
of the permutation, raw permutation latency and AEAD core throughput,
and the fixed-length encrypt/decrypt regression artifacts with a SHA-256
manifest.
"""

from __future__ import annotations

import hashlib
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels, aead, container
from .container import KeySource
from .froghash import froghash, froghash_extended
from .permutation import ROUND_CONSTANTS, ROUNDS

AVALANCHE_TRIALS = 400
AVALANCHE_SEED = 0x5F0C_51DE
PERM_BENCH_ITERS = 200_000
BENCH_BUFFER_MIB = 64

# fixed, published inputs for the regression vectors: key bytes 0x00..0x7F,
# per-length nonce derived from FrogHash so no (key, nonce) pair repeats
TEST_ALL_LENGTHS = (
    0, 1, 2, 7, 8, 15, 16, 63, 64, 65, 127, 128, 129,
    4096, 65536, 65549, 1048576, 1048583,
)
TEST_ALL_KEY = bytes(range(128))


def regression_nonce(length: int) -> bytes:
    return froghash(b"SYMFROG-TESTALL-NONCE" + length.to_bytes(8, "little"))[:32]


def regression_plaintext(length: int) -> bytes:
    """Deterministic pseudorandom plaintext for a regression vector."""
    if length == 0:
        return b""
    return froghash_extended(length.to_bytes(8, "little"), length)


# ---------------------------------------------------------------------------
# avalanche
# ---------------------------------------------------------------------------

@dataclass
class AvalancheReport:
    """Hamming-distance statistics per round count over T trials."""

    trials: int
    seed: int
    rounds: list[int]
    mean: list[float]
    min: list[int]
    max: list[int]
    stddev: list[float]

    def to_csv(self) -> str:
        lines = ["round,mean,min,max,stddev"]
        for i, r in enumerate(self.rounds):
            lines.append(
                f"{r},{self.mean[i]:.4f},{self.min[i]},{self.max[i]},"
                f"{self.stddev[i]:.4f}"
            )
        return "\n".join(lines) + "\n"


def run_avalanche(
    trials: int = AVALANCHE_TRIALS,
    max_rounds: int = ROUNDS,
    seed: int = AVALANCHE_SEED,
) -> AvalancheReport:
    """Measure how a single-bit state difference spreads per round.

    Each trial samples a random 1024-bit state, flips one random bit, and
    rounds both states forward, recording the Hamming distance after each
    round count. Trial inputs are derived from (seed, trial index), so
    results are deterministic and independent of any execution order or
    trial partitioning.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dist = np.empty((trials, max_rounds), dtype=np.uint64)
    row = np.empty(max_rounds, dtype=np.uint64)
    for t in range(trials):
        rng = np.random.default_rng((seed, t))
        words = np.frombuffer(rng.bytes(128), dtype="<u8").astype(np.uint64)
        pos = int(rng.integers(0, 1024))
        flipped = words.copy()
        flipped[pos // 64] ^= np.uint64(1 << (pos % 64))
        _kernels.avalanche_distances(words, flipped, ROUND_CONSTANTS, row)
        dist[t] = row
    return AvalancheReport(
        trials=trials,
        seed=seed,
        rounds=list(range(1, max_rounds + 1)),
        mean=[float(x) for x in dist.mean(axis=0)],
        min=[int(x) for x in dist.min(axis=0)],
        max=[int(x) for x in dist.max(axis=0)],
        stddev=[float(x) for x in dist.std(axis=0)],
    )


# ---------------------------------------------------------------------------
# benchmarks
# ---------------------------------------------------------------------------

@dataclass
class BenchReport:
    perm_ns_per_call: float
    perm_iters: int
    aead_mib_per_s: float
    buffer_mib: int
    repetitions: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


class _NullSink:
    def write(self, data) -> int:
        return len(data)


def run_benchmark(
    perm_iters: int = PERM_BENCH_ITERS,
    buffer_mib: int = BENCH_BUFFER_MIB,
    repetitions: int = 5,
) -> BenchReport:
    """Time the raw permutation and the AEAD core encrypt path.

    Permutation latency: a tight loop of sequential calls on a live
    state. Throughput: encrypting an in-memory buffer with a fixed key
    and nonce, no file I/O and no KDF. Both take the median of
    `repetitions` runs on a monotonic clock. Single-threaded by design.
    """
    s = np.frombuffer(bytes(range(128)), dtype="<u8").astype(np.uint64)
    _kernels.bench_permutations(s, ROUND_CONSTANTS, 1000)  # warm-up / JIT
    perm_times = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        _kernels.bench_permutations(s, ROUND_CONSTANTS, perm_iters)
        perm_times.append((time.perf_counter_ns() - t0) / perm_iters)
    perm_ns = statistics.median(perm_times)

    params = aead.AeadParams(key=TEST_ALL_KEY, nonce=regression_nonce(0))
    buf = bytes(buffer_mib * 1024 * 1024)
    aead.encrypt_stream(params, io.BytesIO(buf[: 1024 * 1024]), _NullSink())
    rates = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        aead.encrypt_stream(params, io.BytesIO(buf), _NullSink())
        dt_s = (time.perf_counter_ns() - t0) / 1e9
        rates.append(buffer_mib / dt_s)
    return BenchReport(
        perm_ns_per_call=perm_ns,
        perm_iters=perm_iters,
        aead_mib_per_s=statistics.median(rates),
        buffer_mib=buffer_mib,
        repetitions=repetitions,
    )


# ---------------------------------------------------------------------------
# regression vectors
# ---------------------------------------------------------------------------

@dataclass
class TestAllRecord:
    length: int
    enc_size_ok: bool
    roundtrip_ok: bool


@dataclass
class TestAllResult:
    ok: bool
    failures: list[int]
    out_dir: Path
    manifest_path: Path
    records: list[TestAllRecord] = field(default_factory=list)


def run_test_all(out_dir) -> TestAllResult:
    """Generate in_L.bin / enc_L.syf / dec_L.bin for every regression length.

    Plaintexts are deterministic (FrogHash-512 of LE64(L), squeezed to L
    bytes), the key is the fixed test key, and nonces derive from the
    length, so the artifacts and their SHA-256 manifest reproduce exactly
    run to run. Fails if any roundtrip differs or any size is off.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    key_source = KeySource(key=TEST_ALL_KEY)
    records = []
    failures = []
    manifest_entries = []
    for length in TEST_ALL_LENGTHS:
        in_path = out_dir / f"in_{length}.bin"
        enc_path = out_dir / f"enc_{length}.syf"
        dec_path = out_dir / f"dec_{length}.bin"
        plaintext = regression_plaintext(length)
        in_path.write_bytes(plaintext)
        container.encrypt_file(
            in_path, enc_path, key_source, nonce=regression_nonce(length)
        )
        size_ok = enc_path.stat().st_size == length + container.OVERHEAD_BYTES
        verdict = container.decrypt_file(enc_path, dec_path, key_source)
        roundtrip_ok = (
            verdict is container.Verdict.OK and dec_path.read_bytes() == plaintext
        )
        records.append(TestAllRecord(length, size_ok, roundtrip_ok))
        if not (size_ok and roundtrip_ok):
            failures.append(length)
        for p in (in_path, enc_path, dec_path):
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
            manifest_entries.append(f"{digest}  {p.name}")
    manifest_path = out_dir / "manifest.sha256"
    manifest_path.write_text("\n".join(manifest_entries) + "\n")
    return TestAllResult(
        ok=not failures,
        failures=failures,
        out_dir=out_dir,
        manifest_path=manifest_path,
        records=records,
    )
