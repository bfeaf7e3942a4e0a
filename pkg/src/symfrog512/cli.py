"""Command-line interface: enc, dec, hash, plus --test-all and --benchmark.

Exit codes: 0 success, 1 authentication/format rejection, 2 usage error,
3 I/O error, 4 KDF or RNG failure. Error text goes to stderr; `hash`
output and benchmark JSON go to stdout for machine parsing. --quiet (-q)
suppresses non-error chatter; SYMFROG_NO_PROGRESS=1 disables progress
reporting.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import container, diagnostics
from .container import KeySource, Verdict
from .froghash import froghash
from .kdf import MODERATE, SENSITIVE, KdfError, RngError

USAGE = """\
symfrog512 --help
symfrog512 --test-all [out_dir]
symfrog512 --benchmark

Encrypt (AEAD):
  symfrog512 enc <in> <out> [--pass <pw> | --key-hex <hex1024>] [--ad <hex>]
                 [--nonce-hex <hex256>] [--paranoid] [--quiet|-q]

Decrypt (AEAD):
  symfrog512 dec <in> <out> [--pass <pw> | --key-hex <hex1024>] [--ad <hex>]
                 [--paranoid] [--quiet|-q]

Hash (FrogHash-512):
  symfrog512 hash <in> [--out <file>] [--quiet|-q]

Notes:
  --paranoid selects the Argon2id SENSITIVE profile (slow, 1 GiB memory);
      the default profile is MODERATE (256 MiB).
  --quiet (or -q) suppresses non-error output.
  --ad is additional authenticated data, hex encoded; it binds the header
      and ciphertext and must match at decryption.
  --nonce-hex is optional; if omitted, a random 256-bit nonce is generated.
  --pass - (a single dash) prompts for the passphrase instead of taking it
      from the command line.

Exit codes: 0 ok, 1 authentication/format rejection, 2 usage, 3 I/O,
4 KDF/RNG failure.
"""

EXIT_OK = 0
EXIT_AUTH = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_KDF = 4


class UsageError(Exception):
    pass


def _hex_bytes(value: str, what: str, expected_len: int | None = None) -> bytes:
    try:
        data = bytes.fromhex(value)
    except ValueError:
        raise UsageError(f"{what} must be a hex string") from None
    if expected_len is not None and len(data) != expected_len:
        raise UsageError(
            f"{what} must decode to exactly {expected_len} bytes, "
            f"got {len(data)}"
        )
    return data


def _key_source(args) -> KeySource:
    profile = SENSITIVE if args.paranoid else MODERATE
    if args.key_hex is not None:
        return KeySource(key=_hex_bytes(args.key_hex, "--key-hex", 128))
    pw = args.passphrase
    if pw == "-":
        import getpass

        pw = getpass.getpass("Passphrase: ")
    return KeySource(passphrase=pw, profile=profile)


def _progress_printer(label: str):
    last = [-1]

    def cb(done: int, total: int) -> None:
        if total < 32 * 1024 * 1024:
            return
        pct = done * 100 // total
        if pct >= last[0] + 25:
            last[0] = pct
            print(f"{label}: {pct}%", file=sys.stderr)

    return cb


def _maybe_progress(args, label: str):
    if args.quiet or os.environ.get("SYMFROG_NO_PROGRESS") == "1":
        return None
    return _progress_printer(label)


def _subparser(name: str, with_nonce: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"symfrog512 {name}", add_help=False)
    p.add_argument("input")
    p.add_argument("output")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pass", dest="passphrase")
    group.add_argument("--key-hex")
    p.add_argument("--ad", default="")
    if with_nonce:
        p.add_argument("--nonce-hex")
    p.add_argument("--paranoid", action="store_true")
    p.add_argument("--quiet", "-q", action="store_true")
    return p


def _cmd_enc(rest: list[str]) -> int:
    args = _subparser("enc", with_nonce=True).parse_args(rest)
    ad = _hex_bytes(args.ad, "--ad") if args.ad else b""
    nonce = _hex_bytes(args.nonce_hex, "--nonce-hex", 32) if args.nonce_hex else None
    container.encrypt_file(
        args.input,
        args.output,
        _key_source(args),
        ad=ad,
        nonce=nonce,
        progress=_maybe_progress(args, "encrypting"),
    )
    if not args.quiet:
        size = os.stat(args.output).st_size
        print(f"encrypted {args.input} -> {args.output} ({size} bytes)")
    return EXIT_OK


def _cmd_dec(rest: list[str]) -> int:
    args = _subparser("dec", with_nonce=False).parse_args(rest)
    ad = _hex_bytes(args.ad, "--ad") if args.ad else b""
    verdict = container.decrypt_file(
        args.input,
        args.output,
        _key_source(args),
        ad=ad,
        progress=_maybe_progress(args, "decrypting"),
    )
    if verdict is Verdict.OK:
        if not args.quiet:
            print(f"decrypted {args.input} -> {args.output}")
        return EXIT_OK
    if verdict is Verdict.HEADER_AUTH_FAIL:
        print(
            "error: header authentication failed "
            "(wrong key/passphrase, wrong --ad, or tampered header)",
            file=sys.stderr,
        )
    elif verdict is Verdict.BODY_AUTH_FAIL:
        print(
            "error: body authentication failed (ciphertext or tag tampered)",
            file=sys.stderr,
        )
    else:
        print(
            "error: format error (not a SymFrog-512 container, or truncated)",
            file=sys.stderr,
        )
    return EXIT_AUTH


def _cmd_hash(rest: list[str]) -> int:
    p = argparse.ArgumentParser(prog="symfrog512 hash", add_help=False)
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--quiet", "-q", action="store_true")
    args = p.parse_args(rest)
    with open(args.input, "rb") as f:
        digest = froghash(f)
    line = f"{digest.hex()}  {args.input}"
    print(line)
    if args.out:
        with open(args.out, "w") as f:
            f.write(line + "\n")
    return EXIT_OK


def _cmd_test_all(rest: list[str]) -> int:
    quiet = "--quiet" in rest or "-q" in rest
    rest = [a for a in rest if a not in ("--quiet", "-q")]
    out_dir = rest[0] if rest else "symfrog512-testall"
    if len(rest) > 1:
        raise UsageError("--test-all takes at most one output directory")
    result = diagnostics.run_test_all(out_dir)
    if not quiet:
        for rec in result.records:
            status = "ok" if rec.enc_size_ok and rec.roundtrip_ok else "FAIL"
            print(f"len {rec.length:>8}: {status}")
        print(f"manifest: {result.manifest_path}")
    if result.ok:
        if not quiet:
            print("test-all: all lengths passed")
        return EXIT_OK
    print(f"test-all FAILED for lengths: {result.failures}", file=sys.stderr)
    return EXIT_AUTH


def _cmd_benchmark(rest: list[str]) -> int:
    if rest:
        raise UsageError("--benchmark takes no arguments")
    report = diagnostics.run_benchmark()
    print(
        f"permutation: {report.perm_ns_per_call:.1f} ns/call "
        f"({report.perm_iters} iterations)",
        file=sys.stderr,
    )
    print(
        f"AEAD core: {report.aead_mib_per_s:.1f} MiB/s "
        f"({report.buffer_mib} MiB buffer, no I/O, no KDF)",
        file=sys.stderr,
    )
    print(report.to_json())
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if not argv:
        print(USAGE, file=sys.stderr)
        return EXIT_USAGE
    cmd, rest = argv[0], argv[1:]
    try:
        if cmd in ("--help", "-h", "help"):
            print(USAGE)
            return EXIT_OK
        if cmd == "--test-all":
            return _cmd_test_all(rest)
        if cmd == "--benchmark":
            return _cmd_benchmark(rest)
        if cmd == "enc":
            return _cmd_enc(rest)
        if cmd == "dec":
            return _cmd_dec(rest)
        if cmd == "hash":
            return _cmd_hash(rest)
        print(f"error: unknown command {cmd!r}", file=sys.stderr)
        print(USAGE, file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # argparse reports its own usage errors and exits with code 2
        return int(exc.code) if exc.code is not None else EXIT_OK
    except (KdfError, RngError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KDF
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
