"""Container format tests: header layout, keyed header tag, file roundtrips,
truncation and tamper behavior, atomic output."""

import hashlib
import os
import struct

import pytest

import reference_impl as ref
from symfrog512 import container
from symfrog512.container import (
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

SHA256_EMPTY = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"

# frozen: header tag for ct_len=11 raw-key header, key 0x00..0x7F,
# nonce 0x00..0x1F, ad b"AD" (generated with tests/reference_impl.py)
KAT_HEADER_TAG = (
    "4071628efbd42a2a56ba2ab19cc4c3d9a2cea1e1330f2bc31d81175a51a4b852"
)
# frozen: sha256 of the full container for plaintext b"container kat",
# fixed nonce, raw key (deterministic file: zero salt, zero reserved)
KAT_CONTAINER_SHA256 = (
    "541fac612adf7c473a8e950ccc684d5cdcdbbe7bc1c8a5d697651368d62f73e3"
)


class CountingFile:
    """Seekable read wrapper that counts every byte handed out."""

    def __init__(self, path):
        self._f = open(path, "rb")
        self.bytes_read = 0

    def read(self, n=-1):
        data = self._f.read(n)
        self.bytes_read += len(data)
        return data

    def seek(self, *args):
        return self._f.seek(*args)

    def tell(self):
        return self._f.tell()

    def close(self):
        self._f.close()


@pytest.fixture
def raw_source(key):
    return KeySource(key=key)


def _encrypt(tmp_path, key, data, name="f", ad=b"", nonce=None):
    src = tmp_path / f"{name}.bin"
    dst = tmp_path / f"{name}.syf"
    src.write_bytes(data)
    encrypt_file(src, dst, KeySource(key=key), ad=ad, nonce=nonce)
    return src, dst


# ---------------------------------------------------------------------------
# header layout
# ---------------------------------------------------------------------------

def test_header_field_offsets():
    h = Header(
        flags=FLAG_KEY_DERIVED,
        salt=bytes(range(32)),
        nonce=bytes(range(32, 64)),
        ct_len=0x1122334455667788,
        reserved=b"\xee" * 32,
        header_tag=b"\x77" * 32,
    )
    raw = h.serialize()
    assert len(raw) == HEADER_BYTES == 152
    assert raw[0:8] == b"SYMFROG1"
    assert raw[8:12] == b"\x01\x00\x00\x00"
    assert raw[12:16] == b"\x01\x00\x00\x00"
    assert raw[16:48] == bytes(range(32))
    assert raw[48:80] == bytes(range(32, 64))
    assert raw[80:88] == (0x1122334455667788).to_bytes(8, "little")
    assert raw[88:120] == b"\xee" * 32
    assert raw[120:152] == b"\x77" * 32


def test_header_parse_roundtrip():
    h = Header(
        flags=0,
        salt=b"\x05" * 32,
        nonce=b"\x06" * 32,
        ct_len=999,
        reserved=b"\x00" * 32,
        header_tag=b"\x07" * 32,
    )
    assert Header.parse(h.serialize()) == h


def test_header_parse_rejects_bad_magic():
    raw = bytearray(Header().serialize())
    raw[0] ^= 0x01
    with pytest.raises(ContainerFormatError):
        Header.parse(bytes(raw))


def test_header_parse_rejects_bad_version():
    raw = bytearray(Header().serialize())
    raw[8] = 2
    with pytest.raises(ContainerFormatError):
        Header.parse(bytes(raw))


def test_header_parse_rejects_unknown_flags():
    raw = bytearray(Header().serialize())
    raw[13] = 0x80
    with pytest.raises(ContainerFormatError):
        Header.parse(bytes(raw))


def test_header_parse_accepts_nonzero_reserved():
    h = Header(reserved=b"\xab" * 32)
    assert Header.parse(h.serialize()).reserved == b"\xab" * 32


# ---------------------------------------------------------------------------
# header tag
# ---------------------------------------------------------------------------

def test_header_tag_kat(key, nonce):
    h0 = Header(flags=0, salt=b"\x00" * 32, nonce=nonce, ct_len=11).serialize_zeroed()
    assert compute_header_tag(key, nonce, b"AD", h0).hex() == KAT_HEADER_TAG


def test_header_tag_matches_reference(key, nonce, rng):
    h0 = Header(nonce=nonce, ct_len=5).serialize_zeroed()
    ad = rng.bytes(20)
    assert compute_header_tag(key, nonce, ad, h0) == ref.header_tag(key, nonce, ad, h0)


def test_header_tag_requires_zeroed_tag_field(key, nonce):
    h = Header(nonce=nonce, header_tag=b"\x01" * 32)
    with pytest.raises(ValueError):
        compute_header_tag(key, nonce, b"", h.serialize())


def test_header_tag_ad_sensitivity(key, nonce):
    h0 = Header(nonce=nonce, ct_len=1).serialize_zeroed()
    assert compute_header_tag(key, nonce, b"a", h0) != compute_header_tag(
        key, nonce, b"b", h0
    )


def test_header_tag_differs_from_final_tag(key, nonce):
    # same (key, nonce), empty message: the header transcript and the AEAD
    # transcript use distinct domain bytes, so the tags must differ
    from symfrog512.aead import AeadParams, encrypt_bytes

    h0 = Header(nonce=nonce, ct_len=0).serialize_zeroed()
    htag = compute_header_tag(key, nonce, b"", h0)
    _, ftag = encrypt_bytes(AeadParams(key=key, nonce=nonce), b"")
    assert htag != ftag


# ---------------------------------------------------------------------------
# encrypt_file basics
# ---------------------------------------------------------------------------

def test_container_file_kat(tmp_path, key, nonce):
    _, dst = _encrypt(tmp_path, key, b"container kat", nonce=nonce)
    assert hashlib.sha256(dst.read_bytes()).hexdigest() == KAT_CONTAINER_SHA256


@pytest.mark.parametrize("length", [0, 1, 63, 64, 65, 4096])
def test_size_law(tmp_path, key, length):
    data = os.urandom(length)
    _, dst = _encrypt(tmp_path, key, data, name=f"n{length}")
    assert dst.stat().st_size == length + OVERHEAD_BYTES


def test_magic_is_first_eight_bytes(tmp_path, key):
    _, dst = _encrypt(tmp_path, key, b"x")
    assert dst.read_bytes()[:8] == b"SYMFROG1"


def test_raw_key_mode_header_fields(tmp_path, key):
    _, dst = _encrypt(tmp_path, key, b"x")
    h = Header.parse(dst.read_bytes()[:HEADER_BYTES])
    assert h.flags == 0
    assert h.salt == b"\x00" * 32
    assert h.reserved == b"\x00" * 32
    assert h.ct_len == 1


def test_roundtrip_empty_file_sha256(tmp_path, key, raw_source):
    src, dst = _encrypt(tmp_path, key, b"", name="empty")
    out = tmp_path / "empty.out"
    assert decrypt_file(dst, out, raw_source) is Verdict.OK
    assert hashlib.sha256(out.read_bytes()).hexdigest() == SHA256_EMPTY
    assert out.read_bytes() == src.read_bytes()


@pytest.mark.parametrize("length", [0, 1, 64, 65, 4096, 70000])
def test_roundtrip_various_lengths(tmp_path, key, raw_source, length):
    data = os.urandom(length)
    _, dst = _encrypt(tmp_path, key, data, name=f"r{length}")
    out = tmp_path / f"r{length}.out"
    assert decrypt_file(dst, out, raw_source) is Verdict.OK
    assert out.read_bytes() == data


def test_fixed_nonce_is_stored_and_reproducible(tmp_path, key, nonce):
    _, a = _encrypt(tmp_path, key, b"data", name="a", nonce=nonce)
    _, b = _encrypt(tmp_path, key, b"data", name="b", nonce=nonce)
    assert a.read_bytes() == b.read_bytes()
    assert Header.parse(a.read_bytes()[:HEADER_BYTES]).nonce == nonce


def test_random_nonce_differs_between_runs(tmp_path, key):
    _, a = _encrypt(tmp_path, key, b"data", name="a")
    _, b = _encrypt(tmp_path, key, b"data", name="b")
    assert a.read_bytes() != b.read_bytes()


# ---------------------------------------------------------------------------
# passphrase mode
# ---------------------------------------------------------------------------

def test_passphrase_roundtrip_and_header_flags(tmp_path):
    src = tmp_path / "p.bin"
    dst = tmp_path / "p.syf"
    out = tmp_path / "p.out"
    src.write_bytes(b"passphrase protected")
    encrypt_file(src, dst, KeySource(passphrase="hunter2"))
    h = Header.parse(dst.read_bytes()[:HEADER_BYTES])
    assert h.flags & FLAG_KEY_DERIVED
    assert h.salt != b"\x00" * 32
    assert decrypt_file(dst, out, KeySource(passphrase="hunter2")) is Verdict.OK
    assert out.read_bytes() == b"passphrase protected"


def test_wrong_passphrase_early_reject_reads_no_body(tmp_path):
    src = tmp_path / "e.bin"
    dst = tmp_path / "e.syf"
    src.write_bytes(os.urandom(4096))
    encrypt_file(src, dst, KeySource(passphrase="correct"))
    reader = CountingFile(dst)
    try:
        verdict = decrypt_file(reader, tmp_path / "e.out", KeySource(passphrase="wrong"))
    finally:
        reader.close()
    assert verdict is Verdict.HEADER_AUTH_FAIL
    assert reader.bytes_read == HEADER_BYTES
    assert not (tmp_path / "e.out").exists()


def test_key_source_requires_exactly_one_input(key):
    with pytest.raises(ValueError):
        KeySource()
    with pytest.raises(ValueError):
        KeySource(key=key, passphrase="x")
    with pytest.raises(ValueError):
        KeySource(key=key[:-1])


def test_raw_key_against_passphrase_file_fails_cleanly(tmp_path, key):
    src = tmp_path / "m.bin"
    dst = tmp_path / "m.syf"
    src.write_bytes(b"mismatch")
    encrypt_file(src, dst, KeySource(passphrase="pw"))
    assert decrypt_file(dst, tmp_path / "m.out", KeySource(key=key)) is (
        Verdict.HEADER_AUTH_FAIL
    )
    assert not (tmp_path / "m.out").exists()


# ---------------------------------------------------------------------------
# rejection behavior
# ---------------------------------------------------------------------------

def test_wrong_raw_key_early_reject(tmp_path, key):
    _, dst = _encrypt(tmp_path, key, os.urandom(1000))
    bad = bytearray(key)
    bad[0] ^= 1
    reader = CountingFile(dst)
    try:
        verdict = decrypt_file(reader, tmp_path / "w.out", KeySource(key=bytes(bad)))
    finally:
        reader.close()
    assert verdict is Verdict.HEADER_AUTH_FAIL
    assert reader.bytes_read == HEADER_BYTES


def test_ad_binding(tmp_path, key, raw_source):
    _, dst = _encrypt(tmp_path, key, b"bound", ad=b"context-1")
    out = tmp_path / "ad.out"
    assert decrypt_file(dst, out, raw_source, ad=b"context-2") is (
        Verdict.HEADER_AUTH_FAIL
    )
    assert decrypt_file(dst, out, raw_source, ad=b"context-1") is Verdict.OK


def test_truncation_by_one_byte(tmp_path, key, raw_source):
    _, dst = _encrypt(tmp_path, key, b"truncate me")
    blob = dst.read_bytes()
    trunc = tmp_path / "trunc.syf"
    trunc.write_bytes(blob[:-1])
    verdict = decrypt_file(trunc, tmp_path / "t.out", raw_source)
    assert verdict in (Verdict.FORMAT_ERROR, Verdict.BODY_AUTH_FAIL)
    assert not (tmp_path / "t.out").exists()


def test_file_shorter_than_overhead(tmp_path, raw_source):
    small = tmp_path / "small.syf"
    small.write_bytes(b"SYMFROG1" + b"\x00" * 50)
    assert decrypt_file(small, tmp_path / "s.out", raw_source) is Verdict.FORMAT_ERROR


def test_ct_len_mismatch_is_format_error(tmp_path, key, raw_source):
    _, dst = _encrypt(tmp_path, key, b"abcdef")
    blob = bytearray(dst.read_bytes())
    # grow the file by one trailing byte: header ct_len now disagrees
    (tmp_path / "grown.syf").write_bytes(bytes(blob) + b"\x00")
    verdict = decrypt_file(tmp_path / "grown.syf", tmp_path / "g.out", raw_source)
    assert verdict is Verdict.FORMAT_ERROR


def test_sampled_tamper_of_body_and_tag(tmp_path, key, raw_source, rng):
    data = os.urandom(500)
    _, dst = _encrypt(tmp_path, key, data, name="tam")
    blob = dst.read_bytes()
    body_bits = (len(blob) - HEADER_BYTES) * 8
    for k in rng.choice(body_bits, size=48, replace=False):
        bit = HEADER_BYTES * 8 + int(k)
        tampered = bytearray(blob)
        tampered[bit // 8] ^= 1 << (bit % 8)
        t = tmp_path / "tampered.syf"
        t.write_bytes(bytes(tampered))
        out = tmp_path / "tampered.out"
        assert decrypt_file(t, out, raw_source) is Verdict.BODY_AUTH_FAIL
        assert not out.exists()


def test_sampled_tamper_of_header(tmp_path, key, raw_source, rng):
    _, dst = _encrypt(tmp_path, key, b"hdr", name="hdr")
    blob = dst.read_bytes()
    for k in rng.choice(HEADER_BYTES * 8, size=48, replace=False):
        tampered = bytearray(blob)
        tampered[int(k) // 8] ^= 1 << (int(k) % 8)
        t = tmp_path / "h.syf"
        t.write_bytes(bytes(tampered))
        out = tmp_path / "h.out"
        verdict = decrypt_file(t, out, raw_source)
        assert verdict in (Verdict.HEADER_AUTH_FAIL, Verdict.FORMAT_ERROR)
        assert not out.exists()


def test_constant_time_eq_available_on_container_surface():
    assert container.constant_time_eq(b"\x42" * 32, b"\x42" * 32)
    assert not container.constant_time_eq(b"\x42" * 32, b"\x43" * 32)


# ---------------------------------------------------------------------------
# atomic output
# ---------------------------------------------------------------------------

def test_encrypt_failure_leaves_no_artifacts(tmp_path, key, monkeypatch):
    src = tmp_path / "f.bin"
    src.write_bytes(b"fault")
    dst = tmp_path / "f.syf"

    def boom(a, b):
        raise OSError("injected rename failure")

    monkeypatch.setattr(container.os, "replace", boom)
    with pytest.raises(OSError):
        encrypt_file(src, dst, KeySource(key=key))
    assert not dst.exists()
    assert list(tmp_path.glob("*.tmp")) == []


def test_decrypt_failure_leaves_no_artifacts(tmp_path, key, raw_source, monkeypatch):
    _, dst = _encrypt(tmp_path, key, b"fault2", name="f2")

    def boom(a, b):
        raise OSError("injected rename failure")

    monkeypatch.setattr(container.os, "replace", boom)
    with pytest.raises(OSError):
        decrypt_file(dst, tmp_path / "f2.out", raw_source)
    assert not (tmp_path / "f2.out").exists()
    assert list(tmp_path.glob("*.tmp")) == []


def test_failed_decrypt_never_creates_destination(tmp_path, key, raw_source):
    _, dst = _encrypt(tmp_path, key, b"no partial")
    blob = bytearray(dst.read_bytes())
    blob[-1] ^= 1
    bad = tmp_path / "bad.syf"
    bad.write_bytes(bytes(blob))
    out = tmp_path / "np.out"
    assert decrypt_file(bad, out, raw_source) is Verdict.BODY_AUTH_FAIL
    assert not out.exists()
    assert list(tmp_path.glob("*.tmp")) == []
