"""Numba-compiled hot paths: permutation rounds and duplex block loops.

All kernels operate on little-endian uint64 views of the 128-byte state.
Scalar constants live here as module-level ``np.uint64`` values so kernel
arithmetic never promotes away from uint64 (numba follows numpy promotion
rules, and a stray Python int literal would poison a whole expression).
"""

import numba as nb
import numpy as np

U64 = np.uint64
MASK64 = 0xFFFFFFFFFFFFFFFF

KICK_C = U64(0x9E3779B97F4A7C15)
SM_ALPHA = U64(0xBF58476D1CE4E5B9)
SM_BETA = U64(0x94D049BB133111EB)
GAMMA = 0x9E3779B97F4A7C15

# gamma * (lane + 1) mod 2**64, one constant per output lane
GAMMA_LANE = np.array(
    [(GAMMA * (i + 1)) & MASK64 for i in range(8)], dtype=np.uint64
)

_ONE = U64(1)
_R3 = U64(3)
_R17 = U64(17)
_R19 = U64(19)
_R23 = U64(23)
_R41 = U64(41)
_R45 = U64(45)
_R47 = U64(47)
_R61 = U64(61)
_S27 = U64(27)
_S30 = U64(30)
_S31 = U64(31)

_PC1 = U64(0x5555555555555555)
_PC2 = U64(0x3333333333333333)
_PC4 = U64(0x0F0F0F0F0F0F0F0F)
_PCM = U64(0x0101010101010101)
_B1 = U64(1)
_B2 = U64(2)
_B4 = U64(4)
_B56 = U64(56)


@nb.njit(cache=True)
def _round(s, rcr):
    # round constants into the capacity, capacity folded into the rate
    for j in range(8):
        s[8 + j] ^= rcr[j]
    for i in range(8):
        s[i] ^= s[i + 8]
    # chi on each 4-word group; the four updates apply in sequence, so
    # later updates see earlier results (this makes the layer invertible)
    for g in range(0, 16, 4):
        s[g] ^= ~s[g + 1] & s[g + 2]
        s[g + 1] ^= ~s[g + 2] & s[g + 3]
        s[g + 2] ^= ~s[g + 3] & s[g]
        s[g + 3] ^= ~s[g] & s[g + 1]
    # kick phase A: each even word perturbs its odd neighbour
    for i in range(0, 16, 2):
        s[i + 1] ^= s[i] * (s[i] | _ONE)
    # kick phase B: each odd word perturbs the next even word, wrapping
    for i in range(1, 16, 2):
        k = s[i] * ((s[i] | _ONE) ^ KICK_C)
        s[(i + 1) & 15] ^= (k << _R23) | (k >> _R41)
    # rotate by original index parity
    for i in range(0, 16, 2):
        x = s[i]
        s[i] = (x << _R19) | (x >> _R45)
        y = s[i + 1]
        s[i + 1] = (y << _R61) | (y >> _R3)
    # word shuffle new[i] = rot[pi[i]], decomposed into its cycles
    t = s[1]
    s[1] = s[13]
    s[13] = s[9]
    s[9] = s[5]
    s[5] = t
    t = s[3]
    s[3] = s[7]
    s[7] = s[11]
    s[11] = s[15]
    s[15] = t
    t = s[2]
    s[2] = s[10]
    s[10] = t
    t = s[6]
    s[6] = s[14]
    s[14] = t


@nb.njit(cache=True)
def apply_rounds(s, rc, start, stop):
    for r in range(start, stop):
        _round(s, rc[r])


@nb.njit(cache=True)
def permute24(s, rc):
    apply_rounds(s, rc, 0, 24)


@nb.njit(cache=True)
def out_words(s, out):
    """Output transform: mix rate and capacity lanes, SplitMix64-finalize."""
    for i in range(8):
        c1 = s[8 + i]
        c2 = s[8 + ((i + 3) & 7)]
        x = (
            s[i]
            ^ ((c1 << _R17) | (c1 >> _R47))
            ^ ((c2 << _R41) | (c2 >> _R23))
            ^ GAMMA_LANE[i]
        )
        x ^= x >> _S30
        x *= SM_ALPHA
        x ^= x >> _S27
        x *= SM_BETA
        x ^= x >> _S31
        out[i] = x


@nb.njit(cache=True)
def absorb_blocks(s, blocks, ds, rc):
    for b in range(blocks.shape[0]):
        for i in range(8):
            s[i] ^= blocks[b, i]
        s[15] ^= ds
        permute24(s, rc)


@nb.njit(cache=True)
def encrypt_blocks(s, pt, ct, ds, rc):
    z = np.empty(8, dtype=np.uint64)
    for b in range(pt.shape[0]):
        out_words(s, z)
        for i in range(8):
            c = pt[b, i] ^ z[i]
            ct[b, i] = c
            s[i] ^= c
        s[15] ^= ds
        permute24(s, rc)


@nb.njit(cache=True)
def decrypt_blocks(s, ct, pt, ds, rc):
    z = np.empty(8, dtype=np.uint64)
    for b in range(ct.shape[0]):
        out_words(s, z)
        for i in range(8):
            c = ct[b, i]
            pt[b, i] = c ^ z[i]
            s[i] ^= c
        s[15] ^= ds
        permute24(s, rc)


@nb.njit(cache=True)
def squeeze_blocks(s, out, rc):
    for b in range(out.shape[0]):
        permute24(s, rc)
        out_words(s, out[b])


@nb.njit(cache=True)
def _popcount(x):
    x = x - ((x >> _B1) & _PC1)
    x = (x & _PC2) + ((x >> _B2) & _PC2)
    x = (x + (x >> _B4)) & _PC4
    return (x * _PCM) >> _B56


@nb.njit(cache=True)
def avalanche_distances(sa, sb, rc, dist):
    """Round both states forward, recording Hamming distance after each round."""
    for r in range(dist.shape[0]):
        _round(sa, rc[r])
        _round(sb, rc[r])
        d = U64(0)
        for i in range(16):
            d += _popcount(sa[i] ^ sb[i])
        dist[r] = d


@nb.njit(cache=True)
def bench_permutations(s, rc, iters):
    for _ in range(iters):
        permute24(s, rc)
