"""Optional compiled bulk kernels (numba + numpy); resolved lazily by aead.

The plain-Python permutation stays the reference path and handles every
input when these dependencies are missing.  The kernel below is the same
round function on machine words, fused across whole blocks, and is pinned
to the reference path bit-for-bit by the test suite.  Like the reference
path it never branches on or indexes by state-derived values.
"""

from __future__ import annotations

try:
    import numpy as np
    from numba import njit, uint64

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

from .permutation import State

_ABSORB, _ENCRYPT, _DECRYPT = 0, 1, 2

if HAVE_NUMBA:

    @njit(cache=True)
    def _duplex_blocks(words, data, wpb, rounds, mode):
        """Absorb/encrypt/decrypt whole rate-blocks, permuting after each.

        words: the five state words, updated in place.
        data: block words, big-endian-decoded; length a multiple of wpb.
        wpb: words per block (1 or 2).
        Returns the emitted rate words (meaningful for encrypt/decrypt only).
        """
        M = uint64(0xFFFFFFFFFFFFFFFF)
        x0, x1, x2, x3, x4 = words[0], words[1], words[2], words[3], words[4]
        out = np.empty_like(data)
        for i in range(0, data.shape[0], wpb):
            if mode == 2:
                c0 = data[i]
                out[i] = x0 ^ c0
                x0 = c0
                if wpb == 2:
                    c1 = data[i + 1]
                    out[i + 1] = x1 ^ c1
                    x1 = c1
            else:
                x0 ^= data[i]
                out[i] = x0
                if wpb == 2:
                    x1 ^= data[i + 1]
                    out[i + 1] = x1
            for r in range(12 - rounds, 12):
                x2 ^= uint64(0xF0 - 0x10 * r + r)
                x0 ^= x4
                x4 ^= x3
                x2 ^= x1
                t0 = (x0 ^ M) & x1
                t1 = (x1 ^ M) & x2
                t2 = (x2 ^ M) & x3
                t3 = (x3 ^ M) & x4
                t4 = (x4 ^ M) & x0
                x0 ^= t1
                x1 ^= t2
                x2 ^= t3
                x3 ^= t4
                x4 ^= t0
                x1 ^= x0
                x0 ^= x4
                x3 ^= x2
                x2 ^= M
                x0 ^= ((x0 >> uint64(19)) | (x0 << uint64(45))) ^ (
                    (x0 >> uint64(28)) | (x0 << uint64(36))
                )
                x1 ^= ((x1 >> uint64(61)) | (x1 << uint64(3))) ^ (
                    (x1 >> uint64(39)) | (x1 << uint64(25))
                )
                x2 ^= ((x2 >> uint64(1)) | (x2 << uint64(63))) ^ (
                    (x2 >> uint64(6)) | (x2 << uint64(58))
                )
                x3 ^= ((x3 >> uint64(10)) | (x3 << uint64(54))) ^ (
                    (x3 >> uint64(17)) | (x3 << uint64(47))
                )
                x4 ^= ((x4 >> uint64(7)) | (x4 << uint64(57))) ^ (
                    (x4 >> uint64(41)) | (x4 << uint64(23))
                )
        words[0], words[1], words[2], words[3], words[4] = x0, x1, x2, x3, x4
        return out

    def _run(state: State, data: bytes, rate: int, rounds: int, mode: int):
        words = np.array(state, dtype=np.uint64)
        blocks = np.frombuffer(data, dtype=">u8").astype(np.uint64)
        out = _duplex_blocks(words, blocks, rate // 8, rounds, mode)
        new_state = State(*(int(w) for w in words))
        return new_state, out.astype(">u8").tobytes()

    def absorb_blocks(state: State, data: bytes, rate: int, rounds: int) -> State:
        return _run(state, data, rate, rounds, _ABSORB)[0]

    def encrypt_blocks(
        state: State, data: bytes, rate: int, rounds: int
    ) -> tuple[State, bytes]:
        return _run(state, data, rate, rounds, _ENCRYPT)

    def decrypt_blocks(
        state: State, data: bytes, rate: int, rounds: int
    ) -> tuple[State, bytes]:
        return _run(state, data, rate, rounds, _DECRYPT)
