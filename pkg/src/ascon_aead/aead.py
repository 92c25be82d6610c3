"""Authenticated encryption with associated data over the core permutation.

Both parameter sets drive the same four-phase duplex flow:

    initialize -> process_associated_data -> encrypt_data/decrypt_data -> finalize

The phase functions are exposed individually (they are pure State -> State
transformers) so the trace tooling and tests can pin intermediate states;
`encrypt` and `decrypt` compose them.

Nonces must never repeat under the same key: encryption is deterministic,
and a repeated (key, nonce) pair forfeits confidentiality.  The library
does not and cannot detect reuse.

Keys are accepted as plain bytes and never stored on objects, logged, or
formatted into error messages.  (CPython offers no reliable way to zero
immutable buffers, so transient copies live until garbage collection.)
"""

from __future__ import annotations

import hmac
from dataclasses import dataclass

from .codec import bytes_from_word, pad_10star, word_from_bytes, xor_bytes
from .permutation import State, permute

KEY_BYTES = 16
NONCE_BYTES = 16
TAG_BYTES = 16

# Data phases hand inputs of at least this many rate-blocks to the optional
# compiled kernels; below it the plain permutation wins on overhead.
_ACCEL_MIN_BLOCKS = 32

_accel_backend = None  # not probed yet; becomes the module or False


class AuthenticationFailure(Exception):
    """Tag verification failed: tampering or wrong key/nonce/AD.

    Deliberately carries no detail about where verification diverged and
    no plaintext.
    """


@dataclass(frozen=True)
class VariantParams:
    """One row of the cipher's parameter table."""

    name: str
    rate_bytes: int  # data block size: 8 or 16
    rounds_a: int  # initialization/finalization rounds
    rounds_b: int  # data-phase rounds
    iv_word: int  # parameter-encoding first state word
    key_bytes: int = KEY_BYTES
    nonce_bytes: int = NONCE_BYTES
    tag_bytes: int = TAG_BYTES


ASCON_128 = VariantParams(
    "ASCON-128", rate_bytes=8, rounds_a=12, rounds_b=6, iv_word=0x80400C0600000000
)
ASCON_128A = VariantParams(
    "ASCON-128a", rate_bytes=16, rounds_a=12, rounds_b=8, iv_word=0x80800C0800000000
)

#: CLI-facing variant names.
VARIANTS = {"ascon128": ASCON_128, "ascon128a": ASCON_128A}


def _check_key_nonce(params: VariantParams, key: bytes, nonce: bytes) -> None:
    if len(key) != params.key_bytes:
        raise ValueError(f"key must be {params.key_bytes} bytes, got {len(key)}")
    if len(nonce) != params.nonce_bytes:
        raise ValueError(f"nonce must be {params.nonce_bytes} bytes, got {len(nonce)}")


def _get_accel():
    """Resolve the optional compiled-kernel backend once; None if unavailable."""
    global _accel_backend
    if _accel_backend is None:
        try:
            from . import _accel

            _accel_backend = _accel if _accel.HAVE_NUMBA else False
        except Exception:
            _accel_backend = False
    return _accel_backend or None


def _rate_of(state: State, rate: int) -> bytes:
    """The rate portion of the state as bytes (s0, or s0 || s1 for rate 16)."""
    if rate == 8:
        return bytes_from_word(state.s0)
    return bytes_from_word(state.s0) + bytes_from_word(state.s1)


def _absorb(state: State, block: bytes, rate: int) -> State:
    """XOR one rate-sized block into the rate portion."""
    if rate == 8:
        return state._replace(s0=state.s0 ^ word_from_bytes(block))
    return state._replace(
        s0=state.s0 ^ word_from_bytes(block[:8]),
        s1=state.s1 ^ word_from_bytes(block[8:]),
    )


def _overwrite_rate(state: State, block: bytes, rate: int) -> State:
    """Replace the rate portion with a rate-sized block."""
    if rate == 8:
        return state._replace(s0=word_from_bytes(block))
    return state._replace(s0=word_from_bytes(block[:8]), s1=word_from_bytes(block[8:]))


def initialize(params: VariantParams, key: bytes, nonce: bytes) -> State:
    """Pack IV || K || N, run the a-round permutation, then XOR 0* || K in."""
    _check_key_nonce(params, key, nonce)
    k1, k2 = word_from_bytes(key[:8]), word_from_bytes(key[8:])
    state = State(
        params.iv_word,
        k1,
        k2,
        word_from_bytes(nonce[:8]),
        word_from_bytes(nonce[8:]),
    )
    state = permute(state, params.rounds_a)
    return state._replace(s3=state.s3 ^ k1, s4=state.s4 ^ k2)


def process_associated_data(state: State, params: VariantParams, ad: bytes) -> State:
    """Absorb padded AD, permuting after every block, then flip the domain bit.

    Empty AD absorbs nothing and runs no permutation; the domain-separation
    XOR of 1 into the last bit of s4 happens unconditionally, fencing the AD
    phase off from the data phase.
    """
    if ad:
        rate, rounds = params.rate_bytes, params.rounds_b
        padded = pad_10star(ad, rate)
        accel = _get_accel() if len(padded) >= _ACCEL_MIN_BLOCKS * rate else None
        if accel is not None:
            state = accel.absorb_blocks(state, padded, rate, rounds)
        else:
            for off in range(0, len(padded), rate):
                state = _absorb(state, padded[off : off + rate], rate)
                state = permute(state, rounds)
    return state._replace(s4=state.s4 ^ 1)


def encrypt_data(
    state: State, params: VariantParams, plaintext: bytes
) -> tuple[State, bytes]:
    """Duplex-encrypt: absorb each padded block, emit the rate as ciphertext.

    A permutation runs between blocks but not after the last one, and the
    output is cut to |plaintext|, so the padding never reaches the wire.
    """
    rate, rounds = params.rate_bytes, params.rounds_b
    padded = pad_10star(plaintext, rate)
    split = len(padded) - rate  # the final block gets no trailing permutation
    out = bytearray()
    accel = _get_accel() if split >= _ACCEL_MIN_BLOCKS * rate else None
    if accel is not None:
        state, body = accel.encrypt_blocks(state, padded[:split], rate, rounds)
        out += body
    else:
        for off in range(0, split, rate):
            state = _absorb(state, padded[off : off + rate], rate)
            out += _rate_of(state, rate)
            state = permute(state, rounds)
    state = _absorb(state, padded[split:], rate)
    out += _rate_of(state, rate)
    return state, bytes(out[: len(plaintext)])


def decrypt_data(
    state: State, params: VariantParams, ciphertext: bytes
) -> tuple[State, bytes]:
    """Duplex-decrypt; exact inverse of encrypt_data on state and data.

    Full blocks: plaintext = rate XOR ciphertext block, then the ciphertext
    block overwrites the rate and a permutation runs.  The final partial
    block (possibly empty) overwrites only its own bytes and XORs 0x80 at
    the next position, reconstructing the 1||0* padding the encryptor
    absorbed there.
    """
    rate, rounds = params.rate_bytes, params.rounds_b
    split = len(ciphertext) - len(ciphertext) % rate
    out = bytearray()
    accel = _get_accel() if split >= _ACCEL_MIN_BLOCKS * rate else None
    if accel is not None:
        state, body = accel.decrypt_blocks(state, ciphertext[:split], rate, rounds)
        out += body
    else:
        for off in range(0, split, rate):
            block = ciphertext[off : off + rate]
            out += xor_bytes(_rate_of(state, rate), block)
            state = _overwrite_rate(state, block, rate)
            state = permute(state, rounds)
    tail = ciphertext[split:]
    exposed = _rate_of(state, rate)
    out += xor_bytes(exposed[: len(tail)], tail)
    repadded = tail + bytes([exposed[len(tail)] ^ 0x80]) + exposed[len(tail) + 1 :]
    state = _overwrite_rate(state, repadded, rate)
    return state, bytes(out)


def finalize(state: State, params: VariantParams, key: bytes) -> bytes:
    """XOR the key in just past the rate, permute, and squeeze the 16-byte tag.

    The tag is the last two state words XORed with the key, emitted
    big-endian.
    """
    if len(key) != params.key_bytes:
        raise ValueError(f"key must be {params.key_bytes} bytes, got {len(key)}")
    k1, k2 = word_from_bytes(key[:8]), word_from_bytes(key[8:])
    words = list(state)
    w = params.rate_bytes // 8
    words[w] ^= k1
    words[w + 1] ^= k2
    state = permute(State(*words), params.rounds_a)
    return bytes_from_word(state.s3 ^ k1) + bytes_from_word(state.s4 ^ k2)


def encrypt(
    params: VariantParams,
    key: bytes,
    nonce: bytes,
    associated_data: bytes,
    plaintext: bytes,
) -> tuple[bytes, bytes]:
    """Encrypt and authenticate; returns (ciphertext, tag).

    key: 16 secret bytes.
    nonce: 16 public bytes, unique per (key, message).
    associated_data: authenticated but not encrypted; may be empty.
    plaintext: arbitrary length; the ciphertext has the same length.
    """
    state = initialize(params, key, nonce)
    state = process_associated_data(state, params, associated_data)
    state, ciphertext = encrypt_data(state, params, plaintext)
    tag = finalize(state, params, key)
    return ciphertext, tag


def decrypt(
    params: VariantParams,
    key: bytes,
    nonce: bytes,
    associated_data: bytes,
    ciphertext: bytes,
    tag: bytes,
) -> bytes:
    """Verify and decrypt; returns the plaintext.

    The recomputed tag is compared to `tag` in constant time.  On mismatch
    AuthenticationFailure is raised and no plaintext leaves this function.
    """
    if len(tag) != params.tag_bytes:
        raise ValueError(f"tag must be {params.tag_bytes} bytes, got {len(tag)}")
    state = initialize(params, key, nonce)
    state = process_associated_data(state, params, associated_data)
    state, plaintext = decrypt_data(state, params, ciphertext)
    expected = finalize(state, params, key)
    if not hmac.compare_digest(expected, tag):
        raise AuthenticationFailure("authentication failed")
    return plaintext
