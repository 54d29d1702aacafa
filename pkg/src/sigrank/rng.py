"""Deterministic counter-based randomness.

Every random decision in this package derives from a 64-bit seed plus an
explicit stream id, so any run can be replayed exactly regardless of worker
count or call interleaving.  The compiled walk kernels reproduce the same
SplitMix64 arithmetic bit for bit (see _kernels.py).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer; bijective on 64-bit ints."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_state(seed: int, stream_id: int) -> int:
    """Initial SplitMix64 state of substream `stream_id` under `seed`.

    The extra mix scatters substreams to effectively random positions of the
    2^64-cycle state space; without it, consecutive stream ids would walk
    shifted copies of one draw sequence and would not be independent.
    """
    return mix64((mix64(seed) + GOLDEN * (stream_id & MASK64)) & MASK64)


def derive_key(seed: int, *parts: int) -> int:
    """Fold integers into a fresh 64-bit seed; order of parts matters."""
    k = mix64(seed)
    for p in parts:
        k = mix64((k + GOLDEN + (p & MASK64)) & MASK64)
    return k


def coin_threshold(alpha: float) -> int:
    """Integer threshold t so that (u >> 11) < t fires with probability alpha.

    Shared by RngStream users and the compiled kernels so both sides make
    identical termination decisions from identical draws.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    return int(alpha * (1 << 53))


class RngStream:
    """SplitMix64 stream addressed by (seed, stream_id).

    Identical (seed, stream_id) always reproduces the identical sequence.
    Streams are cheap to construct and must not be shared between workers;
    give each worker its own stream id instead.
    """

    __slots__ = ("seed", "stream_id", "_state")

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = seed
        self.stream_id = stream_id
        self._state = stream_state(seed, stream_id)

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n); modulo bias is O(n / 2**64)."""
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        return self.next_u64() % n

    def reset(self) -> None:
        self._state = stream_state(self.seed, self.stream_id)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"
