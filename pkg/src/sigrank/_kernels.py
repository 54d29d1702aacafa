"""Compiled inner loop for batched restart walks.

The SplitMix64 arithmetic here mirrors rng.py bit for bit: walk w of a batch
keyed by `seed` consumes exactly the draws of RngStream(seed, stream_id=w),
so any single walk of a batch can be replayed in pure Python.  All scalars
are uint64; mixing Python int literals into uint64 expressions would promote
to float64 under numba and silently change the stream.

Walks write only to their own slot of `last` and the step total is an
integer reduction, so results are bit-identical for any thread count.
"""

import numpy as np
from numba import njit, prange

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, parallel=True)
def run_walks(out_offsets, out_targets, n, source, coin_thr, cap, r, seed, last):
    """Run r independent capped restart walks from `source`.

    Each step first flips the termination coin ((u >> 11) < coin_thr), then
    moves to a random out-neighbor (uniform over all n nodes from a dangling
    node).  last[w] is the node occupied when the coin fired, or -1 if the
    walk was cut off after `cap` steps.  Returns the total number of steps;
    crawls consumed = steps - number of terminated walks.
    """
    seed_m = _mix64(seed)
    total_steps = np.int64(0)
    for w in prange(r):
        state = _mix64(seed_m + _GOLDEN * np.uint64(w))
        node = source
        fin = np.int64(-1)
        steps = np.int64(0)
        for _ in range(cap):
            steps += 1
            state += _GOLDEN
            u = _mix64(state)
            if (u >> _S11) < coin_thr:
                fin = node
                break
            state += _GOLDEN
            u = _mix64(state)
            deg = out_offsets[node + 1] - out_offsets[node]
            if deg == 0:
                node = np.int64(u % np.uint64(n))
            else:
                node = np.int64(out_targets[out_offsets[node] + np.int64(u % np.uint64(deg))])
        last[w] = fin
        total_steps += steps
    return total_steps
