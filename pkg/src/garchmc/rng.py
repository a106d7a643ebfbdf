"""Named, reproducible RNG substreams derived from one 64-bit seed."""
import numpy as np

# Fixed substream indices; changing these changes every seeded result.
_STREAMS = {
    "tuning": 0,
    "burnin": 1,
    "sampling": 2,
    "synthetic": 3,
}


def named_rng(seed, name):
    """Generator for the named substream of ``seed``."""
    key = _STREAMS[name]
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def chain_seed(seed, index):
    """Derive an independent per-chain seed for multi-chain runs."""
    ss = np.random.SeedSequence(seed, spawn_key=(100 + index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
