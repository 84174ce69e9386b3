"""Pure-Python Monte Carlo kernels.

Mirrors ``_kernels.pyx`` draw for draw.  Every random number is a pure
function of ``(seed, trial, counter)``: a SplitMix64 finalizer applied to a
Weyl sequence keyed per trial, so any trial can be replayed on its own.

Counter layout for one independence trial over a universe of ``N``:

    [0, N)     Fisher-Yates swaps for the A sample
    [N, 2N)    Fisher-Yates swaps for the B sample
    2N + o     A outcome of observation o
    3N + o     B outcome of observation o

Detector trials use counter ``2k`` for the T detector and ``2k + 1`` for the
C detector at tick ``k``.
"""

import numpy as np

MASK = 0xFFFFFFFFFFFFFFFF
GAMMA = 0x9E3779B97F4A7C15
M1 = 0xBF58476D1CE4E5B9
M2 = 0x94D049BB133111EB
TO_UNIT = 2.0 ** -53


def mix64(z):
    z = ((z ^ (z >> 30)) * M1) & MASK
    z = ((z ^ (z >> 27)) * M2) & MASK
    return z ^ (z >> 31)


def trial_key(seed, trial):
    return mix64((mix64(seed & MASK) + (trial + 1) * GAMMA) & MASK)


def draw(key, counter):
    return mix64((key + (counter + 1) * GAMMA) & MASK)


def uniform(x):
    return (x >> 11) * TO_UNIT


def below(x, m):
    """Map a 64-bit draw onto ``range(m)`` for ``m < 2**32``."""
    return ((x >> 32) * m) >> 32


def _sample(key, offset, N, k):
    perm = list(range(N))
    for i in range(k):
        x = draw(key, offset + i)
        j = i + (((x >> 32) * (N - i)) >> 32)
        perm[i], perm[j] = perm[j], perm[i]
    return perm[:k]


def mc_trials(N, na, pa, nb, pb, trials, seed):
    """Per-trial (conj_n, conj_p, disj_n, disj_p) arrays; p is NaN with no evidence."""
    conj_n = np.empty(trials)
    conj_p = np.empty(trials)
    disj_n = np.empty(trials)
    disj_p = np.empty(trials)
    base_a, base_b = 2 * N, 3 * N
    for t in range(trials):
        key = trial_key(seed, t)
        eval_a = _sample(key, 0, N, na)
        eval_b = _sample(key, N, N, nb)
        set_a = set(eval_a)
        set_b = set(eval_b)
        union = set_a | set_b
        shared = both = positive = 0
        for o in union:
            xa = mix64((key + (base_a + o + 1) * GAMMA) & MASK)
            xb = mix64((key + (base_b + o + 1) * GAMMA) & MASK)
            out_a = (xa >> 11) * TO_UNIT < pa
            out_b = (xb >> 11) * TO_UNIT < pb
            if out_a or out_b:
                positive += 1
            if o in set_a and o in set_b:
                shared += 1
                if out_a and out_b:
                    both += 1
        conj_n[t] = shared
        conj_p[t] = both / shared if shared else np.nan
        disj_n[t] = len(union)
        disj_p[t] = positive / len(union) if union else np.nan
    return conj_n, conj_p, disj_n, disj_p


def detector_trials(bt, bc, ticks, trials, seed):
    """Per-trial fraction of ticks on which both detectors ring."""
    out = np.empty(trials)
    for t in range(trials):
        key = trial_key(seed, t)
        hits = 0
        for k in range(ticks):
            c = 2 * k + 1
            xt = mix64((key + c * GAMMA) & MASK)
            xc = mix64((key + (c + 1) * GAMMA) & MASK)
            if (xt >> 11) * TO_UNIT < bt and (xc >> 11) * TO_UNIT < bc:
                hits += 1
        out[t] = hits / ticks
    return out
