"""Independent oracles the suite checks the library against.

Everything here is written the slow, obvious way on purpose, and stays
independent of the code paths it verifies: bitwise field arithmetic,
brute-force assignment search for the coverage rule, direct enumeration
of stripe-loss probabilities, and the published closed forms.
"""

from __future__ import annotations

import itertools
import math


# ---------------------------------------------------------------------------
# field arithmetic
# ---------------------------------------------------------------------------

def peasant_mul(a: int, b: int, poly: int = 0x11D, w: int = 8) -> int:
    """Carry-less multiply-and-reduce, one bit at a time."""
    res = 0
    top = 1 << w
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return res


def matvec_parity(data: list[int], parity_block, field_mul) -> list[int]:
    """Naive parity of one element column: data (kappa) times A (kappa x p)."""
    kappa = len(data)
    p = len(parity_block[0])
    out = []
    for i in range(p):
        acc = 0
        for j in range(kappa):
            acc ^= field_mul(data[j], int(parity_block[j][i]))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# coverage rule
# ---------------------------------------------------------------------------

def coverage_by_assignment(e: tuple[int, ...], counts) -> bool:
    """True iff the nonzero counts can be injectively assigned to e-slots."""
    counts = [c for c in counts if c]
    if not counts:
        return True
    if len(counts) > len(e):
        return False
    for slots in itertools.permutations(range(len(e)), len(counts)):
        if all(counts[i] <= e[slot] for i, slot in enumerate(slots)):
            return True
    return False


def iter_within_coverage_patterns(cfg):
    """Every within-coverage failure pattern of a config, exactly once."""
    from staircodes import FailurePattern
    from staircodes.stair import counts_within_coverage

    def multisets(prefix):
        yield prefix
        start = prefix[-1] if prefix else 1
        for c in range(start, cfg.e_max + 1):
            new = prefix + (c,)
            if counts_within_coverage(cfg, new):
                yield from multisets(new)

    count_multisets = list(multisets(()))
    for f_count in range(cfg.m + 1):
        for failed in itertools.combinations(range(cfg.n), f_count):
            rest = [j for j in range(cfg.n) if j not in failed]
            for ms in count_multisets:
                k = len(ms)
                if k > len(rest):
                    continue
                for chunks in itertools.permutations(rest, k):
                    # equal counts are interchangeable; keep one ordering
                    if any(ms[i] == ms[i + 1] and chunks[i] > chunks[i + 1]
                           for i in range(k - 1)):
                        continue
                    row_choices = [itertools.combinations(range(cfg.r), c) for c in ms]
                    for rowsets in itertools.product(*row_choices):
                        yield FailurePattern.make(failed, dict(zip(chunks, rowsets)))


# ---------------------------------------------------------------------------
# stripe-loss probabilities: enumeration and published closed forms
# ---------------------------------------------------------------------------

def p_str_by_enumeration(n_chunks: int, probs, recoverable, max_count: int) -> float:
    """1 - sum of P(vector) over recoverable count vectors.

    Only vectors with all counts <= max_count can be recoverable, so the
    product enumeration over (max_count + 1)^n_chunks is exhaustive.
    """
    total = 0.0
    for vec in itertools.product(range(max_count + 1), repeat=n_chunks):
        if recoverable(vec):
            total += math.prod(probs[c] for c in vec)
    return 1.0 - total


def p_str_rs_closed(n_chunks: int, p) -> float:
    return 1 - p[0] ** n_chunks


def p_str_stair_single(s: int, n_chunks: int, p) -> float:
    """e = (s)."""
    n = n_chunks
    return (1 - p[0] ** n
            - math.comb(n, 1) * sum(p[i] for i in range(1, s + 1)) * p[0] ** (n - 1))


def p_str_stair_one_rest(s: int, n_chunks: int, p) -> float:
    """e = (1, s-1), s >= 2."""
    n = n_chunks
    return (1 - p[0] ** n
            - math.comb(n, 1) * sum(p[i] for i in range(1, s)) * p[0] ** (n - 1)
            - math.comb(n, 2) * p[1] ** 2 * p[0] ** (n - 2)
            - math.comb(n, 1) * math.comb(n - 1, 1)
            * sum(p[i] for i in range(2, s)) * p[1] * p[0] ** (n - 2))


def p_str_stair_two_rest(s: int, n_chunks: int, p) -> float:
    """e = (2, s-2), s >= 4."""
    n = n_chunks
    return (1 - p[0] ** n
            - math.comb(n, 1) * sum(p[i] for i in range(1, s - 1)) * p[0] ** (n - 1)
            - math.comb(n, 2) * p[1] ** 2 * p[0] ** (n - 2)
            - math.comb(n, 1) * math.comb(n - 1, 1)
            * sum(p[i] for i in range(2, s - 1)) * p[1] * p[0] ** (n - 2)
            - math.comb(n, 2) * p[2] ** 2 * p[0] ** (n - 2)
            - math.comb(n, 1) * math.comb(n - 1, 1)
            * sum(p[i] for i in range(3, s - 1)) * p[2] * p[0] ** (n - 2))


def p_str_stair_one_one_rest(s: int, n_chunks: int, p) -> float:
    """e = (1, 1, s-2), s >= 3."""
    n = n_chunks
    return (1 - p[0] ** n
            - math.comb(n, 1) * sum(p[i] for i in range(1, s - 1)) * p[0] ** (n - 1)
            - math.comb(n, 2) * p[1] ** 2 * p[0] ** (n - 2)
            - math.comb(n, 1) * math.comb(n - 1, 1)
            * sum(p[i] for i in range(2, s - 1)) * p[1] * p[0] ** (n - 2)
            - math.comb(n, 3) * p[1] ** 3 * p[0] ** (n - 3)
            - math.comb(n, 2) * math.comb(n - 2, 1)
            * sum(p[i] for i in range(2, s - 1)) * p[1] ** 2 * p[0] ** (n - 3))


def p_str_stair_all_ones(s: int, n_chunks: int, p) -> float:
    """e = (1, ..., 1) with s entries."""
    n = n_chunks
    return 1 - sum(math.comb(n, i) * p[1] ** i * p[0] ** (n - i) for i in range(s + 1))


def p_str_sd_closed(s: int, n_chunks: int, p) -> float:
    n = n_chunks
    if s == 1:
        return (1 - p[0] ** n
                - math.comb(n, 1) * p[1] * p[0] ** (n - 1))
    if s == 2:
        return (1 - p[0] ** n
                - math.comb(n, 1) * (p[1] + p[2]) * p[0] ** (n - 1)
                - math.comb(n, 2) * p[1] ** 2 * p[0] ** (n - 2))
    if s == 3:
        return (1 - p[0] ** n
                - math.comb(n, 1) * (p[1] + p[2] + p[3]) * p[0] ** (n - 1)
                - math.comb(n, 2) * p[1] ** 2 * p[0] ** (n - 2)
                - math.comb(n, 1) * math.comb(n - 1, 1) * p[2] * p[1] * p[0] ** (n - 2)
                - math.comb(n, 3) * p[1] ** 3 * p[0] ** (n - 3))
    raise ValueError(s)
