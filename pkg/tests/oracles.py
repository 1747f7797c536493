"""Brute-force reference computations.

Nothing here imports the package: each helper is a direct transcription of
a definition, slow but obviously right.
"""
import itertools
from collections import Counter, defaultdict


def windows(x, L):
    return [tuple(x[i:i + L]) for i in range(len(x) - L + 1)]


def profile_of(strands, L):
    """Profile as a sorted tuple, so it can be a dict key."""
    return tuple(sorted(w for s in strands for w in windows(s, L)))


def all_strings(q, n):
    return [tuple(t) for t in itertools.product(range(q), repeat=n)]


def all_multisets(q, n, k):
    """Every multiset of k strands, built from ordered tuples then deduplicated."""
    seen = set()
    for tup in itertools.product(all_strings(q, n), repeat=k):
        seen.add(tuple(sorted(tup)))
    return sorted(seen)


def profile_classes(q, n, k, L):
    """Map profile -> list of multisets having it."""
    classes = defaultdict(list)
    for S in all_multisets(q, n, k):
        classes[profile_of(S, L)].append(S)
    return classes


def distinct_windows(strands, L):
    ws = [w for s in strands for w in windows(s, L)]
    return len(ws) == len(set(ws))


def longest_zero_run(x):
    best = run = 0
    for s in x:
        run = run + 1 if s == 0 else 0
        best = max(best, run)
    return best


def rll_counts(N, q, Ms):
    """``{M: number of length-N strings with no M zeros in a row}``."""
    runs = Counter(longest_zero_run(x) for x in itertools.product(range(q), repeat=N))
    return {M: sum(c for r, c in runs.items() if r < M) for M in Ms}


def multiset_count(q, n, k):
    """Size of the channel by counting sorted tuples directly."""
    return sum(1 for _ in itertools.combinations_with_replacement(range(q ** n), k))
