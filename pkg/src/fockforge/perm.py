"""Permutations in one-line notation: ``p[k-1] = p(k)``, values 1..n."""

from __future__ import annotations

import itertools


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def validate(p) -> tuple[int, ...]:
    p = tuple(int(a) for a in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def compose(p, q) -> tuple[int, ...]:
    """(p o q)(k) = p(q(k))."""
    if len(p) != len(q):
        raise ValueError("permutations of different degree")
    return tuple(p[q[k] - 1] for k in range(len(q)))


def inverse(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for k, v in enumerate(p, start=1):
        inv[v - 1] = k
    return tuple(inv)


def transposition(i: int, n: int) -> tuple[int, ...]:
    """The adjacent transposition s_i = (i i+1) in S_n."""
    if not 1 <= i < n:
        raise ValueError(f"adjacent transposition s_{i} not in S_{n}")
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def from_cycle(cycle, n: int) -> tuple[int, ...]:
    """The cycle (c1 c2 ... cr): c1 -> c2 -> ... -> cr -> c1."""
    p = list(range(1, n + 1))
    cycle = list(cycle)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        p[a - 1] = b
    return validate(p)


def reduced_word(p) -> list[int]:
    """Slots i_1..i_k with p = s_{i_1} o ... o s_{i_k} and k = length(p)."""
    p = list(validate(p))
    word: list[int] = []
    while True:
        for i in range(1, len(p)):
            if p[i - 1] > p[i]:
                p[i - 1], p[i] = p[i], p[i - 1]
                word.insert(0, i)
                break
        else:
            return word


def length(p) -> int:
    p = validate(p)
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def sign(p) -> int:
    return -1 if length(p) % 2 else 1


def all_perms(n: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]
