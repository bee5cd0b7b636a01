"""Exact combinatorics of integer partitions indexing root-multiplicity strata."""

from __future__ import annotations

from collections import Counter
from math import comb, factorial, prod
from typing import Iterable, Iterator

__all__ = [
    "Partition",
    "ones",
    "hook",
    "down1",
    "up1",
    "uplus",
    "gamma",
    "divisor_placements",
    "merge_leq",
    "aut_order",
    "deg_Dmu",
    "dual_dims",
    "dual_degree_bound",
    "dual_degree_bound_closed",
    "resolutions",
    "res_down1_classes",
    "res_down1_count",
    "partitions_of",
]


class Partition(tuple):
    """Non-increasing tuple of positive integers.

    Zero entries are dropped on construction, so ``Partition((2, 0, 1))``
    equals ``Partition((2, 1))``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, sorted((p for p in parts if p), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"``; the empty string gives the empty partition."""
        text = text.strip().strip("()[]")
        if not text:
            return cls()
        return cls(int(t) for t in text.split(","))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def padded(self, n: int) -> tuple:
        if n < len(self):
            raise ValueError("cannot pad to fewer slots than parts")
        return tuple(self) + (0,) * (n - len(self))

    def __repr__(self):
        return f"Partition({tuple(self)})"


def ones(n: int) -> Partition:
    return Partition((1,) * n)


def hook(k: int, d: int) -> Partition:
    """The hook ``(k, 1, ..., 1)`` of weight ``d``."""
    if not 1 <= k <= d:
        raise ValueError("need 1 <= k <= d")
    return Partition((k,) + (1,) * (d - k))


def down1(mu: Partition) -> Partition:
    return Partition(p - 1 for p in mu)


def up1(mu: Partition) -> Partition:
    return Partition(p + 1 for p in mu if p >= 2)


def uplus(mu: Partition, nu: Partition) -> Partition:
    return Partition(tuple(mu) + tuple(nu))


def divisor_placements(kappa: Partition, tau: Partition) -> Iterator[tuple]:
    """Distinct rearrangements of zero-padded ``kappa`` lying under ``tau``.

    Each yielded tuple assigns an exponent to every part of ``tau``.
    """
    kappa, tau = Partition(kappa), Partition(tau)
    if len(kappa) > len(tau):
        return
    stock = Counter(kappa.padded(len(tau)))
    slot = [0] * len(tau)

    def place(i):
        if i == len(tau):
            yield tuple(slot)
            return
        for value in sorted(stock):
            if stock[value] and value <= tau[i]:
                stock[value] -= 1
                slot[i] = value
                yield from place(i + 1)
                stock[value] += 1

    yield from place(0)


def gamma(kappa: Partition, tau: Partition) -> int:
    """Number of distinct shape-``kappa`` monic divisors of a shape-``tau`` polynomial."""
    return sum(1 for _ in divisor_placements(kappa, tau))


def _bin_assignments(children: tuple, bins: tuple) -> Iterator[tuple]:
    """Ways to distribute ``children`` over labelled bins filling each exactly.

    Yields one tuple of sorted child tuples per bin; duplicates that differ
    only by swapping equal children are not produced.
    """
    left = list(bins)
    held = [[] for _ in bins]

    def go(i, first_bin):
        if i == len(children):
            if not any(left):
                yield tuple(tuple(sorted(h, reverse=True)) for h in held)
            return
        c = children[i]
        for b in range(first_bin, len(bins)):
            if left[b] >= c:
                left[b] -= c
                held[b].append(c)
                # equal children go to non-decreasing bin indices
                nxt = i + 1
                yield from go(nxt, b if nxt < len(children) and children[nxt] == c else 0)
                held[b].pop()
                left[b] += c

    yield from go(0, 0)


def merge_leq(nu: Partition, mu: Partition) -> bool:
    """True when ``nu`` arises from ``mu`` by merging groups of parts."""
    nu, mu = Partition(nu), Partition(mu)
    if nu.weight != mu.weight:
        raise ValueError(f"weight mismatch: {nu.weight} vs {mu.weight}")
    return next(_bin_assignments(tuple(mu), tuple(nu)), None) is not None


def aut_order(mu: Partition) -> int:
    return prod(factorial(c) for c in Counter(mu).values())


def deg_Dmu(mu: Partition) -> int:
    """Degree of the stratum closure: ``r! * prod(mu_i) / |aut(mu)|``."""
    mu = Partition(mu)
    num = factorial(len(mu)) * prod(mu)
    q, r = divmod(num, aut_order(mu))
    assert r == 0
    return q


def dual_dims(mu: Partition, d: int) -> tuple[int, int]:
    """``(dim of the projective dual, dim of the Gauss image)``."""
    mu = Partition(mu)
    if mu.weight != d:
        raise ValueError(f"partition weight {mu.weight} differs from d={d}")
    simple = mu.count(1)
    return d - 1 - simple, len(mu) - simple


def dual_degree_bound(mu: Partition) -> int:
    """Upper bound on the degree of the dual variety (binomial times degree)."""
    mu = Partition(mu)
    r, twos = len(mu), mu.count(2)
    return comb(r + twos, twos) * deg_Dmu(uplus(down1(mu), ones(r)))


def dual_degree_bound_closed(mu: Partition) -> int:
    """Same bound, expanded into factorials; cross-check for ``dual_degree_bound``."""
    mu = Partition(mu)
    r, simple = len(mu), mu.count(1)
    num = factorial(2 * r - simple) * prod(p - 1 for p in mu if p > 2)
    den = factorial(r) * prod(factorial(c) for v, c in Counter(mu).items() if v >= 2)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def resolutions(nu: Partition, mu: Partition) -> list[tuple]:
    """Equivalence classes of ``mu``-resolutions of a ``nu``-shaped divisor.

    Parents are the parts of ``nu`` in order (distinct roots, so labelled);
    a class is the tuple of child multiplicities attached to each parent.
    """
    nu, mu = Partition(nu), Partition(mu)
    if nu.weight != mu.weight:
        raise ValueError(f"weight mismatch: {nu.weight} vs {mu.weight}")
    out = sorted(set(_bin_assignments(tuple(mu), tuple(nu))))
    if not out:
        raise ValueError(f"{tuple(nu)} is not a merge of {tuple(mu)}")
    return out


def res_down1_classes(nu: Partition, mu: Partition) -> list[tuple]:
    """Resolutions after dropping simple children and lowering the rest by one."""
    reduced = {
        tuple(tuple(c - 1 for c in kids if c > 1) for kids in res)
        for res in resolutions(nu, mu)
    }
    return sorted(reduced)


def res_down1_count(nu: Partition, mu: Partition) -> int:
    return len(res_down1_classes(nu, mu))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))
