"""Partitions, determinant exponents and colored-monomial basis labels.

A partition is a tuple of weakly decreasing positive ints.  A colored
partition is a tuple of (part, color) pairs with parts weakly decreasing
and colors weakly increasing within runs of equal parts, each color i
satisfying d_i | part; these label all three bases of the polynomial
algebra at a given degree, in one global order shared with the gram
module (partition enumeration order, then color-tuple lexicographic).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb
from typing import Dict, Tuple

from .exact import InternalCheckError
from .roots import AffineType, finite_root_data, index_set

Partition = Tuple[int, ...]
ColoredPartition = Tuple[Tuple[int, int], ...]


def _gen_partitions(remaining: int, maxpart: int):
    if remaining == 0:
        yield ()
        return
    for first in range(min(remaining, maxpart), 0, -1):
        for rest in _gen_partitions(remaining - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(d: int) -> Tuple[Partition, ...]:
    """All partitions of d in reverse lexicographic order, (d) first."""
    if d < 0:
        raise ValueError("cannot partition a negative integer")
    return tuple(_gen_partitions(d, d)) if d else ((),)


def multiplicities(lam: Partition) -> Dict[int, int]:
    """Gather equal parts: (3, 1, 1) -> {3: 1, 1: 2}."""
    return dict(Counter(lam))


def partition_from_multiplicities(mult: Dict[int, int]) -> Partition:
    parts = []
    for n in sorted(mult, reverse=True):
        parts.extend([n] * mult[n])
    return tuple(parts)


@lru_cache(maxsize=None)
def _runs(lam: Partition):
    """Multiplicity runs of a partition in part-descending order."""
    out = []
    for n in sorted(set(lam), reverse=True):
        out.append((n, sum(1 for p in lam if p == n)))
    return tuple(out)


def exponents(t: AffineType, lam: Partition) -> Tuple[int, int]:
    """The determinant exponents (a_lam, b_lam) for one partition.

    a_lam multiplies binomial coefficients over all part sizes by the sum
    of r_i / ell over part sizes divisible by r; b_lam uses the sum of
    r_i / k over the remaining part sizes.  Both are provably integers,
    which is asserted rather than rounded.  An empty sum gives 0, which
    also settles the k = 0 case of the untwisted types where no part size
    ever lands in the b-branch.
    """
    prod = 1
    s_div = 0
    s_ndiv = 0
    for n, m in _runs(lam):
        if n % t.r == 0:
            prod *= comb(t.ell + m - 1, m)
            s_div += m
        else:
            prod *= comb(t.k + m - 1, m)
            s_ndiv += m
    if s_div:
        num = prod * s_div
        if num % t.ell:
            raise InternalCheckError("a_lam is not integral for %s, %s" % (t, lam))
        a = num // t.ell
    else:
        a = 0
    if s_ndiv:
        num = prod * s_ndiv
        if num % t.k:
            raise InternalCheckError("b_lam is not integral for %s, %s" % (t, lam))
        b = num // t.k
    else:
        b = 0
    return a, b


def exponent_totals(t: AffineType, d: int) -> Tuple[int, int]:
    """(a(d), b(d)): the exponent sums over all partitions of d."""
    a = b = 0
    for lam in enumerate_partitions(d):
        al, bl = exponents(t, lam)
        a += al
        b += bl
    return a, b


@lru_cache(maxsize=None)
def enumerate_basis(t: AffineType, d: int) -> Tuple[ColoredPartition, ...]:
    """All colored partitions of degree d in the global basis order.

    For each partition (reverse-lex order) the colorings run through the
    product, over part-size runs in descending part order, of weakly
    increasing color tuples drawn from I(part); the leftmost (largest)
    run varies slowest.  This matches the row order of the block-diagonal
    z-to-y transition matrix built from symmetric powers via kron.
    """
    data = finite_root_data(t)
    out = []
    for lam in enumerate_partitions(d):
        per_run = []
        for n, m in _runs(lam):
            colors = index_set(t, n, data)
            per_run.append([c for c in combinations_with_replacement(colors, m)])
        for choice in product(*per_run):
            mono = []
            for (n, m), colors in zip(_runs(lam), choice):
                mono.extend((n, c) for c in colors)
            out.append(tuple(mono))
    return tuple(out)
