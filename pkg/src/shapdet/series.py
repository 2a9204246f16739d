"""Truncated exact power series and the paper's generating functions.

All coefficients are exact ints (or Fractions when a division is forced).
Binary operations insist on equal truncation degrees so coefficient
provenance stays auditable; nothing is ever silently re-truncated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .roots import AffineType

Monomial = Tuple[int, int]  # (t-exponent, u-exponent)


class TruncSeries:
    """Power series in q truncated (inclusively) at a fixed max degree."""

    __slots__ = ("max_degree", "coeffs")

    def __init__(self, max_degree: int, coeffs=None):
        if max_degree < 0:
            raise ValueError("truncation degree must be >= 0")
        self.max_degree = max_degree
        if coeffs is None:
            coeffs = [0] * (max_degree + 1)
        else:
            coeffs = list(coeffs)
            if len(coeffs) != max_degree + 1:
                raise ValueError("coefficient list has wrong length")
        self.coeffs = coeffs

    @classmethod
    def one(cls, max_degree: int) -> "TruncSeries":
        s = cls(max_degree)
        s.coeffs[0] = 1
        return s

    def _check(self, other: "TruncSeries"):
        if self.max_degree != other.max_degree:
            raise ValueError("truncation degree mismatch: %d vs %d"
                             % (self.max_degree, other.max_degree))

    def __getitem__(self, d: int):
        return self.coeffs[d]

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return (self.max_degree == other.max_degree
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.max_degree,
                           [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.max_degree,
                           [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        D = self.max_degree
        out = [0] * (D + 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j in range(D + 1 - i):
                y = other.coeffs[j]
                if y:
                    out[i + j] += x * y
        return TruncSeries(D, out)

    def power(self, e: int) -> "TruncSeries":
        if e < 0:
            raise ValueError("series exponent must be >= 0")
        result = TruncSeries.one(self.max_degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def substitute(self, r: int) -> "TruncSeries":
        """q -> q^r: the degree-d coefficient moves to degree r*d."""
        if r < 1:
            raise ValueError("substitution power must be >= 1")
        out = [0] * (self.max_degree + 1)
        for d, x in enumerate(self.coeffs):
            if r * d > self.max_degree:
                break
            out[r * d] = x
        return TruncSeries(self.max_degree, out)

    def __repr__(self):
        return "TruncSeries(%d, %r)" % (self.max_degree, self.coeffs)


def partition_series(D: int) -> TruncSeries:
    """P(q): number of partitions, by Euler's pentagonal recurrence."""
    p = [0] * (D + 1)
    p[0] = 1
    for n in range(1, D + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return TruncSeries(D, p)


def divisor_series(D: int) -> TruncSeries:
    """T(q): number of divisors, by sieve."""
    tau = [0] * (D + 1)
    for i in range(1, D + 1):
        for j in range(i, D + 1, i):
            tau[j] += 1
    return TruncSeries(D, tau)


def dimension_series(t: AffineType, D: int) -> TruncSeries:
    """P(q)^k P(q^r)^(ell-k): graded dimension of the polynomial algebra."""
    P = partition_series(D)
    return P.power(t.k) * P.substitute(t.r).power(t.ell - t.k)


def ab_series(t: AffineType, D: int) -> Tuple[TruncSeries, TruncSeries]:
    """The exponent generating functions a(q) and b(q) of the given type."""
    P = partition_series(D)
    T = divisor_series(D)
    dim = P.power(t.k) * P.substitute(t.r).power(t.ell - t.k)
    Tr = T.substitute(t.r)
    return Tr * dim, (T - Tr) * dim


def cartan_series(p: int, D: int) -> TruncSeries:
    """N(q) = T(q) P(q)^(p-1): Cartan exponents of weight-d blocks."""
    if p < 2:
        raise ValueError("p must be >= 2")
    return divisor_series(D) * partition_series(D).power(p - 1)


def spin_cartan_series(p: int, D: int) -> TruncSeries:
    """N(q) = (T(q) - T(q^2)) P(q)^((p-1)/2) for spin superblocks."""
    if p < 3 or p % 2 == 0:
        raise ValueError("spin requires odd p >= 3")
    T = divisor_series(D)
    return (T - T.substitute(2)) * partition_series(D).power((p - 1) // 2)


class TwoVarSeries:
    """Series in q with polynomial coefficients in the two markers t, u.

    Coefficient d is a sparse map (t-exponent, u-exponent) -> int.  The
    marker degrees are bounded by the q degree (one marker per part), so
    no second truncation knob is needed.
    """

    __slots__ = ("max_degree", "coeffs")

    def __init__(self, max_degree: int, coeffs=None):
        self.max_degree = max_degree
        self.coeffs: List[Dict[Monomial, int]] = (
            [dict() for _ in range(max_degree + 1)] if coeffs is None else coeffs)

    @classmethod
    def one(cls, max_degree: int) -> "TwoVarSeries":
        s = cls(max_degree)
        s.coeffs[0][(0, 0)] = 1
        return s

    def __mul__(self, other: "TwoVarSeries") -> "TwoVarSeries":
        if self.max_degree != other.max_degree:
            raise ValueError("truncation degree mismatch")
        D = self.max_degree
        out = TwoVarSeries(D)
        for i, poly_a in enumerate(self.coeffs):
            if not poly_a:
                continue
            for j in range(D + 1 - i):
                poly_b = other.coeffs[j]
                if not poly_b:
                    continue
                target = out.coeffs[i + j]
                for (ta, ua), ca in poly_a.items():
                    for (tb, ub), cb in poly_b.items():
                        key = (ta + tb, ua + ub)
                        target[key] = target.get(key, 0) + ca * cb
        return out

    def at_ones(self) -> TruncSeries:
        """Substitute t = u = 1."""
        return TruncSeries(self.max_degree,
                           [sum(poly.values()) for poly in self.coeffs])

    def marker_derivative(self, which: str) -> TruncSeries:
        """d/dt or d/du followed by t = u = 1."""
        if which not in ("t", "u"):
            raise ValueError("marker must be 't' or 'u'")
        pos = 0 if which == "t" else 1
        return TruncSeries(self.max_degree,
                           [sum(c * key[pos] for key, c in poly.items())
                            for poly in self.coeffs])

    def coefficient(self, d: int, te: int, ue: int) -> int:
        return self.coeffs[d].get((te, ue), 0)


def _geometric(D: int, step: int, marker: int) -> TwoVarSeries:
    """1 / (1 - q^step * marker) with marker = t (0) or u (1)."""
    s = TwoVarSeries(D)
    j = 0
    while j * step <= D:
        key = (j, 0) if marker == 0 else (0, j)
        s.coeffs[j * step][key] = 1
        j += 1
    return s


def coloring_series(t: AffineType, D: int) -> TwoVarSeries:
    """G(q, t, u): colorings of partitions with marked part counts.

    The coefficient of q^d t^h u^i counts partitions of d having h parts
    divisible by r, each colored with one of ell colors, and i parts not
    divisible by r, each colored with one of k colors.
    """
    G = TwoVarSeries.one(D)
    for n in range(1, D + 1):
        if n * t.r <= D:
            factor = _geometric(D, n * t.r, 0)
            for _ in range(t.ell):
                G = G * factor
        if t.k:
            factor = _geometric(D, n, 1)
            numer = TwoVarSeries.one(D)
            if n * t.r <= D:
                numer.coeffs[n * t.r][(0, 1)] = -1
            for _ in range(t.k):
                G = G * factor * numer
    return G
