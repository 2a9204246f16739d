"""Exact scalar and matrix arithmetic.

Scalars are plain ``int``, ``fractions.Fraction`` or :class:`CycNumber`
(an element of Q(zeta_r), r <= 3).  Rationals embed into every Q(zeta_r),
so the three kinds mix freely inside matrix entries and polynomial
coefficients; only genuinely different cyclotomic orders refuse to mix.
No floating point anywhere.

All values are immutable, all operations referentially transparent, so
everything in this module is safe to call from concurrent code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import List, Sequence, Union

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "CycNumber"]


class InternalCheckError(RuntimeError):
    """An internally derived value failed a consistency assertion.

    Raised when a quantity that is provably integral (or provably equal to
    a table constant) comes out otherwise; it signals a transcription or
    recursion bug, not bad user input.
    """


class CycNumber:
    """Element ``a + b*zeta_r`` of the cyclotomic field Q(zeta_r), r in {1,2,3}.

    For r = 1 and r = 2 the root of unity is rational (1 and -1) and is
    folded into ``a``, so ``b`` is always 0 there.  For r = 3 products are
    reduced with zeta^2 = -1 - zeta.
    """

    __slots__ = ("order", "a", "b")

    def __init__(self, order: int, a: Rational = 0, b: Rational = 0):
        if order not in (1, 2, 3):
            raise ValueError("cyclotomic order must be 1, 2 or 3, got %r" % (order,))
        a = Fraction(a)
        b = Fraction(b)
        if b:
            if order == 1:  # zeta_1 = 1
                a, b = a + b, Fraction(0)
            elif order == 2:  # zeta_2 = -1
                a, b = a - b, Fraction(0)
        self.order = order
        self.a = a
        self.b = b

    @classmethod
    def zeta(cls, order: int) -> "CycNumber":
        """The distinguished primitive root of unity zeta_order."""
        return cls(order, 0, 1)

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.order != self.order:
                raise ValueError(
                    "cyclotomic order mismatch: %d vs %d" % (self.order, other.order)
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNumber(self.order, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.order, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNumber(self.order, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.order < 3:
            return CycNumber(self.order, self.a * o.a)
        # (a1 + b1 z)(a2 + b2 z) with z^2 = -1 - z
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        return CycNumber(3, a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if not self:
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.order)
        if self.order < 3:
            return CycNumber(self.order, 1 / self.a)
        # 1/(a + b z) = (a + b z^2) / N(a + b z) with N = a^2 - a b + b^2
        n = self.a * self.a - self.a * self.b + self.b * self.b
        return CycNumber(3, (self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = CycNumber(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CycNumber":
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        if self.order < 3:
            return self
        # conj(a + b z) = a + b z^2 = (a - b) - b z
        return CycNumber(3, self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        """Field norm down to Q; multiplicative."""
        if self.order < 3:
            return self.a
        return self.a * self.a - self.a * self.b + self.b * self.b

    @property
    def is_rational(self) -> bool:
        return not self.b

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("%s is not rational" % (self,))
        return self.a

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            if other.order == self.order:
                return self.a == other.a and self.b == other.b
            # Different orders compare equal only through Q.
            return not self.b and not other.b and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.order, self.a, self.b))

    def __str__(self):
        if not self.b:
            return str(self.a)
        z = "z%d" % self.order
        if not self.a:
            head = ""
        else:
            head = str(self.a)
        if self.b == 1:
            tail = z
        elif self.b == -1:
            tail = "-" + z
        else:
            tail = "%s*%s" % (self.b, z)
        if head and not tail.startswith("-"):
            return head + "+" + tail
        return head + tail

    def __repr__(self):
        return "CycNumber(%d, %s, %s)" % (self.order, self.a, self.b)


def as_integer(x: Scalar) -> int:
    """Convert an exact scalar known to be a rational integer, or raise.

    Raising :class:`InternalCheckError` here is deliberate: callers use this
    to assert integrality of derived quantities.
    """
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        raise InternalCheckError("expected an integer, got %s" % (x,))
    if isinstance(x, CycNumber):
        if x.b:
            raise InternalCheckError("expected an integer, got %s" % (x,))
        return as_integer(x.a)
    raise InternalCheckError("expected an integer, got %r" % (x,))


def _field_div(x, y):
    """Exact division valid for any mix of int/Fraction/CycNumber."""
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def _exact_div(x, y):
    """Division that is known to be exact (Bareiss pivots)."""
    if isinstance(x, int) and isinstance(y, int):
        q, rem = divmod(x, y)
        if rem:
            raise InternalCheckError("inexact division %s / %s" % (x, y))
        return q
    return x / y


class ExactMatrix:
    """Dense rectangular matrix over exact scalars."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        data = [list(r) for r in rows]
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows in matrix")
        self.rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for i in range(self.nrows)]
                            for j in range(self.ncols)])

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.nrows == other.nrows and self.ncols == other.ncols
                and all(self.rows[i][j] == other.rows[i][j]
                        for i in range(self.nrows) for j in range(self.ncols)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch %dx%d @ %dx%d"
                             % (self.nrows, self.ncols, other.nrows, other.ncols))
        out: List[List[Scalar]] = []
        for i in range(self.nrows):
            acc: List[Scalar] = [0] * other.ncols
            for t, x in enumerate(self.rows[i]):
                if not x:
                    continue
                brow = other.rows[t]
                for j, y in enumerate(brow):
                    if y:
                        acc[j] = acc[j] + x * y
            out.append(acc)
        return ExactMatrix(out)

    def __repr__(self):
        return "ExactMatrix(%r)" % (self.rows,)


def det_exact(m: ExactMatrix) -> Scalar:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Works over int entries without ever leaving the integers; over Fraction
    or CycNumber entries the divisions are field divisions.  Row pivoting
    only; the value is independent of pivot choice.
    """
    if not m.is_square:
        raise ValueError("determinant of a non-square %dx%d matrix"
                         % (m.nrows, m.ncols))
    n = m.nrows
    a = [row[:] for row in m.rows]
    sign = 1
    prev: Scalar = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_div(row_i[j] * pivot - aik * row_k[j], prev)
            row_i[k] = 0
        prev = pivot
    val = a[n - 1][n - 1]
    return val if sign == 1 else -val


def invert(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse via Gauss-Jordan; raises ZeroDivisionError if singular."""
    if not m.is_square:
        raise ValueError("inverse of a non-square %dx%d matrix"
                         % (m.nrows, m.ncols))
    n = m.nrows
    aug = [m.rows[i][:] + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        if pv != 1:
            aug[col] = [_field_div(x, pv) for x in aug[col]]
        prow = aug[col]
        for i in range(n):
            if i == col:
                continue
            f = aug[i][col]
            if not f:
                continue
            row = aug[i]
            for j in range(col, 2 * n):
                if prow[j]:
                    row[j] = row[j] - f * prow[j]
    return ExactMatrix([row[n:] for row in aug])


def sym_power(m: ExactMatrix, k: int) -> ExactMatrix:
    """Matrix of the induced map on degree-k monomials v_{j1}...v_{jk}.

    Basis: weakly increasing index tuples in lexicographic order.  Row I,
    column J holds the coefficient of the monomial J in the image of the
    monomial I under the substitution v_i -> sum_j m[i][j] v_j.  This is
    the same convention in which a product of z-generators expands into
    y-monomials, so the gram module can use these blocks verbatim.
    """
    if not m.is_square:
        raise ValueError("symmetric power of a non-square matrix")
    if k < 0:
        raise ValueError("symmetric power exponent must be >= 0")
    n = m.nrows
    basis = list(combinations_with_replacement(range(n), k))
    index = {mono: pos for pos, mono in enumerate(basis)}
    out = []
    for mono in basis:
        # Expand prod_t (sum_j m[mono_t][j] v_j), collapsing to sorted tuples.
        acc = {(): 1}
        for t in mono:
            row = m.rows[t]
            nxt: dict = {}
            for partial, coeff in acc.items():
                for j in range(n):
                    v = row[j]
                    if not v:
                        continue
                    key = tuple(sorted(partial + (j,)))
                    cur = nxt.get(key)
                    nxt[key] = coeff * v if cur is None else cur + coeff * v
            acc = nxt
        line = [0] * len(basis)
        for key, coeff in acc.items():
            line[index[key]] = coeff
        out.append(line)
    return ExactMatrix(out)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product with row/column index (i_a * b.nrows + i_b)."""
    out = []
    for ia in range(a.nrows):
        for ib in range(b.nrows):
            row = []
            arow = a.rows[ia]
            brow = b.rows[ib]
            for ja in range(a.ncols):
                x = arow[ja]
                if x:
                    row.extend(x * y for y in brow)
                else:
                    row.extend([0] * b.ncols)
            out.append(row)
    return ExactMatrix(out)
