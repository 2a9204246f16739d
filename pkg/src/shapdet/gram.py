"""The polynomial algebra in the y-generators and its two contravariant forms.

Monomials are colored partitions (shared with the partitions module), so
one global basis order serves the x-, y- and z-bases alike.  The S-form
is evaluated by the operator recursion

    (y_n^(i) * rest, f)_S = (d_i / n) * sum_j a^(n)_{ij} (rest, df/dy_n^(j))_S

and the K-form by the same recursion with the pairing matrix replaced by
the identity.  The z-generators use the column-normalized coefficients
a^(n)_{ij} d_i / d_j (a diagonal conjugation of A^(n), so all block
determinants are unchanged); with those, (y_c, f)_S = (z_c, f)_K holds on
the nose and the Gram matrix of the S-form factors exactly as
M = P Q P^-1 N through the transition matrices to the y-basis.

Form values are memoized on canonical monomial pairs.  The memo is a
grow-only dict with idempotent inserts: entries may be computed in any
order (or concurrently) with bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Tuple

from .exact import (ExactMatrix, InternalCheckError, as_integer, det_exact,
                    invert, kron, sym_power)
from .partitions import (ColoredPartition, enumerate_basis,
                         enumerate_partitions, exponent_totals, _runs)
from .roots import AffineType, FiniteRootData, a_matrix, finite_root_data, index_set

Monomial = ColoredPartition
BPolynomial = Dict[Monomial, object]


def _mono_sorted(factors) -> Monomial:
    return tuple(sorted(factors, key=lambda f: (-f[0], f[1])))


def mono_degree(mono: Monomial) -> int:
    return sum(n for n, _ in mono)


def poly_mul(p1: BPolynomial, p2: BPolynomial) -> BPolynomial:
    out: BPolynomial = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            key = _mono_sorted(m1 + m2)
            c = c1 * c2
            cur = out.get(key)
            val = c if cur is None else cur + c
            if val:
                out[key] = val
            elif cur is not None:
                del out[key]
    return out


@lru_cache(maxsize=None)
def _x_generator(t: AffineType, n: int, i: int) -> Tuple[Tuple[Monomial, Fraction], ...]:
    """Expansion of the generator x_n^(i) in y-monomials.

    x_n^(i) = sum over partitions (1^k1 2^k2 ...) of n/d_i of the monomial
    prod_j (y_{j d_i}^(i))^{k_j} with coefficient prod_j 1/k_j!.
    """
    di = finite_root_data(t).d[i]
    if n % di:
        raise ValueError("color %d requires parts divisible by %d" % (i, di))
    out = []
    for lam in enumerate_partitions(n // di):
        coeff = Fraction(1)
        factors = []
        for j, kj in _runs(lam):
            coeff /= factorial(kj)
            factors.extend([(j * di, i)] * kj)
        out.append((_mono_sorted(factors), coeff))
    return tuple(out)


def x_in_y(t: AffineType, item) -> BPolynomial:
    """Expand a single x-generator (n, i) or a whole colored partition.

    Returns the y-monomial expansion with exact rational coefficients.
    """
    if item and isinstance(item[0], int):
        item = (item,)
    poly: BPolynomial = {(): Fraction(1)}
    for n, i in item:
        poly = poly_mul(poly, dict(_x_generator(t, n, i)))
    return poly


class FormEngine:
    """Evaluates the S- and K-forms for one type with shared memo tables.

    ``data`` may override the built-in root data (used by the CLI fixture
    hook); ``memoize=False`` recomputes every pair from scratch, which the
    tests use to confirm the memo is observationally pure.
    """

    def __init__(self, t: AffineType, data: Optional[FiniteRootData] = None,
                 memoize: bool = True):
        self.type = t
        self.data = data if data is not None else finite_root_data(t)
        self.memoize = memoize
        self._ops: Dict[int, Dict[int, Tuple[Tuple[int, object], ...]]] = {}
        self._zops: Dict[int, Dict[int, Tuple[Tuple[int, object], ...]]] = {}
        self._memo_s: Dict[Tuple[Monomial, Monomial], object] = {}
        self._memo_k: Dict[Tuple[Monomial, Monomial], object] = {}

    def a_matrix(self, n: int):
        return a_matrix(self.type, n, None if self.data is finite_root_data(self.type)
                        else self.data)

    def _operator_rows(self, n: int):
        """Per color i in I(n): the nonzero (j, a^(n)_{ij}) pairs."""
        rows = self._ops.get(n)
        if rows is None:
            am = self.a_matrix(n)
            rows = {}
            for pi, i in enumerate(am.index_set):
                rows[i] = tuple((j, am.matrix.rows[pi][pj])
                                for pj, j in enumerate(am.index_set)
                                if am.matrix.rows[pi][pj])
            self._ops[n] = rows
        return rows

    def z_rows(self, n: int):
        """Per color i: the nonzero (j, a^(n)_{ij} d_i / d_j) pairs."""
        rows = self._zops.get(n)
        if rows is None:
            am = self.a_matrix(n)
            d = self.data.d
            rows = {}
            for pi, i in enumerate(am.index_set):
                entries = []
                for pj, j in enumerate(am.index_set):
                    v = am.matrix.rows[pi][pj]
                    if v:
                        if d[i] != d[j]:
                            v = v * Fraction(d[i], d[j])
                        entries.append((j, v))
                rows[i] = tuple(entries)
            self._zops[n] = rows
        return rows

    def z_block(self, n: int) -> ExactMatrix:
        """The column-normalized pairing matrix D A^(n) D^-1 over I(n)."""
        am = self.a_matrix(n)
        d = self.data.d
        rows = []
        for pi, i in enumerate(am.index_set):
            row = []
            for pj, j in enumerate(am.index_set):
                v = am.matrix.rows[pi][pj]
                if v and d[i] != d[j]:
                    v = v * Fraction(d[i], d[j])
                row.append(v)
            rows.append(row)
        return ExactMatrix(rows)

    # -- monomial-pair recursions ------------------------------------------

    def form_s_mono(self, left: Monomial, right: Monomial):
        if not left:
            return 1 if not right else 0
        if mono_degree(left) != mono_degree(right):
            return 0
        key = (left, right)
        if self.memoize:
            hit = self._memo_s.get(key)
            if hit is not None:
                return hit
        n, i = left[0]
        rest = left[1:]
        total = 0
        for j, aij in self._operator_rows(n)[i]:
            mult, reduced = _remove_one(right, (n, j))
            if mult:
                child = self.form_s_mono(rest, reduced)
                if child:
                    total = total + aij * (mult * child)
        value = total * Fraction(self.data.d[i], n) if total else 0
        if self.memoize:
            self._memo_s[key] = value
        return value

    def form_k_mono(self, left: Monomial, right: Monomial):
        if not left:
            return 1 if not right else 0
        if mono_degree(left) != mono_degree(right):
            return 0
        key = (left, right)
        if self.memoize:
            hit = self._memo_k.get(key)
            if hit is not None:
                return hit
        n, i = left[0]
        mult, reduced = _remove_one(right, (n, i))
        if mult:
            value = Fraction(self.data.d[i] * mult, n) * self.form_k_mono(left[1:], reduced)
        else:
            value = 0
        if self.memoize:
            self._memo_k[key] = value
        return value

    # -- bilinear extensions -----------------------------------------------

    def form_s(self, f, g):
        f, g = _as_poly(f), _as_poly(g)
        total = 0
        for mf, cf in f.items():
            for mg, cg in g.items():
                v = self.form_s_mono(mf, mg)
                if v:
                    total = total + cf * cg * v
        return total

    def form_k(self, f, g):
        f, g = _as_poly(f), _as_poly(g)
        total = 0
        for mf, cf in f.items():
            for mg, cg in g.items():
                v = self.form_k_mono(mf, mg)
                if v:
                    total = total + cf * cg * v
        return total

    def z_in_y(self, mono: Monomial) -> BPolynomial:
        """Expansion of a z-monomial in the y-basis."""
        poly: BPolynomial = {(): 1}
        for n, i in mono:
            poly = poly_mul(poly, {((n, j),): v for j, v in self.z_rows(n)[i]})
        return poly


def _remove_one(mono: Monomial, factor):
    """Multiplicity of factor in mono and mono with one copy removed."""
    try:
        pos = mono.index(factor)
    except ValueError:
        return 0, None
    m = 1
    q = pos + 1
    while q < len(mono) and mono[q] == factor:
        m += 1
        q += 1
    return m, mono[:pos] + mono[pos + 1:]


def _as_poly(f) -> BPolynomial:
    if isinstance(f, dict):
        return f
    return {f: 1}


def form_s(t: AffineType, f, g, data=None, memoize=True):
    """(f, g)_S via a fresh engine; for bulk work construct a FormEngine."""
    return FormEngine(t, data, memoize).form_s(f, g)


def form_k(t: AffineType, f, g, data=None, memoize=True):
    return FormEngine(t, data, memoize).form_k(f, g)


def transition_matrices(t: AffineType, d: int,
                        data: Optional[FiniteRootData] = None
                        ) -> Tuple[ExactMatrix, ExactMatrix]:
    """The x-to-y matrix P and the block-diagonal z-to-y matrix Q at degree d.

    Rows are labeled by the expanded basis element, columns by the target
    y-monomial, both in the global basis order; Q's lambda-block is the
    kron (largest part leftmost) of symmetric powers of the z-coefficient
    matrices, which reproduces exactly the coloring enumeration order.
    """
    engine = FormEngine(t, data)
    basis = enumerate_basis(t, d)
    index = {mono: pos for pos, mono in enumerate(basis)}
    size = len(basis)

    p_rows = []
    for mono in basis:
        row = [0] * size
        for target, coeff in x_in_y(t, mono).items():
            row[index[target]] = coeff
        p_rows.append(row)
    P = ExactMatrix(p_rows)

    q_rows = [[0] * size for _ in range(size)]
    offset = 0
    for lam in enumerate_partitions(d):
        block = None
        for n, m in _runs(lam):
            factor = sym_power(engine.z_block(n), m)
            block = factor if block is None else kron(block, factor)
        if block is None:  # empty partition: 1x1 identity block
            block = ExactMatrix([[1]])
        for bi in range(block.nrows):
            q_rows[offset + bi][offset:offset + block.ncols] = block.rows[bi]
        offset += block.nrows
    if offset != size:
        raise InternalCheckError("Q blocks do not tile the basis")
    return P, ExactMatrix(q_rows)


def gram_matrices(t: AffineType, d: int,
                  data: Optional[FiniteRootData] = None,
                  engine: Optional[FormEngine] = None
                  ) -> Tuple[ExactMatrix, ExactMatrix]:
    """Gram matrices (M, N) of the S- and K-forms on the x-basis at degree d.

    M is asserted to have integer entries and be symmetric; N to have
    integer entries.  Violations raise InternalCheckError since they can
    only come from a recursion or root-data bug.
    """
    if engine is None:
        engine = FormEngine(t, data)
    basis = enumerate_basis(t, d)
    expansions = [x_in_y(t, mono) for mono in basis]
    size = len(basis)
    M = [[0] * size for _ in range(size)]
    N = [[0] * size for _ in range(size)]
    for a in range(size):
        fa = expansions[a]
        for b in range(a, size):
            fb = expansions[b]
            s_val = engine.form_s(fa, fb)
            k_val = 0
            for mono, ca in fa.items():  # K is diagonal on monomials
                cb = fb.get(mono)
                if cb is not None:
                    k_val = k_val + ca * cb * engine.form_k_mono(mono, mono)
            try:
                M[a][b] = M[b][a] = as_integer(s_val)
                N[a][b] = N[b][a] = as_integer(k_val)
            except InternalCheckError as exc:
                raise InternalCheckError(
                    "non-integer Gram entry at %s degree %d (%s, %s): %s"
                    % (t, d, basis[a], basis[b], exc)) from exc
    return ExactMatrix(M), ExactMatrix(N)


@dataclass
class GramReport:
    """Everything the degree-d verification produced, plus the verdicts."""

    type: AffineType
    d: int
    basis: Tuple[Monomial, ...]
    predicted_a: int
    predicted_b: int
    predicted_det: int
    M: Optional[ExactMatrix] = None
    N: Optional[ExactMatrix] = None
    P_mat: Optional[ExactMatrix] = None
    Q_mat: Optional[ExactMatrix] = None
    det_M: Optional[int] = None
    det_N: Optional[int] = None
    identity_ok: bool = False
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        out = {
            "type": self.type.name,
            "d": self.d,
            "basis_size": len(self.basis),
            "predicted": {
                "a": self.predicted_a,
                "b": self.predicted_b,
                "alpha": self.type.alpha,
                "beta": self.type.beta,
                "determinant": self.predicted_det,
                "factored": "%d^%d * %d^%d" % (self.type.alpha, self.predicted_a,
                                               self.type.beta, self.predicted_b),
            },
            "det_M": self.det_M,
            "det_N": self.det_N,
            "identity_ok": self.identity_ok,
            "pass": self.ok,
            "failures": list(self.failures),
        }
        return out


def verify(t: AffineType, d: int,
           data: Optional[FiniteRootData] = None) -> GramReport:
    """Run the full degree-d verification and report every check's outcome.

    Failed checks (wrong determinant, broken factorization identity,
    non-integer Gram entries) are recorded in the report rather than
    raised, so a deliberately corrupted fixture yields a clean failing
    report.
    """
    a_d, b_d = exponent_totals(t, d)
    predicted = t.alpha ** a_d * t.beta ** b_d
    report = GramReport(t, d, enumerate_basis(t, d), a_d, b_d, predicted)
    engine = FormEngine(t, data)
    try:
        M, N = gram_matrices(t, d, engine=engine)
    except InternalCheckError as exc:
        report.failures.append(str(exc))
        return report
    report.M, report.N = M, N
    P, Q = transition_matrices(t, d, data)
    report.P_mat, report.Q_mat = P, Q

    if not M.is_symmetric():
        report.failures.append("M is not symmetric")
    report.det_M = as_integer(det_exact(M))
    report.det_N = as_integer(det_exact(N))
    if report.det_N != 1:
        report.failures.append("det N = %d, expected 1" % report.det_N)
    rhs = P @ Q @ invert(P) @ N
    report.identity_ok = (M == rhs)
    if not report.identity_ok:
        report.failures.append("M != P Q P^-1 N")
    if report.det_M != predicted:
        report.failures.append("det M = %d, predicted %d (= %d^%d * %d^%d)"
                               % (report.det_M, predicted, t.alpha, a_d,
                                  t.beta, b_d))
    return report
