"""Exact rational linear algebra.

Matrices and subspaces over Fraction, Pluecker coordinates, orthogonal
complements, total positivity tests, Vandermonde generators, and linear
sign feasibility via Fourier-Motzkin elimination.  No floating point:
every predicate here is a sign condition and is decided exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .signvec import SignVector


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/7', and Fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact arithmetic")
    return Fraction(x)


def vec(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(frac(x) for x in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch in dot product")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable matrix of Fractions (entries kept in lowest terms by
    Fraction itself)."""

    rows: tuple

    def __post_init__(self):
        if len(self.rows) == 0:
            raise ValueError("matrix needs at least one row")
        width = len(self.rows[0])
        if width == 0 or any(len(r) != width for r in self.rows):
            raise ValueError("rows must be nonempty and of equal length")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(tuple(vec(r) for r in rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.rows[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        cols = other.transpose().rows
        return RationalMatrix(tuple(tuple(dot(r, c) for c in cols) for r in self.rows))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self.matmul(other)

    def apply(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Matrix-vector product M v."""
        w = vec(v)
        return tuple(dot(r, w) for r in self.rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx))

    def determinant(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                if m[r][col] != 0:
                    f = m[r][col] * inv
                    for c in range(col, n):
                        m[r][c] -= f * m[col][c]
        return det

    def minor(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Fraction:
        return self.submatrix(row_idx, col_idx).determinant()

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column tuple)."""
        m = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pivot = next((i for i in range(r, nr) if m[i][c] != 0), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return RationalMatrix(tuple(tuple(row) for row in m)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace_rows(self):
        """Basis (tuple of row vectors) of {x : M x = 0}."""
        red, pivots = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * nc
            v[f] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -red.rows[r][f]
            basis.append(tuple(v))
        return tuple(basis)

    def to_json(self):
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        return cls.from_rows([[frac(x) for x in r] for r in data])


@dataclass(frozen=True)
class Subspace:
    """Row span in canonical reduced-row-echelon form; equality of spans is
    equality of the canonical bases.  ``basis_rows`` may be empty (dim 0)."""

    n: int
    basis_rows: tuple

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], n: Optional[int] = None) -> "Subspace":
        rows = [vec(r) for r in rows]
        if not rows:
            if n is None:
                raise ValueError("ambient dimension needed for the zero subspace")
            return cls(n=n, basis_rows=())
        if n is None:
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ambient dimension mismatch")
        red, pivots = RationalMatrix(tuple(rows)).rref()
        return cls(n=n, basis_rows=red.rows[: len(pivots)])

    @classmethod
    def from_matrix(cls, m: RationalMatrix) -> "Subspace":
        return cls.from_rows(m.rows)

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def matrix(self) -> RationalMatrix:
        if self.dim == 0:
            raise ValueError("zero subspace has no basis matrix")
        return RationalMatrix(self.basis_rows)

    def contains_vector(self, v: Sequence) -> bool:
        w = vec(v)
        if len(w) != self.n:
            raise ValueError("ambient dimension mismatch")
        residual = list(w)
        for row in self.basis_rows:
            p = next(i for i, x in enumerate(row) if x != 0)
            if residual[p] != 0:
                f = residual[p]
                residual = [x - f * y for x, y in zip(residual, row)]
        return all(x == 0 for x in residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.basis_rows)

    def orthogonal_complement(self) -> "Subspace":
        if self.dim == 0:
            ident = [[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)]
            return Subspace.from_rows(ident)
        return Subspace.from_rows(self.matrix().nullspace_rows(), n=self.n)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch")
        rows = self.orthogonal_complement().basis_rows + other.orthogonal_complement().basis_rows
        return Subspace.from_rows(rows, n=self.n).orthogonal_complement()

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_rows(self.basis_rows + other.basis_rows, n=self.n)

    def alt(self) -> "Subspace":
        rows = [tuple(x if j % 2 == 0 else -x for j, x in enumerate(r)) for r in self.basis_rows]
        return Subspace.from_rows(rows, n=self.n)

    def scale_columns(self, factors: Sequence) -> "Subspace":
        fs = vec(factors)
        if any(f == 0 for f in fs):
            raise ValueError("column scaling factors must be nonzero")
        rows = [tuple(x * f for x, f in zip(r, fs)) for r in self.basis_rows]
        return Subspace.from_rows(rows, n=self.n)

    def to_json(self):
        return {"n": self.n, "basis": [[str(x) for x in r] for r in self.basis_rows]}

    @classmethod
    def from_json(cls, data) -> "Subspace":
        return cls.from_rows([[frac(x) for x in r] for r in data["basis"]], n=data["n"])


@dataclass(frozen=True)
class PluckerVector:
    """Pluecker coordinates of a k-plane in R^n, stored in lex order of the
    k-subsets of {1..n} and scaled so the first nonzero coordinate is +1."""

    n: int
    k: int
    coords: tuple

    @classmethod
    def from_coords(cls, n: int, k: int, coords: Sequence) -> "PluckerVector":
        cs = vec(coords)
        expected = _n_choose_k(n, k)
        if len(cs) != expected:
            raise ValueError(f"expected {expected} coordinates, got {len(cs)}")
        lead = next((c for c in cs if c != 0), None)
        if lead is None:
            raise ValueError("Pluecker vector must not be identically zero")
        inv = 1 / lead
        return cls(n=n, k=k, coords=tuple(c * inv for c in cs))

    def subsets(self):
        return itertools.combinations(range(1, self.n + 1), self.k)

    def coord(self, subset) -> Fraction:
        key = tuple(sorted(subset))
        for s, c in zip(self.subsets(), self.coords):
            if s == key:
                return c
        raise KeyError(f"{subset} is not a {self.k}-subset of [{self.n}]")

    def items(self):
        return list(zip(self.subsets(), self.coords))

    def support(self) -> frozenset:
        return frozenset(frozenset(s) for s, c in self.items() if c != 0)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.coords)


def _n_choose_k(n: int, k: int) -> int:
    import math

    return math.comb(n, k)


def pluecker(v: Subspace) -> PluckerVector:
    """Pluecker coordinates of the row span, canonicalized by the first
    nonzero coordinate in lex subset order (the RREF pivot minor)."""
    k = v.dim
    if k == 0:
        raise ValueError("Pluecker coordinates need dim >= 1")
    m = v.matrix()
    rows = tuple(range(k))
    coords = [m.minor(rows, tuple(j - 1 for j in subset))
              for subset in itertools.combinations(range(1, v.n + 1), k)]
    return PluckerVector.from_coords(v.n, k, coords)


def orthogonal_complement(v: Subspace) -> Subspace:
    return v.orthogonal_complement()


def is_totally_positive(a: RationalMatrix, maximal_only: bool = True) -> bool:
    """All r x r minors positive (maximal_only), or all minors of all sizes
    positive (a fully totally positive matrix)."""
    r, c = a.shape
    if maximal_only:
        if r > c:
            raise ValueError("need nrows <= ncols for maximal minors")
        rows = tuple(range(r))
        return all(a.minor(rows, cols) > 0 for cols in itertools.combinations(range(c), r))
    for size in range(1, min(r, c) + 1):
        for rows in itertools.combinations(range(r), size):
            for cols in itertools.combinations(range(c), size):
                if a.minor(rows, cols) <= 0:
                    return False
    return True


def subspace_is_totally_positive(v: Subspace) -> bool:
    return pluecker(v).is_positive()


def subspace_is_totally_nonnegative(v: Subspace) -> bool:
    if v.dim == 0:
        return True
    return pluecker(v).is_nonnegative()


def vandermonde_matrix(t: Sequence, d: int) -> RationalMatrix:
    """d x n matrix with rows (t_i^j)_i for j = 0..d-1; totally positive for
    increasing positive t."""
    ts = vec(t)
    if any(x <= 0 for x in ts) or any(ts[i] >= ts[i + 1] for i in range(len(ts) - 1)):
        raise ValueError("need strictly increasing positive parameters")
    if not 1 <= d <= len(ts):
        raise ValueError("need 1 <= d <= n")
    return RationalMatrix(tuple(tuple(x ** j for x in ts) for j in range(d)))


def vandermonde_subspace(t: Sequence, d: int) -> Subspace:
    """Span of the moment rows (t_i^j), j = 0..d-1."""
    return Subspace.from_matrix(vandermonde_matrix(t, d))


# --- linear sign feasibility (Fourier-Motzkin over exact rationals) ---

RELATIONS = (">0", ">=0", "=0", "<=0", "<0")


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[tuple]

    def __bool__(self) -> bool:
        return self.feasible


def _normalize_row(coeffs):
    lead = next((c for c in coeffs[:-1] if c != 0), None)
    if lead is None:
        return coeffs
    inv = 1 / abs(lead)
    return tuple(c * inv for c in coeffs)


def sign_feasible(constraints, n_vars: int) -> FeasibilityResult:
    """Decide whether affine sign constraints admit a solution.

    Each constraint is ``(row, rel)`` where ``row`` has ``n_vars + 1``
    rational entries (coefficients then constant) and ``rel`` is one of
    '>0', '>=0', '=0', '<=0', '<0', read as: row . (x, 1) rel 0.  Returns
    an exact rational witness when feasible.
    """
    original = []
    eqs = []
    ineqs = []  # (row, strict) meaning row . (x,1) > 0 or >= 0
    for row, rel in constraints:
        r = vec(row)
        if len(r) != n_vars + 1:
            raise ValueError(f"constraint row needs {n_vars + 1} entries, got {len(r)}")
        original.append((r, rel))
        if rel == "=0":
            eqs.append(r)
        elif rel == ">0":
            ineqs.append((r, True))
        elif rel == ">=0":
            ineqs.append((r, False))
        elif rel == "<0":
            ineqs.append((tuple(-x for x in r), True))
        elif rel == "<=0":
            ineqs.append((tuple(-x for x in r), False))
        else:
            raise ValueError(f"unknown relation {rel!r}")

    # equality elimination by substitution
    eq_subs = []  # (var, row): x_var = -(row . (x,1) without var term)/coeff
    active = list(range(n_vars))
    pending = list(eqs)
    while pending:
        row = pending.pop()
        var = next((j for j in active if row[j] != 0), None)
        if var is None:
            if row[-1] != 0:
                return FeasibilityResult(False, None)
            continue
        eq_subs.append((var, row))
        active.remove(var)
        inv = 1 / row[var]

        def substitute(r):
            f = r[var] * inv
            if f == 0:
                return r
            return tuple(x - f * y for x, y in zip(r, row))

        pending = [substitute(r) for r in pending]
        ineqs = [(substitute(r), s) for r, s in ineqs]

    # Fourier-Motzkin elimination of the remaining variables
    fm_steps = []  # (var, lowers, uppers): rows at that stage
    rows = _clean_rows(ineqs)
    if rows is None:
        return FeasibilityResult(False, None)
    remaining = list(active)
    while remaining:
        var = min(
            remaining,
            key=lambda j: sum(1 for r, _ in rows if r[j] > 0) * sum(1 for r, _ in rows if r[j] < 0),
        )
        remaining.remove(var)
        lowers = [(r, s) for r, s in rows if r[var] > 0]
        uppers = [(r, s) for r, s in rows if r[var] < 0]
        passthrough = [(r, s) for r, s in rows if r[var] == 0]
        fm_steps.append((var, lowers, uppers))
        fresh = []
        for (lr, ls), (ur, us) in itertools.product(lowers, uppers):
            combined = tuple(lr[var] * u - ur[var] * x for x, u in zip(lr, ur))
            fresh.append((combined, ls or us))
        rows = _clean_rows(passthrough + fresh)
        if rows is None:
            return FeasibilityResult(False, None)

    # all variables gone: rows are constants, already validated by _clean_rows
    values = {}
    for var, lowers, uppers in reversed(fm_steps):
        lo = None
        for r, s in lowers:
            b = -_eval_partial(r, values, var) / r[var]
            if lo is None or b > lo[0] or (b == lo[0] and s):
                lo = (b, s)
        up = None
        for r, s in uppers:
            b = -_eval_partial(r, values, var) / r[var]
            if up is None or b < up[0] or (b == up[0] and s):
                up = (b, s)
        if lo is not None and up is not None:
            if lo[0] < up[0]:
                values[var] = (lo[0] + up[0]) / 2
            else:
                values[var] = lo[0]
        elif lo is not None:
            values[var] = lo[0] + 1
        elif up is not None:
            values[var] = up[0] - 1
        else:
            values[var] = Fraction(0)
    for var, row in reversed(eq_subs):
        rest = sum((row[j] * values[j] for j in range(n_vars) if j != var), row[-1])
        values[var] = -rest / row[var]
    witness = tuple(values.get(j, Fraction(0)) for j in range(n_vars))
    for r, rel in original:
        if not evaluate_constraint(r, rel, witness):
            raise AssertionError("Fourier-Motzkin witness violates a constraint")
    return FeasibilityResult(True, witness)


def _eval_partial(row, values, skip_var):
    total = row[-1]
    for j, val in values.items():
        if j != skip_var:
            total += row[j] * val
    return total


def _clean_rows(rows):
    """Drop duplicates and trivial rows; None when a row is contradictory."""
    seen = {}
    for r, strict in rows:
        if all(c == 0 for c in r[:-1]):
            const = r[-1]
            if const < 0 or (const == 0 and strict):
                return None
            continue
        key = _normalize_row(r)
        seen[key] = seen.get(key, False) or strict
    return [(tuple(k), s) for k, s in seen.items()]


def evaluate_constraint(row, rel, point) -> bool:
    """Check a single constraint at an exact point."""
    val = dot(row[:-1], vec(point)) + row[-1]
    return {
        ">0": val > 0,
        ">=0": val >= 0,
        "=0": val == 0,
        "<=0": val <= 0,
        "<0": val < 0,
    }[rel]


def sign_vector_of(values: Sequence) -> SignVector:
    return SignVector.from_values(values)
