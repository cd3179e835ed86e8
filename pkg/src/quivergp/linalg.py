"""Exact dense linear algebra over the rationals and prime fields.

Scalars are plain Python values: ``fractions.Fraction`` for the rationals,
``int`` in ``[0, p)`` for a prime field.  A :class:`Field` descriptor fixes
the arithmetic and every :class:`Mat` carries its field, so mixing fields
is caught immediately.  Matrices are immutable and all operations are pure.

Row reduction over the rationals is fraction-free (Bareiss) on rows cleared
of denominators, which keeps intermediate entries integral; over F_2 rows
are packed into machine integers and reduced with bitwise xor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Operands live over different fields."""


class DimensionMismatchError(ValueError):
    """Operand shapes are incompatible."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals (``char == 0``) or the prime field F_p (``char == p``).

    Instances are interned, so fields compare by identity.
    """

    __slots__ = ("char",)
    _cache: dict[int, "Field"] = {}

    def __new__(cls, char: int = 0):
        if char in cls._cache:
            return cls._cache[char]
        if char != 0 and (char > 2**31 or not _is_prime(char)):
            raise ValueError(f"field characteristic must be 0 or a prime <= 2^31, got {char}")
        inst = object.__new__(cls)
        object.__setattr__(inst, "char", char)
        cls._cache[char] = inst
        return inst

    def __setattr__(self, *a):
        raise AttributeError("Field is immutable")

    def __repr__(self):
        return "Q" if self.char == 0 else f"F{self.char}"

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def promote(self, x):
        """Coerce an int or Fraction into a canonical element."""
        if self.char == 0:
            return Fraction(x)
        return int(x) % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return 1 / Fraction(a)
        return pow(a, self.char - 2, self.char)

    def elements(self):
        """All field elements; only available for prime fields."""
        if self.char == 0:
            raise ValueError("cannot enumerate the rationals")
        return range(self.char)


QQ = Field(0)
GF2 = Field(2)
GF3 = Field(3)


def GF(p: int) -> Field:
    return Field(p)


class Mat:
    """Immutable dense matrix over a fixed field, row-major tuples."""

    __slots__ = ("field", "rows", "cols", "entries", "_rref", "_hash")

    def __init__(self, field: Field, rows: int, cols: int, entries):
        entries = tuple(tuple(field.promote(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatchError(f"expected {rows}x{cols} entries")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_rref", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return Mat(field, len(rows), ncols, rows)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero
        return Mat(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return Mat(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    # -- basic structure ----------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field is other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field.char, self.rows, self.cols, self.entries)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Mat({self.field}, {self.rows}x{self.cols}: [{body}])"

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.entries for x in row)

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def _check_field(self, other: "Mat"):
        if self.field is not other.field:
            raise FieldMismatchError(f"mixed fields {self.field} and {other.field}")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix addition shape mismatch")
        add = self.field.add
        return Mat(self.field, self.rows, self.cols,
                   [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat(self.field, self.rows, self.cols, [[neg(a) for a in r] for r in self.entries])

    def scale(self, c) -> "Mat":
        c = self.field.promote(c)
        mul = self.field.mul
        return Mat(self.field, self.rows, self.cols, [[mul(c, a) for a in r] for r in self.entries])

    def __mul__(self, other: "Mat") -> "Mat":
        """Matrix product."""
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        if f.char == 2:
            brows = [_pack_f2(r) for r in other.entries]
            out = []
            for arow in self.entries:
                acc = 0
                for k, a in enumerate(arow):
                    if a:
                        acc ^= brows[k]
                out.append(_unpack_f2(acc, other.cols))
            return Mat(f, self.rows, other.cols, out)
        z = f.zero
        bt = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = []
        for arow in self.entries:
            row = []
            nz = [(k, a) for k, a in enumerate(arow) if a != z]
            for j in range(other.cols):
                s = z
                for k, a in nz:
                    s = f.add(s, f.mul(a, bt[j][k]))
                row.append(s)
            out.append(row)
        return Mat(f, self.rows, other.cols, out)

    # -- stacking -------------------------------------------------------

    def hstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack row mismatch")
        return Mat(self.field, self.rows, self.cols + other.cols,
                   [ra + rb for ra, rb in zip(self.entries, other.entries)])

    def vstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack column mismatch")
        return Mat(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_range, col_range) -> "Mat":
        rows = [[self.entries[i][j] for j in col_range] for i in row_range]
        return Mat(self.field, len(rows), len(rows[0]) if rows else len(list(col_range)), rows)

    def columns(self, js: Iterable[int]) -> "Mat":
        js = list(js)
        return Mat(self.field, self.rows, len(js),
                   [[row[j] for j in js] for row in self.entries])

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)


def hstack_all(field: Field, mats: Sequence[Mat], rows: int) -> Mat:
    out = Mat.zeros(field, rows, 0)
    for m in mats:
        out = out.hstack(m)
    return out


def block_diag(field: Field, mats: Sequence[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    z = field.zero
    grid = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        if m.field is not field:
            raise FieldMismatchError("block_diag over mixed fields")
        for i, row in enumerate(m.entries):
            grid[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return Mat(field, rows, cols, grid)


# -- row reduction ------------------------------------------------------


def _pack_f2(row) -> int:
    acc = 0
    for j, x in enumerate(row):
        if x:
            acc |= 1 << j
    return acc


def _unpack_f2(word: int, n: int) -> list:
    return [(word >> j) & 1 for j in range(n)]


def _rref_f2(entries, cols):
    rows = [_pack_f2(r) for r in entries]
    pivots = []
    r = 0
    for c in range(cols):
        bit = 1 << c
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= prow
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [_unpack_f2(w, cols) for w in rows], pivots


def _rref_fp(entries, cols, p):
    rows = [list(r) for r in entries]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            q = rows[i][c]
            if i != r and q:
                rows[i] = [(x - q * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _rref_qq(entries, cols):
    # Clear denominators row-wise (preserves row space, hence the rref),
    # run fraction-free Bareiss forward elimination below the pivots (the
    # exact-division invariant only holds there), then back-substitute
    # with exact rationals on the small echelon matrix.
    rows = []
    for row in entries:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            q = rows[i][c]
            rows[i] = [(p * rows[i][j] - q * rows[r][j]) // prev for j in range(cols)]
        prev = p
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = [[Fraction(x) for x in row] for row in rows]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        piv = out[r][c]
        out[r] = [x / piv for x in out[r]]
        for i in range(r):
            q = out[i][c]
            if q:
                out[i] = [x - q * y for x, y in zip(out[i], out[r])]
    return out, pivots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) or 1


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns."""
    if m._rref is not None:
        return m._rref
    ch = m.field.char
    if ch == 2:
        rows, pivots = _rref_f2(m.entries, m.cols)
    elif ch == 0:
        rows, pivots = _rref_qq(m.entries, m.cols)
    else:
        rows, pivots = _rref_fp(m.entries, m.cols, ch)
    result = (Mat(m.field, m.rows, m.cols, rows), tuple(pivots))
    object.__setattr__(m, "_rref", result)
    return result


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of the right null space of ``m``."""
    red, pivots = rref(m)
    f = m.field
    free = [j for j in range(m.cols) if j not in set(pivots)]
    cols = []
    for j in free:
        v = [f.zero] * m.cols
        v[j] = f.one
        for r, c in enumerate(pivots):
            v[c] = f.neg(red.entries[r][j])
        cols.append(v)
    return Mat(f, m.cols, len(cols), [[col[i] for col in cols] for i in range(m.cols)])


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some ``X`` with ``a @ X == b``, or None if the system is unsolvable."""
    a._check_field(b)
    if a.rows != b.rows:
        raise DimensionMismatchError("solve: row counts differ")
    red, pivots = rref(a.hstack(b))
    if any(c >= a.cols for c in pivots):
        return None
    f = a.field
    out = [[f.zero] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        out[c] = list(red.entries[r][a.cols:])
    return Mat(f, a.cols, b.cols, out)


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise DimensionMismatchError("inverse of a non-square matrix")
    x = solve(m, Mat.identity(m.field, m.rows))
    if x is None or not is_invertible(m):
        raise ZeroDivisionError("matrix is singular")
    return x


def column_space_basis(m: Mat) -> Mat:
    """Canonical basis of the column space (rref of the transpose)."""
    red, pivots = rref(m.transpose())
    return Mat(m.field, m.rows, len(pivots),
               [[red.entries[r][i] for r in range(len(pivots))] for i in range(m.rows)])


def in_column_space(m: Mat, v: Mat) -> bool:
    """True iff every column of ``v`` lies in the column space of ``m``."""
    return solve(m, v) is not None


def sum_columnspaces(a: Mat, b: Mat) -> Mat:
    a._check_field(b)
    if a.rows != b.rows:
        raise DimensionMismatchError("ambient dimensions differ")
    return column_space_basis(a.hstack(b))


def intersect_columnspaces(a: Mat, b: Mat) -> Mat:
    """Basis of the intersection of two column spaces (kernel of [a | b])."""
    a._check_field(b)
    if a.rows != b.rows:
        raise DimensionMismatchError("ambient dimensions differ")
    ker = kernel_basis(a.hstack(b))
    top = ker.submatrix(range(a.cols), range(ker.cols))
    return column_space_basis(a * top)


def quotient_maps(basis: Mat) -> tuple[Mat, Mat]:
    """Projection and section for the quotient by a column space.

    Given ``basis`` (n x r, independent columns or not), returns
    ``(proj, sec)`` with ``proj`` of shape (n - rank) x n satisfying
    ``proj @ basis == 0``, ``proj`` surjective, and ``sec`` a right
    inverse: ``proj @ sec == identity``.
    """
    f = basis.field
    n = basis.rows
    span = column_space_basis(basis)
    r = span.cols
    chosen = []
    current = span
    for j in range(n):
        if current.cols == n:
            break
        e = Mat(f, n, 1, [[f.one if i == j else f.zero] for i in range(n)])
        cand = current.hstack(e)
        if rank(cand) > current.cols:
            chosen.append(j)
            current = cand
    sec = Mat(f, n, n - r,
              [[f.one if i == j else f.zero for j in chosen] for i in range(n)])
    full = span.hstack(sec)
    inv = inverse(full)
    proj = inv.submatrix(range(r, n), range(n))
    return proj, sec
