"""Exact linear algebra over the rationals and prime fields.

Matrices act on column vectors, so the composite ``g . f`` of two linear maps
is the product ``G @ F``.  Elimination pivots on the first nonzero entry in
column order, which keeps every derived basis reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence


class ModP:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)


class Field:
    """Base class for the two supported exact fields."""

    characteristic = 0
    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        """Iterate over all elements (prime fields only)."""
        raise TypeError("field %s is infinite" % self.name)

    def to_pair(self, x) -> list:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, ModP):
            raise TypeError("cannot coerce a residue class into Q")
        return Fraction(x)

    def to_pair(self, x):
        return [x.numerator, x.denominator]


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("F_p needs a prime p, got %r" % p)
        self.characteristic = p
        self.name = "F%d" % p

    def __call__(self, x):
        if isinstance(x, ModP):
            return x
        if isinstance(x, Fraction):
            return ModP(x.numerator * pow(x.denominator, -1, self.characteristic), self.characteristic)
        return ModP(int(x), self.characteristic)

    def elements(self):
        return (ModP(i, self.characteristic) for i in range(self.characteristic))

    def to_pair(self, x):
        return [int(x), 1]


QQ = RationalField()


def field_from_spec(spec: str) -> Field:
    """Parse ``Q``, ``F 5``, ``F5`` or ``Fp:5``."""
    s = spec.strip().replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    for prefix in ("Fp:", "F_", "F"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return PrimeField(int(s[len(prefix):]))
    raise ValueError("unknown field %r (expected Q or F <p>)" % spec)


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: Optional[int] = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def _raw(cls, field, rows, ncols):
        # rows already hold field elements
        m = object.__new__(cls)
        m.field = field
        m.rows = rows if isinstance(rows, tuple) else tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int):
        cols = [tuple(field(x) for x in c) for c in columns]
        return cls._raw(field, tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self):
        return [x for r in self.rows for x in r]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return "Matrix(%dx%d, %r)" % (self.nrows, self.ncols, [[str(x) for x in r] for r in self.rows])

    def is_zero(self):
        return not any(x for r in self.rows for x in r)

    @property
    def T(self):
        return Matrix._raw(self.field, tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)),
                           self.nrows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        return Matrix._raw(self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                           self.ncols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s - %s" % (self.shape, other.shape))
        return Matrix._raw(self.field, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                           self.ncols)

    def __neg__(self):
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c):
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        zero = self.field.zero
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                out.append((zero,) * other.ncols)
                continue
            row = []
            for c in cols:
                s = zero
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(self.field, tuple(out), other.ncols)

    def apply(self, vec: Sequence):
        zero = self.field.zero
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return Matrix._raw(self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def power(self, k: int):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        s = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            s = s + self.rows[i][i]
        return s


def hstack(field, blocks: Sequence[Matrix], nrows: Optional[int] = None) -> Matrix:
    if not blocks:
        if nrows is None:
            raise ValueError("hstack of nothing needs nrows")
        return Matrix.zeros(field, nrows, 0)
    n = blocks[0].nrows
    if any(b.nrows != n for b in blocks):
        raise ValueError("hstack row mismatch")
    rows = tuple(tuple(x for b in blocks for x in b.rows[i]) for i in range(n))
    return Matrix._raw(field, rows, sum(b.ncols for b in blocks))


def vstack(field, blocks: Sequence[Matrix], ncols: Optional[int] = None) -> Matrix:
    if not blocks:
        if ncols is None:
            raise ValueError("vstack of nothing needs ncols")
        return Matrix.zeros(field, 0, ncols)
    n = blocks[0].ncols
    if any(b.ncols != n for b in blocks):
        raise ValueError("vstack column mismatch")
    return Matrix._raw(field, tuple(r for b in blocks for r in b.rows), n)


def block_diag(field, blocks: Sequence[Matrix]) -> Matrix:
    nc = sum(b.ncols for b in blocks)
    zero = field.zero
    rows = []
    c0 = 0
    for b in blocks:
        for r in b.rows:
            rows.append((zero,) * c0 + r + (zero,) * (nc - c0 - b.ncols))
        c0 += b.ncols
    return Matrix._raw(field, tuple(rows), nc)


def _rref_rows(rows: list, ncols: int):
    """In-place reduced row echelon form on a list of lists.

    Returns the pivot columns; ``rows`` is truncated to the nonzero rows.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if prow[c] != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nzc:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


def rref(A: Matrix):
    """Reduced row echelon form; returns ``(R, pivot_columns)`` with R holding only nonzero rows."""
    rows = [list(r) for r in A.rows]
    piv = _rref_rows(rows, A.ncols)
    return Matrix._raw(A.field, tuple(tuple(r) for r in rows), A.ncols), piv


def rank(A: Matrix) -> int:
    if A.nrows == 0 or A.ncols == 0:
        return 0
    return len(rref(A)[1])


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of ``{x : A x = 0}``."""
    field = A.field
    R, piv = rref(A)
    free = [j for j in range(A.ncols) if j not in set(piv)]
    zero, one = field.zero, field.one
    cols = []
    for f in free:
        v = [zero] * A.ncols
        v[f] = one
        for i, p in enumerate(piv):
            x = R.rows[i][f]
            if x:
                v[p] = -x
        cols.append(v)
    return Matrix._raw(field, tuple(tuple(c[i] for c in cols) for i in range(A.ncols)), len(cols))


def left_kernel_basis(A: Matrix) -> Matrix:
    """Rows form a basis of ``{y : y A = 0}``."""
    return kernel_basis(A.T).T


def cokernel_projection(A: Matrix) -> Matrix:
    """A surjection ``Q`` from the target of ``A`` with ``Q @ A = 0`` and kernel exactly ``im A``."""
    return left_kernel_basis(A)


def image_basis(A: Matrix) -> Matrix:
    """The pivot columns of ``A``: a basis of its column space drawn from its own columns."""
    if A.nrows == 0 or A.ncols == 0:
        return Matrix.zeros(A.field, A.nrows, 0)
    _, piv = rref(A)
    return A.submatrix(range(A.nrows), piv)


def solve(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """Some ``X`` with ``A @ X == B``, or ``None`` when no solution exists."""
    if A.nrows != B.nrows:
        raise ValueError("solve: A has %d rows but B has %d" % (A.nrows, B.nrows))
    field = A.field
    n = A.ncols
    rows = [list(a) + list(b) for a, b in zip(A.rows, B.rows)]
    piv = _rref_rows(rows, n + B.ncols)
    if any(p >= n for p in piv):
        return None
    zero = field.zero
    X = [[zero] * B.ncols for _ in range(n)]
    for i, p in enumerate(piv):
        X[p] = rows[i][n:]
    return Matrix._raw(field, tuple(tuple(r) for r in X), B.ncols)


def inverse(A: Matrix) -> Optional[Matrix]:
    if A.nrows != A.ncols:
        return None
    X = solve(A, Matrix.identity(A.field, A.nrows))
    if X is None:
        return None
    return X


def is_invertible(A: Matrix) -> bool:
    return A.nrows == A.ncols and rank(A) == A.nrows


def complement_columns(A: Matrix, ambient: int) -> Matrix:
    """Standard basis vectors completing the column space of ``A`` to the whole space."""
    field = A.field
    rows = [list(r) for r in A.T.rows]
    _rref_rows(rows, ambient)
    piv = set()
    for r in rows:
        for j, x in enumerate(r):
            if x:
                piv.add(j)
                break
    extra = [j for j in range(ambient) if j not in piv]
    zero, one = field.zero, field.one
    return Matrix._raw(field, tuple(tuple(one if i == j else zero for j in extra) for i in range(ambient)), len(extra))


def charpoly(A: Matrix) -> list:
    """Characteristic polynomial coefficients, lowest degree first (Berkowitz, division free)."""
    n = A.nrows
    field = A.field
    if n == 0:
        return [field.one]
    a = A.rows
    # Berkowitz: build the Toeplitz vectors successively
    vect = [field.one, -a[0][0]]
    for r in range(1, n):
        R = [a[i][r] for i in range(r)]  # column above diagonal
        C = [a[r][j] for j in range(r)]  # row left of diagonal
        Asub = [row[:r] for row in a[:r]]
        q = [field.one, -a[r][r]]
        X = list(R)
        for _ in range(r):
            s = field.zero
            for c, x in zip(C, X):
                if c and x:
                    s = s + c * x
            q.append(-s)
            X = [sum((Asub[i][j] * X[j] for j in range(r) if Asub[i][j] and X[j]), field.zero) for i in range(r)]
        # multiply Toeplitz(q) (size (r+2) x (r+1)) with vect
        new = []
        for i in range(r + 2):
            s = field.zero
            for j in range(min(i + 1, r + 1)):
                if i - j < len(q) and q[i - j] and vect[j]:
                    s = s + q[i - j] * vect[j]
            new.append(s)
        vect = new
    # vect holds coefficients highest degree first
    return list(reversed(vect))


def poly_eval_matrix(coeffs: Sequence, A: Matrix) -> Matrix:
    """Evaluate a polynomial (lowest degree first) at a square matrix by Horner's rule."""
    n = A.nrows
    field = A.field
    result = Matrix.zeros(field, n, n)
    I = Matrix.identity(field, n)
    for c in reversed(list(coeffs)):
        result = result @ A + I.scale(c)
    return result
