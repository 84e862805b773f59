"""Exact rational vectors, matrices, bilinear forms and reflections.

Everything here is immutable and hashable; arithmetic is exact (Fraction),
there is no floating point anywhere in this package's numeric core.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = int | Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class IsotropicRoot(ValueError):
    """Raised when a reflection is requested for a vector of zero length."""


class DimensionMismatch(ValueError):
    """Raised when operand dimensions disagree."""


class Vector:
    """Immutable vector with exact rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Rational]):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Vector) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Vector":
        return Vector(-a for a in self.coords)

    def __mul__(self, scalar: Rational) -> "Vector":
        s = _frac(scalar)
        return Vector(a * s for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def max_norm(self) -> Fraction:
        return max((abs(c) for c in self.coords), default=Fraction(0))

    def _check(self, other: "Vector") -> None:
        if not isinstance(other, Vector) or other.dim != self.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {getattr(other, 'dim', '?')}")

    def __repr__(self) -> str:
        return "Vector((" + ", ".join(str(c) for c in self.coords) + "))"


def vec(*coords: Rational) -> Vector:
    return Vector(coords)


class Matrix:
    """Immutable square matrix with exact rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Rational]]):
        rs = tuple(tuple(_frac(x) for x in row) for row in rows)
        n = len(rs)
        if any(len(r) != n for r in rs):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[Fraction(i == j) for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")
        cols = list(zip(*other.rows))
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def __mul__(self, v: Vector) -> Vector:
        if v.dim != self.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {v.dim}")
        return Vector(sum(a * b for a, b in zip(row, v.coords)) for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0)
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse; raises ValueError on a singular matrix."""
        n = self.dim
        a = [list(row) for row in self.rows]
        b = [[Fraction(i == j) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ValueError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] = [x * inv for x in b[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    b[r] = [x - f * y for x, y in zip(b[r], b[col])]
        return Matrix(b)

    def __repr__(self) -> str:
        body = "; ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.rows)
        return f"Matrix([{body}])"


class BilinearForm:
    """Symmetric bilinear form given by an exact Gram matrix."""

    __slots__ = ("gram",)

    def __init__(self, gram: Matrix):
        if gram != gram.transpose():
            raise ValueError("gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    def __setattr__(self, name, value):
        raise AttributeError("BilinearForm is immutable")

    @property
    def dim(self) -> int:
        return self.gram.dim

    def evaluate(self, v: Vector, w: Vector) -> Fraction:
        if v.dim != self.dim or w.dim != self.dim:
            raise DimensionMismatch("form dimension mismatch")
        return sum(
            v.coords[i] * self.gram.rows[i][j] * w.coords[j]
            for i in range(self.dim)
            for j in range(self.dim)
            if self.gram.rows[i][j] != 0
        ) or Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BilinearForm) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)


class AmbientSpace:
    """Ambient space split into (radical, definite part, dual of radical).

    The basis is ordered (radical block of size nu, definite block of size
    rank, dual block of size nu).  The Gram matrix is
    [[0, 0, I], [0, G, 0], [I, 0, 0]] with G the positive definite form of
    the definite block; the radical block is totally isotropic and pairs
    with the dual block by the identity.
    """

    __slots__ = ("nu", "rank", "form")

    def __init__(self, nu: int, finite_gram: Matrix):
        if nu < 0:
            raise ValueError("nu must be >= 0")
        rank = finite_gram.dim
        dim = nu + rank + nu
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(nu):
            rows[i][nu + rank + i] = Fraction(1)
            rows[nu + rank + i][i] = Fraction(1)
        for i in range(rank):
            for j in range(rank):
                rows[nu + i][nu + j] = finite_gram.rows[i][j]
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "form", BilinearForm(Matrix(rows)))

    def __setattr__(self, name, value):
        raise AttributeError("AmbientSpace is immutable")

    @property
    def dim(self) -> int:
        return self.nu + self.rank + self.nu

    @property
    def split(self) -> tuple[int, int, int]:
        return (self.nu, self.rank, self.nu)

    def radical_basis(self) -> tuple[Vector, ...]:
        n = self.dim
        return tuple(
            Vector([Fraction(j == i) for j in range(n)]) for i in range(self.nu)
        )

    def pair(self, v: Vector, w: Vector) -> Fraction:
        return self.form.evaluate(v, w)

    def iso_part(self, v: Vector) -> tuple[Fraction, ...]:
        return v.coords[: self.nu]

    def dot_part(self, v: Vector) -> tuple[Fraction, ...]:
        return v.coords[self.nu : self.nu + self.rank]

    def dual_part(self, v: Vector) -> tuple[Fraction, ...]:
        return v.coords[self.nu + self.rank :]

    def assemble(self, iso, dot, dual=None) -> Vector:
        iso = tuple(_frac(x) for x in iso)
        dot = tuple(_frac(x) for x in dot)
        dual = tuple(_frac(x) for x in dual) if dual is not None else (Fraction(0),) * self.nu
        if len(iso) != self.nu or len(dot) != self.rank or len(dual) != self.nu:
            raise DimensionMismatch("assemble: block sizes do not match the split")
        return Vector(iso + dot + dual)

    def is_isotropic(self, v: Vector) -> bool:
        return self.pair(v, v) == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AmbientSpace)
            and self.nu == other.nu
            and self.form == other.form
        )

    def __hash__(self) -> int:
        return hash((self.nu, self.form))


def coroot(space: AmbientSpace, alpha: Vector) -> Vector:
    """The coroot 2*alpha/(alpha,alpha)."""
    n = space.pair(alpha, alpha)
    if n == 0:
        raise IsotropicRoot(f"coroot of isotropic vector {alpha!r}")
    return alpha * (Fraction(2) / n)


def reflect(space: AmbientSpace, alpha: Vector, v: Vector) -> Vector:
    """Reflection of v in the hyperplane orthogonal to alpha."""
    n = space.pair(alpha, alpha)
    if n == 0:
        raise IsotropicRoot(f"reflection in isotropic vector {alpha!r}")
    c = 2 * space.pair(v, alpha) / n
    return v - alpha * c


def reflection_matrix(space: AmbientSpace, alpha: Vector) -> Matrix:
    """Matrix of reflect(space, alpha, .) in the standard basis."""
    n = space.pair(alpha, alpha)
    if n == 0:
        raise IsotropicRoot(f"reflection in isotropic vector {alpha!r}")
    d = space.dim
    cols = []
    for j in range(d):
        e = Vector([Fraction(i == j) for i in range(d)])
        cols.append(reflect(space, alpha, e).coords)
    return Matrix(list(zip(*cols)))


def preserves_form(space: AmbientSpace, m: Matrix) -> bool:
    g = space.form.gram
    return m.transpose() @ g @ m == g
