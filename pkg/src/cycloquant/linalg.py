"""Dense vectors and matrices over cyclotomic fields, and the Born rule.

States are never normalized: a norm such as sqrt(2) need not exist in the
field at hand, so every probability here is a ratio of inner products.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence, Union, overload

from .cyclotomic import Cyclotomic, Scalar, as_cyclotomic

DEFAULT_ORDER_BOUND = 10_000


def _unify(values: Iterable[Scalar]) -> tuple[Cyclotomic, ...]:
    entries = [as_cyclotomic(v) for v in values]
    n = reduce(math.lcm, (e.conductor for e in entries), 1)
    return tuple(e.promote(n) for e in entries)


def _sum(terms: Iterable[Cyclotomic]) -> Cyclotomic:
    total = None
    for t in terms:
        total = t if total is None else total + t
    return total if total is not None else Cyclotomic.rational(0)


class CycVector:
    """A column vector with cyclotomic entries over a shared conductor."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Scalar]):
        entries = _unify(entries)
        if not entries:
            raise ValueError("vectors must be nonempty")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("CycVector is immutable")

    @classmethod
    def basis(cls, i: int, dim: int) -> "CycVector":
        return cls(1 if j == i else 0 for j in range(dim))

    @property
    def conductor(self) -> int:
        return self.entries[0].conductor

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Cyclotomic]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Cyclotomic:
        return self.entries[i]

    def _check_len(self, other: "CycVector") -> None:
        if len(self) != len(other):
            raise ValueError(f"length mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other: "CycVector") -> "CycVector":
        self._check_len(other)
        return CycVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: "CycVector") -> "CycVector":
        self._check_len(other)
        return CycVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "CycVector":
        return CycVector(-a for a in self)

    def __mul__(self, c: Scalar) -> "CycVector":
        c = as_cyclotomic(c)
        return CycVector(c * a for a in self)

    __rmul__ = __mul__

    def conjugate(self) -> "CycVector":
        return CycVector(a.conjugate() for a in self)

    def norm_squared(self) -> Cyclotomic:
        return inner(self, self)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self)

    def to_complex(self) -> list[complex]:
        return [a.to_complex() for a in self]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"CycVector([{', '.join(str(e) for e in self)}])"


class CycMatrix:
    """A dense row-major matrix with cyclotomic entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        entries = _unify(entries)
        if rows < 1 or cols < 1 or rows * cols != len(entries):
            raise ValueError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("CycMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "CycMatrix":
        width = {len(r) for r in rows}
        if len(width) != 1:
            raise ValueError("ragged rows")
        return cls(len(rows), width.pop(), [x for r in rows for x in r])

    @classmethod
    def identity(cls, dim: int) -> "CycMatrix":
        return cls(dim, dim, (1 if i == j else 0 for i in range(dim) for j in range(dim)))

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> "CycMatrix":
        d = len(values)
        return cls(d, d, (values[i] if i == j else 0 for i in range(d) for j in range(d)))

    @property
    def conductor(self) -> int:
        return self.entries[0].conductor

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Cyclotomic:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Cyclotomic, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> CycVector:
        return CycVector(self.entries[j::self.cols])

    def to_rows(self) -> list[list[Cyclotomic]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def diag(self) -> list[Cyclotomic]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(
            self[i, j].is_zero() for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def trace(self) -> Cyclotomic:
        return _sum(self.diag())

    def transpose(self) -> "CycMatrix":
        return CycMatrix(
            self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def dagger(self) -> "CycMatrix":
        return CycMatrix(
            self.cols,
            self.rows,
            (self[i, j].conjugate() for j in range(self.cols) for i in range(self.rows)),
        )

    @overload
    def __matmul__(self, other: "CycMatrix") -> "CycMatrix": ...
    @overload
    def __matmul__(self, other: CycVector) -> CycVector: ...

    def __matmul__(self, other):
        if isinstance(other, CycVector):
            if self.cols != len(other):
                raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to length {len(other)}")
            v = other.entries
            return CycVector(
                _sum(a * b for a, b in zip(self.row(i), v) if a and b) for i in range(self.rows)
            )
        if isinstance(other, CycMatrix):
            if self.cols != other.rows:
                raise ValueError(f"inner dimensions differ: {self.shape} @ {other.shape}")
            cols = [other.column(j).entries for j in range(other.cols)]
            return CycMatrix(
                self.rows,
                other.cols,
                (
                    _sum(a * b for a, b in zip(self.row(i), col) if a and b)
                    for i in range(self.rows)
                    for col in cols
                ),
            )
        return NotImplemented

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return CycMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return CycMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.rows, self.cols, (-a for a in self.entries))

    def __mul__(self, c: Scalar) -> "CycMatrix":
        c = as_cyclotomic(c)
        return CycMatrix(self.rows, self.cols, (c * a for a in self.entries))

    __rmul__ = __mul__

    def __pow__(self, t: int) -> "CycMatrix":
        return matrix_power(self, t)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def to_complex(self) -> list[list[complex]]:
        return [[a.to_complex() for a in self.row(i)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"CycMatrix({self.rows}x{self.cols}, conductor={self.conductor})"

    def __str__(self) -> str:
        return render_matrix(self)


Operand = Union[CycMatrix, CycVector]


def compose(a: CycMatrix, b: Operand) -> Operand:
    return a @ b


def dagger(a: CycMatrix) -> CycMatrix:
    return a.dagger()


def inner(phi: CycVector, psi: CycVector) -> Cyclotomic:
    """<phi|psi>, conjugate-linear in the first argument."""
    if len(phi) != len(psi):
        raise ValueError(f"length mismatch: {len(phi)} vs {len(psi)}")
    return _sum(a.conjugate() * b for a, b in zip(phi, psi) if a and b)


def outer(a: CycVector, b: CycVector) -> CycMatrix:
    """|a><b|."""
    bc = [x.conjugate() for x in b]
    return CycMatrix(len(a), len(b), (x * y for x in a for y in bc))


def is_unitary(a: CycMatrix) -> bool:
    if not a.is_square():
        raise ValueError("unitarity needs a square matrix")
    return a.dagger() @ a == CycMatrix.identity(a.rows)


def _scale_by_inverse(x: Cyclotomic, d: Cyclotomic) -> Cyclotomic:
    if d.is_rational():
        return x * (1 / d.as_rational())
    return x * d.invert()


def _scale_by_inverse_matrix(m: CycMatrix, d: Cyclotomic) -> CycMatrix:
    inv = 1 / d.as_rational() if d.is_rational() else d.invert()
    return m * inv


def projector(a: CycVector) -> CycMatrix:
    """|a><a| / <a|a>: idempotent and self-adjoint."""
    norm = inner(a, a)
    if norm.is_zero():
        raise ValueError("projector onto the zero vector")
    return _scale_by_inverse_matrix(outer(a, a), norm)


def born(phi: CycVector, psi: CycVector) -> Cyclotomic:
    """Probability that a device selecting ``phi`` registers ``psi``.

    ``|<phi|psi>|^2 / (<phi|phi> <psi|psi>)``; both states may be unnormalized.
    """
    den = inner(phi, phi) * inner(psi, psi)
    if den.is_zero():
        raise ValueError("Born probability of a zero vector")
    amp = inner(phi, psi)
    return _scale_by_inverse(amp.abs_squared(), den)


def born_rational(phi: CycVector, psi: CycVector) -> Fraction:
    """:func:`born` as a Fraction; raises ValueError if it is irrational."""
    return born(phi, psi).as_rational()


def born_trace(phi: CycVector, psi: CycVector) -> Cyclotomic:
    """tr(P_phi P_psi), an independent route to the Born probability."""
    return (projector(phi) @ projector(psi)).trace()


def matrix_power(a: CycMatrix, t: int) -> CycMatrix:
    if not a.is_square():
        raise ValueError("matrix power needs a square matrix")
    if t < 0:
        raise ValueError("negative powers are not supported; use dagger for unitaries")
    result = CycMatrix.identity(a.rows)
    base = a
    while t:
        if t & 1:
            result = result @ base
        t >>= 1
        if t:
            base = base @ base
    return result


def matrix_order(a: CycMatrix, bound: int = DEFAULT_ORDER_BOUND) -> int | None:
    """Least ``t`` in ``1..bound`` with ``a**t == I``, or None."""
    if not a.is_square():
        raise ValueError("matrix order needs a square matrix")
    if bound < 1:
        raise ValueError("bound must be positive")
    ident = CycMatrix.identity(a.rows)
    power = a
    for t in range(1, bound + 1):
        if power == ident:
            return t
        if t < bound:
            power = power @ a
    return None


def render_matrix(a: CycMatrix) -> str:
    """One row per line, entries separated by `` | ``."""
    return "\n".join(" | ".join(str(x) for x in a.row(i)) for i in range(a.rows))
