"""Permutations and the concrete unitary representations used in the models.

Permutations compose left to right: ``(p * q)(i) == q(p(i))``. The matrix of
``p`` has a 1 in row ``i``, column ``p(i)``, so it acts on multiplicity
vectors by ``(P n)[i] == n[p(i)]`` and ``permutation_matrix(p * q) ==
permutation_matrix(p) @ permutation_matrix(q)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Sequence

from .cyclotomic import Cyclotomic, root_of_unity
from .linalg import CycMatrix, is_unitary, matrix_order


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("permutations of different degree")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out


def cycle_generator(n: int) -> Permutation:
    """The n-cycle 0 -> 1 -> ... -> n-1 -> 0."""
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple((i + 1) % n for i in range(n)))


def permutation_matrix(p: Permutation) -> CycMatrix:
    n = p.degree
    return CycMatrix(n, n, (1 if j == p(i) else 0 for i in range(n) for j in range(n)))


def element_order(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


def group_exponent(*orders: int) -> int:
    """Least common multiple of element orders; ``group_exponent(n)`` is the
    exponent of the cyclic group of order n."""
    return reduce(math.lcm, orders, 1)


@dataclass(frozen=True)
class GeneratedRep:
    """A unitary representation given by named generator matrices."""

    generators: Mapping[str, CycMatrix]
    order_bound: int = 10_000
    orders: Mapping[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a representation needs at least one generator")
        dims = {g.rows for g in self.generators.values()}
        if len(dims) != 1:
            raise ValueError("generators act on spaces of different dimension")
        orders = {}
        for name, g in self.generators.items():
            if not is_unitary(g):
                raise ValueError(f"generator {name!r} is not unitary")
            k = matrix_order(g, self.order_bound)
            if k is None:
                raise ValueError(f"generator {name!r} has no order up to {self.order_bound}")
            orders[name] = k
        object.__setattr__(self, "generators", dict(self.generators))
        object.__setattr__(self, "orders", orders)

    @property
    def degree(self) -> int:
        return next(iter(self.generators.values())).rows

    @property
    def conductor(self) -> int:
        return reduce(math.lcm, (g.conductor for g in self.generators.values()), 1)

    def __getitem__(self, name: str) -> CycMatrix:
        return self.generators[name]


def mz_splitter(n: int) -> CycMatrix:
    """Generalized beam splitter of order n.

    ``(1/2) [[z + z^(n-1), z - z^(n-1)], [z - z^(n-1), z + z^(n-1)]]`` with
    ``z`` a primitive n-th root; this is ``[[cos t, i sin t], [i sin t, cos t]]``
    for ``t = 2 pi / n``.
    """
    if n < 3:
        raise ValueError("the splitter needs n >= 3")
    z, zb = root_of_unity(n, 1), root_of_unity(n, -1)
    c = (z + zb) / 2
    s = (z - zb) / 2
    return CycMatrix.from_rows([[c, s], [s, c]])


def golden_ratio() -> Cyclotomic:
    """(1 + sqrt 5) / 2 written over conductor 5."""
    return -root_of_unity(5, 2) - root_of_unity(5, 3)


def a5_rep3prime() -> tuple[CycMatrix, CycMatrix, CycMatrix]:
    """Generators of orders 2, 3 and 5 of a triplet representation of A5."""
    phi = golden_ratio()
    iphi = root_of_unity(5, 1) + root_of_unity(5, 4)
    half = Cyclotomic.rational(1, 5) / 2
    u = CycMatrix.from_rows([[-phi, iphi, 1], [iphi, -1, phi], [1, phi, iphi]]) * half
    # written over conductor 5 so all three generators share a field
    v = CycMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]]) * Cyclotomic.rational(1, 5)
    w = CycMatrix.from_rows([[-phi, -iphi, 1], [iphi, 1, phi], [-1, phi, -iphi]]) * half
    return u, v, w


def a5_representation() -> GeneratedRep:
    u, v, w = a5_rep3prime()
    return GeneratedRep({"U": u, "V": v, "W": w})


def cyclic_mz_representation(n: int) -> GeneratedRep:
    return GeneratedRep({"S": mz_splitter(n)})
