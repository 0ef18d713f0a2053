"""Beam splitter amplitudes as projections of natural multiplicity vectors.

The 8-cycle acts on ``N^8`` by permutation matrices. Over ``Q(zeta_8)`` the
permutation matrix diagonalizes with the discrete Fourier basis; the two
coordinates with eigenvalues ``zeta`` and ``zeta^7`` span the splitter
subspace, on which the cycle acts as the 50/50 beam splitter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cyclotomic import root_of_unity
from .groups import cycle_generator, mz_splitter, permutation_matrix
from .linalg import CycMatrix, CycVector

SPLITTER_EXPONENTS = (1, 7)


@dataclass(frozen=True)
class BlockDecomposition:
    """``T_inv @ P @ T`` is diagonal with entries ``zeta_n ** block_spectrum[k]``."""

    T: CycMatrix
    T_inv: CycMatrix
    block_spectrum: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.block_spectrum)

    def diagonalized(self) -> CycMatrix:
        p = permutation_matrix(cycle_generator(self.n))
        return self.T_inv @ p @ self.T


def cycle_eigenbasis(n: int) -> BlockDecomposition:
    """Fourier eigenbasis of the n-cycle permutation matrix.

    Columns of ``T`` are ``(zeta^(j k))_j``, unnormalized, and ``T_inv`` carries
    the factor ``1/n`` so that everything stays in ``Q(zeta_n)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    t = CycMatrix(n, n, (root_of_unity(n, j * k) for j in range(n) for k in range(n)))
    t_inv = CycMatrix(
        n, n, (root_of_unity(n, -j * k) / n for k in range(n) for j in range(n))
    )
    return BlockDecomposition(t, t_inv, tuple(range(n)))


def splitter_block() -> CycMatrix:
    """The beam splitter carried by the splitter subspace of the 8-cycle."""
    return mz_splitter(8)


def splitter_basis() -> CycMatrix:
    """Maps the Fourier coordinates (c_1, c_7) to splitter amplitudes.

    Columns are eigenvectors of the splitter block for ``zeta`` and
    ``zeta^7``; their scale is fixed so that the first unit multiplicity
    vector projects to ``(-zeta^3, zeta) / 8``.
    """
    z = root_of_unity(8, 1)
    b1 = (z - z**3) / 2
    b2 = -(z + z**3) / 2
    return CycMatrix.from_rows([[b1, b2], [b1, -b2]])


def _check_multiplicities(n: Sequence[int]) -> None:
    if len(n) != 8:
        raise ValueError(f"expected 8 multiplicities, got {len(n)}")
    for k in n:
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError(f"multiplicities must be natural numbers, got {list(n)}")


def splitter_projection(n: Sequence[int]) -> CycVector:
    """Closed-form projection of ``n in N^8`` onto the splitter subspace."""
    _check_multiplicities(n)
    n1, n2, n3, n4, n5, n6, n7, n8 = (int(k) for k in n)
    z = root_of_unity(8, 1)
    z2, z3 = z**2, z**3
    psi1 = (-z3 * (n1 + n3 - n5 - n7) + (1 - z2) * (n2 - n6)) / 8
    psi2 = (z * (n1 - n3 - n5 + n7) + (1 + z2) * (n8 - n4)) / 8
    return CycVector([psi1, psi2])


def splitter_projection_via_basis(n: Sequence[int], decomposition: BlockDecomposition | None = None) -> CycVector:
    """The same projection computed through ``T_inv``: take the Fourier
    coordinates of ``n`` for the splitter exponents, then map them with
    :func:`splitter_basis`."""
    _check_multiplicities(n)
    dec = decomposition or cycle_eigenbasis(8)
    coords = dec.T_inv @ CycVector(int(k) for k in n)
    picked = CycVector(coords[dec.block_spectrum.index(e)] for e in SPLITTER_EXPONENTS)
    return splitter_basis() @ picked


def _projection_matrix() -> np.ndarray:
    cols = [splitter_projection([int(i == j) for i in range(8)]).to_complex() for j in range(8)]
    return np.array(cols, dtype=complex).T


def fubini_study(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Angle between the rays through ``a`` and ``b`` (0 .. pi/2)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    # atan2 of the 2x2 determinant against the overlap stays accurate near 0
    cross = abs(a[0] * b[1] - a[1] * b[0])
    return float(math.atan2(cross, abs(np.vdot(a, b))))


@dataclass(frozen=True)
class BlochApproximation:
    multiplicities: tuple[int, ...]
    error: float
    amplitude: CycVector


def approximate_bloch_point(
    target: Sequence[complex], max_entry: int, tol: float = 1e-12
) -> BlochApproximation:
    """Exhaustive search over ``{0..max_entry}^8`` for the multiplicity vector
    whose splitter projection is closest, as a ray, to ``target``.

    Ties within ``tol`` go to the smallest total multiplicity, then to the
    lexicographically largest vector.
    """
    tgt = np.asarray(target, dtype=complex)
    if tgt.shape != (2,) or not np.any(tgt):
        raise ValueError("target must be a nonzero pair of complex numbers")
    if max_entry < 1:
        raise ValueError("max_entry must be at least 1")
    tgt = tgt / np.linalg.norm(tgt)
    proj = _projection_matrix()
    m = max_entry + 1
    tail = np.indices((m,) * 7).reshape(7, -1).T
    best_key = None
    best_n = None
    for first in range(m):
        ns = np.hstack([np.full((len(tail), 1), first), tail])
        psi = ns @ proj.T
        ok = np.linalg.norm(psi, axis=1) > 1e-12
        if not ok.any():
            continue
        ns, psi = ns[ok], psi[ok]
        cross = np.abs(psi[:, 0] * tgt[1] - psi[:, 1] * tgt[0])
        err = np.arctan2(cross, np.abs(psi @ tgt.conj()))
        lo = err.min()
        cand = np.flatnonzero(err <= lo + tol)
        sums = ns[cand].sum(axis=1)
        cand = cand[sums == sums.min()]
        pick = max(cand, key=lambda i: tuple(ns[i]))
        key = (float(err[pick]), int(ns[pick].sum()), tuple(-int(x) for x in ns[pick]))
        if best_key is None or key[0] < best_key[0] - tol or (
            abs(key[0] - best_key[0]) <= tol and key[1:] < best_key[1:]
        ):
            best_key = key
            best_n = tuple(int(x) for x in ns[pick])
    if best_n is None:
        raise ValueError("no nonzero projection in the search box")
    amp = splitter_projection(best_n)
    return BlochApproximation(best_n, fubini_study(amp.to_complex(), tgt), amp)


def decomposition_table(n: int = 8) -> list[dict]:
    """Rows describing each Fourier coordinate of the n-cycle."""
    dec = cycle_eigenbasis(n)
    diag = dec.diagonalized().diag()
    rows = []
    for k, e in enumerate(dec.block_spectrum):
        rows.append(
            {
                "coordinate": k,
                "exponent": e,
                "eigenvalue": str(diag[k]),
                "block": "splitter" if n == 8 and e in SPLITTER_EXPONENTS else "complement",
            }
        )
    return rows
