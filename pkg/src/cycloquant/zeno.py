"""Survival probabilities and Zeno times for finite-group evolution.

For a unitary ``U`` of finite order the survival probability
``p(t) = |<psi0|U^t|psi0>|^2`` is either identically 1 or periodic with a
period dividing the order of ``U``. The natural Zeno time is the first ``t``
at which ``p`` reaches its minimum over one period (infinite when ``p`` is
constant).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .errors import ResourceLimitError
from .groups import a5_rep3prime, mz_splitter
from .interferometer import standard_elements
from .linalg import CycMatrix, CycVector, born, is_unitary, matrix_order, matrix_power
from .transport import ObservationSequence, delta_bunch, trajectory_entropy, trajectory_probability

FLOAT_TIE = 1e-12
MAX_SERIES = 100_000


@dataclass(frozen=True)
class SurvivalSeries:
    probabilities: tuple[Cyclotomic, ...]

    @property
    def times(self) -> range:
        return range(len(self.probabilities))

    @property
    def t_max(self) -> int:
        return len(self.probabilities) - 1

    def floats(self) -> list[float]:
        return [p.to_complex().real for p in self.probabilities]

    def is_constant(self) -> bool:
        first = self.probabilities[0]
        return all(p == first for p in self.probabilities)

    def __getitem__(self, t: int) -> Cyclotomic:
        return self.probabilities[t]

    def __len__(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class ZenoReport:
    label: str
    order: int
    period: int | None  # None: the series is constant
    tau_z: float  # an int, or math.inf for a constant series

    @property
    def constant(self) -> bool:
        return self.period is None


def survival_series(u: CycMatrix, psi0: CycVector, t_max: int) -> SurvivalSeries:
    if not is_unitary(u):
        raise ValueError("evolution operator is not unitary")
    if psi0.is_zero():
        raise ValueError("initial state is zero")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    if t_max > MAX_SERIES:
        raise ResourceLimitError(f"t_max {t_max} exceeds the series ceiling {MAX_SERIES}")
    probs = []
    psi = psi0
    for t in range(t_max + 1):
        probs.append(born(psi0, psi))
        if t < t_max:
            psi = u @ psi
    return SurvivalSeries(tuple(probs))


def series_period(series: SurvivalSeries, order: int) -> int | None:
    """Least period of the series, or None when it is constant.

    The series must cover a full cycle of the operator (``t_max >= order``).
    """
    if series.t_max < order:
        raise ValueError(f"series stops at t={series.t_max} but the order is {order}")
    if series.is_constant():
        return None
    p = series.probabilities
    for d in range(1, order + 1):
        if order % d == 0 and all(p[t] == p[t % d] for t in range(len(p))):
            return d
    raise ValueError("series is not periodic with a period dividing the order")


def natural_zeno_time(series: SurvivalSeries, period: int | None = None) -> float:
    """First ``t`` attaining the minimum of ``p`` over one period; ``inf`` if constant.

    Without ``period`` the whole series is searched.
    """
    if series.is_constant():
        return math.inf
    window = series.probabilities[: period if period else len(series)]
    floats = [p.to_complex().real for p in window]
    lo = min(floats)
    t = next(i for i, f in enumerate(floats) if f <= lo + FLOAT_TIE)
    return t


def zeno_report(label: str, u: CycMatrix, psi0: CycVector, order_bound: int = 10_000) -> tuple[SurvivalSeries, ZenoReport]:
    order = matrix_order(u, order_bound)
    if order is None:
        raise ResourceLimitError(f"{label} has no finite order up to {order_bound}")
    series = survival_series(u, psi0, order)
    period = series_period(series, order)
    return series, ZenoReport(label, order, period, natural_zeno_time(series, period))


def upper_state() -> CycVector:
    return CycVector([1, 0])


def zeno_table_c8() -> list[ZenoReport]:
    """Reports for S^0 .. S^7 with the photon entering the upper port."""
    s, _ = standard_elements()
    psi0 = upper_state()
    return [zeno_report(f"S^{k}", matrix_power(s, k), psi0)[1] for k in range(8)]


def zeno_scan_sn(n: int, t_max: int | None = None) -> tuple[SurvivalSeries, ZenoReport]:
    """Series and report for the order-n splitter; the series runs to ``t_max``
    (default ``n``)."""
    u = mz_splitter(n)
    series, report = zeno_report(f"S_{n}", u, upper_state())
    if t_max is not None and t_max != series.t_max:
        series = survival_series(u, upper_state(), t_max)
    return series, report


def a5_dynamics(t_max: int, psi0: CycVector | None = None) -> dict[str, SurvivalSeries]:
    psi0 = psi0 if psi0 is not None else CycVector([1, 0, 0])
    u, v, w = a5_rep3prime()
    return {name: survival_series(m, psi0, t_max) for name, m in (("U", u), ("V", v), ("W", w))}


def continuous_zeno_time(h: Sequence[Sequence[complex]], psi0: Sequence[complex], tol: float = 1e-9) -> float:
    """``(<H^2> - <H>^2) ** -0.5``; ``inf`` when the energy variance vanishes."""
    h = np.asarray(h, dtype=complex)
    psi = np.asarray(psi0, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] != psi.shape[0]:
        raise ValueError("H must be square and match the state dimension")
    if not np.allclose(h, h.conj().T, atol=tol, rtol=0):
        raise ValueError("H is not Hermitian")
    if abs(np.vdot(psi, psi).real - 1) > tol:
        raise ValueError("initial state is not normalized")
    hpsi = h @ psi
    mean = np.vdot(psi, hpsi).real
    var = np.vdot(hpsi, hpsi).real - mean**2
    if var < 1e-15:
        return math.inf
    return float(var**-0.5)


def zeno_entropy_limit(total_time: float, tau: float, n_list: Sequence[int]) -> list[tuple[int, float, float]]:
    """``(N, S, exp S)`` with the leading-order trajectory entropy
    ``S = -(T/tau)^2 / N`` for N equally spaced observations."""
    if total_time <= 0 or tau <= 0:
        raise ValueError("T and tau must be positive")
    rows = []
    for n in n_list:
        if n < 1:
            raise ValueError("N must be positive")
        s = -((total_time / tau) ** 2) / n
        rows.append((n, s, math.exp(s)))
    return rows


@dataclass(frozen=True)
class ZenoChain:
    observations: int
    probability: Cyclotomic
    entropy: float
    time_over_tau: float


def zeno_chain(n_obs: int, splitter_order: int = 8) -> ZenoChain:
    """Repeated observation of the upper state under delta-weighted transport.

    The total time is ``n_obs`` ticks and each tick applies the splitter of
    order ``splitter_order * n_obs``, so the total rotation, and with it
    ``T / tau_Z``, does not depend on how many observations are made. One
    observation with the default order is the 50/50 beam splitter.
    """
    if n_obs < 1:
        raise ValueError("need at least one interval")
    u = mz_splitter(splitter_order * n_obs)
    psi0 = upper_state()
    seq = ObservationSequence(tuple(range(n_obs + 1)), (psi0,) * (n_obs + 1))
    bunch = delta_bunch(0, 1, [u])
    bunches = [bunch] * n_obs
    # per tick the generator is exp(i theta sigma_x), theta = 2 pi / order
    ratio = 2 * math.pi / splitter_order
    return ZenoChain(
        n_obs,
        trajectory_probability(seq, bunches),
        trajectory_entropy(seq, bunches),
        ratio,
    )


def as_exact(p: Cyclotomic) -> Fraction | None:
    return p.as_rational() if p.is_rational() else None
