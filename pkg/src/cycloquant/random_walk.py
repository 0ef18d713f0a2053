"""The biased lattice walk: exact macrostate probabilities and entropies.

A walker steps +1 with probability ``a+ = (1 + v) / 2`` and -1 with
``a- = (1 - v) / 2``. Probabilities stay exact ``Fraction`` values; entropies
(natural logs) are floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np


@dataclass(frozen=True)
class WalkParams:
    v: Fraction

    def __post_init__(self):
        v = Fraction(self.v)
        if not -1 <= v <= 1:
            raise ValueError(f"drift velocity {v} outside [-1, 1]")
        object.__setattr__(self, "v", v)

    @property
    def alpha_plus(self) -> Fraction:
        return (1 + self.v) / 2

    @property
    def alpha_minus(self) -> Fraction:
        return (1 - self.v) / 2


@dataclass(frozen=True)
class WalkObservation:
    t: int
    x: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"observation time {self.t} is negative")
        check_lattice(self.x, self.t, what=f"observation t={self.t}, x={self.x}")


def check_lattice(dx: int, dt: int, what: str = "step") -> None:
    if dt < 0 or abs(dx) > dt:
        raise ValueError(f"{what}: displacement {dx} not reachable in {dt} steps")
    if (dx - dt) % 2:
        raise ValueError(f"{what}: displacement {dx} and duration {dt} differ in parity")


def _params(v) -> WalkParams:
    return v if isinstance(v, WalkParams) else WalkParams(Fraction(v))


def macrostate_probability(x: int, t: int, params: WalkParams) -> Fraction:
    """``C(t, k) a+^k a-^(t-k)`` with ``k = (t + x) / 2`` positive steps."""
    check_lattice(x, t)
    params = _params(params)
    k = (t + x) // 2
    return math.comb(t, k) * params.alpha_plus**k * params.alpha_minus ** (t - k)


def _xlog(x: float, a: float) -> float:
    """``x * ln(a)`` with the ``0 * ln 0 = 0`` convention."""
    if x == 0:
        return 0.0
    if a == 0:
        return -math.inf
    return x * math.log(a)


def one_step_entropy(dx: int, dt: int, params: WalkParams) -> float:
    """Natural log of the exact macrostate probability."""
    p = macrostate_probability(dx, dt, params)
    if p == 0:
        return -math.inf
    return math.log(p.numerator) - math.log(p.denominator)


def stirling_entropy(dx: float, dt: float, params: WalkParams, prefactor: bool = True) -> float:
    """Stirling form of the one-step entropy.

    With ``n+ = (dt + dx) / 2`` and ``n- = (dt - dx) / 2`` the leading order is
    ``-n+ ln(n+ / (dt a+)) - n- ln(n- / (dt a-))``; ``prefactor`` adds the
    ``ln(dt / (2 pi n+ n-)) / 2`` term from the square roots.
    """
    params = _params(params)
    if dt <= 0 or not dt - abs(dx) > 0:
        raise ValueError(f"Stirling form needs dt - |dx| > 0, got dx={dx}, dt={dt}")
    n_plus = (dt + dx) / 2
    n_minus = (dt - dx) / 2
    ap, am = float(params.alpha_plus), float(params.alpha_minus)
    s = (
        -_xlog(n_plus, n_plus / dt) + _xlog(n_plus, ap)
        - _xlog(n_minus, n_minus / dt) + _xlog(n_minus, am)
    )
    if prefactor:
        s += 0.5 * math.log(dt / (2 * math.pi * n_plus * n_minus))
    return s


def stationary_step(dt: int, params: WalkParams) -> Fraction:
    if dt < 1:
        raise ValueError("dt must be at least 1")
    return _params(params).v * dt


def lagrangian(xdot: float, v: float) -> float:
    """``((xdot - v) / sqrt(1 - v^2))^2``."""
    if abs(v) >= 1:
        raise ValueError("the Lagrangian is singular at |v| = 1")
    return (xdot - v) ** 2 / (1 - v * v)


def quadratic_entropy_approx(dx: float, dt: float, v: float) -> float:
    """Second-order expansion of the entropy around the stationary step."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return -0.5 * lagrangian(dx / dt, float(v)) * dt


# -- most probable observed trajectory -------------------------------------


@dataclass(frozen=True)
class PathResult:
    times: tuple[int, ...]
    positions: tuple[int, ...]
    step_probabilities: tuple[Fraction, ...]

    @property
    def probability(self) -> Fraction:
        return math.prod(self.step_probabilities, start=Fraction(1))

    @property
    def step_entropies(self) -> list[float]:
        return [_log(p) for p in self.step_probabilities]

    @property
    def entropy(self) -> float:
        return math.fsum(self.step_entropies)

    def cumulative_entropy(self) -> list[float]:
        out, acc = [0.0], []
        for s in self.step_entropies:
            acc.append(s)
            out.append(math.fsum(acc))
        return out


def _log(p: Fraction) -> float:
    return -math.inf if p == 0 else math.log(p.numerator) - math.log(p.denominator)


VelocitySpec = Union[WalkParams, Fraction, int, Sequence]


def _interval_params(v: VelocitySpec, n: int) -> list[WalkParams]:
    if isinstance(v, (WalkParams, Fraction, int)):
        return [_params(v)] * n
    v = list(v)
    if len(v) != n:
        raise ValueError(f"{n} intervals but {len(v)} drift velocities")
    return [_params(x) for x in v]


def _feasible(t: int, t0: int, x0: int, t1: int, x1: int) -> list[int]:
    lo = max(x0 - (t - t0), x1 - (t1 - t))
    hi = min(x0 + (t - t0), x1 + (t1 - t))
    if (lo - x0 - (t - t0)) % 2:
        lo += 1
    return list(range(lo, hi + 1, 2))


def most_probable_path(
    t0: int, x0: int, t_end: int, x_end: int, times: Sequence[int], v: VelocitySpec
) -> PathResult:
    """Positions at the intermediate ``times`` maximizing the trajectory probability.

    Dynamic program over feasible lattice positions with exact probability
    comparisons. Among equally probable predecessors the one closer to the
    straight line from start to end wins, then the smaller position.
    """
    all_times = (t0, *sorted(times), t_end)
    if len(set(all_times)) != len(all_times) or any(t < t0 or t > t_end for t in times):
        raise ValueError(f"intermediate times must lie strictly between {t0} and {t_end}")
    check_lattice(x_end - x0, t_end - t0, what=f"endpoint t={t_end}, x={x_end}")
    params = _interval_params(v, len(all_times) - 1)

    def line(t):
        return Fraction(x0) + Fraction(x_end - x0, t_end - t0) * (t - t0)

    layers = [[x0]] + [_feasible(t, t0, x0, t_end, x_end) for t in all_times[1:-1]] + [[x_end]]
    # best[x] = (probability, path)
    best: dict[int, tuple[Fraction, tuple[int, ...]]] = {x0: (Fraction(1), (x0,))}
    for i in range(1, len(all_times)):
        dt = all_times[i] - all_times[i - 1]
        t_prev = all_times[i - 1]
        nxt = {}
        for x in layers[i]:
            cand = None
            for xp, (p, path) in best.items():
                if abs(x - xp) > dt:
                    continue
                q = p * macrostate_probability(x - xp, dt, params[i - 1])
                key = (q, -abs(xp - line(t_prev)), -xp)
                if cand is None or key > cand[0]:
                    cand = (key, path + (x,))
            if cand is not None:
                nxt[x] = (cand[0][0], cand[1])
        best = nxt
    prob, path = best[x_end]
    steps = tuple(
        macrostate_probability(b - a, tb - ta, params[i])
        for i, (a, b, ta, tb) in enumerate(zip(path, path[1:], all_times, all_times[1:]))
    )
    return PathResult(all_times, path, steps)


def euler_lagrange_residual(x: Sequence[float], v: Sequence[float], dt: float) -> np.ndarray:
    """``x'' (1 - v^2) + 2 x' v v' - (1 + v^2) v'`` at interior samples by central differences."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if x.shape != v.shape or x.ndim != 1:
        raise ValueError("x and v must be one-dimensional samples of equal length")
    if len(x) < 3:
        raise ValueError("need at least three samples")
    if np.any(np.abs(v) >= 1):
        raise ValueError("|v| must stay below 1")
    if dt <= 0:
        raise ValueError("dt must be positive")
    xd = (x[2:] - x[:-2]) / (2 * dt)
    xdd = (x[2:] - 2 * x[1:-1] + x[:-2]) / dt**2
    vd = (v[2:] - v[:-2]) / (2 * dt)
    vm = v[1:-1]
    return xdd * (1 - vm**2) + 2 * xd * vm * vd - (1 + vm**2) * vd
