"""Evolution between observations as weighted bunches of parallel transports.

Between two observations ``dt`` ticks apart, every sequence ``gamma`` of
``dt`` group elements is a candidate identification of states. Sequence
``k`` (lexicographic index over ``M**dt`` sequences) carries a weight ``w_k``
and the transition probability is ``sum_k w_k * born(psi_next, rho(gamma_k) psi_prev)``.
A weight concentrated on ``(g, g, ..., g)`` recovers ordinary unitary
evolution by ``rho(g)**dt``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .cyclotomic import Cyclotomic
from .errors import ResourceLimitError
from .linalg import CycMatrix, CycVector, born

ENUMERATION_CEILING = 10**7


def _check_count(m: int, dt: int, ceiling: int) -> int:
    if m < 1 or dt < 1:
        raise ValueError("need at least one group element and one tick")
    count = m**dt
    if count > ceiling:
        raise ResourceLimitError(f"{m}**{dt} = {count} sequences exceeds the ceiling {ceiling}")
    return count


def enumerate_sequences(
    m: int, dt: int, ceiling: int = ENUMERATION_CEILING
) -> Iterator[tuple[int, ...]]:
    """All ``m**dt`` index sequences in lexicographic order."""
    _check_count(m, dt, ceiling)
    return itertools.product(range(m), repeat=dt)


def sequence_index(gamma: Sequence[int], m: int) -> int:
    k = 0
    for g in gamma:
        if not 0 <= g < m:
            raise ValueError(f"element index {g} out of range for {m} elements")
        k = k * m + g
    return k


def index_to_sequence(k: int, m: int, dt: int) -> tuple[int, ...]:
    if not 0 <= k < m**dt:
        raise ValueError(f"sequence index {k} out of range")
    out = []
    for _ in range(dt):
        k, r = divmod(k, m)
        out.append(r)
    return tuple(reversed(out))


def sequence_value(gamma: Sequence[int], rep: Sequence[CycMatrix]) -> CycMatrix:
    """The ordered product ``rho(g_1) @ ... @ rho(g_dt)``."""
    if not gamma:
        raise ValueError("empty sequence")
    value = rep[gamma[0]]
    for g in gamma[1:]:
        value = value @ rep[g]
    return value


def _apply_sequence(gamma: Sequence[int], rep: Sequence[CycMatrix], psi: CycVector) -> CycVector:
    for g in reversed(gamma):
        psi = rep[g] @ psi
    return psi


@dataclass(frozen=True, eq=False)
class TransportBunch:
    """Weights over the sequences of one observation interval, stored sparsely."""

    elements: tuple[CycMatrix, ...]
    interval_length: int
    weights: Mapping[int, Fraction]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        count = len(elements) ** self.interval_length
        if not elements or self.interval_length < 1:
            raise ValueError("a bunch needs group elements and a positive interval")
        dims = {e.shape for e in elements}
        if len(dims) != 1 or not elements[0].is_square():
            raise ValueError("group elements must be square matrices of one size")
        weights = {}
        for k, w in self.weights.items():
            w = Fraction(w)
            if not 0 <= k < count:
                raise ValueError(f"sequence index {k} outside 0..{count - 1}")
            if w < 0:
                raise ValueError(f"negative weight {w} on sequence {k}")
            if w:
                weights[int(k)] = w
        total = sum(weights.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, expected 1")
        object.__setattr__(self, "weights", weights)

    @property
    def group_size(self) -> int:
        return len(self.elements)

    def sequence(self, k: int) -> tuple[int, ...]:
        return index_to_sequence(k, self.group_size, self.interval_length)


def delta_bunch(
    g_index: int, dt: int, rep: Sequence[CycMatrix], labels: Sequence[str] = ()
) -> TransportBunch:
    """Unit weight on the constant sequence ``(g, ..., g)``."""
    k = sequence_index([g_index] * dt, len(rep))
    return TransportBunch(tuple(rep), dt, {k: Fraction(1)}, tuple(labels))


def uniform_bunch(
    dt: int, rep: Sequence[CycMatrix], ceiling: int = ENUMERATION_CEILING, labels: Sequence[str] = ()
) -> TransportBunch:
    count = _check_count(len(rep), dt, ceiling)
    w = Fraction(1, count)
    return TransportBunch(tuple(rep), dt, {k: w for k in range(count)}, tuple(labels))


def transition_probability(
    bunch: TransportBunch, psi_prev: CycVector, psi_next: CycVector
) -> Cyclotomic:
    """Weighted Born probability of observing ``psi_next`` after ``psi_prev``."""
    total = Cyclotomic.rational(0)
    for k, w in sorted(bunch.weights.items()):
        phi = _apply_sequence(bunch.sequence(k), bunch.elements, psi_prev)
        total = total + born(psi_next, phi) * w
    return total


@dataclass(frozen=True)
class ObservationSequence:
    times: tuple[int, ...]
    states: tuple[CycVector, ...]

    def __post_init__(self):
        times = tuple(int(t) for t in self.times)
        states = tuple(self.states)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)
        if len(times) != len(states) or len(times) < 2:
            raise ValueError("need at least two observations with one state each")
        if times[0] < 0 or any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"observation times must be nonnegative and increasing: {times}")
        if len({len(s) for s in states}) != 1:
            raise ValueError("observed states differ in dimension")
        if any(s.is_zero() for s in states):
            raise ValueError("observed states must be nonzero")

    @property
    def intervals(self) -> list[int]:
        return [b - a for a, b in zip(self.times, self.times[1:])]


def step_probabilities(
    seq: ObservationSequence, bunches: Sequence[TransportBunch]
) -> list[Cyclotomic]:
    if len(bunches) != len(seq.intervals):
        raise ValueError(f"{len(seq.intervals)} intervals but {len(bunches)} bunches")
    cache: dict = {}
    steps = []
    for i, (bunch, dt) in enumerate(zip(bunches, seq.intervals)):
        if bunch.interval_length != dt:
            raise ValueError(f"interval {i} has length {dt} but its bunch spans {bunch.interval_length}")
        key = (id(bunch), seq.states[i], seq.states[i + 1])
        if key not in cache:
            cache[key] = transition_probability(bunch, seq.states[i], seq.states[i + 1])
        steps.append(cache[key])
    return steps


def trajectory_probability(
    seq: ObservationSequence, bunches: Sequence[TransportBunch]
) -> Cyclotomic:
    """Product of the one-step transition probabilities."""
    prob = Cyclotomic.rational(1)
    for p in step_probabilities(seq, bunches):
        prob = prob * p
    return prob


def entropy_of(p: Cyclotomic) -> float:
    """Natural log of a probability; ``-inf`` for zero."""
    if p.is_zero():
        return -math.inf
    if p.is_rational():
        q = p.as_rational()
        return math.log(q.numerator) - math.log(q.denominator)
    return math.log(float(p))


def trajectory_entropy(
    seq: ObservationSequence, bunches: Sequence[TransportBunch]
) -> float:
    """Sum of one-step entropies."""
    return math.fsum(entropy_of(p) for p in step_probabilities(seq, bunches))
