"""Mach-Zehnder circuits with exact amplitudes over cyclotomic fields.

Two modes: index 0 is the upward beam (``upper``), index 1 the downward one
(``lower``). Circuits list their elements in the order the photon meets
them. Detectors split the evolution into branches; at the end of every
circuit the two output detectors read the photon out.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Union

from .cyclotomic import Cyclotomic, parse_cyclotomic, root_of_unity
from .errors import ParseError
from .linalg import CycMatrix, CycVector, inner, is_unitary

ARMS = ("upper", "lower")


def _arm_index(arm: str) -> int:
    try:
        return ARMS.index(arm)
    except ValueError:
        raise ValueError(f"unknown arm {arm!r}; expected 'upper' or 'lower'") from None


def standard_elements() -> tuple[CycMatrix, CycMatrix]:
    """The 50/50 splitter ``S`` and the mirror ``M = S @ S`` over conductor 8."""
    z = root_of_unity(8, 1)
    s = CycMatrix.from_rows([[(z - z**3) / 2, (z + z**3) / 2], [(z + z**3) / 2, (z - z**3) / 2]])
    i = z**2
    m = CycMatrix.from_rows([[0, i], [i, 0]])
    return s, m


@dataclass(frozen=True)
class Splitter:
    """Beam splitter ``[[alpha, beta], [beta, alpha]]``.

    Unitarity needs ``|alpha|^2 + |beta|^2 = 1`` and ``alpha conj(beta)``
    purely imaginary; both are checked exactly.
    """

    alpha: Cyclotomic
    beta: Cyclotomic

    def __post_init__(self):
        if not is_unitary(self.matrix()):
            raise ValueError(f"splitter ({self.alpha}, {self.beta}) is not unitary")

    @classmethod
    def balanced(cls) -> "Splitter":
        z = root_of_unity(8, 1)
        return cls((z - z**3) / 2, (z + z**3) / 2)

    def matrix(self) -> CycMatrix:
        return CycMatrix.from_rows([[self.alpha, self.beta], [self.beta, self.alpha]])

    @property
    def conductor(self) -> int:
        return math.lcm(self.alpha.conductor, self.beta.conductor)

    @property
    def token(self) -> str:
        if self == Splitter.balanced():
            return "S"
        return f"BS({self.alpha},{self.beta})"


@dataclass(frozen=True)
class Mirror:
    def matrix(self) -> CycMatrix:
        return standard_elements()[1]

    conductor = 8
    token = "M"


@dataclass(frozen=True)
class PhaseShifter:
    """Multiplies the amplitude in ``arm`` by ``zeta_n ** k``."""

    arm: str
    k: int
    n: int

    def __post_init__(self):
        _arm_index(self.arm)
        if self.n < 1:
            raise ValueError("phase denominator must be positive")

    def matrix(self) -> CycMatrix:
        phase = root_of_unity(self.n, self.k)
        vals = [phase, 1] if self.arm == "upper" else [1, phase]
        return CycMatrix.diagonal(vals)

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def token(self) -> str:
        return f"P({self.arm},{self.k}/{self.n})"


@dataclass(frozen=True)
class Detector:
    """Which-path detector on one arm.

    An absorbing detector (a good bomb) ends the branch in which it fires;
    otherwise the photon continues in the projected state.
    """

    arm: str
    absorbing: bool = True

    def __post_init__(self):
        _arm_index(self.arm)

    conductor = 1

    @property
    def token(self) -> str:
        return f"D({self.arm})" if self.absorbing else f"D({self.arm},pass)"


OpticalElement = Union[Splitter, Mirror, PhaseShifter, Detector]


@dataclass(frozen=True)
class Circuit:
    elements: tuple[OpticalElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    @property
    def conductor(self) -> int:
        return reduce(math.lcm, (e.conductor for e in self.elements), 8)

    def has_detectors(self) -> bool:
        return any(isinstance(e, Detector) for e in self.elements)

    def __str__(self) -> str:
        return ",".join(e.token for e in self.elements)


@dataclass(frozen=True)
class Branch:
    """One leaf of the measurement tree.

    ``amplitude`` is the unnormalized final state; ``probability`` is its
    squared norm relative to the input's.
    """

    labels: tuple[str, ...]
    amplitude: CycVector
    probability: Cyclotomic

    @property
    def label(self) -> str:
        return " ".join(self.labels)

    @property
    def exact(self) -> Fraction | None:
        return self.probability.as_rational() if self.probability.is_rational() else None


def input_state(arm: str) -> CycVector:
    return CycVector.basis(_arm_index(arm), 2)


def run_unitary(circuit: Circuit, state: CycVector) -> CycVector:
    if circuit.has_detectors():
        raise ValueError("circuit contains detectors; use enumerate_branches")
    for e in circuit.elements:
        state = e.matrix() @ state
    return state


def _project(state: CycVector, arm: int) -> CycVector:
    return CycVector(x if i == arm else 0 for i, x in enumerate(state))


def enumerate_branches(
    circuit: Circuit, state: CycVector, keep_zero: bool = False
) -> list[Branch]:
    """All measurement branches, depth first, with exact probabilities.

    Zero-probability branches are pruned unless ``keep_zero`` is set. The
    returned probabilities always sum to 1.
    """
    norm0 = inner(state, state)
    if norm0.is_zero():
        raise ValueError("input state is zero")
    inv0 = 1 / norm0.as_rational() if norm0.is_rational() else norm0.invert()
    out: list[Branch] = []

    def leaf(labels, psi):
        p = inner(psi, psi) * inv0
        if keep_zero or not p.is_zero():
            out.append(Branch(tuple(labels), psi, p))

    def walk(pos, labels, psi):
        if psi.is_zero() and not keep_zero:
            return
        for i in range(pos, len(circuit.elements)):
            e = circuit.elements[i]
            if isinstance(e, Detector):
                a = _arm_index(e.arm)
                hit = _project(psi, a)
                miss = _project(psi, 1 - a)
                tag = f"D{i}({e.arm})"
                if e.absorbing:
                    if keep_zero or not hit.is_zero():
                        leaf(labels + [f"{tag}=click"], hit)
                else:
                    walk(i + 1, labels + [f"{tag}=click"], hit)
                walk(i + 1, labels + [f"{tag}=none"], miss)
                return
            psi = e.matrix() @ psi
        for a, arm in enumerate(ARMS):
            leaf(labels + [f"out={arm}"], _project(psi, a))

    walk(0, [], state)
    return out


# -- circuit mini-language -------------------------------------------------


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


_CALL = re.compile(r"^(?P<name>[A-Z]+)\((?P<args>.*)\)$")


def parse_circuit(text: str) -> Circuit:
    """Parse ``"S,M,P(upper,1/8),BS(a,b),D(lower)"`` into a circuit.

    ``D(arm,pass)`` is a non-absorbing detector; an empty string is the empty
    circuit.
    """
    text = text.strip()
    if not text:
        return Circuit()
    elements: list[OpticalElement] = []
    for tok in _split_top(text):
        if tok == "S":
            elements.append(Splitter.balanced())
            continue
        if tok == "M":
            elements.append(Mirror())
            continue
        m = _CALL.match(tok)
        if not m:
            raise ParseError(f"unknown circuit element {tok!r}")
        name, args = m.group("name"), _split_top(m.group("args"))
        if name in ("D", "P") and args and args[0] not in ARMS:
            raise ParseError(f"unknown arm {args[0]!r} in {tok!r}")
        if name == "D" and len(args) in (1, 2):
            if len(args) == 2 and args[1] != "pass":
                raise ParseError(f"bad detector option {args[1]!r}")
            elements.append(Detector(args[0], absorbing=len(args) == 1))
        elif name == "P" and len(args) == 2:
            k, _, n = args[1].partition("/")
            try:
                k, n = int(k), int(n or 1)
            except ValueError:
                raise ParseError(f"bad phase {args[1]!r} in {tok!r}") from None
            elements.append(PhaseShifter(args[0], k, n))
        elif name == "BS" and len(args) == 2:
            # a well-formed but non-unitary splitter is a contract error
            elements.append(Splitter(parse_cyclotomic(args[0]), parse_cyclotomic(args[1])))
        else:
            raise ParseError(f"bad element {tok!r}")
    return Circuit(tuple(elements))


# -- bomb tester -----------------------------------------------------------


@dataclass(frozen=True)
class ScenarioOutcome:
    scenario: str
    outcome: str
    branch: Branch

    @property
    def probability(self) -> Fraction:
        return self.branch.probability.as_rational()


DEFECTIVE_BOMB = "S,M,S"
GOOD_BOMB = "S,D(lower),M,S"


def bomb_test() -> list[ScenarioOutcome]:
    """The four outcomes of the interaction-free bomb test.

    A defective bomb reflects the photon, so its circuit is the bare
    interferometer; a good bomb is an absorbing detector on the lower arm
    between the splitters.
    """
    up = input_state("upper")
    (defective,) = enumerate_branches(parse_circuit(DEFECTIVE_BOMB), up)
    exploded, untested, intact = enumerate_branches(parse_circuit(GOOD_BOMB), up)
    return [
        ScenarioOutcome("defective", "upper detector", defective),
        ScenarioOutcome("good", "exploded", exploded),
        ScenarioOutcome("good", "untested", untested),
        ScenarioOutcome("good", "good and intact", intact),
    ]
