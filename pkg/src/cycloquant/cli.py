"""Command line front end: every experiment as a CSV or JSON table.

Exit codes: 0 success, 2 malformed input, 3 contract violation, 4 resource
ceiling exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cyclotomic import Cyclotomic, format_cyclotomic, parse_cyclotomic
from .embedding import approximate_bloch_point, decomposition_table
from .errors import ParseError, ResourceLimitError
from .groups import a5_rep3prime, mz_splitter
from .interferometer import bomb_test, enumerate_branches, input_state, parse_circuit, standard_elements
from .linalg import CycMatrix, CycVector
from .random_walk import check_lattice, most_probable_path
from .transport import (
    ObservationSequence,
    TransportBunch,
    delta_bunch,
    entropy_of,
    step_probabilities,
    uniform_bunch,
)
from .zeno import a5_dynamics, zeno_scan_sn, zeno_table_c8

EXIT_PARSE, EXIT_CONTRACT, EXIT_RESOURCE = 2, 3, 4


class Renderer:
    def __init__(self, precision: int = 12):
        self.precision = precision

    def float(self, x: float) -> str:
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.{self.precision}f}"

    def exact(self, x) -> str:
        """``p/q`` for rationals, the cyclotomic text form otherwise."""
        if isinstance(x, Cyclotomic):
            return _fraction(x.as_rational()) if x.is_rational() else format_cyclotomic(x)
        return _fraction(Fraction(x))

    def value(self, prefix: str, x) -> dict[str, str]:
        """Exact rendering plus a float column."""
        f = x.to_complex().real if isinstance(x, Cyclotomic) else float(x)
        return {prefix: self.exact(x), f"{prefix}_float": self.float(f)}


def _fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _vector(v: CycVector) -> str:
    return "; ".join(format_cyclotomic(x) for x in v)


# -- commands ----------------------------------------------------------------


def cmd_mzi(args, r: Renderer) -> list[dict]:
    circuit = parse_circuit(args.circuit)
    rows = []
    for b in enumerate_branches(circuit, input_state(args.input)):
        rows.append({"branch": b.label, **r.value("probability", b.probability), "amplitude": _vector(b.amplitude)})
    return rows


def cmd_bomb(args, r: Renderer) -> list[dict]:
    return [
        {
            "scenario": o.scenario,
            "outcome": o.outcome,
            "branch": o.branch.label,
            **r.value("probability", o.probability),
            "state": _vector(o.branch.amplitude),
        }
        for o in bomb_test()
    ]


def _tau(x: float) -> str:
    return "inf" if math.isinf(x) else str(int(x))


def cmd_zeno(args, r: Renderer) -> list[dict]:
    if args.zeno_cmd == "table":
        return [
            {
                "operator": rep.label,
                "order": rep.order,
                "period": "constant" if rep.period is None else rep.period,
                "tau_z": _tau(rep.tau_z),
            }
            for rep in zeno_table_c8()
        ]
    if args.zeno_cmd == "scan":
        series, rep = zeno_scan_sn(args.n, args.tmax)
        head = {"operator": rep.label, "order": rep.order, "period": rep.period or "constant", "tau_z": _tau(rep.tau_z)}
        return [{**head, "t": t, **r.value("p", p)} for t, p in enumerate(series.probabilities)]
    psi0 = None
    if args.psi0:
        psi0 = CycVector(parse_cyclotomic(s) for s in args.psi0.split(","))
        if len(psi0) != 3:
            raise ValueError(f"psi0 needs 3 entries, got {len(psi0)}")
    rows = []
    for name, series in a5_dynamics(args.tmax, psi0).items():
        rows.extend({"operator": name, "t": t, **r.value("p", p)} for t, p in enumerate(series.probabilities))
    return rows


def _parse_observations(text: str) -> list[tuple[int, int]]:
    obs = []
    for item in text.split(","):
        t, sep, x = item.strip().partition(":")
        try:
            obs.append((int(t), int(x)))
        except ValueError:
            raise ParseError(f"bad observation {item!r}; expected t:x") from None
        if not sep:
            raise ParseError(f"bad observation {item!r}; expected t:x")
    return obs


def _parse_ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise ParseError(f"bad integer list {text!r}") from None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None


def cmd_walk(args, r: Renderer) -> list[dict]:
    obs = _parse_observations(args.observe)
    if len(obs) < 2:
        raise ValueError("need at least two observations")
    velocities = [_parse_fraction(s) for s in args.v.split(",")]
    t0, x0 = obs[0]
    for t, x in obs[1:]:
        if t <= t0:
            raise ValueError(f"observation {t}:{x} is not after the first observation")
        check_lattice(x - x0, t - t0, what=f"observation {t}:{x}")
    free = _parse_ints(args.times)
    all_times = sorted({t for t, _ in obs} | set(free))
    n_int = len(all_times) - 1
    if len(velocities) == 1:
        velocities = velocities * n_int
    elif len(velocities) != n_int:
        raise ValueError(f"{n_int} intervals but {len(velocities)} drift velocities")
    # optimize each stretch between consecutive observations independently
    times, positions, steps = [t0], [x0], []
    fixed = dict(obs)
    for (ta, xa), (tb, xb) in zip(obs, obs[1:]):
        inner = [t for t in free if ta < t < tb]
        i0 = all_times.index(ta)
        seg = most_probable_path(ta, xa, tb, xb, inner, velocities[i0 : i0 + len(inner) + 1])
        times.extend(seg.times[1:])
        positions.extend(seg.positions[1:])
        steps.extend(seg.step_probabilities)
    stray = [t for t in free if t not in times or t in fixed]
    if stray:
        raise ValueError(f"free times {stray} coincide with observations or lie outside them")
    rows, acc = [], []
    total = Fraction(1)
    rows.append({"t": times[0], "x": positions[0], "step_probability": "1/1", "cumulative_probability": "1/1", "cumulative_entropy": r.float(0.0)})
    for t, x, p in zip(times[1:], positions[1:], steps):
        total *= p
        acc.append(entropy_of(Cyclotomic.rational(p)))
        rows.append(
            {
                "t": t,
                "x": x,
                "step_probability": _fraction(p),
                "cumulative_probability": _fraction(total),
                "cumulative_entropy": r.float(math.fsum(acc)),
            }
        )
    return rows


def _load_model(spec: str) -> dict:
    text = spec if spec.lstrip().startswith("{") else Path(spec).read_text()
    try:
        model = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"model is not valid JSON: {exc}") from None
    if not isinstance(model, dict):
        raise ParseError("model must be a JSON object")
    return model


def _model_rep(spec) -> list[CycMatrix]:
    if isinstance(spec, str):
        name, _, arg = spec.partition(":")
        if name == "S":
            return [standard_elements()[0]]
        if name == "mz":
            if not arg.isdigit():
                raise ParseError(f"bad splitter order in {spec!r}")
            return [mz_splitter(int(arg))]
        if name == "a5":
            return list(a5_rep3prime())
        raise ParseError(f"unknown representation {spec!r}")
    if not isinstance(spec, list) or not spec:
        raise ParseError("representation must be a name or a list of matrices")
    return [CycMatrix.from_rows([[parse_cyclotomic(str(x)) for x in row] for row in m]) for m in spec]


def cmd_transport(args, r: Renderer) -> list[dict]:
    """Model keys: ``representation`` (``"S"``, ``"mz:N"``, ``"a5"`` or a list of
    matrices of cyclotomic strings), ``observations`` (list of ``{"t", "state"}``)
    and ``bunches`` (one per interval: ``{"delta": g}``, ``"uniform"`` or
    ``{"weights": {"k": "p/q"}}``)."""
    model = _load_model(args.model)
    try:
        rep = _model_rep(model["representation"])
        obs = model["observations"]
        times = [int(o["t"]) for o in obs]
        states = [CycVector(parse_cyclotomic(str(x)) for x in o["state"]) for o in obs]
        bunch_specs = model["bunches"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed transport model: {exc!r}") from None
    seq = ObservationSequence(tuple(times), tuple(states))
    if len(bunch_specs) != len(seq.intervals):
        raise ValueError(f"{len(seq.intervals)} intervals but {len(bunch_specs)} bunches")
    bunches = []
    for dt, b in zip(seq.intervals, bunch_specs):
        if b == "uniform":
            bunches.append(uniform_bunch(dt, rep))
        elif isinstance(b, dict) and "delta" in b:
            bunches.append(delta_bunch(int(b["delta"]), dt, rep))
        elif isinstance(b, dict) and "weights" in b:
            w = {int(k): _parse_fraction(str(x)) for k, x in b["weights"].items()}
            bunches.append(TransportBunch(tuple(rep), dt, w))
        else:
            raise ParseError(f"bad bunch {b!r}")
    rows = []
    total = Cyclotomic.rational(1)
    for i, p in enumerate(step_probabilities(seq, bunches)):
        total = total * p
        rows.append({"interval": i, "t_start": times[i], "t_end": times[i + 1], **r.value("probability", p), "entropy": r.float(entropy_of(p))})
    rows.append({"interval": "trajectory", "t_start": times[0], "t_end": times[-1], **r.value("probability", total), "entropy": r.float(entropy_of(total))})
    return rows


def cmd_embed(args, r: Renderer) -> list[dict]:
    if args.embed_cmd == "decompose":
        return decomposition_table(8)
    try:
        target = [complex(s.replace(" ", "")) for s in args.target.split(",")]
    except ValueError:
        raise ParseError(f"bad target {args.target!r}; expected two complex numbers") from None
    res = approximate_bloch_point(target, args.max_entry)
    return [
        {
            "multiplicities": " ".join(str(k) for k in res.multiplicities),
            "amplitude": _vector(res.amplitude),
            "error": r.float(res.error),
        }
    ]


# -- plumbing ----------------------------------------------------------------


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cycloquant", description="Exact finite-group quantum models.")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write to this file instead of standard output")
    p.add_argument("--precision", type=int, default=12, help="digits after the point for floats")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("mzi", help="branch table of an interferometer circuit")
    m.add_argument("--circuit", required=True, help='e.g. "S,M,S" or "S,D(lower),M,S"')
    m.add_argument("--input", choices=("upper", "lower"), default="upper")
    m.set_defaults(func=cmd_mzi)

    b = sub.add_parser("bomb", help="interaction-free bomb test")
    b.set_defaults(func=cmd_bomb)

    z = sub.add_parser("zeno", help="survival probabilities and Zeno times")
    zs = z.add_subparsers(dest="zeno_cmd", required=True, parser_class=_Parser)
    zs.add_parser("table", help="powers of the 50/50 splitter")
    sc = zs.add_parser("scan", help="series for the order-n splitter")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--tmax", type=int)
    a5 = zs.add_parser("a5", help="series for the A5 generators")
    a5.add_argument("--tmax", type=int, required=True)
    a5.add_argument("--psi0", help="three comma-separated cyclotomic literals")
    z.set_defaults(func=cmd_zeno)

    w = sub.add_parser("walk", help="most probable lattice walk through observations")
    w.add_argument("--v", required=True, help="drift velocity p/q, or one per interval")
    w.add_argument("--observe", required=True, help="t:x pairs, e.g. 0:0,100:40")
    w.add_argument("--times", help="free intermediate times, e.g. 25,50,75")
    w.set_defaults(func=cmd_walk)

    t = sub.add_parser("transport", help="transition probabilities of a transport model")
    t.add_argument("--model", required=True, help="JSON file or inline JSON object")
    t.set_defaults(func=cmd_transport)

    e = sub.add_parser("embed", help="multiplicity vectors and the splitter subspace")
    es = e.add_subparsers(dest="embed_cmd", required=True, parser_class=_Parser)
    es.add_parser("decompose", help="Fourier blocks of the 8-cycle")
    bl = es.add_parser("bloch", help="best multiplicity vector for a target ray")
    bl.add_argument("--target", required=True, help="two complex numbers, e.g. 1,1j")
    bl.add_argument("--max-entry", type=int, default=2)
    e.set_defaults(func=cmd_embed)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 0:
        parser.error("--precision must be nonnegative")
    try:
        rows = args.func(args, Renderer(args.precision))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    text = render(rows, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
