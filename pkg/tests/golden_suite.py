"""Golden-file harness: CLI invocations with frozen outputs.

Each case pins the exact bytes the command prints (by SHA-256) and keeps
the expected file next to it for readable diffs.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from cycloquant.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"


@dataclass(frozen=True)
class GoldenCase:
    argv: list
    fixture: str
    digest: str
    anchor: str


CASES = [
    GoldenCase(['bomb'], 'bomb.csv', '06b92570f8688815461d825f36f7809e121241e280035e268dc177c8218de1e5', 'bomb tester: four scenario probabilities 1, 1/2, 1/4, 1/4'),
    GoldenCase(['--format', 'json', 'bomb'], 'bomb.json', 'f3a4ff3a9f4055e802869f542c35b9c8a0b418049ff8f90d06c101237e9fab78', 'bomb tester, JSON rendering'),
    GoldenCase(['zeno', 'table'], 'zeno_table.csv', 'cb9d0835a7d0e0738a6722716dd63d0446286925042e2d3c63f752e557e68980', 'Zeno times for all powers of the 50/50 splitter'),
    GoldenCase(['zeno', 'scan', '--n', '100'], 'zeno_scan_100.csv', 'e05c48b910dbf094f61845a47774f17642e54b65923fc72dc7be68817c767a11', 'order-100 splitter: tau_Z = 25'),
    GoldenCase(['zeno', 'scan', '--n', '8'], 'zeno_scan_8.csv', 'e85e831b278acef954c4e28633e072d152cd4f0187069677f7c1d15f94edb607', 'order-8 splitter: tau_Z = 2'),
    GoldenCase(['mzi', '--circuit', 'S,M,S'], 'mzi_smS.csv', 'a2a57c6c58e2a394cad42859f53b716ea240ae21a66c3a0f499109e3980e03d1', 'balanced interferometer: only the upper detector fires'),
    GoldenCase(['mzi', '--circuit', 'S'], 'mzi_S.csv', 'c79524f730ac28f474e3b2d51c273bdcf838abd1503cae391ad6e902a9183d30', 'single 50/50 splitter'),
    GoldenCase(['mzi', '--circuit', 'S,D(lower),M,S', '--input', 'lower'], 'mzi_bomb_lower.csv', 'f62c20e4d75ccc68beeabec9dbb055e195a86dc561767af29085dda976fc8dc6', 'good bomb, photon entering the lower port'),
    GoldenCase(['walk', '--v', '0', '--observe', '0:0,100:40', '--times', '50'], 'walk_50.csv', '4425c54e4beb420b6533dcf7174b833d807d3801fc8615b1db5c1b681d9c375e', 'most probable walk through (100, 40)'),
    GoldenCase(['embed', 'decompose'], 'embed_decompose.csv', '1a2e9ebd6ac0bf57ac5a950d4a83e02b140a052d520af172365094353981e636', 'Fourier blocks of the 8-cycle'),
    GoldenCase(['zeno', 'a5', '--tmax', '10'], 'zeno_a5.csv', '1d09a357d8fe2f91ee4f3d2ef3fc581edd361cf29edbf84d379d64ff8b94f9b1', 'A5 generator survival series'),
]


def run_cli(argv, tmp_dir: Path) -> bytes:
    out = tmp_dir / "out.txt"
    code = main(["--output", str(out), *argv])
    if code != 0:
        raise AssertionError(f"exit code {code} for {argv}")
    return out.read_bytes()


def check_case(case: GoldenCase, tmp_dir: Path) -> tuple[bool, str]:
    path = GOLDEN_DIR / case.fixture
    if not path.exists():
        raise FileNotFoundError(f"missing fixture {path} ({case.anchor})")
    expected = path.read_bytes()
    if hashlib.sha256(expected).hexdigest() != case.digest:
        return False, f"fixture {case.fixture} was edited ({case.anchor})"
    got = run_cli(case.argv, tmp_dir)
    if got != expected:
        return False, f"output differs from {case.fixture} ({case.anchor})"
    return True, case.anchor


def run_golden_suite(tmp_dir: Path) -> list[tuple[GoldenCase, bool, str]]:
    return [(case, *check_case(case, tmp_dir)) for case in CASES]
