"""Run every CLI subcommand over the fixture corpus twice and summarize exit
codes and report determinism.

    python scripts/run_corpus.py [FIXTURE_DIR]
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

TWIST = ["zero", "boson", "fermion", "qhalf", "qneg", "lambda2", "graded_eps", "graded_eps_nonunitary", "boson_wrong_b"]


def commands(fx: Path):
    yield ["catalog", "list"]
    for name in TWIST:
        f = str(fx / f"{name}.json")
        for action in ("check",):
            yield ["twist", action, f]
        for action in ("build", "ccr", "oracle"):
            yield ["fock", action, f, "--levels", "3"]
    for name in ("entwine_flip", "entwine_shift", "entwine_mutant_unital"):
        yield ["entwine", "check", str(fx / f"{name}.json")]
        yield ["entwine", "cross", str(fx / f"{name}.json")]
    yield ["entwine", "cross", str(fx / "cross_graded.json")]
    for name in ("logic_example", "logic_singleton", "logic_reflexive"):
        yield ["logic", "check", str(fx / f"{name}.json")]
    for twist in ("zero", "boson", "fermion"):
        yield ["logic", "represent", str(fx / "logic_example.json"), str(fx / f"{twist}.json")]


def main():
    fx = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "tests" / "fixtures"
    bad = 0
    for argv in commands(fx):
        runs = [
            subprocess.run([sys.executable, "-m", "fockforge", *argv, "--format", "json"], capture_output=True)
            for _ in range(2)
        ]
        same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode
        bad += not same
        shown = " ".join(Path(a).name if a.endswith(".json") else a for a in argv)
        print(f"exit {runs[0].returncode}  {'deterministic' if same else 'DIFFERS'}  {shown}")
    print(f"{bad} nondeterministic invocations")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
