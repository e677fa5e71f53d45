"""Command-line front end.

Exit codes: 0 all checks pass, 1 some check fails, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from fockforge import entwine, fock, logic, projector, specs, twist
from fockforge.report import CheckResult, VerificationReport, emit_report

DEFAULT_LEVELS = 4
DEFAULT_TOL = 1e-10
TOL_ENV = "FOCKFORGE_TOL"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    n_max: int = DEFAULT_LEVELS
    tol: float = DEFAULT_TOL
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.n_max < 1:
            raise UsageError("--levels must be >= 1")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None


def _apply_overrides(report: VerificationReport, overrides: dict[str, float]) -> None:
    for c in report.checks:
        if c.name in overrides:
            c.tolerance = overrides[c.name]
            c.passed = bool(c.residual <= c.tolerance)


def _complex_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _fail_check(name: str, exc: Exception) -> CheckResult:
    return CheckResult.boolean(name, False, {"error": str(exc)})


# commands


def cmd_catalog(cfg: RunConfig) -> VerificationReport:
    r = VerificationReport("catalog list", None)
    r.data["catalog"] = dict(twist.CATALOG)
    return r


def _is_lambda2(T: twist.TwistOperator) -> bool:
    spec = T.params.get("epsilon")
    return spec is not None and spec.N == 2 and np.allclose(spec.eps, [[-1, 1], [1, -1]], atol=0, rtol=0)


def cmd_twist_check(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    ts = specs.parse_twist(sf)
    T = ts.twist
    r = VerificationReport("twist check", sf.data)
    r.note(twist.CROSS_CONVENTION_NOTE)
    r.add(twist.check_yang_baxter(T, cfg.tol))
    r.add(twist.check_hermitian(T, cfg.tol))
    r.add(twist.check_norm_bound(T))
    if ts.mu is not None:
        r.add(twist.check_hecke(T, ts.mu, cfg.tol))
    if ts.B is not None:
        r.extend(twist.check_cd_conditions(T, ts.B, cfg.tol))
    if _is_lambda2(T):
        r.extend(twist.check_clifford_embedding(T.params["epsilon"]))
    r.data["kind"] = T.kind
    r.data["N"] = T.N
    r.data["operator_norm"] = twist.operator_norm(T.t_tilde)
    _apply_overrides(r, sf.tolerances())
    return r


def _build(cfg: RunConfig, ts: specs.TwistSpec, r: VerificationReport, n_max: int):
    r.note(projector.VACUUM_NOTE)
    r.note(projector.PAIRING_NOTE)
    try:
        return fock.build_fock(ts.twist, ts.B, n_max, cfg.tol)
    except (fock.DegenerateQuotientError, fock.RegimeError, fock.WickInvarianceError) as exc:
        r.add(_fail_check("fock.build", exc))
        return None


def cmd_fock_build(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    ts = specs.parse_twist(sf)
    r = VerificationReport("fock build", sf.data)
    F = _build(cfg, ts, r, cfg.n_max)
    if F is not None:
        r.extend(F.checks)
        r.data["dims"] = F.dims()
        r.data["gram_spectra"] = [list(s) if np.isfinite(s[0]) else None for s in F.spectra()]
        r.data["ideal_source"] = F.tower.source
        if F.tower.consistency_residual is not None:
            r.add(CheckResult.from_residual("ideal.inside_gram_kernel", F.tower.consistency_residual, cfg.tol))
        r.data["well_defined"] = F.well_defined
        r.data["levels"] = cfg.n_max
    _apply_overrides(r, sf.tolerances())
    return r


def cmd_fock_ccr(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    ts = specs.parse_twist(sf)
    r = VerificationReport("fock ccr", sf.data)
    r.note(fock.CCR_NOTE)
    r.note(fock.ORDER_NOTE)
    F = _build(cfg, ts, r, cfg.n_max)
    if F is not None:
        r.add(fock.verify_ccr(F))
        r.add(fock.verify_adjointness(F))
        r.add(fock.compare_annihilators(F))
        r.data["ccr_coefficients_nonzero"] = [
            [int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1, _complex_pair(c)]
            for (i, j, k, l), c in np.ndenumerate(fock.ccr_coefficients(ts.twist))
            if c != 0
        ]
    _apply_overrides(r, sf.tolerances())
    return r


def cmd_fock_oracle(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    ts = specs.parse_twist(sf)
    r = VerificationReport("fock oracle", sf.data)
    for n in range(1, cfg.n_max + 1):
        r.add(projector.check_quasi_symmetrizer(ts.twist, n, cfg.tol))
    _apply_overrides(r, sf.tolerances())
    return r


def cmd_entwine_check(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    E, M = specs.parse_entwining(sf)
    r = VerificationReport("entwine check", sf.data)
    r.extend(entwine.check_entwining(E, cfg.tol))
    for total in range(2, 4):
        for m in range(1, total):
            if E.C.dim * E.A.dim**total <= 4096:
                r.add(
                    CheckResult.from_residual(
                        f"entwining.psi_split.{m}_{total - m}", entwine.psi_split_residual(E, m, total - m), cfg.tol
                    )
                )
    if M is not None:
        try:
            r.extend(entwine.check_entwined_module(E, M, cfg.tol))
        except entwine.DimensionError as exc:
            raise sf.fail("module", str(exc)) from None
    _apply_overrides(r, sf.tolerances())
    return r


def cmd_entwine_cross(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    r = VerificationReport("entwine cross", sf.data)
    if "cross" in sf.data:
        X = specs.parse_cross(sf)
        r.data["source"] = "cross"
    else:
        E, _ = specs.parse_entwining(sf)
        r.data["source"] = "factorized entwining: dual coalgebra crossed with the algebra"
        try:
            tau_t, checks = entwine.factorize_dual(E, tol=cfg.tol)
        except entwine.NotFactorizableError as exc:
            r.add(_fail_check("factorize.solvable", exc))
            _apply_overrides(r, sf.tolerances())
            return r
        r.extend(checks)
        X = entwine.CrossSymmetry(entwine.dual_algebra(E.C), E.A, tau_t)
    try:
        cp = entwine.crossed_product(X, cfg.tol)
    except entwine.DimensionError as exc:
        raise sf.fail("cross" if "cross" in sf.data else "tau", str(exc)) from None
    r.extend(cp.checks)
    r.data["dim"] = cp.algebra.dim
    r.data["mult_nonzero"] = [
        [int(i), int(j), int(k), _complex_pair(c)] for (i, j, k), c in np.ndenumerate(cp.algebra.mult) if abs(c) > 0
    ]
    _apply_overrides(r, sf.tolerances())
    return r


def cmd_logic_check(cfg: RunConfig) -> VerificationReport:
    sf = specs.load(cfg.inputs[0])
    L = specs.parse_logic(sf)
    r = VerificationReport("logic check", sf.data)
    r.note(logic.TRANSITIVITY_NOTE)
    r.extend(logic.check_logic(L))
    r.data["words"] = len(L.words)
    r.data["orthogonal_pairs"] = len(L.ortho)
    _apply_overrides(r, sf.tolerances())
    return r


def cmd_logic_represent(cfg: RunConfig) -> VerificationReport:
    if len(cfg.inputs) != 2:
        raise UsageError("logic represent needs FILE and TWISTFILE")
    sf = specs.load(cfg.inputs[0])
    L = specs.parse_logic(sf)
    tf = specs.load(cfg.inputs[1])
    ts = specs.parse_twist(tf)
    r = VerificationReport("logic represent", {"logic": sf.data, "twist": tf.data})
    if L.N > ts.twist.N:
        raise sf.fail("N", f"logic uses {L.N} labels but the twist has N={ts.twist.N}")
    longest = max((len(w) for w in L.words), default=1)
    n_max = max(cfg.n_max, longest, 1)
    F = _build(cfg, ts, r, n_max)
    if F is not None:
        try:
            rep = logic.represent(L, F, cfg.tol)
        except logic.LogicError as exc:
            raise sf.fail("words", str(exc)) from None
        r.extend(rep.checks)
        for n in rep.notes:
            r.note(n)
        r.data["pairings"] = [
            [logic.format_word(a), logic.format_word(b), _complex_pair(v)] for a, b, v in rep.pairings
        ]
    _apply_overrides(r, sf.tolerances())
    return r


COMMANDS = {
    "catalog list": cmd_catalog,
    "twist check": cmd_twist_check,
    "fock build": cmd_fock_build,
    "fock ccr": cmd_fock_ccr,
    "fock oracle": cmd_fock_oracle,
    "entwine check": cmd_entwine_check,
    "entwine cross": cmd_entwine_cross,
    "logic check": cmd_logic_check,
    "logic represent": cmd_logic_represent,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--levels", type=int, default=DEFAULT_LEVELS, help="truncation level n_max (default 4)")
    common.add_argument("--tol", type=float, default=None, help=f"tolerance (default 1e-10, or ${TOL_ENV})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="fockforge", description="Verify generalized-statistics Fock constructions.")
    groups = p.add_subparsers(dest="group", required=True)
    layout = {
        "catalog": {"list": []},
        "twist": {"check": ["file"]},
        "fock": {"build": ["file"], "ccr": ["file"], "oracle": ["file"]},
        "entwine": {"check": ["file"], "cross": ["file"]},
        "logic": {"check": ["file"], "represent": ["file", "twistfile"]},
    }
    for group, actions in layout.items():
        gp = groups.add_parser(group).add_subparsers(dest="action", required=True)
        for action, positionals in actions.items():
            ap = gp.add_parser(action, parents=[common])
            for name in positionals:
                ap.add_argument(name)
    return p


def run(cfg: RunConfig) -> tuple[int, VerificationReport]:
    report = COMMANDS[cfg.command](cfg)
    report.note(projector.VACUUM_NOTE)
    return (EXIT_OK if report.passed else EXIT_FAIL), report


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = f"{args.group} {args.action}"
    inputs = tuple(getattr(args, k) for k in ("file", "twistfile") if getattr(args, k, None) is not None)
    try:
        tol = args.tol if args.tol is not None else default_tol()
        cfg = RunConfig(command, inputs, args.levels, tol, args.format, args.out)
        code, report = run(cfg)
    except (specs.SpecError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    blob = emit_report(report, cfg.fmt)
    if cfg.out:
        try:
            with open(cfg.out, "wb") as fh:
                fh.write(blob)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.buffer.write(blob)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
