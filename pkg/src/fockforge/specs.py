"""JSON spec files: parsing with line-anchored errors.

Complex numbers are plain numbers or ``[re, im]`` pairs; matrices are
row-major nested lists.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from fockforge.entwine import AlgebraPresentation, CoalgebraPresentation, CrossSymmetry, EntwinedModuleData, EntwiningStructure
from fockforge.logic import QuantumLogic
from fockforge.twist import BOperator, EpsilonSpec, TwistOperator, make_twist


class SpecError(ValueError):
    """Input problem; ``str()`` is ``path:line: message``."""

    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line
        self.message = message


@dataclass
class SpecFile:
    path: str
    text: str
    data: dict

    def fail(self, key: str | None, message: str) -> SpecError:
        return SpecError(self.path, self.line_of(key), message)

    def line_of(self, key: str | None) -> int:
        if key:
            m = re.search(r'"' + re.escape(key) + r'"\s*:', self.text)
            if m:
                return self.text.count("\n", 0, m.start()) + 1
        return 1

    def tolerances(self) -> dict[str, float]:
        tols = self.data.get("tolerances", {})
        if not isinstance(tols, dict):
            raise self.fail("tolerances", "'tolerances' must map check names to positive numbers")
        out = {}
        for k, v in tols.items():
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
                raise self.fail("tolerances", f"tolerance for {k!r} must be a positive number")
            out[k] = float(v)
        return out


def load(path: str | Path) -> SpecFile:
    p = str(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(p, 0, f"cannot read file: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(p, exc.lineno, f"malformed JSON: {exc.msg} (column {exc.colno})") from None
    if not isinstance(data, dict):
        raise SpecError(p, 1, "top level must be a JSON object")
    return SpecFile(p, text, data)


def complex_array(spec: SpecFile, key: str, value, ndim: int) -> np.ndarray:
    """Array of rank ``ndim``; a trailing axis of length 2 holds [re, im] pairs."""
    try:
        a = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise spec.fail(key, f"'{key}' must be a numeric (possibly nested) list") from None
    if a.ndim == ndim + 1 and a.shape[-1] == 2:
        a = a[..., 0] + 1j * a[..., 1]
    elif a.ndim != ndim:
        raise spec.fail(key, f"'{key}' must have rank {ndim} (or {ndim + 1} with [re, im] pairs), got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise spec.fail(key, f"'{key}' has non-finite entries")
    return a.astype(complex)


def complex_scalar(spec: SpecFile, key: str, value) -> complex:
    return complex(complex_array(spec, key, value, 0))


def _require(spec: SpecFile, obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        suffix = "" if where == key else f" in '{where}'"
        raise spec.fail(where, f"missing required field '{key}'{suffix}")
    return obj[key]


def _positive_int(spec: SpecFile, key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise spec.fail(key, f"'{key}' must be a positive integer")
    return value


@dataclass
class TwistSpec:
    twist: TwistOperator
    B: BOperator | None
    mu: complex | None


def parse_twist(spec: SpecFile) -> TwistSpec:
    d = spec.data
    tw = d.get("twist")
    if not isinstance(tw, dict):
        raise spec.fail("twist", "missing or invalid 'twist' object")
    kind = tw.get("kind")
    if not isinstance(kind, str):
        raise spec.fail("kind", "'twist.kind' must be a string")
    N = _positive_int(spec, "dimension", d["dimension"]) if "dimension" in d else None
    try:
        if kind == "epsilon_diag":
            if "epsilon" in tw:
                eps = EpsilonSpec(complex_array(spec, "epsilon", tw["epsilon"], 2))
            elif "sigma" in tw and "omega" in tw:
                q = complex_scalar(spec, "q", tw.get("q", 1.0))
                eps = EpsilonSpec.from_grading(
                    np.asarray(tw["sigma"]), np.asarray(tw["omega"]), q
                )
            else:
                raise spec.fail("twist", "epsilon_diag needs 'epsilon' or 'sigma' and 'omega'")
            T = make_twist(kind, N, epsilon=eps)
        elif kind == "custom":
            data = complex_array(spec, "data", _require(spec, tw, "data", "twist"), 2)
            T = make_twist(kind, N, matrix=data)
        elif kind == "q_flip":
            T = make_twist(kind, N, q=complex_scalar(spec, "q", _require(spec, tw, "q", "twist")))
        else:
            T = make_twist(kind, N)
    except SpecError:
        raise
    except ValueError as exc:
        raise spec.fail("twist", str(exc)) from None

    mu = complex_scalar(spec, "mu", d["mu"]) if "mu" in d else None
    B = None
    if "b_operator" in d:
        b = d["b_operator"]
        if not isinstance(b, dict):
            raise spec.fail("b_operator", "'b_operator' must be an object")
        b_mu = complex_scalar(spec, "mu", b["mu"]) if "mu" in b else None
        try:
            if "matrix" in b:
                B = BOperator(T.N, complex_array(spec, "matrix", b["matrix"], 2), b_mu)
            elif b.get("from_twist"):
                B = BOperator.from_twist(T, b_mu)
            else:
                raise spec.fail("b_operator", "'b_operator' needs 'matrix' or 'from_twist': true")
        except SpecError:
            raise
        except ValueError as exc:
            raise spec.fail("b_operator", str(exc)) from None
    return TwistSpec(T, B, mu)


def parse_algebra(spec: SpecFile, obj, key: str) -> AlgebraPresentation:
    dim = _positive_int(spec, "dim", _require(spec, obj, "dim", key))
    try:
        return AlgebraPresentation(
            dim,
            complex_array(spec, "mult", _require(spec, obj, "mult", key), 3),
            complex_array(spec, "unit", _require(spec, obj, "unit", key), 1),
        )
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise spec.fail(key, str(exc)) from None


def parse_coalgebra(spec: SpecFile, obj, key: str) -> CoalgebraPresentation:
    dim = _positive_int(spec, "dim", _require(spec, obj, "dim", key))
    try:
        return CoalgebraPresentation(
            dim,
            complex_array(spec, "comult", _require(spec, obj, "comult", key), 3),
            complex_array(spec, "counit", _require(spec, obj, "counit", key), 1),
        )
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise spec.fail(key, str(exc)) from None


def parse_entwining(spec: SpecFile) -> tuple[EntwiningStructure, EntwinedModuleData | None]:
    d = spec.data
    A = parse_algebra(spec, _require(spec, d, "algebra", "algebra"), "algebra")
    C = parse_coalgebra(spec, _require(spec, d, "coalgebra", "coalgebra"), "coalgebra")
    try:
        E = EntwiningStructure(A, C, complex_array(spec, "tau", _require(spec, d, "tau", "tau"), 2))
    except SpecError:
        raise
    except ValueError as exc:
        raise spec.fail("tau", str(exc)) from None
    M = None
    if "module" in d:
        mod = d["module"]
        M = EntwinedModuleData(
            _positive_int(spec, "dim", _require(spec, mod, "dim", "module")),
            complex_array(spec, "action", _require(spec, mod, "action", "module"), 2),
            complex_array(spec, "coaction", _require(spec, mod, "coaction", "module"), 2),
        )
    return E, M


def parse_cross(spec: SpecFile) -> CrossSymmetry:
    """The optional ``cross`` object: {"A": algebra, "B": algebra, "psi": matrix}."""
    c = spec.data["cross"]
    A = parse_algebra(spec, _require(spec, c, "A", "cross"), "A")
    B = parse_algebra(spec, _require(spec, c, "B", "cross"), "B")
    try:
        return CrossSymmetry(A, B, complex_array(spec, "psi", _require(spec, c, "psi", "cross"), 2))
    except SpecError:
        raise
    except ValueError as exc:
        raise spec.fail("psi", str(exc)) from None


def parse_logic(spec: SpecFile) -> QuantumLogic:
    d = spec.data
    N = _positive_int(spec, "N", _require(spec, d, "N", "N"))
    words = _require(spec, d, "words", "words")
    ortho = d.get("orthogonal", [])
    if not isinstance(words, list) or not all(
        isinstance(w, list) and all(isinstance(a, int) and not isinstance(a, bool) for a in w) for w in words
    ):
        raise spec.fail("words", "'words' must be a list of integer lists")
    if not isinstance(ortho, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(a, int) for a in p) for p in ortho
    ):
        raise spec.fail("orthogonal", "'orthogonal' must be a list of [index, index] pairs")
    try:
        return QuantumLogic.from_indexed(N, words, ortho)
    except ValueError as exc:
        raise spec.fail("words", str(exc)) from None
