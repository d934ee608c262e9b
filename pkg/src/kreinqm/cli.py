"""Command-line front end.

Model files are JSON::

    {
      "dimension": 2,
      "signature": [1, 1],
      "hamiltonian": [[2, 0], [1, 0], [-1, 0], [-2, 0]],
      "terms": [{"profile": {"kind": "sine", "omega": 1, "phi": 0},
                 "matrix": [[0, 0], [1, 0], [-1, 0], [0, 0]]}],
      "hbar": 1.0,
      "evolution": {"t_start": 0, "t_end": 1, "dt": 0.001, "tol": 1e-12}
    }

Matrix entries are ``[re, im]`` pairs in row-major order. ``terms``,
``hbar`` and ``evolution`` are optional. Profile descriptors are
``{"kind": "constant", "value": c}``, ``{"kind": "polynomial", "coeffs":
[c0, c1, ...]}`` (ascending powers) and ``{"kind": "sine" | "cosine",
"omega": w, "phi": p}`` (``phi`` defaults to 0).

Exit codes: 0 success, 1 domain error, 2 malformed input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import KreinError, ParseError, ValidationError
from .evolution import (
    EvolutionConfig,
    HamiltonianFamily,
    Profile,
    evolve,
    propagator,
    unitarity_defect,
)
from .krein_space import (
    PREDICATE_TOL,
    FundamentalSymmetry,
    is_dirac_hermitian,
    is_j_hermitian,
    is_pt_symmetric,
)
from .linalg_core import EXPM_TOL
from .spectral import (
    PhaseClass,
    classify_phase,
    krein_diagonalize,
    spectral_report,
    traceless_2x2,
)
from .symmetry_groups import membership_report

COMMANDS = ("classify", "spectrum", "evolve", "symmetry", "sweep")


class Model(NamedTuple):
    family: HamiltonianFamily
    j: FundamentalSymmetry
    config: EvolutionConfig


@dataclass
class RunReport:
    command: str
    lines: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    exit_code: int = 0
    error: Optional[str] = None


def _fmt(x: float) -> str:
    return "%.16e" % x


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- model files ------------------------------------------------------------

def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise ParseError(f"{where}: non-finite number")
    return float(x)


def _parse_matrix(entries, n: int, where: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise ParseError(f"{where}: expected a list of [re, im] pairs")
    if len(entries) != n * n:
        raise ValidationError(f"{where}: {len(entries)} entries for a {n}x{n} matrix")
    values = []
    for k, pair in enumerate(entries):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"{where}[{k}]: expected [re, im], got {pair!r}")
        values.append(complex(_number(pair[0], where), _number(pair[1], where)))
    return np.array(values, dtype=complex).reshape(n, n)


def _parse_profile(desc, where: str) -> Profile:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError(f"{where}: profile must be an object with a 'kind'")
    kind = desc["kind"]
    allowed = {
        "constant": {"kind", "value"},
        "polynomial": {"kind", "coeffs"},
        "sine": {"kind", "omega", "phi"},
        "cosine": {"kind", "omega", "phi"},
    }
    if kind not in allowed:
        raise ParseError(f"{where}: unknown profile kind {kind!r}")
    extra = set(desc) - allowed[kind]
    if extra:
        raise ParseError(f"{where}: unexpected keys {sorted(extra)}")
    try:
        if kind == "constant":
            return Profile.constant(_number(desc["value"], where))
        if kind == "polynomial":
            coeffs = desc["coeffs"]
            if not isinstance(coeffs, list):
                raise ParseError(f"{where}: coeffs must be a list")
            return Profile.polynomial([_number(c, where) for c in coeffs])
        omega = _number(desc["omega"], where)
        phi = _number(desc.get("phi", 0.0), where)
        return Profile(kind, (omega, phi))
    except KeyError as exc:
        raise ParseError(f"{where}: missing key {exc}") from None


def parse_model(data) -> Model:
    if not isinstance(data, dict):
        raise ParseError("model must be a JSON object")
    known = {"dimension", "signature", "hamiltonian", "terms", "hbar", "evolution"}
    extra = set(data) - known
    if extra:
        raise ParseError(f"unexpected keys {sorted(extra)}")
    for key in ("dimension", "signature", "hamiltonian"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    n = data["dimension"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError("dimension must be an integer")
    sig = data["signature"]
    if (not isinstance(sig, list) or len(sig) != 2
            or any(isinstance(x, bool) or not isinstance(x, int) for x in sig)):
        raise ParseError("signature must be [p, q] with integer entries")
    p, q = sig
    if p + q != n:
        raise ValidationError(f"signature ({p}, {q}) does not add up to dimension {n}")
    j = FundamentalSymmetry(p, q)

    base = _parse_matrix(data["hamiltonian"], n, "hamiltonian")
    terms = []
    raw_terms = data.get("terms", [])
    if not isinstance(raw_terms, list):
        raise ParseError("terms must be a list")
    for k, term in enumerate(raw_terms):
        where = f"terms[{k}]"
        if not isinstance(term, dict) or set(term) != {"profile", "matrix"}:
            raise ParseError(f"{where}: expected an object with 'profile' and 'matrix'")
        terms.append((_parse_profile(term["profile"], where), _parse_matrix(term["matrix"], n, where)))
    family = HamiltonianFamily(base, tuple(terms))

    settings = {"hbar": _number(data.get("hbar", 1.0), "hbar")}
    evo = data.get("evolution", {})
    if not isinstance(evo, dict):
        raise ParseError("evolution must be an object")
    extra = set(evo) - {"t_start", "t_end", "dt", "tol"}
    if extra:
        raise ParseError(f"evolution: unexpected keys {sorted(extra)}")
    for key, value in evo.items():
        settings[key] = _number(value, f"evolution.{key}")
    return Model(family, j, EvolutionConfig(**settings))


def load_model(path: str) -> Model:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    return parse_model(data)


def _pairs(M: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in M.reshape(-1)]


def model_to_dict(model: Model) -> dict:
    terms = []
    for prof, mat in model.family.terms:
        if prof.kind == "constant":
            desc = {"kind": "constant", "value": prof.params[0]}
        elif prof.kind == "polynomial":
            desc = {"kind": "polynomial", "coeffs": list(prof.params)}
        else:
            desc = {"kind": prof.kind, "omega": prof.params[0], "phi": prof.params[1]}
        terms.append({"profile": desc, "matrix": _pairs(mat)})
    cfg = model.config
    return {
        "dimension": model.family.n,
        "signature": [model.j.p, model.j.q],
        "hamiltonian": _pairs(model.family.base),
        "terms": terms,
        "hbar": cfg.hbar,
        "evolution": {"t_start": cfg.t_start, "t_end": cfg.t_end, "dt": cfg.dt, "tol": cfg.tol},
    }


# -- output -----------------------------------------------------------------

def write_atomic(path: str, text: str) -> None:
    """Write via a sibling temp file and rename, so failures leave no partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(header: Sequence[str], rows) -> str:
    out = [",".join(header)]
    out.extend(",".join(row) for row in rows)
    return "\n".join(out) + "\n"


def _complex_str(z: complex) -> str:
    return f"{z.real:+.12g}{z.imag:+.12g}i"


# -- commands ---------------------------------------------------------------

def _classify(model: Model, args) -> list[str]:
    H = model.family.at(model.config.t_start)
    tol = args.tol if args.tol is not None else PREDICATE_TOL
    herm = is_j_hermitian(H, model.j, tol)
    phase = str(classify_phase(H, model.j, tol)) if herm else "undefined"
    return [
        f"J-Hermitian: {_yes(herm)}; PT-symmetric: {_yes(is_pt_symmetric(H, model.j, tol))}; "
        f"Dirac-Hermitian: {_yes(is_dirac_hermitian(H, tol))}; phase: {phase}"
    ]


def _spectrum(model: Model, args) -> list[str]:
    H = model.family.at(model.config.t_start)
    tol = args.tol if args.tol is not None else PREDICATE_TOL
    rep = spectral_report(H, model.j, tol)
    lines = []
    if model.family.terms:
        lines.append(f"H(t) at t = {model.config.t_start:g}")
    lines.append(f"phase: {rep.phase}")
    for k, (val, sign) in enumerate(zip(rep.eigenvalues, rep.norm_signs)):
        lines.append(f"E[{k}] = {_complex_str(val)}  norm: {sign}")
    lines.append(f"positive subspace: {rep.positive_subspace}")
    lines.append(f"negative subspace: {rep.negative_subspace}")
    if rep.phase is PhaseClass.REAL_SPECTRUM:
        diag = krein_diagonalize(H, model.j, tol)
        lines.append("krein diagonal: " + ", ".join("%.12g" % x for x in diag.diagonal))
        lines.append(f"residual |M^+JM - J| = {diag.j_residual:.3e}")
        lines.append(f"residual offdiag(M^-1 H M) = {diag.diagonal_residual:.3e}")
    return lines


def _parse_psi0(text: Optional[str], n: int) -> np.ndarray:
    if text is None:
        psi = np.zeros(n, dtype=complex)
        psi[0] = 1
        return psi
    try:
        nums = [float(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"--psi0: cannot parse {text!r}") from None
    if not all(math.isfinite(x) for x in nums):
        raise ParseError("--psi0: non-finite component")
    if len(nums) == n:
        return np.array(nums, dtype=complex)
    if len(nums) == 2 * n:
        return np.array(nums[0::2], dtype=complex) + 1j * np.array(nums[1::2])
    raise ValidationError(f"--psi0 needs {n} real or {2 * n} re,im values, got {len(nums)}")


def _config(model: Model, args) -> EvolutionConfig:
    updates = {}
    for name in ("hbar", "t_end", "dt", "tol"):
        value = getattr(args, name, None)
        if value is not None:
            updates[name] = value
    return dataclasses.replace(model.config, **updates)


def _evolve(model: Model, args, report: RunReport) -> list[str]:
    config = _config(model, args)
    psi0 = _parse_psi0(args.psi0, model.family.n)
    trace = evolve(model.family, psi0, model.j, config)
    defects = unitarity_defect(model.family, model.j, config)
    header = ["t"]
    for k in range(1, model.family.n + 1):
        header += [f"re_{k}", f"im_{k}"]
    header += ["indefinite_norm", "dirac_norm"]
    rows = []
    for t, psi, ind, dir_ in zip(trace.times, trace.states, trace.indefinite_norms, trace.dirac_norms):
        row = [_fmt(t)]
        for z in psi:
            row += [_fmt(z.real), _fmt(z.imag)]
        row += [_fmt(ind), _fmt(dir_)]
        rows.append(row)
    write_atomic(args.out, _csv(header, rows))
    report.outputs.append(args.out)
    return [
        f"steps: {len(trace.times) - 1}",
        f"indefinite norm defect: {trace.j_unitarity_defect:.6e}",
        f"dirac norm defect: {trace.dirac_unitarity_defect:.6e}",
        f"j_defect: {defects.j_defect:.6e}",
        f"dirac_defect: {defects.dirac_defect:.6e}",
        f"wrote {args.out}",
    ]


def _symmetry(model: Model, args) -> list[str]:
    config = _config(model, args)
    tol = args.tol if args.tol is not None else PREDICATE_TOL
    U = propagator(model.family.at(config.t_start), args.t, config.hbar, EXPM_TOL)
    rep = membership_report(U, model.j, tol)
    lines = [
        f"U = exp(-i H t / hbar) at t = {args.t:g}",
        f"indefinite unitary U({model.j.p},{model.j.q}): {_yes(rep.in_indefinite_unitary)}",
        f"unitary U({model.j.n}): {_yes(rep.in_unitary)}",
        f"det U = 1: {_yes(rep.in_special_variant)}",
    ]
    if rep.torus_angles is not None:
        lines.append("torus angles: theta = %.12g, phi = %.12g" % rep.torus_angles)
    return lines


def _sweep(args, report: RunReport) -> list[str]:
    if args.steps < 2:
        raise ValidationError("--steps must be at least 2")
    if not (args.a_max > 0 and args.b_max > 0):
        raise ValidationError("--a-max and --b-max must be positive")
    j = FundamentalSymmetry(1, 1)
    tol = args.tol if args.tol is not None else PREDICATE_TOL
    rows = []
    counts = {str(p): 0 for p in PhaseClass}
    for ia in range(args.steps):
        a = args.a_max * ia / (args.steps - 1)
        for ib in range(args.steps):
            b = args.b_max * ib / (args.steps - 1)
            phase = classify_phase(traceless_2x2(a, b), j, tol)
            counts[str(phase)] += 1
            rows.append([_fmt(a), _fmt(b), _fmt(b * b - a * a), str(phase)])
    write_atomic(args.out, _csv(["a", "b_abs", "det", "phase"], rows))
    report.outputs.append(args.out)
    return [f"{name}: {count}" for name, count in counts.items()] + [f"wrote {args.out}"]


def execute(command: str, model: Optional[Model], args) -> RunReport:
    """Run one command; domain errors become exit code 1 with the error name."""
    report = RunReport(command)
    try:
        if command == "classify":
            report.lines = _classify(model, args)
        elif command == "spectrum":
            report.lines = _spectrum(model, args)
        elif command == "evolve":
            report.lines = _evolve(model, args, report)
        elif command == "symmetry":
            report.lines = _symmetry(model, args)
        elif command == "sweep":
            report.lines = _sweep(args, report)
        else:
            raise ParseError(f"unknown command {command!r}")
    except KreinError as exc:
        report.exit_code = exc.exit_code
        report.error = f"{type(exc).__name__}: {exc}"
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kreinqm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def model_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("model", help="JSON model file")
        p.add_argument("--tol", type=float)
        p.add_argument("--echo-model", metavar="PATH", help="write the normalized model here")
        return p

    model_cmd("classify", "J-Hermitian / PT-symmetric / Dirac-Hermitian verdicts and phase")
    model_cmd("spectrum", "eigenvalues, norm signs, Krein diagonalization residuals")
    p = model_cmd("evolve", "time-step a state and write a CSV trace")
    p.add_argument("--t-end", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--hbar", type=float)
    p.add_argument("--psi0", help="comma list: n real values or n re,im pairs")
    p.add_argument("--out", default="evolve.csv")
    p = model_cmd("symmetry", "group memberships of exp(-i H(0) t / hbar)")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--hbar", type=float)

    p = sub.add_parser("sweep", help="phase map of [[a, b], [-b, -a]] over an (a, |b|) grid")
    p.add_argument("--a-max", type=float, default=2.0)
    p.add_argument("--b-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=41)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", default="sweep.csv")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    model = None
    try:
        if args.command != "sweep":
            model = load_model(args.model)
            if args.echo_model:
                write_atomic(args.echo_model, json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n")
    except KreinError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    report = execute(args.command, model, args)
    for line in report.lines:
        print(line)
    if report.error:
        print(f"error: {report.error}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
