"""Command-line driver and serialization layer.

Subcommands: evolve, phases, sweep, circuit, check. Each run is described
by a JSON spec file (--spec) and/or flag overrides; flags win. Outputs are
deterministic: floats are written with 17 significant digits (round-trip
exact for doubles), keys in a fixed order, LF line endings, so the same
spec produces byte-identical files.

Exit codes: 0 success, 2 malformed spec/flags, 3 domain error (e.g. asking
for a biorthogonal phase at the coalescence point), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import circuits as cir
from . import complex_linalg as cl
from . import decomplexify as dc
from . import evolution as ev
from . import hamiltonians as hm
from . import phases as ph
from .errors import DomainError, GeophaseError, SpecParseError

SPEC_VERSION = 1

MODEL_KINDS = ("hermitian", "uniform_decay", "pt_dimer", "circuit")
REPRESENTATIONS = ("complex2", "real4", "second_order_x", "second_order_y")


def _fmt(x) -> str:
    """17 significant digits: parses back to the identical double."""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _json_value(v, indent: int) -> str:
    pad = "  " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad}  "{k}": {_json_value(x, indent + 1)}' for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        flat = all(not isinstance(x, (dict, list, tuple)) for x in v)
        if flat:
            return "[" + ", ".join(_json_value(x, indent) for x in v) + "]"
        items = [f"{pad}  {_json_value(x, indent + 1)}" for x in v]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, float):
        return _fmt(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return json.dumps(v)


def _write_json(doc: dict, path: str):
    with open(path, "w", newline="\n") as fh:
        fh.write(_json_value(doc, 0) + "\n")


def _write_csv(header: list[str], rows, path: str):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(float(x)) if not isinstance(x, str) else x for x in row) + "\n")


# ---------------------------------------------------------------------------
# trajectory serialization

_COLUMNS = {
    ev.COMPLEX2: ["t", "re1", "im1", "re2", "im2"],
    ev.REAL4: ["t", "v1", "v2", "v3", "v4"],
    ev.SECOND_ORDER2: ["t", "v1", "v2"],
}


def _sample_rows(t: ev.Trajectory) -> np.ndarray:
    if t.representation_tag == ev.COMPLEX2:
        cols = [t.times, t.states[:, 0].real, t.states[:, 0].imag,
                t.states[:, 1].real, t.states[:, 1].imag]
    else:
        cols = [t.times] + [t.states[:, k] for k in range(t.states.shape[1])]
    return np.column_stack(cols)


def export_trajectory(t: ev.Trajectory, fmt: str, path: str):
    if len(t) == 0:
        raise ValueError("refusing to export an empty trajectory")
    header = _COLUMNS[t.representation_tag]
    rows = _sample_rows(t)
    if fmt == "csv":
        _write_csv(header, rows, path)
    elif fmt == "json":
        doc = {
            "spec_version": SPEC_VERSION,
            "kind": "trajectory",
            "representation": t.representation_tag,
            "metadata": dict(t.metadata),
            "columns": header,
            "samples": [[float(x) for x in row] for row in rows],
        }
        _write_json(doc, path)
    else:
        raise SpecParseError(f"unknown output format {fmt!r}")


def import_trajectory(path: str) -> ev.Trajectory:
    """Inverse of the JSON export; exact because of the 17-digit floats."""
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("kind") != "trajectory":
        raise SpecParseError(f"{path} does not hold a trajectory document")
    samples = np.array(doc["samples"], dtype=float)
    times = samples[:, 0]
    tag = doc["representation"]
    if tag == ev.COMPLEX2:
        states = samples[:, 1::2] + 1j * samples[:, 2::2]
    else:
        states = samples[:, 1:]
    return ev.Trajectory(times=times, states=states, representation_tag=tag,
                         metadata=doc.get("metadata", {}))


# ---------------------------------------------------------------------------
# run specification

_DEFAULTS = {
    "evolve": {"representation": "complex2", "output_format": "csv"},
    "phases": {"output_format": "json"},
    "sweep": {"gamma_min": 0.0, "gamma_max": 2.0, "steps": 81,
              "L": 1.0, "C": 1.0, "Gg": 0.1, "output_format": "csv"},
    "circuit": {"output_format": "json"},
}


def _load_spec_file(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SpecParseError(f"{path}: spec must be a JSON object")
    return doc


def _merge(spec: dict, args: argparse.Namespace, keys: list[str]) -> dict:
    merged = dict(spec)
    for key in keys:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    return merged


def _need(spec: dict, key: str):
    if key not in spec or spec[key] is None:
        raise SpecParseError(f"missing required field {key!r}")
    return spec[key]


def _model_block(spec: dict) -> dict:
    model = _need(spec, "model")
    if not isinstance(model, dict):
        raise SpecParseError("field 'model' must be an object")
    kind = _need(model, "kind")
    if kind not in MODEL_KINDS:
        raise SpecParseError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
    return model


def _float_field(block: dict, key: str, default=None) -> float:
    if key not in block:
        if default is None:
            raise SpecParseError(f"missing numeric field {key!r}")
        return default
    try:
        return float(block[key])
    except (TypeError, ValueError) as exc:
        raise SpecParseError(f"field {key!r} must be a number, got {block[key]!r}") from exc


def _build_operator(model: dict) -> hm.EffectiveHamiltonian:
    kind = model["kind"]
    try:
        if kind == "hermitian":
            return hm.build_hermitian(hm.HermitianEqualDiagonal(
                h=_float_field(model, "h"), f=_float_field(model, "f"),
                g=_float_field(model, "g", 0.0)))
        if kind == "uniform_decay":
            base = hm.build_hermitian(hm.HermitianEqualDiagonal(
                h=_float_field(model, "h"), f=_float_field(model, "f"),
                g=_float_field(model, "g", 0.0)))
            return hm.build_uniform_decay(base.m, _float_field(model, "s"))
        if kind == "pt_dimer":
            return hm.build_pt_dimer(hm.PTDimerParams(
                a=_float_field(model, "a"), g=_float_field(model, "g"),
                s=_float_field(model, "s")))
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc
    raise SpecParseError(f"model kind {kind!r} is not an operator model")


def _circuit_params(model: dict) -> cir.CircuitParams:
    try:
        return cir.CircuitParams(
            inductance=_float_field(model, "L"),
            capacitance=_float_field(model, "C"),
            gyrator_conductance=_float_field(model, "Gg"),
            resistance=(float(model["R"]) if model.get("R") is not None else None),
        )
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc


def _initial_vector(spec: dict, eig: cl.EigenSystem2 | None) -> np.ndarray:
    init = _need(spec, "initial_state")
    if not isinstance(init, dict):
        raise SpecParseError("field 'initial_state' must be an object")
    if "vector" in init:
        vec = init["vector"]
        if len(vec) == 2:
            return np.array([complex(vec[0]), complex(vec[1])])
        if len(vec) == 4:
            return np.array([vec[0] + 1j * vec[1], vec[2] + 1j * vec[3]])
        raise SpecParseError("initial_state.vector must have 2 or 4 entries")
    if "theta0" in init:
        if eig is None:
            raise SpecParseError("Bloch angles need an operator model")
        state = ph.BlochInitialState(theta0=_float_field(init, "theta0"),
                                     phi0=_float_field(init, "phi0", 0.0))
        return ph.bloch_superposition(state, eig.eigenvector1, eig.eigenvector2)
    raise SpecParseError("initial_state needs either 'vector' or 'theta0'")


def _integrator_config(spec: dict, rho: float) -> ev.IntegratorConfig:
    block = spec.get("integrator") or {}
    duration = _float_field(block, "duration", 10.0)
    step = block.get("step")
    if step is None:
        step = ev.suggest_step(rho, duration)
    stride = int(block.get("record_stride", 1))
    try:
        return ev.IntegratorConfig(step=float(step), duration=duration, record_stride=stride)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc


def _model_metadata(model: dict) -> dict:
    return {f"model_{k}": v for k, v in model.items()}


# ---------------------------------------------------------------------------
# commands

def _cmd_evolve(spec: dict) -> int:
    model = _model_block(spec)
    if model["kind"] == "circuit":
        raise SpecParseError("use the 'circuit' command for circuit trajectories")
    op = _build_operator(model)
    eig = op.eig()
    psi0 = _initial_vector(spec, eig)
    cfg = _integrator_config(spec, cl.spectral_radius(op.matrix))
    representation = spec.get("representation", "complex2")
    md = _model_metadata(model)

    if representation == "complex2":
        traj = ev.integrate_schrodinger(op.matrix, psi0, cfg, metadata=md)
    elif representation == "real4":
        traj = ev.integrate_real4(dc.real4(op.matrix), dc.real_state(psi0), cfg, metadata=md)
    elif representation in ("second_order_x", "second_order_y"):
        rs = dc.split(op.matrix)
        which = dc.VAR_X if representation.endswith("x") else dc.VAR_Y
        sys2 = dc.second_order(rs, which)
        z0, zdot0 = dc.initial_derivative(rs, psi0.real, psi0.imag, which)
        traj = ev.integrate_second_order(sys2, z0, zdot0, cfg, metadata=md)
    else:
        raise SpecParseError(f"unknown representation {representation!r}")

    export_trajectory(traj, spec.get("output_format", "csv"), _need(spec, "output_path"))
    return 0


def _phase_eigenvalues(op: hm.EffectiveHamiltonian) -> tuple[float, float]:
    es = op.eig()
    l1, l2 = es.eigenvalue1, es.eigenvalue2
    if abs(l1.imag) > 1e-10 or abs(l2.imag) > 1e-10:
        raise DomainError("phase decomposition needs a real spectrum (unbroken regime)")
    return float(l1.real), float(l2.real)


def _cmd_phases(spec: dict) -> int:
    model = _model_block(spec)
    if model["kind"] in ("circuit", "uniform_decay"):
        raise SpecParseError("phase reports apply to hermitian or pt_dimer models")
    op = _build_operator(model)
    init_block = spec.get("initial_state") or {}
    init = ph.BlochInitialState(theta0=_float_field(init_block, "theta0"),
                                phi0=_float_field(init_block, "phi0", 0.0))
    l1, l2 = _phase_eigenvalues(op)
    report = ph.analytic_report(l1, l2, init)
    doc = {
        "spec_version": SPEC_VERSION,
        "kind": "phase_report",
        "model": model,
        "theta0": init.theta0,
        "phi0": init.phi0,
        "eigenvalue1": l1,
        "eigenvalue2": l2,
        "period": report.period,
        "total": report.total,
        "dynamic": report.dynamic,
        "geometric": report.geometric,
        "hannay": report.hannay,
        "method": report.method,
    }
    if model["kind"] == "pt_dimer":
        doc["dynamic_biorthogonal"] = ph.biorthogonal_dynamic_phase(op, init)
    _write_json(doc, _need(spec, "output_path"))
    return 0


def _cmd_sweep(spec: dict) -> int:
    base = cir.CircuitParams(
        inductance=_float_field(spec, "L", 1.0),
        capacitance=_float_field(spec, "C", 1.0),
        gyrator_conductance=_float_field(spec, "Gg", 0.1),
    )
    gamma_min = _float_field(spec, "gamma_min", 0.0)
    gamma_max = _float_field(spec, "gamma_max", 2.0)
    steps = int(spec.get("steps", 81))
    if steps < 2 or gamma_max <= gamma_min or gamma_min < 0:
        raise SpecParseError("sweep needs gamma_max > gamma_min >= 0 and steps >= 2")
    grid = np.linspace(gamma_min, gamma_max, steps)
    points = cir.gamma_sweep(base, grid)
    w0 = base.omega0
    header = ["gamma", "re1", "re2", "re3", "re4", "im1", "im2", "im3", "im4", "classification"]
    rows = []
    for pt in points:
        normalized = pt.mode_values / w0
        rows.append([pt.gamma, *[v.real for v in normalized],
                     *[v.imag for v in normalized], pt.classification])
    fmt = spec.get("output_format", "csv")
    path = _need(spec, "output_path")
    if fmt == "csv":
        _write_csv(header, rows, path)
    elif fmt == "json":
        doc = {
            "spec_version": SPEC_VERSION,
            "kind": "gamma_sweep",
            "omega0": w0,
            "coupling": base.coupling,
            "columns": header,
            "rows": [[x if isinstance(x, str) else float(x) for x in row] for row in rows],
        }
        _write_json(doc, path)
    else:
        raise SpecParseError(f"unknown output format {fmt!r}")
    return 0


def _cmd_circuit(spec: dict) -> int:
    model = _model_block(spec)
    if model["kind"] != "circuit":
        raise SpecParseError("the circuit command needs a circuit model")
    params = _circuit_params(model)
    path = _need(spec, "output_path")

    if spec.get("integrator"):
        lossless = params.resistance is None
        sys2 = cir.foucault_system(params) if lossless else cir.pt_circuit_system(params)
        init = _need(spec, "initial_state")
        vec = init.get("vector") if isinstance(init, dict) else None
        if vec is None or len(vec) not in (2, 4):
            raise SpecParseError("circuit evolution needs initial_state.vector of 2 or 4 entries")
        z0 = np.array(vec[:2], dtype=float)
        zdot0 = np.array(vec[2:], dtype=float) if len(vec) == 4 else np.zeros(2)
        # Frequency scale for the default step: sqrt of the stiffness norm.
        guard = math.sqrt(float(np.sqrt(np.sum(sys2.stiffness**2))))
        cfg = _integrator_config(spec, guard)
        a_eff = params.coupling if lossless else params.coupling * math.sqrt(
            max(0.0, 1.0 - params.gamma_ratio**2))
        md = _model_metadata(model)
        md.update({"omega0": params.omega0, "precession_coupling": a_eff})
        traj = ev.integrate_second_order(sys2, z0, zdot0, cfg, metadata=md)
        export_trajectory(traj, spec.get("output_format", "csv"), path)
        return 0

    point = cir.circuit_spectrum(params)
    doc = {
        "spec_version": SPEC_VERSION,
        "kind": "circuit_spectrum",
        "model": model,
        "omega0": params.omega0,
        "coupling": params.coupling,
        "rate": params.rate,
        "gamma": point.gamma,
        "classification": point.classification,
        "modes_re": [float(v.real) for v in point.mode_values],
        "modes_im": [float(v.imag) for v in point.mode_values],
        "modes_re_normalized": [float(v.real) / params.omega0 for v in point.mode_values],
        "modes_im_normalized": [float(v.imag) / params.omega0 for v in point.mode_values],
    }
    _write_json(doc, path)
    return 0


def _cmd_check(_spec: dict) -> int:
    from .selfcheck import run_all

    failures = run_all(print)
    if failures:
        raise DomainError(f"{failures} self-check(s) failed")
    return 0


_COMMANDS = {
    "evolve": _cmd_evolve,
    "phases": _cmd_phases,
    "sweep": _cmd_sweep,
    "circuit": _cmd_circuit,
    "check": _cmd_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geophase",
        description="Evolutions, phase reports and spectrum sweeps for "
                    "two-level systems and their oscillator analogs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--spec", help="JSON run-spec file; flags override its fields")
        p.add_argument("--output", dest="output_path", help="output file path")
        p.add_argument("--format", dest="output_format", choices=["csv", "json"])

    def add_model(p):
        p.add_argument("--model", dest="model_kind", choices=MODEL_KINDS)
        for flag in ("a", "g", "s", "h", "f", "L", "C", "Gg", "R"):
            p.add_argument(f"--{flag}", type=float, dest=f"model_{flag}")

    def add_init(p):
        p.add_argument("--theta0", type=float)
        p.add_argument("--phi0", type=float)
        p.add_argument("--state", help="comma-separated initial vector components")

    def add_integrator(p):
        p.add_argument("--step", type=float)
        p.add_argument("--duration", type=float)
        p.add_argument("--stride", type=int, dest="record_stride")

    p_evolve = sub.add_parser("evolve", help="propagate a two-level model and export the trajectory")
    add_common(p_evolve)
    add_model(p_evolve)
    add_init(p_evolve)
    add_integrator(p_evolve)
    p_evolve.add_argument("--representation", choices=REPRESENTATIONS)

    p_phases = sub.add_parser("phases", help="closed-form phase decomposition report")
    add_common(p_phases)
    add_model(p_phases)
    add_init(p_phases)

    p_sweep = sub.add_parser("sweep", help="mode spectrum vs gain/loss ratio (bifurcation data)")
    add_common(p_sweep)
    p_sweep.add_argument("--gamma-min", type=float, dest="gamma_min")
    p_sweep.add_argument("--gamma-max", type=float, dest="gamma_max")
    p_sweep.add_argument("--steps", type=int)
    for flag in ("L", "C", "Gg"):
        p_sweep.add_argument(f"--{flag}", type=float, dest=flag)

    p_circ = sub.add_parser("circuit", help="circuit spectrum, or a voltage trajectory with --duration")
    add_common(p_circ)
    add_model(p_circ)
    add_init(p_circ)
    add_integrator(p_circ)

    p_check = sub.add_parser("check", help="run the built-in invariant battery")
    add_common(p_check)
    return parser


def _spec_from_args(args: argparse.Namespace) -> dict:
    spec = _load_spec_file(args.spec) if getattr(args, "spec", None) else {}
    spec = dict(spec)
    spec["command"] = args.command

    model = dict(spec.get("model") or {})
    if getattr(args, "model_kind", None):
        model["kind"] = args.model_kind
    for flag in ("a", "g", "s", "h", "f", "L", "C", "Gg", "R"):
        val = getattr(args, f"model_{flag}", None)
        if val is not None:
            model[flag] = val
    if model:
        spec["model"] = model

    init = dict(spec.get("initial_state") or {})
    if getattr(args, "theta0", None) is not None:
        init["theta0"] = args.theta0
    if getattr(args, "phi0", None) is not None:
        init["phi0"] = args.phi0
    if getattr(args, "state", None):
        try:
            init["vector"] = [float(x) for x in args.state.split(",")]
        except ValueError as exc:
            raise SpecParseError(f"--state must be comma-separated numbers: {exc}") from exc
        init.pop("theta0", None)
        init.pop("phi0", None)
    if init:
        spec["initial_state"] = init

    integ = dict(spec.get("integrator") or {})
    for key in ("step", "duration", "record_stride"):
        val = getattr(args, key, None)
        if val is not None:
            integ[key] = val
    if integ:
        spec["integrator"] = integ

    spec = _merge(spec, args, ["output_path", "output_format", "representation",
                               "gamma_min", "gamma_max", "steps", "L", "C", "Gg"])
    return spec


def run(spec: dict) -> int:
    command = spec.get("command")
    if command not in _COMMANDS:
        raise SpecParseError(f"unknown command {command!r}")
    return _COMMANDS[command](spec)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return run(_spec_from_args(args))
    except SpecParseError as exc:
        print(f"geophase: spec error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"geophase: domain error: {exc}", file=sys.stderr)
        return 3
    except GeophaseError as exc:
        print(f"geophase: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"geophase: i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
