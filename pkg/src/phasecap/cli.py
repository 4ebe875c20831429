"""
Batch command-line front end.

Every subcommand reads its inputs, calls the library, and prints a JSON
report ``{"command", "inputs", "results", "tolerances", "warnings"}`` with
sorted keys and floats written as ``%.12e``, so identical inputs give
identical bytes. Exit codes: 0 on success (including negative verdicts such
as NotAState), 2 on invalid input or usage, 3 on numerical failure. Errors
go to stderr as one JSON line carrying a ``code`` field.

File formats
------------
Matrix file (JSON)::

    {"n": 1, "entries": [1.0, 0.0, 0.0, 1.0], "hbar": 1.0}

Wavefunction file (CSV, uniform x spacing)::

    # hbar=1.0
    x,re,im
    -8.0,1.2e-14,0.0
    ...

Grid file: CSV with header ``x,p,value`` in row-major order (x outer), plus
a sidecar ``<path>.json`` holding the axes.
"""

import argparse
import csv
import dataclasses
import enum
import json
import math
import sys

import numpy as np

from . import admissibility, hardy, phasespace, symplinalg, williamson
from .errors import NumericalError, ValidationError

# relative tolerance on the spacing of the x column of a wavefunction file
SPACING_TOL = 1e-9
RELATION_TARGET = 1e-5


class UsageError(ValidationError):
    code = "usage"


# --------------------------------------------------------------- formatting


def format_float(value):
    """``%.12e`` with the exponent written without sign padding or leading zeros."""
    value = float(value)
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    mantissa, exponent = ("%.12e" % value).split("e")
    return f"{mantissa}e{int(exponent)}"


def to_jsonable(obj):
    """Convert library return values (dataclasses, enums, arrays) to plain data."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": to_jsonable(obj.real.tolist()), "im": to_jsonable(obj.imag.tolist())}
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def dumps(obj):
    """Deterministic JSON text: sorted keys, two-space indent, fixed float format."""
    return _dump(to_jsonable(obj), 0)


def _dump(obj, depth):
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(obj[k], depth + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_dump(v, depth + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _dump(v, depth + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(obj)


# ---------------------------------------------------------------- file I/O


def read_matrix(path):
    """Read a matrix file; returns ``(matrix, hbar)``."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise ValidationError(f"{path}: matrix file needs keys 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"{path}: 'n' must be a positive integer")
    try:
        entries = np.asarray(doc["entries"], dtype=float).ravel()
    except (TypeError, ValueError):
        raise ValidationError(f"{path}: 'entries' must be an array of numbers") from None
    if entries.size != (2 * n) ** 2:
        raise ValidationError(f"{path}: expected {(2 * n) ** 2} entries for n={n}, got {entries.size}")
    if not np.all(np.isfinite(entries)):
        raise ValidationError(f"{path}: entries must be finite")
    hbar = float(doc.get("hbar", 1.0))
    return entries.reshape(2 * n, 2 * n), hbar


def write_matrix(path, M, hbar=1.0):
    M = np.asarray(M, dtype=float)
    doc = {"n": M.shape[0] // 2, "entries": M.ravel().tolist(), "hbar": float(hbar)}
    with open(path, "w") as fh:
        fh.write(dumps(doc) + "\n")


def _read_csv(path):
    try:
        with open(path, newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    meta = {}
    body = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, sep, value = stripped[1:].partition("=")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        body.append(stripped)
    rows = list(csv.reader(body))
    if not rows:
        raise ValidationError(f"{path}: empty file")
    return meta, [c.strip() for c in rows[0]], rows[1:]


def _parse_rows(path, rows, width):
    try:
        data = np.array([[float(c) for c in row] for row in rows], dtype=float)
    except ValueError as exc:
        raise ValidationError(f"{path}: non-numeric entry ({exc})") from None
    if data.ndim != 2 or data.shape[1] != width:
        raise ValidationError(f"{path}: every row needs {width} columns")
    if not np.all(np.isfinite(data)):
        raise ValidationError(f"{path}: non-finite entry")
    return data


def read_wavefunction(path, hbar=None):
    """Read a wavefunction CSV; ``hbar`` overrides the file's metadata line."""
    meta, header, rows = _read_csv(path)
    if header != ["x", "re", "im"]:
        raise ValidationError(f"{path}: header must be 'x,re,im', got {','.join(header)!r}")
    data = _parse_rows(path, rows, 3)
    if data.shape[0] < 2:
        raise ValidationError(f"{path}: need at least two samples")
    x = data[:, 0]
    steps = np.diff(x)
    dx = (x[-1] - x[0]) / (len(x) - 1)
    if dx <= 0 or np.max(np.abs(steps - dx)) > SPACING_TOL * dx:
        raise ValidationError(f"{path}: x column must be increasing with constant spacing")
    if hbar is None:
        try:
            hbar = float(meta.get("hbar", 1.0))
        except ValueError:
            raise ValidationError(f"{path}: malformed hbar metadata") from None
    return phasespace.SampledWavefunction(data[:, 1] + 1j * data[:, 2], float(x[0]), float(dx), hbar)


def write_wavefunction(path, psi):
    with open(path, "w") as fh:
        fh.write(f"# hbar={format_float(psi.hbar)}\n")
        fh.write("x,re,im\n")
        for x, v in zip(psi.x, psi.values):
            fh.write(f"{format_float(x)},{format_float(v.real)},{format_float(v.imag)}\n")


def emit_grid(W, path):
    """Write a real grid as CSV ``x,p,value`` (x outer) plus a JSON sidecar."""
    values = np.asarray(W.values)
    if np.iscomplexobj(values):
        raise ValidationError("emit_grid writes real grids; take the real part or modulus first")
    x, p = W.x, W.p
    xs = [format_float(v) for v in x]
    ps = [format_float(v) for v in p]
    try:
        with open(path, "w") as fh:
            fh.write("x,p,value\n")
            for j, xj in enumerate(xs):
                row = values[j]
                fh.write("".join(f"{xj},{pk},{format_float(v)}\n" for pk, v in zip(ps, row)))
        sidecar = {
            "x0": W.x0,
            "dx": W.dx,
            "nx": values.shape[0],
            "p0": W.p0,
            "dp": W.dp,
            "np": values.shape[1],
            "hbar": W.hbar,
        }
        with open(str(path) + ".json", "w") as fh:
            # axis metadata keeps full precision so read -> emit reproduces bytes
            fh.write(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc.strerror}") from None


def read_grid(path, hbar=None):
    """Read a grid written by :func:`emit_grid`."""
    try:
        with open(str(path) + ".json") as fh:
            axes = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read grid sidecar {path}.json: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}.json is not valid JSON: {exc.msg}") from None
    _, header, rows = _read_csv(path)
    if header != ["x", "p", "value"]:
        raise ValidationError(f"{path}: header must be 'x,p,value'")
    data = _parse_rows(path, rows, 3)
    try:
        nx, np_ = int(axes["nx"]), int(axes["np"])
        shape_ok = data.shape[0] == nx * np_
    except (KeyError, TypeError, ValueError):
        raise ValidationError(f"{path}.json: missing axis metadata") from None
    if not shape_ok:
        raise ValidationError(f"{path}: expected {nx * np_} rows, got {data.shape[0]}")
    hbar = float(axes.get("hbar", 1.0)) if hbar is None else hbar
    return phasespace.PhaseSpaceGrid(
        data[:, 2].reshape(nx, np_),
        float(axes["x0"]),
        float(axes["dx"]),
        float(axes["p0"]),
        float(axes["dp"]),
        hbar,
    )


# ------------------------------------------------------------- subcommands


def _grid_summary(W):
    return {
        "x0": W.x0,
        "dx": W.dx,
        "nx": W.shape[0],
        "p0": W.p0,
        "dp": W.dp,
        "np": W.shape[1],
    }


def _load_psi(args, path):
    psi = read_wavefunction(path, args.hbar)
    if args.grid is not None:
        psi = phasespace.zero_pad(psi, args.grid)
    return psi


def _load_matrix(args, path):
    M, hbar = read_matrix(path)
    return M, (args.hbar if args.hbar is not None else hbar)


def _tol(args, default):
    return default if args.tol is None else args.tol


def cmd_spectrum(args, report):
    M, _ = _load_matrix(args, args.matrix)
    report["results"] = {"spectrum": williamson.symplectic_spectrum(M)}


def cmd_williamson(args, report):
    M, _ = _load_matrix(args, args.matrix)
    tol = _tol(args, symplinalg.DEFAULT_TOL)
    dec = williamson.williamson_decompose(M)
    report["results"] = {
        **to_jsonable(dec),
        "symplectic_defect": symplinalg.symplectic_defect(dec.S),
        "is_symplectic": symplinalg.is_symplectic(dec.S, tol),
    }
    report["tolerances"] = {"is_symplectic": tol}


def cmd_capacity(args, report):
    M, _ = _load_matrix(args, args.matrix)
    slack = _tol(args, symplinalg.DEFAULT_TOL)
    e = williamson.Ellipsoid(M, args.level)
    S = williamson.ball_embedding_certificate(e)
    worst = williamson.verify_certificate(e, S, args.samples, slack, args.seed)
    report["results"] = {
        "capacity": williamson.ellipsoid_capacity(e),
        "level": e.level,
        "certificate": S,
        "certificate_max_ratio": worst,
        "certificate_valid": worst <= 1.0 + slack,
    }
    report["tolerances"] = {"certificate_slack": slack}
    report["inputs"].update(level=args.level, samples=args.samples, seed=args.seed)


def cmd_admissible(args, report):
    M, hbar = _load_matrix(args, args.matrix)
    tol = _tol(args, admissibility.CAPACITY_TOL)
    cov = admissibility.CovarianceMatrix(M, hbar)
    verdict = admissibility.admissible_capacity(cov, tol)
    report["results"] = {
        **to_jsonable(verdict),
        "h_half": np.pi * hbar,
        "robertson_schrodinger": admissibility.robertson_schrodinger_check(cov),
        "conjugate_plane_projection_areas": admissibility.conjugate_plane_projection_areas(cov),
        "conjugate_plane_section_areas": admissibility.conjugate_plane_section_areas(cov),
    }
    report["tolerances"] = {"capacity": tol, "hermitian": admissibility.HERMITIAN_TOL}
    if not verdict.consistent:
        report["warnings"].append("Hermitian and capacity verdicts disagree (boundary case)")


def cmd_classify(args, report):
    M, hbar = _load_matrix(args, args.matrix)
    tol = _tol(args, admissibility.CLASSIFY_TOL)
    g = phasespace.gaussian_wigner(M, hbar=hbar)
    report["results"] = {**to_jsonable(admissibility.classify_gaussian(g, tol)), "amplitude": g.amplitude}
    report["tolerances"] = {"classify": tol}


def cmd_blob(args, report):
    M, hbar = _load_matrix(args, args.matrix)
    tol = _tol(args, admissibility.CLASSIFY_TOL)
    is_blob, witness = admissibility.is_quantum_blob(williamson.Ellipsoid(M, hbar), tol)
    report["results"] = {"is_blob": is_blob, "witness": witness}
    report["tolerances"] = {"classify": tol}


def cmd_wigner(args, report):
    psi = _load_psi(args, args.wavefunction)
    W = phasespace.wigner_transform(psi)
    report["results"] = {
        **_grid_summary(W),
        "integral": W.integral().real,
        "max": float(np.max(W.values)),
        "min": float(np.min(W.values)),
    }
    if args.grid_out:
        emit_grid(W, args.grid_out)


def cmd_marginals(args, report):
    W = read_grid(args.grid_file, args.hbar)
    position, momentum = phasespace.marginals(W)
    report["results"] = {"x": W.x, "position": position, "p": W.p, "momentum": momentum}


def cmd_average(args, report):
    rho = read_grid(args.rho, args.hbar)
    symbol = read_grid(args.symbol, args.hbar)
    report["results"] = {"average": phasespace.phase_space_average(rho, symbol)}


def cmd_hardy_fit(args, report):
    psi = _load_psi(args, args.wavefunction)
    tol = _tol(args, hardy.FIT_CLASSIFY_TOL)
    env = hardy.envelope_fit_wavefunction(psi)
    verdict = hardy.classify_envelope(env, tol)
    report["results"] = {**to_jsonable(env), "product": verdict.product, "verdict": verdict.tag}
    report["tolerances"] = {"classify": tol}


def cmd_hardy_check(args, report):
    psi = _load_psi(args, args.wavefunction)
    env = hardy.HardyEnvelope(C_X=args.cx, a=args.a, C_P=args.cp, b=args.b, hbar=psi.hbar)
    holds, verdict = hardy.hardy_check_state(psi, env)
    report["results"] = {"holds": holds, "product": verdict.product, "verdict": verdict.tag}
    report["tolerances"] = {"bound_slack": hardy.BOUND_SLACK, "classify": hardy.HARDY_TOL}
    report["inputs"].update(a=args.a, b=args.b, cx=args.cx, cp=args.cp)


def cmd_majorant(args, report):
    rho = read_grid(args.grid_file, args.hbar)
    M = None
    if args.matrix:
        M, _ = read_matrix(args.matrix)
    cert, verdict = hardy.majorant_verdict(rho, M)
    report["results"] = {**to_jsonable(cert), "valid": cert.valid, "h_half": np.pi * rho.hbar, "verdict": verdict}
    report["tolerances"] = {"bound_slack": hardy.BOUND_SLACK, "capacity": hardy.HARDY_TOL}


def cmd_compact_support(args, report):
    rho = read_grid(args.grid_file, args.hbar)
    cert, verdict = hardy.compact_support_verdict(rho, args.radius)
    report["results"] = {**to_jsonable(cert), "valid": cert.valid, "h_half": np.pi * rho.hbar, "verdict": verdict}
    report["tolerances"] = {"bound_slack": hardy.BOUND_SLACK, "capacity": hardy.HARDY_TOL}
    report["inputs"]["radius"] = args.radius


def cmd_stft(args, report):
    f = _load_psi(args, args.wavefunction)
    g = _load_psi(args, args.window) if args.window else f
    V = phasespace.stft(f, g)
    modulus = V.like(np.abs(V.values))
    center = (V.shape[0] // 2, V.shape[1] // 2)
    report["results"] = {
        **_grid_summary(V),
        "max_modulus": float(np.max(modulus.values)),
        "value_at_origin": complex(V.values[center]),
    }
    if args.grid_out:
        emit_grid(modulus, args.grid_out)
        report["warnings"].append("grid output holds the modulus |V_g f|")


def cmd_relation_check(args, report):
    psi = _load_psi(args, args.wavefunction)
    phi = _load_psi(args, args.phi) if args.phi else psi
    check = phasespace.stft_wigner_relation_check(psi, phi)
    report["results"] = to_jsonable(check)
    report["tolerances"] = {"discrepancy_target": RELATION_TARGET}
    if check.discrepancy > RELATION_TARGET:
        report["warnings"].append(
            f"discrepancy {format_float(check.discrepancy)} exceeds target; "
            f"measured constant {format_float(check.measured_constant)}"
        )


COMMANDS = {
    "spectrum": (cmd_spectrum, "symplectic spectrum of a positive-definite matrix"),
    "williamson": (cmd_williamson, "Williamson normal form S^T M S = diag(L, L)"),
    "capacity": (cmd_capacity, "capacity of the ellipsoid M z.z <= level, with a ball certificate"),
    "admissible": (cmd_admissible, "admissibility of a covariance matrix"),
    "classify": (cmd_classify, "classify the Gaussian C exp(-M z.z / hbar)"),
    "blob": (cmd_blob, "is M z.z <= hbar a quantum blob?"),
    "wigner": (cmd_wigner, "Wigner distribution of a sampled wavefunction"),
    "marginals": (cmd_marginals, "position and momentum marginals of a grid"),
    "average": (cmd_average, "phase-space average of a symbol against a distribution"),
    "hardy-fit": (cmd_hardy_fit, "fit the Hardy envelope of a wavefunction"),
    "hardy-check": (cmd_hardy_check, "check given Hardy bounds on a wavefunction"),
    "majorant": (cmd_majorant, "Gaussian majorant verdict for a phase-space distribution"),
    "compact-support": (cmd_compact_support, "reject a compactly supported distribution"),
    "stft": (cmd_stft, "short-time Fourier transform"),
    "relation-check": (cmd_relation_check, "compare the cross-Wigner transform with the STFT"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--hbar", type=float, default=None, help="override the file's hbar")
    common.add_argument("--tol", type=float, default=None, help="override the command's tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled certificates")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--grid", type=int, default=None, help="zero-pad wavefunctions to N samples")
    common.add_argument("--grid-out", default=None, help="emit the computed grid as CSV")

    parser = _Parser(prog="phasecap", description="Symplectic capacities, Wigner and Hardy checks.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    parsers = {}
    for name, (_, help_text) in COMMANDS.items():
        parsers[name] = sub.add_parser(name, help=help_text, description=help_text, parents=[common])

    for name in ("spectrum", "williamson", "capacity", "admissible", "classify", "blob"):
        parsers[name].add_argument("matrix", help="matrix file (JSON)")
    parsers["capacity"].add_argument("--level", type=float, default=1.0, help="ellipsoid level (default 1)")
    parsers["capacity"].add_argument(
        "--samples", type=int, default=10_000, help="boundary points used to verify the certificate"
    )
    for name in ("wigner", "hardy-fit", "hardy-check", "stft", "relation-check"):
        parsers[name].add_argument("wavefunction", help="wavefunction file (CSV)")
    for name in ("marginals", "majorant", "compact-support"):
        parsers[name].add_argument("grid_file", help="grid file (CSV with JSON sidecar)")
    parsers["average"].add_argument("rho", help="distribution grid file")
    parsers["average"].add_argument("symbol", help="symbol grid file on the same axes")
    check = parsers["hardy-check"]
    for flag, text in (
        ("--a", "position rate a in |psi| <= C_X exp(-a x^2 / 2 hbar)"),
        ("--b", "momentum rate b in |F psi| <= C_P exp(-b p^2 / 2 hbar)"),
        ("--cx", "position constant C_X"),
        ("--cp", "momentum constant C_P"),
    ):
        check.add_argument(flag, type=float, required=True, help=text)
    parsers["majorant"].add_argument("--matrix", default=None, help="2x2 majorant matrix file")
    parsers["compact-support"].add_argument(
        "--radius", type=float, required=True, help="support radius R in phase space"
    )
    parsers["stft"].add_argument("--window", default=None, help="window wavefunction (default: input)")
    parsers["relation-check"].add_argument("--phi", default=None, help="second wavefunction (default: input)")
    return parser


def _echo_inputs(args):
    inputs = {}
    for key in ("matrix", "wavefunction", "grid_file", "rho", "symbol", "window", "phi"):
        value = getattr(args, key, None)
        if value:
            inputs[key] = value
    for key in ("hbar", "tol", "grid"):
        value = getattr(args, key)
        if value is not None:
            inputs[key] = value
    return inputs


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        if args.grid is not None and (args.grid < 16 or args.grid & (args.grid - 1)):
            raise UsageError(f"--grid must be a power of two >= 16, got {args.grid}")
        if args.hbar is not None and not args.hbar > 0:
            raise UsageError("--hbar must be positive")
        report = {
            "command": args.command,
            "inputs": _echo_inputs(args),
            "results": {},
            "tolerances": {},
            "warnings": [],
        }
        COMMANDS[args.command][0](args, report)
        text = dumps(report) + "\n"
        if args.out:
            try:
                with open(args.out, "w") as fh:
                    fh.write(text)
            except OSError as exc:
                raise ValidationError(f"cannot write {args.out}: {exc.strerror}") from None
        else:
            stdout.write(text)
        return 0
    except (ValidationError, NumericalError) as exc:
        stderr.write(json.dumps({"code": exc.code, "error": str(exc)}, sort_keys=True) + "\n")
        return 2 if isinstance(exc, ValidationError) else 3
    except np.linalg.LinAlgError as exc:
        stderr.write(json.dumps({"code": "numerical", "error": str(exc)}, sort_keys=True) + "\n")
        return 3


def main():
    sys.exit(run())
