"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 failed ``--assert`` check.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .baselines import (
    ladder_commutator,
    ladder_commutator_expected,
    ladder_from_quantization,
    operator_distance,
    pegg_barnett_operator,
)
from .export import csv_text, dumps, matrix_payload, matrix_rows, vector_payload
from .observables import QuadratureGrid, parse_observable
from .operators import (
    commutator,
    commutator_number_phase,
    number_operator,
    phase_operator,
    phase_state,
    quantize,
)
from .symbols import (
    allones_spectrum,
    commutator_lower_symbol,
    convergence_scan,
    lower_symbol,
    resolution_identity_residual,
)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_ASSERT = 0, 1, 2, 3

COMMANDS = (
    "quantize",
    "phase-state",
    "spectrum",
    "commutator",
    "scan",
    "compare-pb",
    "ladder",
    "resolution-check",
)

OBSERVABLE_HELP = (
    "observable spec: const:<c> | theta | theta2 | exp:<k> | "
    "trigpoly:<k0>:<re>,<im>;<re>,<im>;... (consecutive coefficients from frequency k0)"
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    dim: int | None = None
    dims: list[int] | None = None
    observable: str | None = None
    theta: float | None = None
    theta0: float = 0.0
    grid: int | None = None
    out: str | None = None
    format: str = "json"
    norm: str = "frobenius"
    reference_diagonal: bool = False
    quantity: str | None = None
    plot_script: str | None = None
    check: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _angle(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle must be finite, got {text!r}")
    return value


def _dims(text: str) -> list[int]:
    """'8,16,32' or '2..16' (inclusive) or a mix of both."""
    dims: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, hi = part.partition("..")
            dims.extend(range(_positive_int(lo), _positive_int(hi) + 1))
        else:
            dims.append(_positive_int(part))
    if not dims:
        raise argparse.ArgumentTypeError("empty dimension list")
    return dims


def _observable(text: str) -> str:
    try:
        parse_observable(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="phasequant",
        description="Coherent-state quantization on the circle: phase operators and checks.",
        epilog=OBSERVABLE_HELP,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def common(p, dim=True):
        if dim:
            p.add_argument("--dim", type=_positive_int, required=True, help="Hilbert space dimension N")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--assert", dest="check", action="store_true",
                       help="run numerical checks; exit 3 on failure")

    p = sub.add_parser("quantize", help="Toeplitz matrix of a quantized observable", epilog=OBSERVABLE_HELP)
    common(p)
    p.add_argument("--observable", type=_observable, required=True, help=OBSERVABLE_HELP)

    p = sub.add_parser("phase-state", help="amplitudes of the phase state |theta)")
    common(p)
    p.add_argument("--theta", type=_angle, required=True)

    p = sub.add_parser("spectrum", help="spectrum of the all-ones matrix or of a quantized observable")
    common(p)
    p.add_argument("--observable", type=_observable, help=OBSERVABLE_HELP)

    p = sub.add_parser("commutator", help="[N, A_theta] against its closed form")
    common(p)
    p.add_argument("--reference-diagonal", action="store_true",
                   help="keep the c_0 = pi diagonal of the phase operator")
    p.add_argument("--theta", type=_angle, help="also report the lower symbol at this angle")

    p = sub.add_parser("scan", help="large-N convergence table", epilog=OBSERVABLE_HELP)
    common(p, dim=False)
    p.add_argument("--quantity", choices=("commutator", "resolution", "comb"), required=True)
    p.add_argument("--dims", type=_dims, required=True, help="e.g. 8,16,32 or 2..16")
    p.add_argument("--theta", type=_angle)
    p.add_argument("--grid", type=_positive_int, help="fixed quadrature size M (default depends on quantity)")
    p.add_argument("--observable", type=_observable, help="test function for the comb quantity (default exp:1)")
    p.add_argument("--plot-script", help="write a gnuplot script for the CSV output here")

    p = sub.add_parser("compare-pb", help="distance between the quantized and Pegg-Barnett phase operators")
    common(p)
    p.add_argument("--theta0", type=_angle, default=0.0)
    p.add_argument("--norm", choices=("frobenius", "max"), default="frobenius")
    p.add_argument("--observable", type=_observable, default="theta", help=OBSERVABLE_HELP)

    p = sub.add_parser("ladder", help="ladder operators and [a, a^dagger]")
    common(p)

    p = sub.add_parser("resolution-check", help="quadrature residual of the resolution of unity")
    common(p)
    p.add_argument("--grid", type=_positive_int, help="quadrature size M (default 2N)")

    return parser


def parse_args(argv) -> RunConfig:
    """Parse ``argv`` into a :class:`RunConfig`; raises :class:`UsageError`."""
    ns = build_parser().parse_args(list(argv))
    cfg = RunConfig(command=ns.command)
    for name in ("dim", "dims", "observable", "theta", "theta0", "grid", "out", "format",
                 "norm", "reference_diagonal", "quantity", "plot_script", "check"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    if cfg.plot_script is not None:
        if cfg.format != "csv":
            raise UsageError("--plot-script needs --format csv")
        if cfg.out is None:
            raise UsageError("--plot-script needs --out for the data file")
    if cfg.command == "scan" and cfg.dims is not None:
        if any(b <= a for a, b in zip(cfg.dims, cfg.dims[1:])):
            raise UsageError("--dims must be strictly increasing")
    return cfg


class _Result:
    def __init__(self, meta: dict, data: dict, header: list[str], rows: list):
        self.meta, self.data, self.header, self.rows = meta, data, header, rows
        self.failures: list[str] = []

    def check(self, ok: bool, what: str):
        if not ok:
            self.failures.append(what)


def _meta(cfg: RunConfig, **extra) -> dict:
    meta = {"command": cfg.command, "version": __version__}
    meta.update(extra)
    return meta


def _matrix_result(meta: dict, a) -> _Result:
    return _Result(meta, matrix_payload(a), ["row", "col", "re", "im"], list(matrix_rows(a)))


def _run_quantize(cfg: RunConfig) -> _Result:
    f = parse_observable(cfg.observable)
    a = quantize(f, cfg.dim)
    res = _matrix_result(
        _meta(cfg, dim=cfg.dim, observable=cfg.observable, analytic=f.analytic,
              toeplitz_defect=a.toeplitz_defect()),
        a,
    )
    res.check(a.toeplitz_defect() <= 1e-13, "matrix is not Toeplitz")
    if f.real_valued:
        res.check(a.hermiticity_defect() <= 1e-12, "real observable gave a non-Hermitian matrix")
    return res


def _run_phase_state(cfg: RunConfig) -> _Result:
    psi = phase_state(cfg.theta, cfg.dim)
    norm = psi.norm()
    res = _Result(
        _meta(cfg, dim=cfg.dim, theta=psi.theta, norm=norm),
        {"theta": psi.theta, "amplitudes": vector_payload(psi.amplitudes)},
        ["n", "re", "im"],
        [(k, z.real, z.imag) for k, z in enumerate(psi.amplitudes)],
    )
    res.check(abs(norm - 1.0) <= 1e-13, "phase state is not normalized")
    return res


def _run_spectrum(cfg: RunConfig) -> _Result:
    if cfg.observable is None:
        spec = allones_spectrum(cfg.dim)
        vals = spec.eigenvalues
        res = _Result(
            _meta(cfg, dim=cfg.dim, operator="allones", null_residual=spec.null_residual),
            {"eigenvalues": [float(v) for v in vals],
             "top_eigenvector": vector_payload(spec.top_eigenvector)},
            ["index", "re", "im"],
            [(k, float(v), 0.0) for k, v in enumerate(vals)],
        )
        expected = np.zeros(cfg.dim)
        expected[0] = cfg.dim
        res.check(float(np.max(np.abs(vals - expected))) <= 1e-10, "all-ones spectrum is not {N, 0, ...}")
        top_ref = phase_state(0.0, cfg.dim).amplitudes
        res.check(float(np.max(np.abs(spec.top_eigenvector - top_ref))) <= 1e-10,
                  "top eigenvector differs from |theta=0)")
        return res
    f = parse_observable(cfg.observable)
    a = quantize(f, cfg.dim)
    if a.hermitian:
        vals = np.sort(np.linalg.eigvalsh(a.entries)).astype(complex)
    else:
        raw = np.linalg.eigvals(a.entries)
        vals = raw[np.lexsort((raw.imag, raw.real))]
    res = _Result(
        _meta(cfg, dim=cfg.dim, operator="quantized", observable=cfg.observable),
        {"eigenvalues": [complex(v) for v in vals]},
        ["index", "re", "im"],
        [(k, v.real, v.imag) for k, v in enumerate(vals)],
    )
    res.check(abs(complex(np.sum(vals)) - complex(np.trace(a.entries))) <= 1e-9 * max(1.0, cfg.dim),
              "eigenvalues do not sum to the trace")
    return res


def _run_commutator(cfg: RunConfig) -> _Result:
    n = cfg.dim
    c = commutator(number_operator(n), phase_operator(n, cfg.reference_diagonal))
    closed = commutator_number_phase(n)
    residual = float(np.max(np.abs(c.entries - closed.entries)))
    extra = {"dim": n, "reference_diagonal": cfg.reference_diagonal, "closed_form_residual": residual}
    if cfg.theta is not None:
        extra["theta"] = cfg.theta
        extra["lower_symbol"] = lower_symbol(c, cfg.theta)
        extra["lower_symbol_closed_form"] = commutator_lower_symbol(cfg.theta, n)
    res = _matrix_result(_meta(cfg, **extra), c)
    res.check(residual <= 1e-12, "commutator differs from i(I - N|v><v|)")
    if cfg.theta is not None:
        res.check(abs(extra["lower_symbol"] - extra["lower_symbol_closed_form"]) <= 1e-12,
                  "lower symbol differs from i(1 - F_N)")
    return res


def _run_scan(cfg: RunConfig) -> _Result:
    observable = None
    if cfg.quantity == "comb":
        observable = parse_observable(cfg.observable or "exp:1")
    report = convergence_scan(cfg.quantity, cfg.dims, theta=cfg.theta,
                              grid_policy=cfg.grid, observable=observable)
    meta = _meta(cfg, **report.metadata)
    if observable is not None:
        meta["observable"] = cfg.observable or "exp:1"
    extra_name = "envelope" if cfg.quantity == "commutator" else "grid"
    extra_col = report.metadata[extra_name]
    rows = []
    for i, n in enumerate(report.axis):
        m, r = complex(report.measured[i]), complex(report.reference[i])
        rows.append((n, m.real, m.imag, r.real, r.imag, float(report.residuals[i]), extra_col[i]))
    res = _Result(
        meta,
        {"quantity": report.quantity, "axis": list(report.axis),
         "measured": [complex(v) for v in report.measured],
         "reference": [complex(v) for v in report.reference],
         "residuals": [float(v) for v in report.residuals]},
        ["n", "measured_re", "measured_im", "reference_re", "reference_im", "residual", extra_name],
        rows,
    )
    if cfg.quantity == "commutator":
        for n, r, env in zip(report.axis, report.residuals, extra_col):
            res.check(r <= env + 1e-12, f"N={n}: residual {r:.3e} above envelope {env:.3e}")
    elif cfg.quantity == "resolution":
        for n, r in zip(report.axis, report.residuals):
            res.check(r <= 1e-12, f"N={n}: resolution residual {r:.3e}")
    else:
        for n, r in zip(report.axis, report.residuals):
            res.check(r <= 1e-10, f"N={n}: pairing residual {r:.3e}")
    return res


def _run_compare_pb(cfg: RunConfig) -> _Result:
    f = parse_observable(cfg.observable)
    a = quantize(f, cfg.dim)
    pb = pegg_barnett_operator(cfg.dim, cfg.theta0)
    norm = "max_entry" if cfg.norm == "max" else cfg.norm
    dist = operator_distance(a, pb, norm)
    res = _Result(
        _meta(cfg, dim=cfg.dim, theta0=cfg.theta0, observable=cfg.observable, norm=norm),
        {"distance": dist, "quantized": matrix_payload(a), "pegg_barnett": matrix_payload(pb)},
        ["dim", "theta0", "norm", "distance"],
        [(cfg.dim, float(cfg.theta0), norm, dist)],
    )
    res.check(dist > 0.0, "quantized operator coincides with the Pegg-Barnett operator")
    return res


def _run_ladder(cfg: RunConfig) -> _Result:
    n = cfg.dim
    pair = ladder_from_quantization(n)
    comm = ladder_commutator(n)
    expected = ladder_commutator_expected(n)
    residual = float(np.max(np.abs(comm.entries - expected.entries)))
    number_residual = float(np.max(np.abs(
        pair.a_dagger.entries @ pair.a.entries - number_operator(n).entries)))
    res = _Result(
        _meta(cfg, dim=n, commutator_residual=residual, number_residual=number_residual),
        {"a": matrix_payload(pair.a), "a_dagger": matrix_payload(pair.a_dagger),
         "commutator": matrix_payload(comm)},
        ["n", "commutator_re", "commutator_im", "expected"],
        [(k, complex(comm.entries[k, k]).real, complex(comm.entries[k, k]).imag,
          complex(expected.entries[k, k]).real) for k in range(n)],
    )
    res.check(residual <= 1e-12, "[a, a^dagger] differs from I - N|N-1><N-1|")
    res.check(number_residual <= 1e-12, "a^dagger a differs from the number operator")
    return res


def _run_resolution(cfg: RunConfig) -> _Result:
    m = cfg.grid if cfg.grid is not None else 2 * cfg.dim
    r = resolution_identity_residual(cfg.dim, QuadratureGrid(m))
    res = _Result(
        _meta(cfg, dim=cfg.dim, grid=m),
        {"dim": cfg.dim, "grid": m, "residual": r},
        ["dim", "grid", "residual"],
        [(cfg.dim, m, r)],
    )
    res.check(r <= 1e-12, f"resolution residual {r:.3e} (M={m}, N={cfg.dim})")
    return res


_RUNNERS = {
    "quantize": _run_quantize,
    "phase-state": _run_phase_state,
    "spectrum": _run_spectrum,
    "commutator": _run_commutator,
    "scan": _run_scan,
    "compare-pb": _run_compare_pb,
    "ladder": _run_ladder,
    "resolution-check": _run_resolution,
}


def render(cfg: RunConfig, result: _Result) -> str:
    if cfg.format == "csv":
        return csv_text(result.header, result.rows)
    return dumps({"meta": result.meta, "data": result.data})


def plot_script(data_path: str, script_path: str, cfg: RunConfig) -> str:
    rel = os.path.relpath(data_path, os.path.dirname(os.path.abspath(script_path)) or ".")
    lines = [
        "# gnuplot script; run with: gnuplot -p " + os.path.basename(script_path),
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set logscale x 2",
        "set xlabel 'N'",
        "set ylabel 'residual'",
        f"set title 'scan: {cfg.quantity}'",
    ]
    if cfg.quantity == "commutator":
        lines.append("set logscale y")
        lines.append(f"plot '{rel}' using 1:6 with linespoints, '' using 1:7 with lines")
    else:
        lines.append(f"plot '{rel}' using 1:6 with linespoints")
    return "\n".join(lines) + "\n"


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        result = _RUNNERS[cfg.command](cfg)
    except ValueError as exc:
        print(f"phasequant: error: {exc}", file=stderr)
        return EXIT_USAGE
    text = render(cfg, result)
    if cfg.out is None:
        stdout.write(text)
    else:
        try:
            _write(cfg.out, text)
            if cfg.plot_script is not None:
                _write(cfg.plot_script, plot_script(cfg.out, cfg.plot_script, cfg))
        except OSError as exc:
            target = exc.filename or cfg.out
            print(f"phasequant: cannot write {target}: {exc.strerror or exc}", file=stderr)
            return EXIT_IO
    if cfg.check and result.failures:
        for msg in result.failures:
            print(f"phasequant: check failed: {msg}", file=stderr)
        return EXIT_ASSERT
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help / --version
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
