"""Command-line interface: ``hopfq <command> [options] [STATE_FILE]``.

State-consuming commands read ``{"n": int, "amplitudes": [[re, im], ...]}``
from STATE_FILE or stdin. Output is JSON unless ``--format csv`` is given;
CSV columns are listed in ``csv_schema.json``.

Exit codes: 0 success, 1 validation error, 2 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from typing import Any, Sequence

import numpy as np

from . import __version__
from .algebra import Octonion, Quaternion
from .checks import check_suite
from .entanglement import (
    DensityMatrix2,
    classify_leaf,
    default_tol,
    generalized_concurrences,
    partial_bloch_radii,
    reduced_density,
    reduced_density_matrix,
)
from .errors import ConsistencyError, HopfqError, ValidationError
from .fibers import epsilon_path, fiber_point_s7, fiber_point_s15, mes_state
from .foliation import foliation_sample
from .hopf import (
    CROSS_PATH_TOL,
    DEFAULT_POLE,
    BasePoint,
    bloch_coordinates,
    entanglor_expectation,
    hopf_s3,
    hopf_s7,
    hopf_s15,
)
from .scene import latitude_bases, pole_base, render_fibration_scene
from .states import PureState, state_from_json, state_to_json

EXIT_OK, EXIT_INVALID, EXIT_INCONSISTENT = 0, 1, 2


def load_csv_schema() -> dict[str, list[str]]:
    return json.loads(resources.files("hopfq").joinpath("csv_schema.json").read_text())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a complex number like 0.6+0.8j, got {text!r}")


def _read_state(args) -> PureState:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {args.input}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state input is not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError("state JSON must be an object")
    return state_from_json(data, renormalize=args.renormalize)


def _tol(args) -> float:
    return default_tol() if args.tol is None else args.tol


def _cpx(z: complex) -> list[float]:
    return [z.real, z.imag]


def _base_json(b: BasePoint) -> dict[str, Any]:
    return {"dim": b.dim, "coords": list(b.coords)}


def _base_rows(b: BasePoint) -> list[dict[str, Any]]:
    return [{"l": l, "x": x} for l, x in enumerate(b.coords)]


def _state_rows(s: PureState) -> list[dict[str, Any]]:
    return [{"index": i, "re": a.real, "im": a.imag} for i, a in enumerate(s.amplitudes)]


def _agree(x: np.ndarray, y: np.ndarray, what: str) -> None:
    gap = float(np.max(np.abs(x - y)))
    if gap > CROSS_PATH_TOL:
        raise ConsistencyError(f"{what}: independent evaluations differ by {gap:.3g}")


# -- commands: each returns (json_payload, csv_kind, csv_rows) -----------------


def cmd_bloch(args):
    s = _read_state(args)
    b = hopf_s3(s)
    _agree(b.as_array(), bloch_coordinates(s).as_array(), "bloch")
    return _base_json(b), "basepoint", _base_rows(b)


def cmd_hopf2(args):
    b = hopf_s7(_read_state(args), args.grouping)
    return _base_json(b), "basepoint", _base_rows(b)


def cmd_hopf3(args):
    b = hopf_s15(_read_state(args), verify=True)
    return _base_json(b), "basepoint", _base_rows(b)


def cmd_concurrence(args):
    s = _read_state(args)
    if s.n_qubits == 2:
        leaf = classify_leaf(s, _tol(args))
        e = entanglor_expectation(s)
        payload = {
            "concurrence": leaf.concurrence,
            "shell_radius": leaf.shell_radius,
            "label": leaf.label.value,
            "entanglor": _cpx(e),
        }
        row = dict(payload, label=leaf.label.value, entanglor_re=e.real, entanglor_im=e.imag)
        return payload, "concurrence2", [row]
    if s.n_qubits == 3:
        g = generalized_concurrences(s)
        r = partial_bloch_radii(s)
        radii = {"r1": r.r1, "r2": r.r2, "r3": r.r3, "avg": r.average}
        payload = {"generalized_concurrences": {k: _cpx(v) for k, v in g._asdict().items()}, "radii": radii}
        row = dict(radii)
        for k, v in g._asdict().items():
            row[f"{k}_re"], row[f"{k}_im"] = v.real, v.imag
        return payload, "concurrence3", [row]
    raise ValidationError("concurrence needs a two- or three-qubit state")


def cmd_rho(args):
    s = _read_state(args)
    if s.n_qubits == 2:
        rho = reduced_density(s, args.qubit)
    elif s.n_qubits == 3 and args.qubit in (1, 2, 3):
        rho = DensityMatrix2.from_matrix(reduced_density_matrix(s.vector, args.qubit, 3))
    else:
        raise ValidationError(f"cannot keep qubit {args.qubit} of a {s.n_qubits}-qubit state")
    m = rho.matrix
    payload = {
        "qubit": args.qubit,
        "matrix": [[_cpx(complex(m[i, j])) for j in range(2)] for i in range(2)],
        "det": rho.det,
        "bloch_vector": list(rho.bloch_vector),
    }
    rows = [{"row": i, "col": j, "re": m[i, j].real, "im": m[i, j].imag} for i in range(2) for j in range(2)]
    return payload, "rho", rows


def _base_arg(values: Sequence[float], dim: int) -> BasePoint:
    if len(values) != dim + 1:
        raise ValidationError(f"--base needs {dim + 1} coordinates")
    if abs(math.fsum(v * v for v in values) - 1.0) > 1e-6:
        raise ValidationError("--base is not on the unit sphere")
    return BasePoint.from_coords(values, normalize=True)


def _unit(values: Sequence[float], size: int, flag: str) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if v.shape != (size,) or abs(np.linalg.norm(v) - 1.0) > 1e-6:
        raise ValidationError(f"{flag} needs {size} components of unit norm")
    return v / np.linalg.norm(v)


def _state_out(s: PureState):
    return state_to_json(s), "state", _state_rows(s)


def cmd_fiber2(args):
    base = _base_arg(args.base, 4)
    return _state_out(fiber_point_s7(base, Quaternion.from_array(_unit(args.q, 4, "--q"))))


def cmd_fiber3(args):
    base = _base_arg(args.base, 8)
    return _state_out(fiber_point_s15(base, Octonion(tuple(_unit(args.c, 8, "--c")))))


def _fiber_pair(args) -> tuple[complex, complex]:
    f_a, f_b = args.fa, args.fb
    n = math.sqrt(abs(f_a) ** 2 + abs(f_b) ** 2)
    if abs(n - 1.0) > 1e-6:
        raise ValidationError("(--fa, --fb) must have unit norm")
    return f_a / n, f_b / n


def cmd_mes(args):
    return _state_out(mes_state(*_fiber_pair(args)))


def cmd_path(args):
    return _state_out(epsilon_path(args.eps, *_fiber_pair(args), ray=args.ray))


def cmd_render_s3(args):
    bases = latitude_bases(args.latitudes, args.per_latitude)
    if not args.no_pole_fiber:
        bases.append(pole_base(args.pole))
    scene = render_fibration_scene(bases, args.samples, args.pole)
    return scene.to_json(), "scene", scene.to_rows()


def cmd_foliate(args):
    rows = foliation_sample(args.count, args.n, args.seed, workers=args.workers, tol=_tol(args))
    records = [r.record() for r in rows]
    payload = {"n": args.n, "count": args.count, "seed": args.seed, "rows": records}
    return payload, f"foliation{args.n}", records


def cmd_check(args):
    report = check_suite(samples=args.samples, seed=args.seed)
    payload = report.to_json()
    rows = payload["checks"]
    if not report.passed:
        args.exit_code = EXIT_INCONSISTENT
    return payload, "check", rows


# -- wiring --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-o", "--output", help="write here instead of stdout")

    state_in = argparse.ArgumentParser(add_help=False)
    state_in.add_argument("input", nargs="?", help="state JSON file (default: stdin)")
    state_in.add_argument(
        "--renormalize", action="store_true", help="accept and normalize states whose norm is off by more than 1e-6"
    )

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=float, help="classification tolerance (default: $HOPFQ_TOL or 1e-9)")

    fibre_pair = argparse.ArgumentParser(add_help=False)
    fibre_pair.add_argument("--fa", type=_complex, default=1 + 0j, help="fiber coordinate a, e.g. 0.6+0.8j")
    fibre_pair.add_argument("--fb", type=_complex, default=0j, help="fiber coordinate b")

    parser = _Parser(prog="hopfq", description="Hopf-fibration geometry of 1-3 qubit pure states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("bloch", parents=[common, state_in], help="S3 Hopf map (Bloch sphere)").set_defaults(
        func=cmd_bloch
    )
    p = sub.add_parser("hopf2", parents=[common, state_in], help="S7 Hopf map of a two-qubit state")
    p.add_argument("--grouping", choices=("standard", "alternate"), default="standard")
    p.set_defaults(func=cmd_hopf2)
    sub.add_parser("hopf3", parents=[common, state_in], help="S15 Hopf map of a three-qubit state").set_defaults(
        func=cmd_hopf3
    )
    sub.add_parser(
        "concurrence", parents=[common, state_in, tol], help="concurrence and leaf, or three-qubit radii"
    ).set_defaults(func=cmd_concurrence)
    p = sub.add_parser("rho", parents=[common, state_in], help="one-qubit reduced density matrix")
    p.add_argument("--qubit", type=int, default=1)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("fiber2", parents=[common], help="two-qubit state over an S4 base point")
    p.add_argument("--base", type=_floats, required=True, help="x0,...,x4 (use --base=... for a leading minus)")
    p.add_argument("--q", type=_floats, default=[1.0, 0.0, 0.0, 0.0], help="unit quaternion q0,q1,q2,q3")
    p.set_defaults(func=cmd_fiber2)
    p = sub.add_parser("fiber3", parents=[common], help="three-qubit state over an S8 base point")
    p.add_argument("--base", type=_floats, required=True, help="x0,...,x8")
    p.add_argument("--c", type=_floats, default=[1.0] + [0.0] * 7, help="unit octonion u0,...,u7")
    p.set_defaults(func=cmd_fiber3)
    sub.add_parser("mes", parents=[common, fibre_pair], help="maximally entangled state").set_defaults(
        func=cmd_mes
    )
    p = sub.add_parser("path", parents=[common, fibre_pair], help="state on a ray of the B3 ball")
    p.add_argument("--ray", choices=("x", "z"), default="x")
    p.add_argument("--eps", type=float, required=True, help="angle in [0, pi/2]; concurrence is sin(eps)")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("render-s3", parents=[common], help="stereographic picture of the S3 fibration")
    p.add_argument("--latitudes", type=_floats, default=[-0.5, 0.0, 0.5], help="x0 values of the base circles")
    p.add_argument("--per-latitude", type=int, default=12)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--pole", type=_floats, default=list(DEFAULT_POLE))
    p.add_argument("--no-pole-fiber", action="store_true", help="omit the straight-line fiber")
    p.set_defaults(func=cmd_render_s3)

    p = sub.add_parser("foliate", parents=[common, tol], help="Haar-sample the entanglement foliation")
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_foliate)

    p = sub.add_parser("check", parents=[common], help="run the invariant self-checks")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def render(payload: Any, kind: str, rows: list[dict[str, Any]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, allow_nan=False) + "\n"
    columns = load_csv_schema()[kind]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    args.exit_code = EXIT_OK
    try:
        payload, kind, rows = args.func(args)
        text = render(payload, kind, rows, args.format)
    except ConsistencyError as exc:
        print(f"hopfq: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (HopfqError, ValueError) as exc:
        print(f"hopfq: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
