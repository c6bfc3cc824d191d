"""Command-line front end: ``wga propagate|coherent|overlap|verify``.

Exit codes: 0 success, 2 usage or input error, 3 window too small,
4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import coherent as coh
from . import lattice as lat
from .specfun import truncation_index
from .verify import SUITES, SuiteOptions, run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_WINDOW = 3
EXIT_VERIFY = 4

FLOAT_FMT = "%.16e"


class UsageError(Exception):
    pass


_ANGLE_RE = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi(?:\s*/\s*(\d+(?:\.\d*)?))?$")


def parse_angle(token: str) -> float:
    """Radians from a decimal or a token like ``pi/2``, ``pi``, ``3pi/2``, ``-0.5*pi``."""
    t = str(token).strip().lower()
    m = _ANGLE_RE.match(t)
    if m:
        coef = m.group(1)
        if coef in ("", "+"):
            c = 1.0
        elif coef == "-":
            c = -1.0
        else:
            c = float(coef)
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise UsageError(f"bad angle {token!r}")
        return c * math.pi / den
    try:
        v = float(t)
    except ValueError:
        raise UsageError(f"bad angle {token!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"bad angle {token!r}")
    return v


def parse_label(token: str) -> coh.CoherentLabel:
    """Coherent label from ``"r,theta"``."""
    parts = str(token).split(",")
    if len(parts) != 2:
        raise UsageError(f"label must be 'r,theta', got {token!r}")
    try:
        r = float(parts[0])
    except ValueError:
        raise UsageError(f"bad modulus in label {token!r}") from None
    if not (math.isfinite(r) and r >= 0):
        raise UsageError(f"label modulus must be finite and >= 0, got {token!r}")
    return coh.CoherentLabel(r, parse_angle(parts[1]))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT % v if math.isfinite(v) else ("nan" if math.isnan(v) else ("inf" if v > 0 else "-inf"))
    return str(v)


def _json(v) -> str:
    """Serializer with fixed float format and null for non-finite values."""
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT % v if math.isfinite(v) else "null"
    if isinstance(v, str):
        return _json_str(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{_json_str(str(k))}: {_json(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _json_str(s: str) -> str:
    import json

    return json.dumps(s, ensure_ascii=False)


@dataclass
class Document:
    """Output of one command: metadata plus a table."""

    command: str
    meta: dict
    columns: list
    rows: list

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.meta.items():
            buf.write(f"# {k}={_fmt(v)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_fmt(r[c]) for c in self.columns])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {"command": self.command, "meta": self.meta, "columns": self.columns, "rows": self.rows}
        return _json(doc) + "\n"


def _window(args, needed: int, what: str) -> lat.TruncationWindow:
    n = args.n_window
    if n is None:
        n = needed
    if n < needed:
        raise lat.WindowTooSmall(needed, n, what)
    return lat.TruncationWindow(n)


def _parse_input(spec: str) -> tuple[dict, int]:
    """Initial amplitudes from ``delta@n`` or a file of ``n re im`` lines."""
    m = re.fullmatch(r"delta@([+-]?\d+)", spec.strip())
    if m:
        n = int(m.group(1))
        return {n: 1.0 + 0j}, abs(n)
    amps = {}
    try:
        with open(spec, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = re.split(r"[,\s]+", line)
                if len(parts) not in (2, 3):
                    raise UsageError(f"{spec}:{lineno}: expected 'n re [im]'")
                try:
                    n = int(parts[0])
                    re_ = float(parts[1])
                    im = float(parts[2]) if len(parts) == 3 else 0.0
                except ValueError:
                    raise UsageError(f"{spec}:{lineno}: malformed number") from None
                if not (math.isfinite(re_) and math.isfinite(im)):
                    raise UsageError(f"{spec}:{lineno}: non-finite amplitude")
                amps[n] = amps.get(n, 0j) + complex(re_, im)
    except OSError as exc:
        raise UsageError(f"cannot read input {spec!r}: {exc.strerror}") from None
    if not amps:
        raise UsageError(f"input {spec!r} holds no amplitudes")
    return amps, max(abs(n) for n in amps)


def cmd_propagate(args) -> tuple[Document, int]:
    amps, support = _parse_input(args.input)
    z = float(args.z)
    theta = parse_angle(args.theta)
    reach = support + (truncation_index(2 * abs(z)) if z else 0)
    win = _window(args, max(reach, 1), "propagation")
    coeffs = np.zeros(win.dimension, dtype=complex)
    for n, a in sorted(amps.items()):
        coeffs[win.position(n)] = a
    state = lat.AmplitudeVector(win, coeffs)
    if args.engine == "analytic":
        out = lat.propagate_analytic(state, z, theta)
    else:
        out = lat.propagate_ode(state, z, theta, args.dz)
    meta = {
        "engine": args.engine,
        "z": z,
        "theta": theta,
        "n_window": win.half_width,
        "norm": out.norm(),
        "edge_warning": out.edge_warning,
    }
    code = EXIT_OK
    if args.check_engines:
        ana = lat.propagate_analytic(state, z, theta)
        ode = lat.propagate_ode(state, z, theta, args.dz)
        diff = float(np.abs(ana.coeffs - ode.coeffs).max())
        tol = args.tol if args.tol is not None else 1e-8
        meta.update({"engine_diff": diff, "engine_tol": tol, "engine_check": diff <= tol})
        if diff > tol:
            code = EXIT_VERIFY
    rows = [
        {"n": int(n), "re": float(c.real), "im": float(c.imag), "abs2": float(abs(c) ** 2)}
        for n, c in zip(win.indices, out.coeffs)
    ]
    return Document("propagate", meta, ["n", "re", "im", "abs2"], rows), code


def cmd_coherent(args) -> tuple[Document, int]:
    alpha = parse_label(args.alpha)
    win = _window(args, truncation_index(2 * alpha.r), "coherent state")
    vec = coh.coherent_coeffs(alpha, win)
    rows = [{"n": int(n), "re": float(c.real), "im": float(c.imag)} for n, c in zip(win.indices, vec.coeffs)]
    meta = {"r": alpha.r, "theta": alpha.theta, "n_window": win.half_width, "norm": vec.norm()}
    return Document("coherent", meta, ["n", "re", "im"], rows), EXIT_OK


def cmd_overlap(args) -> tuple[Document, int]:
    a = parse_label(args.alpha)
    b = parse_label(args.alpha2)
    win = _window(args, truncation_index(2 * max(a.r, b.r)), "overlap series")
    closed = coh.overlap_closed(a, b)
    brute = coh.overlap_sum(a, b, win)
    row = {
        "closed": closed,
        "brute_re": brute.real,
        "brute_im": brute.imag,
        "diff": abs(brute - closed),
    }
    meta = {
        "alpha_r": a.r,
        "alpha_theta": a.theta,
        "alpha2_r": b.r,
        "alpha2_theta": b.theta,
        "n_window": win.half_width,
    }
    return Document("overlap", meta, ["closed", "brute_re", "brute_im", "diff"], [row]), EXIT_OK


def cmd_verify(args) -> tuple[Document, int]:
    opt = SuiteOptions(
        seed=args.seed,
        tol=args.tol,
        n_window=args.n_window or 64,
        quad_nodes=args.quad_nodes,
        quad_L=args.quad_L,
        r0=args.r0,
        nk=args.nk,
    )
    checks = run_suite(args.suite, opt)
    rows = [
        {"check": c.name, "measured": c.measured, "target": c.target, "tolerance": c.tolerance, "passed": c.passed}
        for c in checks
    ]
    ok = all(c.passed for c in checks)
    meta = {"suite": args.suite, "seed": args.seed, "passed": ok}
    doc = Document("verify", meta, ["check", "measured", "target", "tolerance", "passed"], rows)
    return doc, EXIT_OK if ok else EXIT_VERIFY


def read_config(path: str) -> dict:
    """key=value lines; keys mirror the long flags (dashes or underscores)."""
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                k, v = (s.strip() for s in line.split("=", 1))
                cfg[k.lstrip("-").replace("-", "_")] = v
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    return cfg


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s):
    v = float(s)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _finite_float(s):
    v = float(s)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file mirroring the flags; flags win")
    common.add_argument("--n-window", type=_positive_int, default=None, help="window half-width N")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=_positive_float, default=None)
    common.add_argument("--quad-nodes", type=_positive_int, default=64)
    common.add_argument("--quad-L", dest="quad_L", type=_positive_float, default=60.0)
    common.add_argument("--r0", type=_positive_float, default=0.5)
    common.add_argument("--nk", type=_positive_int, default=12)

    p = argparse.ArgumentParser(prog="wga", description="Waveguide-array E(2) coherent-state toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("propagate", parents=[common], help="propagate amplitudes along z")
    sp.add_argument("--input", default="delta@0", help="'delta@n' or a file of 'n re [im]' lines")
    sp.add_argument("--z", type=_finite_float, default=1.0)
    sp.add_argument("--theta", default="pi/2")
    sp.add_argument("--engine", choices=("analytic", "ode"), default="analytic")
    sp.add_argument("--dz", type=_positive_float, default=1e-3)
    sp.add_argument("--check-engines", action="store_true", help="compare engines, exit 4 above --tol")
    sp.set_defaults(func=cmd_propagate)

    sc = sub.add_parser("coherent", parents=[common], help="coherent-state coefficients")
    sc.add_argument("--alpha", default="0,0", help="'r,theta'")
    sc.set_defaults(func=cmd_coherent)

    so = sub.add_parser("overlap", parents=[common], help="overlap of two coherent states")
    so.add_argument("--alpha", required=False, default="0,0")
    so.add_argument("--alpha2", required=False, default="0,0")
    so.set_defaults(func=cmd_overlap)

    sv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sv.add_argument("--suite", choices=sorted(SUITES), required=True)
    sv.set_defaults(func=cmd_verify)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    known_keys = {a.dest for sp in sub.choices.values() for a in sp._actions} - {"help", "config"}
    for k in cfg:
        if k not in known_keys:
            raise UsageError(f"unknown config key {k!r}")
    for sp in sub.choices.values():
        acts = {a.dest: a for a in sp._actions}
        for k, v in cfg.items():
            if k in acts:
                sp.set_defaults(**{k: _config_value(k, v, acts[k])})


def _config_value(k, v, act):
    if isinstance(act, argparse._StoreTrueAction):
        return v.lower() in ("1", "true", "yes")
    val = v
    if act.type is not None:
        try:
            val = act.type(v)
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError(f"bad value for config key {k!r}: {v!r}") from None
    if act.choices is not None and val not in act.choices:
        raise UsageError(f"config key {k!r} must be one of {sorted(act.choices)}")
    return val


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
        doc, code = args.func(args)
    except UsageError as exc:
        print(f"wga: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except lat.WindowTooSmall as exc:
        print(f"wga: error: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except (ValueError, ArithmeticError) as exc:
        print(f"wga: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = doc.to_json() if args.format == "json" else doc.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def load_schema(command: str) -> dict:
    """The JSON schema shipped for a command's output."""
    import json
    from importlib.resources import files

    return json.loads((files("wga") / "schemas" / f"{command}.schema.json").read_text(encoding="utf-8"))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
