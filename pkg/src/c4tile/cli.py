"""Command-line entry point.

Exit status: 0 on success, 2 on a negative verdict (UNSAT, failed pipeline
stage, no absorption), 1 on usage, parse, I/O or internal errors.  Errors are
reported on stderr as one line ``error code=<CODE> <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .absorbing import absorption_witness, reach_count
from .constructions import (
    build_H0,
    build_H1,
    extremal_construction,
    steiner,
    threshold,
    two_cliques,
    LabeledConstruction,
)
from .errors import PipelineError
from .extremal import DEFAULT_ALPHA, DEFAULT_EPSILON, DEFAULT_RHO, extremal_tiling
from .hypergraph import Hypergraph3, min_degree1, read_h3, write_h3
from .solver import SAT, UNSAT, Certificate, find_perfect_tiling, max_tiling, verify_certificate
from .synthetic import near_extremal

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2
COMMANDS = ("gen", "solve", "extremal", "reach", "absorb", "table")
KINDS = ("h0", "h1", "two-cliques", "complete", "steiner", "near-extremal")


class UsageError(Exception):
    code = "USAGE"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which is reserved for verdicts
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    output: Path | None = None
    params: dict = field(default_factory=dict)
    format: str = "text"

    def validate(self) -> None:
        p = self.params
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command in ("solve", "extremal", "reach", "absorb") and self.input is None:
            raise UsageError("--input is required")
        if self.command == "gen":
            kind, n = p["kind"], p.get("n")
            if kind == "steiner":
                m = p.get("m") or n
                if m is None or m < 3 or m % 6 not in (1, 3):
                    raise UsageError(f"steiner order must be 1 or 3 mod 6, got {m}")
            elif n is None:
                raise UsageError("--n is required")
            elif kind == "h0" and (n < 8 or n % 8):
                raise UsageError(f"h0 needs n a positive multiple of 8, got {n}")
            elif kind == "h1" and (n < 12 or n % 8 != 4):
                raise UsageError(f"h1 needs n = 4 mod 8 with n >= 12, got {n}")
            elif kind == "two-cliques" and (n < 8 or n % 2):
                raise UsageError(f"two-cliques needs an even n >= 8, got {n}")
            elif kind == "near-extremal" and n % 4:
                raise UsageError(f"near-extremal needs n a multiple of 4, got {n}")
        if self.command == "table":
            for n in p.get("n_list") or []:
                if n < 8 or n % 4:
                    raise UsageError(f"table entries need n a multiple of 4 and >= 8, got {n}")
            if p.get("n_max") is not None and p["n_max"] < 4:
                raise UsageError("--n-max must be at least 4")
        if self.command == "reach" and p["u"] == p["v"]:
            raise UsageError("--u and --v must differ")
        for name in ("alpha", "rho", "epsilon"):
            if name in p and p[name] is not None and not 0 < p[name] < 1:
                raise UsageError(f"--{name} must lie in (0, 1)")


# -- reporting ---------------------------------------------------------


def thresholds_table(n_max: int) -> list[dict]:
    return [{"n": n, "threshold": threshold(n).value} for n in range(4, n_max + 1, 4)]


def reproduce_table(n_list: list[int], solver_limit: int = 16) -> list[dict]:
    """Threshold, construction minimum degree and solver verdict for each n."""
    rows = []
    for n in n_list:
        if n % 4:
            raise ValueError(f"n = {n} is not a multiple of 4")
        t = threshold(n).value
        con = extremal_construction(n)
        d = min_degree1(con.hypergraph)
        if d != t - 1:
            raise AssertionError(f"n = {n}: min degree {d} != threshold - 1 = {t - 1}")
        verdict = None
        if n <= solver_limit:
            verdict = find_perfect_tiling(con.hypergraph).verdict
            if verdict != UNSAT:
                raise AssertionError(f"n = {n}: {con.kind} unexpectedly has a perfect tiling")
        rows.append({"n": n, "threshold": t, "construction": con.kind, "min_degree1": d,
                     "verdict": verdict})
    return rows


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]) -> None:
    out = json.dumps(payload, indent=2) if cfg.format == "json" else "\n".join(text_lines)
    if cfg.output is not None and cfg.command == "table":
        cfg.output.write_text(out + "\n")
    print(out)


def _rows_text(rows: list[dict]) -> list[str]:
    if not rows:
        return []
    keys = list(rows[0])
    lines = ["\t".join(keys)]
    lines += ["\t".join("-" if r[k] is None else str(r[k]) for k in keys) for r in rows]
    return lines


def _parse_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"cannot parse vertex list {text!r}") from exc


def _read_c_hint(path: Path) -> list[int]:
    text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return _parse_list(text)
    if isinstance(obj, dict):
        for key in ("part_C", "C", "C_set"):
            if key in obj:
                return [int(v) for v in obj[key]]
        raise ValueError(f"{path}: JSON hint has no part_C / C entry")
    return [int(v) for v in obj]


# -- commands ----------------------------------------------------------


def _cmd_gen(cfg: RunConfig) -> int:
    p = cfg.params
    kind, n = p["kind"], p.get("n")
    sidecar_extra: dict = {}
    if kind == "h0":
        con = build_H0(n)
    elif kind == "h1":
        con = build_H1(n)
    elif kind == "two-cliques":
        con = two_cliques(n)
    elif kind == "complete":
        H = Hypergraph3.complete(n)
        con = LabeledConstruction(H, list(range(n)), [], "Complete")
    elif kind == "steiner":
        s = steiner(p.get("m") or n)
        con = LabeledConstruction(s.as_hypergraph(), [], list(range(s.m)), "Steiner")
    else:
        inst = near_extremal(n, p.get("n_a") if p.get("n_a") is not None else n // 4,
                             p.get("n_b") or 0, seed=p["seed"])
        con = LabeledConstruction(inst.hypergraph, inst.A, inst.B, "NearExtremal")
        sidecar_extra = {"part_C": inst.C, "params": inst.params}
    out = cfg.output or Path(f"{kind}_{con.n}.h3")
    write_h3(con.hypergraph, out)
    sidecar = con.sidecar() | sidecar_extra
    side_path = out.with_suffix(".json")
    side_path.write_text(json.dumps(sidecar, indent=2) + "\n")
    _emit(cfg, {"schema": 1, "h3": str(out), "sidecar": str(side_path), **sidecar},
          [f"wrote {out} and {side_path}", f"kind={con.kind} n={con.n} "
           f"min_degree1={sidecar['min_degree1']} threshold={sidecar['threshold']}"])
    return EXIT_OK


def _cmd_solve(cfg: RunConfig) -> int:
    H = read_h3(cfg.input)
    p = cfg.params
    if p.get("verify_cert"):
        cert = Certificate.load(p["verify_cert"])
        ok = verify_certificate(H, cert)
        _emit(cfg, {"schema": 1, "certificate": str(p["verify_cert"]), "valid": ok},
              [f"certificate {p['verify_cert']}: {'valid' if ok else 'INVALID'}"])
        return EXIT_OK if ok else EXIT_NEGATIVE
    cert = max_tiling(H) if p.get("max") else find_perfect_tiling(H)
    if cfg.output is not None:
        cert.dump(cfg.output)
    lines = [f"verdict={cert.verdict} k={cert.k} nodes={cert.nodes_explored} "
             f"millis={cert.elapsed * 1000:.3f}"]
    if cert.tiling:
        lines += [" ".join(map(str, q)) for q in cert.tiling.elements]
    _emit(cfg, cert.to_json(), lines)
    if not p.get("max") and cert.verdict != SAT:
        return EXIT_NEGATIVE
    return EXIT_OK


def _cmd_extremal(cfg: RunConfig) -> int:
    H = read_h3(cfg.input)
    p = cfg.params
    hint = _read_c_hint(Path(p["c_hint"])) if p.get("c_hint") else None
    try:
        tiling, trace = extremal_tiling(H, epsilon=p["epsilon"], alpha=p["alpha"], rho=p["rho"],
                                        C_hint=hint, selection=p["selection"], seed=p["seed"])
        status, result = EXIT_OK, {"verdict": SAT, "tiling": tiling.to_json()}
    except PipelineError as exc:
        trace = exc.trace
        status, result = EXIT_NEGATIVE, {"verdict": "STAGE_FAILED", "stage": exc.stage,
                                         "code": exc.code, "message": exc.message}
    payload = trace.to_json() | result
    if cfg.output is not None:
        cfg.output.write_text(json.dumps(payload, indent=2) + "\n")
    lines = [f"verdict={result['verdict']}" + (f" stage={result['stage']} code={result['code']}"
                                                if status else f" tiles={len(tiling)}")]
    lines += [f"{'ok ' if c.holds else 'NO '} {c.name}: {c.lhs} vs {c.rhs}" for c in trace.claims]
    if status:
        print(f"error code={result['code']} {result['message']}", file=sys.stderr)
    _emit(cfg, payload, lines)
    return status


def _cmd_reach(cfg: RunConfig) -> int:
    H = read_h3(cfg.input)
    p = cfg.params
    try:
        rep = reach_count(H, p["u"], p["v"], p["i"], allow_expensive=p["allow_expensive"])
    except PermissionError as exc:
        raise UsageError(str(exc)) from exc
    _emit(cfg, rep.to_json(), [f"u={rep.u} v={rep.v} i={rep.i} count={rep.count} "
                               f"total={rep.total} alpha={rep.alpha_achieved}"])
    return EXIT_OK


def _cmd_absorb(cfg: RunConfig) -> int:
    H = read_h3(cfg.input)
    A, B = _parse_list(cfg.params["a"]), _parse_list(cfg.params["b"])
    try:
        wit = absorption_witness(H, A, B)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"schema": 1, "A": A, "B": B, "absorbs": wit is not None}
    if wit is not None:
        payload["tiling_A"] = wit[0].to_json()
        payload["tiling_AB"] = wit[1].to_json()
    _emit(cfg, payload, [f"absorbs={'yes' if wit else 'no'}"])
    return EXIT_OK if wit else EXIT_NEGATIVE


def _cmd_table(cfg: RunConfig) -> int:
    p = cfg.params
    if p.get("n_list"):
        rows = reproduce_table(p["n_list"])
    else:
        rows = thresholds_table(p.get("n_max") or 48)
    _emit(cfg, {"schema": 1, "rows": rows}, _rows_text(rows))
    return EXIT_OK


_DISPATCH = {"gen": _cmd_gen, "solve": _cmd_solve, "extremal": _cmd_extremal,
             "reach": _cmd_reach, "absorb": _cmd_absorb, "table": _cmd_table}


def run(config: RunConfig) -> int:
    config.validate()
    return _DISPATCH[config.command](config)


# -- argument parsing --------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="c4tile", description="Perfect C4^3-tilings of 3-graphs: "
                                                 "constructions, exact solver, extremal pipeline.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write a construction as .h3 plus a JSON sidecar")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int, help="Steiner order (defaults to --n)")
    g.add_argument("--n-a", type=int, help="near-extremal: size of A")
    g.add_argument("--n-b", type=int, help="near-extremal: size of B")
    g.add_argument("--out", type=Path)

    s = sub.add_parser("solve", parents=[common], help="perfect or maximum C-tiling with a certificate")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--perfect", action="store_true", help="decide a perfect tiling (default)")
    mode.add_argument("--max", action="store_true", help="find a maximum tiling")
    s.add_argument("--input", type=Path, required=True)
    s.add_argument("--cert", type=Path)
    s.add_argument("--verify-cert", type=Path, help="re-check a previously written certificate")

    e = sub.add_parser("extremal", parents=[common], help="run the Q/R/S/T extremal pipeline")
    e.add_argument("--input", type=Path, required=True)
    e.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    e.add_argument("--rho", type=float, default=DEFAULT_RHO)
    e.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    e.add_argument("--c-hint", type=Path)
    e.add_argument("--selection", choices=("greedy", "random"), default="greedy")
    e.add_argument("--trace", type=Path)

    r = sub.add_parser("reach", parents=[common], help="count reachable (4i-1)-sets for u, v")
    r.add_argument("--input", type=Path, required=True)
    r.add_argument("--u", type=int, required=True)
    r.add_argument("--v", type=int, required=True)
    r.add_argument("--i", type=int, choices=(1, 2), default=1)
    r.add_argument("--allow-expensive", action="store_true", help="required for --i 2")

    a = sub.add_parser("absorb", parents=[common], help="does A absorb B?")
    a.add_argument("--input", type=Path, required=True)
    a.add_argument("--a", required=True, help="comma-separated vertex list")
    a.add_argument("--b", required=True, help="comma-separated vertex list")

    t = sub.add_parser("table", parents=[common], help="threshold / reproduction tables")
    which = t.add_mutually_exclusive_group()
    which.add_argument("--thresholds", action="store_true", help="(n, threshold) rows (default)")
    which.add_argument("--reproduce", action="store_true", help="threshold vs construction vs solver")
    t.add_argument("--n-max", type=int, default=48)
    t.add_argument("--n-list", help="comma-separated n values for --reproduce (default 8,12,16)")
    t.add_argument("--out", type=Path)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.command is None:
        raise UsageError("a command is required: " + ", ".join(COMMANDS))
    params = {k: v for k, v in vars(ns).items()
              if k not in ("command", "input", "out", "cert", "trace", "format")}
    output = getattr(ns, "out", None) or getattr(ns, "cert", None) or getattr(ns, "trace", None)
    if ns.command == "table":
        if ns.reproduce:
            params["n_list"] = _parse_list(ns.n_list) if ns.n_list else [8, 12, 16]
        else:
            params["n_list"] = None
    return RunConfig(ns.command, getattr(ns, "input", None), output, params, ns.format)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(build_parser().parse_args(argv))
        return run(cfg)
    except UsageError as exc:
        print(f"error code=USAGE {exc}", file=sys.stderr)
    except FileNotFoundError as exc:
        print(f"error code=IO {exc}", file=sys.stderr)
    except (ValueError, json.JSONDecodeError, KeyError) as exc:
        print(f"error code=PARSE {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error code=IO {exc}", file=sys.stderr)
    except Exception as exc:  # noqa: BLE001
        print(f"error code=INTERNAL {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
