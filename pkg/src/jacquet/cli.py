"""Command line front end.

Exit codes: 0 on success, 1 when a check finds a counterexample, 2 on usage or
parse errors.  JSON goes to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any

from .engine import jacquet_levi, jacquet_max_levi, support_points
from .errors import PreconditionError
from .expression import ParseError, parse
from .formal import FormalSum
from .geometric import enumerate_split_matrices, oracle_jacquet_cuspidal
from .segments import Multisegment, Segment, in_M_irr, is_irreducible, linked_pairs
from .verify import (
    SweepConfig,
    Verdict,
    Violation,
    check_consistency,
    check_mult_free,
    sweep_consistency,
    sweep_theorem1,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# JSON records


def segment_record(s: Segment) -> dict:
    return {"line": s.line.id, "a": s.a, "b": s.b}


def multisegment_record(ms: Multisegment) -> list[dict]:
    return [segment_record(s) for s in ms]


def _plain(x: Any) -> Any:
    if isinstance(x, Multisegment):
        return multisegment_record(x)
    if isinstance(x, Segment):
        return segment_record(x)
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if hasattr(x, "tolist"):
        return x.tolist()
    return x


def formal_sum_record(fs: FormalSum) -> list[dict]:
    out = []
    for key, mult, wits in fs.items():
        if len(key) == 2:
            rec = {"left": multisegment_record(key[0]), "right": multisegment_record(key[1])}
        else:
            rec = {"factors": [multisegment_record(f) for f in key]}
        rec["multiplicity"] = mult
        rec["split_vectors"] = _plain(wits)
        out.append(rec)
    return out


def violation_record(v: Violation) -> dict:
    return {
        "check": v.check,
        "multisegment": multisegment_record(v.multisegment),
        "levi": _plain(v.levi),
        "term": _plain(v.term),
        "witnesses": _plain(v.witnesses),
        "detail": v.detail,
    }


def verdict_record(v: Verdict) -> dict:
    return {"checked": v.checked, "ok": v.ok, "violations": [violation_record(x) for x in v.violations]}


def input_record(ms: Multisegment) -> dict:
    return {
        "lines": [{"id": line.id, "dim": line.dim} for line in ms.lines()],
        "segments": multisegment_record(ms),
        "n": ms.total_size,
    }


# Text rendering


def render_term(key) -> str:
    return " (x) ".join(str(f) for f in key)


def render_sum(fs: FormalSum) -> list[str]:
    if fs.is_zero():
        return ["0"]
    return [f"{mult} x {render_term(key)}    p={_short(wits)}" for key, mult, wits in fs.items()]


def _short(wits) -> str:
    return "; ".join(str(_plain(w)) for w in wits)


def render_violation(v: Violation) -> str:
    parts = [f"[{v.check}] {v.multisegment}"]
    if v.levi is not None:
        parts.append(f"levi={_plain(v.levi)}")
    if v.term is not None:
        parts.append(f"term={render_term(v.term) if isinstance(v.term, tuple) else v.term}")
    if v.witnesses:
        parts.append(f"p={_short(v.witnesses)}")
    if v.detail:
        parts.append(v.detail)
    return "  ".join(parts)


# Config files


_CONFIG_FIELDS = {f.name: f for f in dataclasses.fields(SweepConfig)}


def parse_config(text: str) -> SweepConfig:
    """Read ``key = value`` lines (``#`` comments) into a :class:`SweepConfig`."""
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in _CONFIG_FIELDS:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        try:
            if key == "dims":
                values[key] = tuple(int(x) for x in value.replace(",", " ").split())
            elif key == "m_irr_only":
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ValueError(value)
                values[key] = value.lower() in ("true", "1", "yes")
            else:
                values[key] = int(value)
        except ValueError:
            raise UsageError(f"config line {lineno}: bad value {value!r} for {key}") from None
    try:
        return SweepConfig(**values)
    except ValueError as e:
        raise UsageError(str(e)) from None


def config_record(c: SweepConfig) -> dict:
    d = dataclasses.asdict(c)
    d["dims"] = list(c.dims)
    return d


# Commands


def _int_list(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not parts or any(p < 1 for p in parts):
        raise argparse.ArgumentTypeError(f"parts must be positive, got {text!r}")
    return parts


def _read_expression(args) -> Multisegment:
    if args.file is not None:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file) as fh:
                text = fh.read()
    elif args.expr is not None:
        text = args.expr
    else:
        raise UsageError("an expression argument or --file is required")
    ms = parse(text).multisegment()
    if not len(ms):
        raise UsageError("the expression has no segments")
    return ms.canonical()


def cmd_check(args, out) -> int:
    ms = _read_expression(args)
    irr, mirr = is_irreducible(ms), in_M_irr(ms)
    pairs = [[segment_record(ms[i]), segment_record(ms[j])] for i, j in linked_pairs(ms)]
    if args.format == "json":
        out({"input": input_record(ms), "irreducible": irr, "m_irr": mirr, "linked_pairs": pairs})
    else:
        out(f"input: {ms}")
        out(f"irreducible: {str(irr).lower()}")
        out(f"m_irr: {str(mirr).lower()}")
        for i, j in linked_pairs(ms):
            out(f"linked: {ms[i]} ~ {ms[j]}")
    return EXIT_OK


def cmd_jacquet(args, out) -> int:
    ms = _read_expression(args)
    n = ms.total_size
    if (args.l is None) == (args.levi is None):
        raise UsageError("give exactly one of --l or --levi")
    if args.l is not None:
        levi = (args.l, n - args.l)
        fs = jacquet_max_levi(ms, args.l)
    else:
        levi = args.levi
        if sum(levi) != n or len(levi) < 2:
            raise UsageError(f"--levi must have at least two parts summing to {n}")
        fs = jacquet_max_levi(ms, levi[0]) if len(levi) == 2 else jacquet_levi(ms, levi)
    if args.format == "json":
        out({"input": input_record(ms), "levi": list(levi), "zero": fs.is_zero(),
             "terms": formal_sum_record(fs)})
    else:
        out(f"r_({','.join(map(str, levi))}) {ms}")
        for line in render_sum(fs):
            out(line)
    return EXIT_OK


def cmd_multfree(args, out) -> int:
    ms = _read_expression(args)
    n = ms.total_size
    if args.l is not None and args.all_l:
        raise UsageError("--l and --all-l are exclusive")
    levels = [args.l] if args.l is not None else list(range(1, n))
    results, ok = [], True
    for l in levels:
        good, witness = check_mult_free(ms, l)
        ok &= good
        results.append((l, good, len(jacquet_max_levi(ms, l)), witness))
    if args.format == "json":
        out({
            "input": input_record(ms),
            "m_irr": in_M_irr(ms),
            "ok": ok,
            "results": [
                {"l": l, "multiplicity_free": g, "terms": t,
                 "witness": violation_record(w) if w else None}
                for l, g, t, w in results
            ],
        })
    else:
        out(f"input: {ms}  (m_irr: {str(in_M_irr(ms)).lower()})")
        for l, g, t, w in results:
            out(f"l={l}: multiplicity-free, {t} terms" if g else f"l={l}: {render_violation(w)}")
        out("ok" if ok else "FALSIFIED")
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_sweep(args, out) -> int:
    try:
        with open(args.config) as fh:
            config = parse_config(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read config: {e}") from None
    verdict = sweep_consistency(config) if args.check == "consistency" else sweep_theorem1(config)
    if args.format == "json":
        out({"config": config_record(config), "check": args.check, **verdict_record(verdict)})
    else:
        out(f"{args.check}: checked {verdict.checked}, violations {len(verdict.violations)}")
        for v in verdict.violations:
            out(render_violation(v))
    return EXIT_OK if verdict.ok else EXIT_FALSIFIED


def cmd_matrices(args, out) -> int:
    if sum(args.rows) != sum(args.cols):
        raise UsageError("row and column sums must have the same total")
    mats = enumerate_split_matrices(args.rows, args.cols)
    if args.format == "json":
        out({"rows": list(args.rows), "cols": list(args.cols), "count": len(mats),
             "matrices": [m.tolist() for m in mats]})
    else:
        for m in mats:
            out(str(m.tolist()))
        out(f"count: {len(mats)}")
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    ms = _read_expression(args)
    n = ms.total_size
    if args.l is None:
        raise UsageError("--l is required")
    if not 1 <= args.l <= n - 1:
        raise UsageError(f"--l must lie in [1, {n - 1}]")
    violations = check_consistency(ms, args.l)
    terms = len(jacquet_max_levi(ms, args.l))
    arrangements = oracle_jacquet_cuspidal(support_points(ms), (args.l, n - args.l))
    if args.format == "json":
        out({"input": input_record(ms), "l": args.l, "terms": terms,
             "arrangements": arrangements.total, "ok": not violations,
             "violations": [violation_record(v) for v in violations]})
    else:
        out(f"input: {ms}  l={args.l}")
        out(f"terms: {terms}  cuspidal arrangements: {arrangements.total}")
        for v in violations:
            out(render_violation(v))
        out("ok" if not violations else "FALSIFIED")
    return EXIT_OK if not violations else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacquet",
        description="Jacquet modules of products of segment representations of GL_n.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    expr = argparse.ArgumentParser(add_help=False)
    expr.add_argument("expr", nargs="?", help="expression, e.g. 'let rho:1 Z[0..1]@rho * Z[3..4]@rho'")
    expr.add_argument("-f", "--file", help="read the expression from a file ('-' for stdin)")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common, expr], help="irreducibility and M_Irr membership")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("jacquet", parents=[common, expr], help="semisimplified Jacquet module")
    p.add_argument("--l", type=int)
    p.add_argument("--levi", type=_int_list, help="composition c1,c2,...")
    p.set_defaults(func=cmd_jacquet)

    p = sub.add_parser("multfree", parents=[common, expr], help="check multiplicity-freeness")
    p.add_argument("--l", type=int)
    p.add_argument("--all-l", action="store_true", help="every maximal Levi (the default)")
    p.set_defaults(func=cmd_multfree)

    p = sub.add_parser("sweep", parents=[common], help="run a sweep from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--check", choices=("mult-free", "consistency"), default="mult-free")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("matrices", parents=[common], help="split matrices with given margins")
    p.add_argument("--rows", type=_int_list, required=True)
    p.add_argument("--cols", type=_int_list, required=True)
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("oracle", parents=[common, expr], help="cross-check against the geometric lemma")
    p.add_argument("--l", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    def out(x):
        if isinstance(x, str):
            stdout.write(x + "\n")
        else:
            stdout.write(json.dumps(x, indent=2) + "\n")

    try:
        return args.func(args, out)
    except ParseError as e:
        stderr.write(f"error: {e}\n")
    except (UsageError, PreconditionError, OSError) as e:
        stderr.write(f"error: {e}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
