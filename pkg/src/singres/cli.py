"""Command line front end: run a session script and print text or JSON.

Usage::

    singres [SCRIPT] [--json] [--out FILE] [--timings]
    singres game [STATE_FILE] [--json] [--out FILE] [--cap N]

A script declares one ring, named polynomials and ideals, and ends with a
single command line such as ``transform f --kind strict --center x,y --chart y``.
Scripts and game states are read from stdin when no file is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .blowup import (
    Center,
    chart_by_name,
    chart_transition,
    coordinate_charts,
    general_charts,
    naive_rees_ideal,
    rees_ideal,
    translated_chart,
)
from .descent import (
    coefficient_ideal,
    factor_exceptional,
    osculating_frame,
    residual_order,
)
from .errors import DomainError, GuardError, SingresError
from .game import GameState, defeats_all_policies, play_game, strategy_a, first_choice
from .geometry import (
    hilbert_samuel_prefix,
    order_along_prime,
    order_at_point,
    singular_locus,
    top_locus_ideal,
)
from .groebner import Ideal
from .parsing import SessionScript, parse_script
from .resolve import (
    ResolutionTrace,
    resolve_curve_embedded,
    resolve_hypersurface_char0,
    resolve_monomial,
)
from .transform import transform

SCHEMA_VERSION = 1


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _num(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def _ideal_json(I: Ideal) -> list[str]:
    return [str(g) for g in I.generators]


class _Session:
    def __init__(self, script: SessionScript):
        self.script = script
        self.ring = script.ring

    def target(self, name: Optional[str]) -> Ideal:
        s = self.script
        if name is None:
            names = list(s.polys) + list(s.ideals)
            if len(names) != 1:
                raise DomainError("name the polynomial or ideal the command acts on")
            name = names[0]
        if name in s.polys:
            return Ideal(self.ring, [s.polys[name]])
        if name in s.ideals:
            return Ideal(self.ring, s.ideals[name])
        raise DomainError(f"{name!r} is not declared")

    def poly(self, name: Optional[str]):
        I = self.target(name)
        if len(I.generators) != 1:
            raise DomainError("this command needs a single polynomial")
        return I.generators[0]

    def point(self, text: Optional[str]):
        if text is None:
            return None
        parts = [t.strip() for t in text.split(",")]
        if len(parts) != self.ring.ngens:
            raise DomainError(f"a point needs {self.ring.ngens} coordinates")
        try:
            return tuple(self.ring.field(t) for t in parts)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"bad point {text!r}") from None

    def names(self, text: Optional[str]) -> list[str]:
        if not text:
            return []
        out = [t.strip() for t in text.split(",") if t.strip()]
        for v in out:
            self.ring.index(v)
        return out

    def center(self, args) -> Center:
        if args.center and args.center_ideal:
            raise DomainError("give either --center or --center-ideal")
        if args.center:
            return Center.coordinate(self.ring, self.names(args.center))
        if args.center_ideal:
            return Center.of(self.target(args.center_ideal))
        return Center.coordinate(self.ring, self.ring.variables)

    def charts(self, args):
        c = self.center(args)
        if c.coordinate_indices() is not None:
            return coordinate_charts(c)
        return general_charts(c)


def _build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="command", add_help=False)
    p.add_argument("command")
    p.add_argument("target", nargs="?")
    p.add_argument("--at")
    p.add_argument("--prime")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--center")
    p.add_argument("--center-ideal")
    p.add_argument("--chart")
    p.add_argument("--from", dest="from_chart")
    p.add_argument("--to", dest="to_chart")
    p.add_argument("--kind", default="strict")
    p.add_argument("--control", type=int)
    p.add_argument("--exceptional")
    p.add_argument("--max-steps", type=int, default=32)
    p.add_argument("--embedded", action="store_true")
    p.add_argument("--naive", action="store_true")
    return p


def _trace_text(trace: ResolutionTrace) -> str:
    lines = [f"status: {trace.status}", f"steps: {trace.step_count}", f"blowups: {trace.blowups}"]
    for k, v in trace.info.items():
        lines.append(f"{k}: {_num(v)}")
    for node in trace.nodes():
        depth = len(node.path)
        desc = [node.name, node.status]
        if node.equation is not None:
            desc.append(str(node.equation))
        if node.data:
            desc.append(" ".join(f"{k}^{v}" for k, v in node.data.items()))
        exc = ",".join(f"{e.variable}^{e.multiplicity}" for e in node.exceptional.entries)
        desc.append(f"E[{exc}]")
        desc.append("inv(" + ",".join(str(_num(v)) for v in node.invariant) + ")")
        lines.append("  " * depth + "  ".join(desc))
    return "\n".join(lines)


def run_command(script: SessionScript, argv: Optional[Sequence[str]] = None) -> tuple[str, dict, int]:
    """Execute the script's command; returns (text, json payload, exit status)."""
    session = _Session(script)
    tokens = list(argv if argv is not None else script.command)
    args = _build_parser().parse_args(tokens)
    cmd = args.command
    ring = session.ring
    status = 0
    result: dict
    text: str

    if cmd == "order":
        rep = order_at_point(session.target(args.target), session.point(args.at))
        text = str(_num(rep.value))
        result = {"order": _num(rep.value), "witness": str(rep.witness) if rep.witness is not None else None}
    elif cmd == "order-along":
        if not args.prime:
            raise DomainError("order-along needs --prime NAME")
        rep = order_along_prime(session.target(args.target), session.target(args.prime))
        text = f"{_num(rep.value)}\nwitness: {rep.witness}"
        result = {"order": _num(rep.value), "witness": str(rep.witness) if rep.witness is not None else None}
    elif cmd == "sing":
        S = singular_locus(session.target(args.target)).canonical()
        text = str(S)
        result = {"ideal": _ideal_json(S)}
    elif cmd == "toplocus":
        T = top_locus_ideal(session.target(args.target), session.point(args.at)).canonical()
        text = str(T)
        result = {"ideal": _ideal_json(T)}
    elif cmd == "hs":
        vals = hilbert_samuel_prefix(session.target(args.target), session.point(args.at), args.n)
        text = " ".join(map(str, vals))
        result = {"prefix": vals}
    elif cmd == "rees":
        c = session.center(args)
        pres = naive_rees_ideal(c) if args.naive else rees_ideal(c)
        text = str(pres.ideal)
        result = {"ring": list(pres.ring.variables), "ideal": _ideal_json(pres.ideal)}
    elif cmd == "charts":
        charts = session.charts(args)
        blocks = []
        for ch in charts:
            block = [ch.name, "  map: (" + ", ".join(str(g) for g in ch.map.images) + ")",
                     f"  exceptional: {ch.exceptional}"]
            if not ch.chart_ideal.is_zero():
                block.append(f"  relations: {ch.chart_ideal}")
            blocks.append("\n".join(block))
        text = "\n".join(blocks)
        result = {"charts": [ch.to_json() for ch in charts]}
    elif cmd == "transition":
        charts = session.charts(args)
        if not (args.from_chart and args.to_chart):
            raise DomainError("transition needs --from and --to chart names")
        i = charts.index(chart_by_name(charts, args.from_chart))
        j = charts.index(chart_by_name(charts, args.to_chart))
        tr = chart_transition(charts, i, j)
        text = f"{tr}\nvalid where {tr.inverted} != 0"
        result = {"images": [str(g) for g in tr.morphism.images], "inverse": tr.inverse_name,
                  "inverted": str(tr.inverted), "text": str(tr)}
    elif cmd == "transform":
        charts = session.charts(args)
        if not args.chart:
            raise DomainError("transform needs --chart NAME")
        chart = chart_by_name(charts, args.chart)
        if args.at:
            chart = translated_chart(chart, session.point(args.at))
        res = transform(session.target(args.target), chart, args.kind, args.control)
        text = str(res.ideal)
        result = {"kind": res.kind, "chart": chart.to_json(), "ideal": _ideal_json(res.ideal),
                  "exceptional_order": _num(res.exceptional_order), "h_power": res.h_power}
    elif cmd == "coeff":
        f = session.poly(args.target)
        frame = osculating_frame(f, session.point(args.at))
        J = coefficient_ideal(frame.framed, frame)
        exc = [v for v in session.names(args.exceptional) if v != frame.variable]
        fac = factor_exceptional(J, exc)
        text = "\n".join([
            f"frame: {frame.variable}, order {frame.order}",
            "change: (" + ", ".join(str(g) for g in frame.change.images) + ")",
            f"framed: {frame.framed}",
            f"coefficient ideal: {J.canonical() if not J.is_zero() else J}",
            f"exceptional monomial: {fac.monomial_polynomial}",
            f"residual: {fac.residual}",
        ])
        result = {"variable": frame.variable, "order": frame.order,
                  "change": [str(g) for g in frame.change.images], "framed": str(frame.framed),
                  "coefficient_ideal": _ideal_json(J.canonical() if not J.is_zero() else J),
                  "monomial": list(fac.monomial), "residual": _ideal_json(fac.residual)}
    elif cmd == "residual-order":
        r = residual_order(session.poly(args.target), session.names(args.exceptional), session.point(args.at))
        text = str(r)
        result = {"residual_order": r}
    elif cmd in ("resolve-curve", "resolve-h0", "resolve-monomial"):
        if cmd == "resolve-curve":
            trace = resolve_curve_embedded(session.poly(args.target), args.max_steps)
        elif cmd == "resolve-h0":
            trace = resolve_hypersurface_char0(session.poly(args.target), args.control, args.max_steps,
                                               embedded=args.embedded)
        else:
            m = session.poly(args.target)
            if not m.is_monomial():
                raise DomainError("resolve-monomial needs a monomial")
            ((e, _c),) = m.terms.items()
            trace = resolve_monomial(dict(zip(ring.variables, e)), args.control if args.control else 1,
                                     session.names(args.exceptional), args.max_steps)
        text = _trace_text(trace)
        result = {"trace": trace.to_json()}
        if trace.status == "step-limit":
            status = 3
    else:
        raise DomainError(f"unknown command {cmd!r}")
    return text, result, status


def _emit(text: str, payload: dict, as_json: bool, out: Optional[str]) -> None:
    body = json.dumps(payload, indent=2, sort_keys=True) if as_json else text
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        sys.stdout.write(body + "\n")


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _main_game(argv: Sequence[str]) -> int:
    p = _ArgParser(prog="singres game")
    p.add_argument("file", nargs="?")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--verify", action="store_true", help="check the strategy against every reply of B")
    args = p.parse_args(argv)
    state = GameState.parse(_read(args.file))
    tr = play_game(state, strategy_a, first_choice, args.cap)
    payload = {"version": SCHEMA_VERSION, "command": ["game"], "result": tr.to_json()}
    text = tr.text()
    if args.verify:
        rep = defeats_all_policies(state, strategy_a, args.cap)
        payload["result"]["all_policies"] = {"won": rep.won, "worst_rounds": rep.worst_rounds}
        text += f"\nagainst every B policy: {'won' if rep.won else 'FAILED'} (worst {rep.worst_rounds} rounds)"
    _emit(text, payload, args.json, args.out)
    return 0 if tr.won else 3


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "game":
            return _main_game(argv[1:])
        p = _ArgParser(prog="singres", description="Exact blowups and resolution invariants.")
        p.add_argument("script", nargs="?")
        p.add_argument("--json", action="store_true")
        p.add_argument("--out")
        p.add_argument("--timings", action="store_true")
        p.add_argument("--version", action="version", version=f"singres {__version__}")
        args = p.parse_args(argv)
        script = parse_script(_read(args.script))
        t0 = time.perf_counter()
        text, result, status = run_command(script)
        payload = {
            "version": SCHEMA_VERSION,
            "ring": str(script.ring),
            "command": list(script.command),
            "result": result,
        }
        if args.timings:
            payload["timings"] = {"seconds": round(time.perf_counter() - t0, 6)}
        _emit(text, payload, args.json, args.out)
        return status
    except SingresError as exc:
        sys.stderr.write(f"error [{exc.code}]: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
