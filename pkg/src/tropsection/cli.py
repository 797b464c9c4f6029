"""Command-line entry point.

Exit codes: 0 success, 1 malformed input, 2 hypothesis not met,
3 internal cross-check divergence.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import acceptance
from .exactla import INFINITE, IntMatrix, smith_normal_form
from .fingcoh import GroupError, ModuleError, h1_finite, parse_module, parse_table
from .morita import CrossCheckError, HypothesisError, o1_report, o2_cross_checked
from .nilq import EndoError, WordError, eval_word, parse_word, wedge_space
from .stablegraph import GraphError, load_graph, specializes_to, validate_stable
from .surfhom import CONVENTION

EXIT_OK, EXIT_MALFORMED, EXIT_HYPOTHESIS, EXIT_CROSSCHECK = 0, 1, 2, 3


class Malformed(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    json: bool = False
    base: str | None = None
    seed: int = 0
    verbose: int = 0


def _order(x) -> int | str:
    return "infinite" if x is INFINITE else x


def _emit(cfg: RunConfig, text: str, order=None, factors=(), cls=None, convention=CONVENTION, **extra) -> None:
    if cfg.json:
        out = {
            "command": cfg.command,
            "inputs": cfg.inputs,
            "order": _order(order) if order is not None else None,
            "invariant_factors": list(factors),
            "class": list(cls) if cls is not None else None,
            "convention": convention,
        }
        out.update(extra)
        print(json.dumps(out, sort_keys=True))
    else:
        print(text)


def _graph(path: str):
    try:
        return load_graph(path)
    except OSError as exc:
        raise Malformed(f"{path}: {exc.strerror}") from exc


def _need_sigma(path: str, sigma):
    if sigma is None:
        raise Malformed(f"{path}: no automorphism given")
    return sigma


def cmd_stable_check(cfg: RunConfig) -> int:
    graph, _ = _graph(cfg.inputs[0])
    rep = validate_stable(graph)
    if not rep.valid:
        for v in rep.violations:
            print(f"unstable: {v}", file=sys.stderr)
        _emit(cfg, "unstable", violations=rep.violations, genus=rep.genus)
        return EXIT_MALFORMED
    _emit(cfg, f"stable, genus {rep.genus}", violations=[], genus=rep.genus)
    return EXIT_OK


def cmd_specializes(cfg: RunConfig) -> int:
    a, _ = _graph(cfg.inputs[0])
    b, _ = _graph(cfg.inputs[1])
    yes = specializes_to(a, b)
    _emit(cfg, "yes" if yes else "no", specializes=yes)
    return EXIT_OK


def cmd_o1(cfg: RunConfig) -> int:
    graph, sigma = _graph(cfg.inputs[0])
    rep = o1_report(graph, _need_sigma(cfg.inputs[0], sigma), cfg.base)
    text = (f"o1 order {_order(rep.order)} in coinvariants {list(rep.invariant_factors)} "
            f"(basepoint {rep.basepoint})")
    _emit(cfg, text, rep.order, rep.invariant_factors, rep.class_coordinates, rep.convention,
          basepoint=rep.basepoint)
    return EXIT_OK


def cmd_o2_tree(cfg: RunConfig) -> int:
    graph, sigma = _graph(cfg.inputs[0])
    res = o2_cross_checked(graph, _need_sigma(cfg.inputs[0], sigma))
    text = f"secondary class order {_order(res.order)} on a genus-{res.surface_genus} surface"
    _emit(cfg, text, res.order, res.invariant_factors, res.class_coordinates, res.convention,
          certificate=res.certificate)
    return EXIT_OK


def parse_matrix(text: str) -> IntMatrix:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(t) for t in line.replace(",", " ").split()])
        except ValueError as exc:
            raise Malformed(f"non-integer matrix entry: {exc}") from exc
    if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
        raise Malformed("matrix rows are empty or ragged")
    return IntMatrix.from_rows(rows, len(rows[0]))


def cmd_snf(cfg: RunConfig) -> int:
    M = parse_matrix(sys.stdin.read())
    D, U, V = smith_normal_form(M)
    diag = [D[i, i] for i in range(min(M.rows, M.cols))]
    factors = [d for d in diag if d != 1]
    text = "\n".join([f"invariant factors {diag}", "U =", *map(str, U.to_rows()), "V =", *map(str, V.to_rows())])
    _emit(cfg, text, None, factors, None, None, diagonal=diag, U=U.to_rows(), V=V.to_rows())
    return EXIT_OK


def cmd_eval_word(cfg: RunConfig) -> int:
    try:
        genus = int(cfg.inputs[0])
    except ValueError as exc:
        raise Malformed(f"genus must be an integer, got {cfg.inputs[0]!r}") from exc
    if genus < 1:
        raise Malformed("genus must be positive")
    x = eval_word(parse_word(cfg.inputs[1]), genus)
    ws = wedge_space(genus)
    labels = [f"{'xy'[i % 2]}{i // 2 + 1}" for i in range(ws.n)]
    wl = ws.labels()
    h_txt = " + ".join(f"{c}*{l}" for c, l in zip(x.h, labels) if c) or "0"
    w_txt = " + ".join(f"{c}*{l}" for c, l in zip(x.w, wl) if c) or "0"
    _emit(cfg, f"H: {h_txt}\nL2/L3: {w_txt}", None, (), list(x.h) + list(x.w), None,
          h=list(x.h), w=list(x.w))
    return EXIT_OK


def cmd_h1_finite(cfg: RunConfig) -> int:
    try:
        G = parse_table(Path(cfg.inputs[0]).read_text())
        A = parse_module(Path(cfg.inputs[1]).read_text(), G)
    except OSError as exc:
        raise Malformed(str(exc)) from exc
    res = h1_finite(G, A)
    text = f"H^1 of order {_order(res.order)}, invariant factors {list(res.invariant_factors)}"
    _emit(cfg, text, res.order, res.invariant_factors, None, None)
    return EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    ok = True
    for n, *_ in acceptance.CRITERIA:
        v = acceptance.run_one(n, cfg.seed)
        ok &= v.passed
        print(v.line(), flush=True)
    return EXIT_OK if ok else EXIT_CROSSCHECK


COMMANDS = {
    "stable-check": (cmd_stable_check, ["FILE"]),
    "specializes": (cmd_specializes, ["FILE_A", "FILE_B"]),
    "o1": (cmd_o1, ["FILE"]),
    "o2-tree": (cmd_o2_tree, ["FILE"]),
    "snf": (cmd_snf, []),
    "eval-word": (cmd_eval_word, ["G", "WORD"]),
    "h1-finite": (cmd_h1_finite, ["TABLE", "MODULE"]),
    "selftest": (cmd_selftest, []),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropsection", description="Morita obstruction classes from stable graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, args) in COMMANDS.items():
        sp = sub.add_parser(name)
        for a in args:
            sp.add_argument(a.lower(), metavar=a)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--base", default=None, help="basepoint vertex override")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        sp.add_argument("-v", "--verbose", action="count", default=0)
    return p


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    _, args = COMMANDS[ns.command]
    return RunConfig(ns.command, [getattr(ns, a.lower()) for a in args], ns.json, ns.base, ns.seed, ns.verbose)


def run(cfg: RunConfig) -> int:
    fn, _ = COMMANDS[cfg.command]
    try:
        return fn(cfg)
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (CrossCheckError, AssertionError) as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except (Malformed, GraphError, WordError, EndoError, GroupError, ModuleError, ValueError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
