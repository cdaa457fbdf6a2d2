"""Command-line front end.

Exit codes: 0 success, 2 invalid request, 3 exact search refused as too
large, 4 an internal verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import geometry
from .game import Configuration, apply_plan, random_configuration
from .reduce import COSET, IneligibleBoard, ReductionStep, certificate, certificate_json, floor_strategy
from .reduce import reduce_to_floor, replay_certificate
from .search import SearchTooLarge, conjecture_check, find_reduction, switch_code, worst_case

EXIT_OK, EXIT_INVALID, EXIT_TOO_LARGE, EXIT_VERIFY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunSpec:
    command: str
    geometry: str
    order: int | None
    dimension: int
    n: int | None
    format: str
    out: str | None
    seed: int | None
    config: str | None
    random: bool
    workers: int

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunSpec":
        spec = cls(
            ns.command,
            ns.geometry,
            ns.order,
            ns.dimension,
            ns.n,
            ns.format,
            ns.out,
            getattr(ns, "seed", None),
            getattr(ns, "config", None),
            getattr(ns, "random", False),
            ns.workers,
        )
        spec.validate()
        return spec

    def validate(self) -> None:
        if self.geometry == "grid":
            if self.n is None:
                raise CliError("--n is required for the grid", EXIT_INVALID)
        elif self.order is None:
            raise CliError(f"--order is required for {self.geometry} geometry", EXIT_INVALID)
        if self.workers < 1:
            raise CliError("--workers must be >= 1", EXIT_INVALID)
        if self.config is not None and self.random:
            raise CliError("give either --config or --random, not both", EXIT_INVALID)

    def board(self) -> geometry.IncidenceStructure:
        try:
            return geometry.build(self.geometry, self.order, self.dimension, self.n)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_INVALID) from exc


def _emit(spec: RunSpec, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_build(spec: RunSpec) -> int:
    board = spec.board()
    report = geometry.verify_axioms(board)
    if not report.ok:
        print(report, file=sys.stderr)
        return EXIT_VERIFY
    if spec.format == "json":
        _emit(spec, geometry.to_json(board))
    else:
        sizes = sorted({len(line) for line in board.lines})
        _emit(
            spec,
            f"{board.id}: {board.num_points} points, {board.num_lines} lines, "
            f"line sizes {sizes}, axioms verified",
        )
    return EXIT_OK


def cmd_verify(spec: RunSpec) -> int:
    report = geometry.verify_axioms(spec.board())
    if spec.format == "json":
        _emit(
            spec,
            _dumps(
                {
                    "structure": report.structure_id,
                    "ok": report.ok,
                    "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
                }
            ),
        )
    else:
        _emit(spec, str(report))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_export(spec: RunSpec) -> int:
    board = spec.board()
    _emit(spec, geometry.to_json(board) if spec.format == "json" else geometry.to_text(board))
    return EXIT_OK


def cmd_worst(spec: RunSpec) -> int:
    report = worst_case(spec.board(), workers=spec.workers)
    _emit(spec, report.to_json() if spec.format == "json" else report.summary())
    return EXIT_OK


def _initial(spec: RunSpec, board) -> Configuration:
    if spec.config is not None:
        try:
            return Configuration.from_hex(board, spec.config)
        except ValueError as exc:
            raise CliError(f"bad --config: {exc}", EXIT_INVALID) from exc
    if spec.random:
        return random_configuration(board, spec.seed if spec.seed is not None else 0)
    raise CliError("reduce needs --config HEX or --random", EXIT_INVALID)


def _search_reduce(c: Configuration) -> tuple[Configuration, list[ReductionStep]]:
    code = switch_code(c.board)
    steps = []
    while (plan := find_reduction(c, code)) is not None:
        nxt = apply_plan(c, plan)
        turned_off = c.bits & ~nxt.bits
        steps.append(ReductionStep(tuple(Configuration(c.board, turned_off).lit()), plan, COSET))
        c = nxt
    return c, steps


def cmd_reduce(spec: RunSpec) -> int:
    board = spec.board()
    start = _initial(spec, board)
    try:
        floor_strategy(board)
        final, steps = reduce_to_floor(start)
    except IneligibleBoard:
        final, steps = _search_reduce(start)
    cert = certificate(start, steps, final)
    try:
        replay_certificate(board, cert)
    except ValueError as exc:
        raise CliError(f"certificate failed replay: {exc}", EXIT_VERIFY) from exc
    if spec.format == "json":
        _emit(spec, certificate_json(cert))
    else:
        rows = [f"{board.id}: {start.lit_count} lit -> {final.lit_count} lit in {len(steps)} steps"]
        rows.append(f"initial  {cert['initial']}")
        for i, st in enumerate(steps):
            rows.append(f"step {i:<3} {st.proof_tag:<17} off={list(st.target_bulbs)} lines={st.plan.lines}")
        rows.append(f"final    {cert['final']}")
        _emit(spec, "\n".join(rows))
    return EXIT_OK


def cmd_conjecture(spec: RunSpec) -> int:
    board = spec.board()
    try:
        report = conjecture_check(board, workers=spec.workers)
    except SearchTooLarge:
        raise
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    _emit(spec, report.to_json() if spec.format == "json" else report.summary())
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "export": cmd_export,
    "worst": cmd_worst,
    "reduce": cmd_reduce,
    "conjecture": cmd_conjecture,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--geometry", choices=["grid", "projective", "affine"], required=True)
    common.add_argument("--order", type=int, help="field order q (prime power)")
    common.add_argument("--dimension", type=int, default=2)
    common.add_argument("--n", type=int, help="grid side")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="planeswitch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="construct, verify and write a board")
    sub.add_parser("verify", parents=[common], help="check the incidence axioms")
    sub.add_parser("export", parents=[common], help="write the incidence lists")
    sub.add_parser("worst", parents=[common], help="exact covering radius and spectrum")
    red = sub.add_parser("reduce", parents=[common], help="reduce a board, printing a certificate")
    red.add_argument("--config", help="initial configuration, little-endian hex")
    red.add_argument("--random", action="store_true", help="draw the initial configuration")
    red.add_argument("--seed", type=int, default=None)
    sub.add_parser("conjecture", parents=[common], help="test the maximal-board conjecture")
    return parser


def main(argv: list[str] | None = None) -> int:
    ns = make_parser().parse_args(argv)
    try:
        spec = RunSpec.from_args(ns)
        return COMMANDS[spec.command](spec)
    except CliError as exc:
        print(f"planeswitch: {exc}", file=sys.stderr)
        return exc.code
    except SearchTooLarge as exc:
        print(f"planeswitch: refused: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
