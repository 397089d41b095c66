"""Command-line front-end.

Subcommands: tables, quotient, solve, verify, count, expand, catalog.
Machine-parsable output goes to stdout; human logging goes to stderr.
Exit codes: 0 ok/valid, 1 invalid colouring, 2 infeasible symmetry,
3 timeout, 4 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import signal
import sys

import numpy as np

from . import colourings, estimate, groups, quotient, solver
from .cube import count_row

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2
EXIT_TIMEOUT = 3
EXIT_USAGE = 4

logger = logging.getLogger("grahamcolour")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 4, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_n_range(text: str) -> list[int]:
    """'9' -> [9]; '2..14' -> [2, ..., 14]."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _load_config_file(path) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.strip()!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _resolve_group(args, n: int) -> groups.GroupSpec:
    if getattr(args, "group_file", None):
        g = groups.read_group_file(args.group_file)
    else:
        g = groups.lookup(args.group or "I", n)
    if g.degree != n:
        raise groups.UnknownGroupError(
            f"group {g.name} has degree {g.degree}, but --n is {n}"
        )
    return g


def _add_solver_flags(p: _Parser) -> None:
    p.add_argument("--n", required=True, help="dimension")
    p.add_argument("--group", help="catalog group name (default I)")
    p.add_argument("--group-file", help="group file path (overrides --group)")
    p.add_argument("--policy", choices=["a", "b"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-flips", type=int, default=None)
    p.add_argument("--blacklist", type=int, default=None)
    p.add_argument("--no-cutoff", action="store_true", default=None)
    p.add_argument("--attempts", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--log-interval", type=int, default=None)


def _effective(args, cfg: dict[str, str], key: str, default, cast=str):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in cfg:
        raw = cfg[key]
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        return cast(raw)
    return default


def cmd_tables(args) -> int:
    ns = _parse_n_range(args.n)
    if min(ns) < 2:
        raise ValueError("tables need n >= 2")
    rows = []
    if args.group:
        for n in ns:
            g = _resolve_group(args, n)
            if g.is_identity_group():
                rows.append(estimate.naive_row(n))
            else:
                qp = quotient.build_quotient(n, g)
                rows.append(estimate.quotient_nf(qp))
        print(estimate.render_group_table(rows), file=sys.stderr)
    else:
        rows = [estimate.naive_row(n) for n in ns]
        print(estimate.render_formula_table(ns), file=sys.stderr)
    for r in rows:
        print(r.machine_line())
    return EXIT_OK


def cmd_quotient(args) -> int:
    ns = _parse_n_range(args.n)
    if len(ns) != 1:
        raise ValueError("quotient takes a single --n")
    n = ns[0]
    g = _resolve_group(args, n)
    qp = quotient.build_quotient(n, g)
    if args.out:
        qp.dump(args.out)
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(qp.dumps())
    row = estimate.quotient_nf(qp)
    print(row.machine_line(), file=sys.stderr)
    return EXIT_OK


def _install_interrupt(cancel: np.ndarray):
    hits = {"count": 0}

    def handler(signum, frame):
        hits["count"] += 1
        if hits["count"] == 1:
            logger.warning("interrupt: finishing current chunk, dumping best-so-far")
            cancel[0] = 1
        else:
            raise KeyboardInterrupt

    previous = signal.signal(signal.SIGINT, handler)
    return previous


def cmd_solve(args, cfg: dict[str, str]) -> int:
    ns = _parse_n_range(args.n)
    if len(ns) != 1:
        raise ValueError("solve takes a single --n")
    n = ns[0]
    g = _resolve_group(args, n)
    config = solver.SolveConfig(
        policy=_effective(args, cfg, "policy", "b"),
        seed=_effective(args, cfg, "seed", None, int),
        max_flips=_effective(args, cfg, "max_flips", 0, int),
        blacklist_size=_effective(args, cfg, "blacklist", 3, int),
        cutoff=not _effective(args, cfg, "no_cutoff", False, bool),
        log_interval=_effective(args, cfg, "log_interval", 1_000_000, int),
    )
    attempts = _effective(args, cfg, "attempts", 1, int)
    seed = solver.resolve_seed(config.seed)
    config.seed = seed
    print(f"seed={seed}", file=sys.stderr)
    logger.info("building quotient problem %s@%d", g.name, n)
    qp = quotient.build_quotient(n, g)
    if qp.infeasible:
        print(
            f"result=infeasible n={n} group={g.name} vars={qp.variable_count}"
        )
        logger.error("symmetry %s@%d is infeasible (single-variable constraint)",
                     g.name, n)
        return EXIT_INFEASIBLE
    cancel = np.zeros(1, dtype=np.int64)
    previous = _install_interrupt(cancel)
    try:
        if attempts == 1:
            result = solver.solve(qp, config, cancel=cancel)
            all_stats = [result.stats]
            winner = result if result.solved else None
        else:
            winner, all_stats = solver.run_attempts(qp, config, attempts)
    finally:
        signal.signal(signal.SIGINT, previous)
    for st in all_stats:
        print(st.stats_line())
        logger.info("attempt %d: %.1fs wall", st.attempt, st.wall_time)
    out = args.out or f"colouring_n{n}_{g.name}.txt"
    if winner is not None:
        col = quotient.expand_assignment(qp, winner.assignment)
        report = colourings.verify(col)
        if not report.valid:  # pragma: no cover - solutions are re-checked upstream
            print(report.render())
            return EXIT_INVALID
        colourings.write_colouring(
            col, out, symmetry=g.name, comment=f"seed={winner.stats.seed}"
        )
        logger.info("wrote %s", out)
        return EXIT_OK
    # timeout or cancelled: dump best-so-far assignment of the best attempt
    best = min(all_stats, key=lambda s: s.best_violated)
    dump_path = args.out or f"assignment_n{n}_{g.name}.txt"
    if attempts == 1:
        colourings.write_assignment(
            result.assignment, n, g.name, dump_path,
            comment=f"best={best.best_violated} seed={best.seed}",
        )
        logger.info("wrote best-so-far assignment %s", dump_path)
    return EXIT_TIMEOUT


def cmd_verify(args) -> int:
    col, _symmetry = colourings.read_colouring(args.path)
    report = colourings.verify(col)
    print(report.render())
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_count(args) -> int:
    n = int(args.n)
    count = colourings.count_solutions(n)
    print(count)
    if count and n >= 2:
        frac = estimate.exact_fraction(n, count)
        print(f"fraction={estimate.format_percent(frac)}", file=sys.stderr)
    return EXIT_OK


def cmd_expand(args) -> int:
    bits, n, group_name = colourings.read_assignment(args.assignment)
    if args.group:
        group_name = args.group
    g = groups.lookup(group_name, n)
    qp = quotient.build_quotient(n, g)
    if qp.variable_count != len(bits):
        raise ValueError(
            f"assignment has {len(bits)} variables but {g.name}@{n}"
            f" has {qp.variable_count}"
        )
    col = quotient.expand_assignment(qp, bits)
    out = args.out or f"colouring_n{n}_{g.name}.txt"
    colourings.write_colouring(col, out, symmetry=g.name)
    logger.info("wrote %s", out)
    return EXIT_OK


def cmd_catalog(_args) -> int:
    for g in groups.catalog():
        order = g.order if g.order is not None else "?"
        print(f"{g.key} degree={g.degree} order={order} generators={len(g.generators)}")
    print("I@<n> degree=<n> order=1 generators=0")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="grahamcolour", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[], help="difficulty tables")
    p.add_argument("--n", required=True, help="dimension or range like 2..14")
    p.add_argument("--group", help="catalog group for quotient rows")
    p.add_argument("--group-file")

    p = sub.add_parser("quotient", help="build and dump a quotient problem")
    p.add_argument("--n", required=True)
    p.add_argument("--group")
    p.add_argument("--group-file")
    p.add_argument("--out")

    p = sub.add_parser("solve", help="stochastic colouring search")
    _add_solver_flags(p)

    p = sub.add_parser("verify", help="check a colouring file")
    p.add_argument("path")

    p = sub.add_parser("count", help="exhaustive solution count (n <= 3)")
    p.add_argument("--n", required=True)

    p = sub.add_parser("expand", help="expand a quotient assignment to a colouring")
    p.add_argument("--assignment", required=True)
    p.add_argument("--group", help="override the group recorded in the file")
    p.add_argument("--out")

    sub.add_parser("catalog", help="list named groups")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s"
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "tables":
            return cmd_tables(args)
        if args.command == "quotient":
            return cmd_quotient(args)
        if args.command == "solve":
            cfg = _load_config_file(args.config) if args.config else {}
            return cmd_solve(args, cfg)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "count":
            return cmd_count(args)
        if args.command == "expand":
            return cmd_expand(args)
        if args.command == "catalog":
            return cmd_catalog(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (
        groups.UnknownGroupError,
        groups.CycleParseError,
        colourings.ColouringFormatError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
