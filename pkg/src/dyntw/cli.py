"""Command-line driver: replay an update stream against the engine.

Stream lines::

    + u v        insert edge uv
    - u v        delete edge uv
    ? name       print the root answer of automaton ``name``
    # ...        comment

Exit codes: 0 ok, 1 self-check failure, 2 malformed stream, 3 width beyond 9k+8.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Iterable

from . import constants
from .automata import REGISTRY, AutomatonRun, by_name, prds_init, prds_update
from .engine import DynEngine
from .hypergraph import edge_key
from .treedecomp import GlueState, validate_export

EXIT_SELFCHECK = 1
EXIT_MALFORMED = 2
EXIT_WIDTH = 3


class StreamError(ValueError):
    def __init__(self, lineno: int, msg: str) -> None:
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_stream(lines: Iterable[str], n: int) -> list[tuple[int, str, tuple]]:
    """Parse a stream into (line number, op, args); raises StreamError."""
    ops = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        head = parts[0]
        if head in "+-" and len(head) == 1:
            if len(parts) != 3:
                raise StreamError(lineno, f"expected '{head} u v', got {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise StreamError(lineno, f"vertices must be integers in {line!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise StreamError(lineno, f"vertex out of range 0..{n - 1} in {line!r}")
            if u == v:
                raise StreamError(lineno, f"self-loop in {line!r}")
            ops.append((lineno, head, (u, v)))
        elif head == "?":
            if len(parts) != 2 or parts[1] not in REGISTRY:
                raise StreamError(lineno, f"expected '? <{'|'.join(sorted(REGISTRY))}>', got {line!r}")
            ops.append((lineno, "?", (parts[1],)))
        else:
            raise StreamError(lineno, f"unknown operation {head!r}")
    return ops


def _params(text: str | None) -> tuple[int, int]:
    if not text:
        return 0, 0
    try:
        dc, bd = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("--params takes degreeCap,balanceDist") from None
    return dc, bd


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dyntw", description="Dynamic treewidth engine driver.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="replay an update stream")
    r.add_argument("--k", type=int, required=True, help="treewidth promise")
    r.add_argument("--n", type=int, required=True, help="number of vertices")
    r.add_argument("--stream", default="-", help="stream file, '-' for stdin")
    r.add_argument("--automaton", action="append", choices=sorted(REGISTRY), default=[],
                   help="automaton to maintain (repeatable)")
    r.add_argument("--emit", action="append", choices=["answers", "stats", "dump"], default=[],
                   help="outputs to write (repeatable; default answers)")
    r.add_argument("--selfcheck", action="store_true", help="audit everything after every op")
    r.add_argument("--kwl", type=int, default=None, help="override the well-linkedness bound")
    r.add_argument("--params", type=_params, default=(0, 0), metavar="DC,BD",
                   help="degree cap and balance distance overrides")
    return p


def _selfcheck(engine: DynEngine, gs: GlueState, runs: dict[str, AutomatonRun]) -> list[str]:
    small = engine.n <= 9
    problems = engine.audit(well_linked=small)
    val = validate_export(engine.graph, gs.td)
    if not val.ok:
        problems.extend(val.problems)
    for name, run in runs.items():
        if not run.check():
            problems.append(f"automaton {name} run equations fail")
    if small:
        from .oracle import color_brute, domset_brute, exact_treewidth, mis_brute
        tw = exact_treewidth(engine.graph)
        if gs.td.width() > constants.width_bound(tw):
            problems.append(f"width {gs.td.width()} exceeds 9·tw+8 with tw = {tw}")
        expect = {"mis": mis_brute, "color3": lambda g: color_brute(g, 3), "domset": domset_brute}
        for name, run in runs.items():
            if run.root_answer() != expect[name](engine.graph):
                problems.append(f"automaton {name} disagrees with brute force")
    return problems


def run(args: argparse.Namespace, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        if args.stream == "-":
            lines = sys.stdin.read().splitlines()
        else:
            with open(args.stream) as fh:
                lines = fh.read().splitlines()
        ops = parse_stream(lines, args.n)
    except StreamError as exc:
        print(f"dyntw: malformed stream: {exc}", file=err)
        return EXIT_MALFORMED
    dc, bd = args.params
    try:
        engine = DynEngine(args.n, args.k, k_wl=args.kwl, degree_cap=dc, balance_dist=bd)
    except ValueError as exc:
        print(f"dyntw: {exc}", file=err)
        return EXIT_MALFORMED
    emit = set(args.emit) or {"answers"}
    gs = GlueState(engine)
    runs = {name: prds_init(gs.td, by_name(name)) for name in args.automaton}
    width_cap = constants.width_bound(args.k)
    trajectory = []
    for lineno, op, a in ops:
        if op == "?":
            name = a[0]
            if name not in runs:
                runs[name] = prds_init(gs.td, by_name(name))
            if "answers" in emit:
                ans = runs[name].root_answer()
                print(f"{name} {str(ans).lower() if isinstance(ans, bool) else ans}", file=out)
            continue
        u, v = a
        present = edge_key(u, v) in engine.edge_ids
        if (op == "+") == present:
            print(f"dyntw: malformed stream: line {lineno}: edge {u}-{v} "
                  f"{'already present' if present else 'not present'}", file=err)
            return EXIT_MALFORMED
        seq = engine.add_edge(u, v) if op == "+" else engine.delete_edge(u, v)
        desc = gs.update(seq)
        for r in runs.values():
            prds_update(r, desc)
        width = gs.td.width()
        st = engine.ledger.ops[-1]
        trajectory.append({"line": lineno, "op": op, "u": u, "v": v, "size": st.size,
                           "size_t": st.size_t, "phi": st.phi_after, "depth": st.depth,
                           "width": width, "balance_steps": st.balance_steps,
                           "rotate_steps": st.rotate_steps, "max_degree": st.max_degree,
                           "description_size": desc.size})
        if width > width_cap:
            print(f"dyntw: width {width} exceeds 9k+8 = {width_cap} at line {lineno}; "
                  "the treewidth promise is violated", file=err)
            return EXIT_WIDTH
        if args.selfcheck:
            problems = _selfcheck(engine, gs, runs)
            if problems:
                print(f"dyntw: self-check failed at line {lineno}: {problems[0]}", file=err)
                return EXIT_SELFCHECK
    if "stats" in emit:
        p = engine.params
        json.dump({"n": args.n, "k": args.k, "k_wl": p.k_wl, "degree_cap": p.degree_cap,
                   "balance_dist": p.balance_dist, "conforming": p.conforming,
                   "ops": trajectory}, out, indent=1)
        print(file=out)
    if "dump" in emit:
        print(gs.td.serialize(), file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
