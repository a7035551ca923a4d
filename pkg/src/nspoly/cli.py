"""Command-line front end.

Subcommands: enumerate, classify, analyze, verify, box. Expensive artifacts
are cached in a workspace directory (--workspace or NSPOLY_WORKSPACE).
"""

from __future__ import annotations

import argparse
import logging
import sys

from gmpy2 import mpq

from . import facets as fc
from . import verify as vf
from .boxes import (
    NAMED_BOXES,
    Box,
    box_from_line,
    box_to_line,
    correlators_from_box,
    named_box,
    validate,
)
from .hierarchy import MODEL_SETS, membership, paper_order
from .lp import LinearProgram, lp_solve
from .rational import format_rational
from .symmetry import canonical_form
from .workspace import Workspace, default_workspace_path

log = logging.getLogger(__name__)


def _fmt(v) -> str:
    return format_rational(mpq(v))


def cmd_enumerate(ws: Workspace, args) -> int:
    verts = ws.vertices(args.scenario)
    print(f"{args.scenario}: {len(verts)} vertices")
    print(f"cached at {ws.artifact_path(f'vertices-{args.scenario}')}")
    return 0


def cmd_classify(ws: Workspace, args) -> int:
    table = ws.classes()
    sizes = [c.size for c in table.classes]
    print(f"{len(table.classes)} classes, sizes sum {sum(sizes)}")
    for c in table.classes:
        print(f"class {c.class_id}: size {c.size}")
    return 0


def cmd_analyze(ws: Workspace, args) -> int:
    rows = ws.noise_table(args.threads)
    ws.ks2_sequence_table()
    ws.violations()
    ws.boundaries()
    flags = ws.correlator_flags()
    print(f"noise table: {len(rows)} classes")
    if args.paper_order:
        order = paper_order(rows)
        groups = {}
        for cid in order:
            groups.setdefault(rows[cid], []).append(cid)
        print("paper order (ascending by S2, KS2, US2, NS2, L):")
        for pos, cid in enumerate(order, start=1):
            tie = ""
            if len(groups[rows[cid]]) > 1:
                others = [c for c in groups[rows[cid]] if c != cid]
                tie = f"  (tied with canonical {others})"
            print(
                f"{pos:3d}: class {cid:2d}  "
                + "  ".join(_fmt(v) for v in rows[cid])
                + tie
            )
    else:
        for cid, row in enumerate(rows):
            print(f"class {cid:2d}: " + "  ".join(_fmt(v) for v in row))
    print(f"{sum(flags)} classes with all correlators in {{0, +1, -1}}")
    for name in ("noise-table", "ks2-sequences", "violations", "boundaries", "flags"):
        print(f"{name}: {ws.artifact_path(name)}")
    return 0


def cmd_verify(ws: Workspace, args) -> int:
    if args.quick:
        results = vf.run_quick_checks()
    else:
        results = vf.run_full_checks(ws, args.threads)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _load_box(args) -> Box:
    if args.named:
        return named_box(args.named)
    with open(args.file) as f:
        return box_from_line(f.read())


def _decompose_over_classes(ws: Workspace, b: Box, max_columns: int = 4096):
    """Convex decomposition of b over vertices, adding classes smallest
    first; None if not found within the column budget."""
    verts = ws.vertex_boxes()
    table = ws.classes()
    cols: list[int] = []
    for entry in sorted(table.classes, key=lambda c: c.size):
        cols.extend(entry.member_indices)
        if len(cols) > max_columns:
            return None
        a_eq = [[verts[j].probabilities[i] for j in cols] for i in range(64)]
        out = lp_solve(
            LinearProgram(
                objective=[0] * len(cols),
                a_eq=a_eq,
                b_eq=list(b.probabilities),
            )
        )
        if out.optimal:
            return [(cols[k], w) for k, w in enumerate(out.point) if w]
    return None


def cmd_box(ws: Workspace, args) -> int:
    b = _load_box(args)
    errors = validate(b.probabilities)
    if errors:
        print("invalid behavior:")
        for e in errors:
            print(f"  - {e}")
        return 1
    print("valid no-signaling behavior")
    c = correlators_from_box(b)
    print("singles:", "  ".join(_fmt(v) for v in c.singles))
    print("pairs:  ", "  ".join(_fmt(v) for v in c.pairs))
    print("triples:", "  ".join(_fmt(v) for v in c.triples))
    for model in MODEL_SETS:
        member = membership(b, model) is not None
        print(f"{model}: {'member' if member else 'not a member'}")
    if ws.artifact_path("classes") is not None:
        table = ws.classes()
        cid = vf.class_id_of_box(table, b)
        if cid is not None and b.probabilities in {
            ws.vertex_boxes()[i].probabilities
            for i in table.classes[cid].member_indices
        }:
            print(f"vertex of the no-signaling polytope, class {cid}")
        else:
            print("not a vertex of the no-signaling polytope")
            decomp = _decompose_over_classes(ws, b)
            if decomp:
                table_class_of = table.class_of()
                print("decomposition over vertices:")
                for idx, w in decomp:
                    print(
                        f"  weight {_fmt(w)}  vertex {idx} "
                        f"(class {table_class_of[idx]})"
                    )
    else:
        print("(no cached vertex classification; run 'nspoly classify')")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nspoly",
        description="Exact toolkit for the tripartite no-signaling polytope",
    )
    parser.add_argument(
        "--workspace",
        default=None,
        help=f"artifact cache directory (default: $NSPOLY_WORKSPACE or "
        f"{default_workspace_path()})",
    )
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate polytope vertices")
    p.add_argument(
        "--scenario", choices=("tripartite", "bipartite"), default="tripartite"
    )
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="group vertices into relabeling classes")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("analyze", help="noise table, violation and boundary censuses")
    p.add_argument("--paper-order", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--quick", action="store_true", help="sub-minute checks only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("box", help="inspect a single box")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--named", choices=sorted(NAMED_BOXES))
    g.add_argument("--file", help="file with 64 whitespace-separated rationals")
    p.set_defaults(func=cmd_box)

    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(message)s",
    )
    ws = Workspace(args.workspace)
    with ws.lock():
        return args.func(ws, args)


if __name__ == "__main__":
    sys.exit(main())
