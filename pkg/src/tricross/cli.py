"""Command-line front door for the toolkit.

Subcommands parse a diagram file (or take a family index) and print a
deterministic report; `--format json` emits the same report as a single
JSON object.  Output carries no timestamps unless `--timing` asks for
one, so identical invocations are byte-identical.  Exit codes: 0 on
success, 1 on any domain error (bad file, non-planar input, budget
exhaustion), 2 on usage errors.
"""

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .braid import braid_closure, destabilize
from .diagram import (
    OrientedDiagram,
    decompose_triple,
    orient,
    parse_diagram,
    render_diagram,
)
from .errors import TricrossError
from .family import (
    TANGLE_NAMES,
    build_family_diagram,
    closed_form,
    state_at,
    verify_theorem,
)
from .homfly import homfly, mfw_lower_bound, theorem1_upper_bound
from .leveling import bisect_level, classify_strips, strip_monogons
from .moves import normalize_diagram
from .polynomials import v_span
from .strips import braidify

BUDGET_ENV = "TRICROSS_NODE_BUDGET"


@dataclass
class RunReport:
    command: str
    input: str
    outputs: dict
    warnings: list = field(default_factory=list)
    timing: float = None

    def to_json(self):
        doc = {
            "command": self.command,
            "input": self.input,
            "outputs": self.outputs,
            "warnings": self.warnings,
            "timing": (
                None if self.timing is None else {"seconds": round(self.timing, 3)}
            ),
        }
        return json.dumps(doc, sort_keys=True, separators=(", ", ": "))


def _digest(data):
    return hashlib.sha256(data).hexdigest()[:12]


def _read_diagram(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise TricrossError(f"cannot read {path}: {exc.strerror}") from None
    return parse_diagram(data.decode()), _digest(data)


def _node_budget(args):
    if args.node_budget is not None:
        return args.node_budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise TricrossError(
                f"{BUDGET_ENV} must be an integer, got {env!r}"
            ) from None
    return None


def _homfly_of(d, budget):
    d2 = decompose_triple(d) if any(
        x.order != 2 for x in d.crossings.values()
    ) else d
    return homfly(orient(d2), node_budget=budget)


def _orientation_profile(d, budget):
    """HOMFLY values over per-component direction choices.

    The first component's direction is pinned; whole-diagram reversal
    never changes the polynomial, so the remaining choices cover every
    way the "same" link could come back from a rewrite.  Knots get a
    one-element profile, making the comparison plain equality.
    """
    d2 = decompose_triple(d) if any(
        x.order != 2 for x in d.crossings.values()
    ) else d
    base = orient(d2)
    comps = []
    seen = set()
    for orbit in d2.strand_orbits():
        ends = frozenset(orbit) | frozenset(d2.mate[e] for e in orbit)
        if ends not in seen:
            seen.add(ends)
            comps.append(ends)
    values = set()
    for mask in range(2 ** max(0, len(comps) - 1)):
        direction = dict(base.direction)
        for i, ends in enumerate(comps[1:]):
            if mask >> i & 1:
                for e in ends:
                    direction[e] = not direction[e]
        values.add(homfly(OrientedDiagram(d2, direction), node_budget=budget))
    return frozenset(values)


def cmd_homfly(args):
    d, digest = _read_diagram(args.path)
    p = _homfly_of(d, _node_budget(args))
    return RunReport(
        command="homfly",
        input=digest,
        outputs={
            "polynomial": p.render(),
            "v_span": v_span(p),
            "mfw_lower_bound": mfw_lower_bound(p),
        },
    )


def cmd_braidify(args):
    d, digest = _read_diagram(args.path)
    word = braidify(d)
    outputs = {
        "strands": word.strands,
        "letters": list(word.letters),
        "crossing_bound": "strands <= c+1 holds",
    }
    if not args.no_check:
        budget = _node_budget(args)
        src = _orientation_profile(d, budget)
        got = _orientation_profile(
            braid_closure(destabilize(word)).diagram, budget
        )
        if got != src:
            raise TricrossError(
                "closure polynomial differs from the source diagram"
            )
        outputs["closure_check"] = "closure HOMFLY matches source"
    return RunReport(command="braidify", input=digest, outputs=outputs)


def cmd_normalize(args):
    d, digest = _read_diagram(args.path)
    norm, report = normalize_diagram(d)
    return RunReport(
        command="normalize",
        input=digest,
        outputs={
            "crossings_before": len(d.crossings),
            "crossings_after": len(norm.crossings),
            "eliminated_cut_vertices": report.eliminated_cut_vertices,
            "undone_monogons": report.undone_monogons,
            "free_loops": norm.free_loops,
            "diagram": render_diagram(norm),
        },
        warnings=list(report.warnings),
    )


def cmd_level(args):
    d, digest = _read_diagram(args.path)
    norm, report = normalize_diagram(d)
    if report.warnings:
        raise TricrossError(
            "normalization left irregular structure: "
            + "; ".join(report.warnings)
        )
    if not norm.crossings:
        raise TricrossError("nothing to level: no crossings survive")
    graph, records = strip_monogons(norm)
    lv = bisect_level(graph, records)
    strips = []
    for strip, tag in zip(lv.strips, classify_strips(lv)):
        strips.append(
            {
                "vertex": str(strip.vertex),
                "type": f"T_{tag.p}^{tag.q}",
                "monogons": len(strip.monogons),
            }
        )
    return RunReport(
        command="level",
        input=digest,
        outputs={"strips": strips},
    )


def cmd_family(args):
    n = args.pairs
    s = state_at(n)
    if args.method == "closed-form":
        classes = {name: closed_form(n, name) for name in TANGLE_NAMES}
    else:
        classes = s.classes()
    outputs = {
        "pairs": n,
        "classes": {
            name: {"extremes": list(cls.extremes())}
            for name, cls in classes.items()
        },
        "v_span": v_span(classes["tbmbtm"]),
    }
    if args.verify:
        r = verify_theorem(n)
        outputs["mfw_lower_bound"] = r.mfw_lower
        outputs["upper_bound"] = r.upper
        outputs["verdict"] = (
            f"{r.span}/2 + 1 = {r.mfw_lower} <= braid index <= "
            f"{r.upper} = (2n+2)+1; bounds meet"
        )
    return RunReport(
        command="family", input=f"pairs={n}", outputs=outputs
    )


def cmd_verify(args):
    if (args.path is None) == (args.pairs is None):
        raise UsageError("verify needs a diagram path or --pairs, not both")
    if args.pairs is not None:
        r = verify_theorem(args.pairs)
        return RunReport(
            command="verify",
            input=f"pairs={args.pairs}",
            outputs={
                "v_span": r.span,
                "mfw_lower_bound": r.mfw_lower,
                "upper_bound": r.upper,
                "recurrence_matches_closed_form": r.recurrence_matches_closed_form,
                "verdict": f"bounds meet at {r.mfw_lower}",
            },
        )
    d, digest = _read_diagram(args.path)
    budget = _node_budget(args)
    norm, _ = normalize_diagram(d)
    upper = theorem1_upper_bound(norm)
    word = braidify(d)
    src = _orientation_profile(d, budget)
    got = _orientation_profile(
        braid_closure(destabilize(word)).diagram, budget
    )
    if got != src:
        raise TricrossError(
            "closure polynomial differs from the source diagram"
        )
    lower = min(mfw_lower_bound(p) for p in src)
    return RunReport(
        command="verify",
        input=digest,
        outputs={
            "strands": word.strands,
            "mfw_lower_bound": lower,
            "upper_bound": upper,
            "closure_check": "closure HOMFLY matches source",
            "verdict": f"{lower} <= braid index <= {upper}",
        },
    )


def cmd_family_diagram(args):
    # not a spec'd subcommand of its own: `family --emit-diagram` writes
    # the frozen chain so other commands can consume it
    d = build_family_diagram(args.pairs)
    return render_diagram(d)


class UsageError(Exception):
    pass


def _flatten(prefix, value, lines):
    if isinstance(value, dict):
        for k in value:
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", value[k], lines)
        return
    if isinstance(value, list) and value and isinstance(value[0], dict):
        for i, item in enumerate(value):
            _flatten(f"{prefix}{i}.", item, lines)
        return
    key = prefix[:-1]
    if isinstance(value, list):
        text = " ".join(str(x) for x in value)
    else:
        text = str(value)
    lines.append((key, text))


def _render_text(report):
    lines = []
    if "diagram" in report.outputs:
        outputs = dict(report.outputs)
        diagram = outputs.pop("diagram")
    else:
        outputs, diagram = report.outputs, None
    flat = []
    _flatten("", outputs, flat)
    for key, text in flat:
        lines.append(f"{key}: {text}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    if report.timing is not None:
        lines.append(f"time: {report.timing:.3f}s")
    body = "\n".join(lines)
    if diagram is not None:
        body += "\n" + diagram.rstrip("\n")
    return body


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tricross",
        description="Braid index bounds for triple-crossing link diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=False):
        p.add_argument(
            "--format", choices=("text", "json"), default="text"
        )
        p.add_argument("--timing", action="store_true")
        if budget:
            p.add_argument(
                "--node-budget",
                type=int,
                default=None,
                metavar="N",
                help=f"skein tree node cap (default from ${BUDGET_ENV})",
            )

    p = sub.add_parser("homfly", help="polynomial, span, and lower bound")
    p.add_argument("path")
    common(p, budget=True)
    p.set_defaults(fn=cmd_homfly)

    p = sub.add_parser("braidify", help="emit a braid word for a diagram")
    p.add_argument("path")
    p.add_argument(
        "--no-check",
        action="store_true",
        help="skip the closure-vs-source polynomial comparison",
    )
    common(p, budget=True)
    p.set_defaults(fn=cmd_braidify)

    p = sub.add_parser("normalize", help="run the reduction moves")
    p.add_argument("path")
    common(p)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("level", help="bisected vertex leveling strip table")
    p.add_argument("path")
    common(p)
    p.set_defaults(fn=cmd_level)

    p = sub.add_parser("family", help="tangle classes and bounds at index n")
    p.add_argument("--pairs", type=int, required=True, metavar="N")
    p.add_argument(
        "--method",
        choices=("recurrence", "closed-form"),
        default="recurrence",
    )
    p.add_argument("--verify", action="store_true")
    p.add_argument(
        "--emit-diagram",
        action="store_true",
        help="print the frozen chain diagram instead of a report",
    )
    common(p)
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser(
        "verify", help="check the bound sandwich for a diagram or family index"
    )
    p.add_argument("path", nargs="?")
    p.add_argument("--pairs", type=int, default=None, metavar="N")
    common(p, budget=True)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    try:
        if args.command == "family" and args.emit_diagram:
            sys.stdout.write(cmd_family_diagram(args))
            return 0
        report = args.fn(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except TricrossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report.timing = time.monotonic() - t0
    if args.format == "json":
        print(report.to_json())
    else:
        print(_render_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
