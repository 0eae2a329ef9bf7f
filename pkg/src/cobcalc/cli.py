"""Command line front end.

Every command prints ``key=value`` report lines to stdout.  Exit status is
0 on success, 1 on an engine error (or a failed check) and 2 on a parse
error.  Without ``--input`` the built-in demo presentation is used;
``--seed N`` selects a seeded random presentation instead.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from fractions import Fraction

from .backend import CategoryPresentation
from .errors import CobError, ParseError
from .planar import diagram_from_text, fmt_rat, shadow
from .presentation_io import read_presentation

COMMANDS = (
    "validate", "shadow", "compose", "rotate", "cable", "surgery", "theta",
    "equiv", "k0", "omega", "dist", "check-axioms", "render",
)


def _split(s: str | None) -> list[str]:
    if not s:
        return []
    return [t for t in s.replace(",", " ").split() if t]


def _read_input(args) -> tuple[str | None, str]:
    if args.input is None:
        return None, ""
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CobError(f"cannot read {args.input}: {e.strerror}") from None
    return text, hashlib.sha256(text.encode()).hexdigest()[:16]


def _is_bare_diagram(text: str) -> bool:
    """A file whose only section is a single ``[diagram]``."""
    heads = [l.strip() for l in text.splitlines() if l.strip().startswith("[")]
    return len(heads) == 1 and heads[0].startswith("[diagram")


def _presentation(args, text: str | None) -> CategoryPresentation:
    if text is not None:
        return read_presentation(text)
    if args.seed is not None:
        from .demo import random_presentation

        return random_presentation(args.seed)
    from .demo import demo_presentation

    return demo_presentation()


def _word(p, text: str, args):
    from .words import parse_word

    return parse_word(text, p, strict_minmax=args.strict_minmax)


def _need(args, n: int, what: str) -> list[str]:
    if len(args.operands) != n:
        raise ParseError(f"{args.command} expects {what}")
    return args.operands


def _word_lines(w) -> list[str]:
    from .words import to_sexpr

    return [
        f"word={to_sexpr(w)}",
        f"source={w.source}",
        "ends=" + ",".join(w.ends),
        f"shadow={fmt_rat(w.shadow())}",
    ]


def _svg(args, diagram, title) -> None:
    if args.svg_out:
        from .svg import render_svg

        with open(args.svg_out, "w", encoding="utf-8") as fh:
            fh.write(render_svg(diagram, title))


def run(argv: list[str]) -> tuple[int, list[str], str | None]:
    """Execute one command; returns (exit code, report lines, svg text)."""
    args = build_parser().parse_args(argv)
    text, digest = _read_input(args)
    cmd = args.command
    out: list[str] = []
    status = 0
    svg = None

    bare = text is not None and _is_bare_diagram(text)
    if cmd in ("validate", "shadow", "render") and bare:
        d = diagram_from_text(text)
        from .planar import detect_crossings

        if cmd == "validate":
            out.append(
                f"valid diagram strands={len(d.strands)} pos={len(d.pos_ends)} "
                f"neg={len(d.neg_ends)} crossings={len(detect_crossings(d))}"
            )
        elif cmd == "shadow":
            out.append(f"shadow={fmt_rat(shadow(d))}")
        else:
            from .svg import render_svg

            svg = render_svg(d, args.input)
        return _finish(args, digest, status, out, svg)

    p = _presentation(args, text)
    if cmd == "validate":
        out.append(
            f"valid presentation objects={len(p.objects)} generators={len(p.generators)} "
            f"triangles={len(p.triangles)} nullcobs={len(p.nullcobs)}"
        )
    elif cmd == "shadow":
        (w,) = _need(args, 1, "one word")
        out.append(f"shadow={fmt_rat(_word(p, w, args).shadow())}")
    elif cmd == "compose":
        from .words import compose

        w2, w1 = _need(args, 2, "two words: the second applied after the first")
        w = compose(_word(p, w2, args), _word(p, w1, args))
        out += _word_lines(w)
        _svg(args, w.diagram, "compose")
    elif cmd == "rotate":
        from .words import rotate

        (w,) = _need(args, 1, "one word")
        r = rotate(_word(p, w, args), args.steps)
        out += _word_lines(r)
        _svg(args, r.diagram, "rotate")
    elif cmd == "cable":
        from .words import cable

        a, b = _need(args, 2, "two words")
        w = cable(_word(p, a, args), _word(p, b, args), _split(args.points), Fraction(args.eps))
        out += _word_lines(w)
        _svg(args, w.diagram, "cable")
    elif cmd == "surgery":
        from .words import surgery

        L, Lp = _need(args, 2, "two objects")
        w = surgery(p, L, Lp, _split(args.points), Fraction(args.eps), strict_minmax=args.strict_minmax)
        out += _word_lines(w)
        _svg(args, w.diagram, "surgery")
    elif cmd == "theta":
        from .theta import theta

        (w,) = _need(args, 1, "one word")
        c = theta(_word(p, w, args), p)
        out.append(f"theta=[{' '.join(c.labels())}]")
        out.append(f"hom={c.source.label}->{c.target.label}")
        out.append(f"zero={int(c.is_zero())}")
    elif cmd == "equiv":
        from .cabling import cabling_equivalent

        a, b = _need(args, 2, "two words")
        cert = cabling_equivalent(_word(p, a, args), _word(p, b, args), p)
        out.append(str(cert))
    elif cmd in ("k0", "omega"):
        q = p.k0() if cmd == "k0" else p.omega()
        out.append(f"{cmd} dim={q.dim} basis={','.join(q.basis)}")
        for rel in q.relation_labels():
            out.append(f"relation={'+'.join(rel)}")
    elif cmd == "dist":
        from .metrics import frag_distance

        L, Lp = _need(args, 2, "two objects")
        r = frag_distance(L, Lp, _split(args.family), p, args.depth)
        out.append(r.line())
    elif cmd == "check-axioms":
        from .cabling import check_axioms

        rep = check_axioms(p)
        out += rep.lines
        out.append(f"result={'PASS' if rep.ok else 'FAIL'}")
        status = 0 if rep.ok else 1
    elif cmd == "render":
        from .svg import render_svg

        (w,) = _need(args, 1, "one word")
        word = _word(p, w, args)
        svg = render_svg(word.diagram, w)
    return _finish(args, digest, status, out, svg)


def _finish(args, digest, status, out, svg):
    if args.report:
        out = [f"command={args.command}", f"input={digest or 'builtin'}"] + out + [f"status={status}"]
    if svg is not None and args.svg_out:
        with open(args.svg_out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        out.append(f"svg={args.svg_out}")
        svg = None
    return status, out, svg


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cobcalc", description="Planar cobordism calculus engine.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("operands", nargs="*", help="words as s-expressions, or object labels")
    ap.add_argument("--input", help="presentation or diagram file (default: built-in demo)")
    ap.add_argument("--depth", type=int, default=3, help="search bound for dist")
    ap.add_argument("--family", default="", help="comma-separated auxiliary objects for dist")
    ap.add_argument("--svg-out", help="write an SVG rendering here")
    ap.add_argument("--strict-minmax", action="store_true", help="use the strict max/min surgery action rule")
    ap.add_argument("--seed", type=int, help="use a seeded random presentation when no --input is given")
    ap.add_argument("--points", default="", help="intersection ids for surgery/cable")
    ap.add_argument("--eps", type=Fraction, default=Fraction(0), help="handle size")
    ap.add_argument("--steps", type=int, default=1, help="rotation steps")
    ap.add_argument("--report", action="store_true", help="frame the output with command/input/status lines")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        status, lines, svg = run(argv)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except CobError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    for line in lines:
        print(line)
    if svg is not None:
        sys.stdout.write(svg)
    return status


if __name__ == "__main__":
    sys.exit(main())
