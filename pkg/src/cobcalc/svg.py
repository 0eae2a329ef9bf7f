"""Deterministic SVG 1.1 rendering of planar diagrams.

Besides the drawing, every element carries its exact data in ``data-*``
attributes (rational coordinates as ``p/q``), so a reader can rebuild the
strands, ends, crossings and annotations from the file alone.
"""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .planar import LEFT, CobordismDiagram, detect_crossings, fmt_rat

SCALE = 40
MARGIN = 2


def _num(v) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(d: CobordismDiagram, title: str | None = None) -> str:
    box = d.bbox() or (0, 0, 0, 0)
    x0, y0, x1, y1 = box[0] - MARGIN, box[1] - MARGIN, box[2] + MARGIN, box[3] + MARGIN
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def X(x):
        return _num((x - x0) * SCALE)

    def Y(y):
        return _num((y1 - y) * SCALE)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(w)}" height="{_num(h)}" '
        f'viewBox="0 0 {_num(w)} {_num(h)}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g id="strands" fill="none" stroke="black" stroke-width="2">')
    for i, (c, lab) in enumerate(d.strands):
        pts = " ".join(f"{X(v.x)},{Y(v.y)}" for v in c.vertices)
        exact = " ".join(str(v) for v in c.vertices)
        tag = "polygon" if c.closed else "polyline"
        out.append(
            f'<{tag} class="strand" data-index="{i}" data-label={quoteattr(lab)} '
            f'data-points="{exact}" data-closed="{int(c.closed)}" '
            f'data-head="{c.head or ""}" data-tail="{c.tail or ""}" points="{pts}"/>'
        )
    out.append("</g>")
    out.append('<g id="ends" stroke="gray" stroke-width="2" stroke-dasharray="4 2">')
    for i, (c, lab) in enumerate(d.strands):
        for which, direction, height in c.ends():
            v = c.vertices[0] if which == "head" else c.vertices[-1]
            far = x0 if direction == LEFT else x1
            sign = "neg" if direction == LEFT else "pos"
            out.append(
                f'<line class="end" data-strand="{i}" data-side="{sign}" data-height="{height}" '
                f'data-label={quoteattr(lab)} x1="{X(v.x)}" y1="{Y(v.y)}" x2="{X(far)}" y2="{Y(v.y)}"/>'
            )
    out.append("</g>")
    out.append('<g id="labels" font-family="monospace" font-size="12">')
    for side, table in (("pos", d.pos_ends), ("neg", d.neg_ends)):
        for height, lab in table:
            x = X(x1) if side == "pos" else X(x0)
            anchor = "end" if side == "pos" else "start"
            out.append(
                f'<text class="end-label" data-side="{side}" data-height="{height}" '
                f'x="{x}" y="{Y(height)}" dy="-4" text-anchor="{anchor}">{_esc(lab)}</text>'
            )
    out.append("</g>")
    ann = d.annotation_map()
    out.append('<g id="crossings">')
    for k, cr in enumerate(detect_crossings(d)):
        p = cr.point
        a = ann.get(p)
        out.append(
            f'<circle class="crossing" data-id="{k}" data-x="{fmt_rat(p.x)}" data-y="{fmt_rat(p.y)}" '
            f'data-strands="{cr.strands[0]} {cr.strands[1]}" cx="{X(p.x)}" cy="{Y(p.y)}" r="4" '
            f'fill="{"red" if a else "blue"}"/>'
        )
        if a is not None:
            if a.kind == "mark":
                text = f"mark ({a.order[0]},{a.order[1]}) " + " ".join(a.points)
            else:
                text = f"handle area={fmt_rat(a.area)}"
            out.append(
                f'<text class="annotation" data-crossing="{k}" x="{X(p.x)}" y="{Y(p.y)}" dx="6" dy="-6" '
                f'font-family="monospace" font-size="10">{_esc(text.strip())}</text>'
            )
    out.append("</g>")
    if d.pivots:
        out.append('<g id="pivots">')
        for pv in sorted(d.pivots):
            out.append(
                f'<rect class="pivot" data-x="{fmt_rat(pv.x)}" data-y="{fmt_rat(pv.y)}" '
                f'x="{_num(float((pv.x - x0) * SCALE) - 3)}" y="{_num(float((y1 - pv.y) * SCALE) - 3)}" width="6" height="6"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
